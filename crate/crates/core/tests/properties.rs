mod common;

use nervelab::constructions::star_cover;
use nervelab::corpus::{random_complex, random_subcomplex};
use nervelab::deleted_product::deleted_product;
use nervelab::homology::{homology, simplicial_chain_complex, smith_normal_form, SparseMatrix};
use nervelab::iso::find_isomorphism;
use nervelab::neighborhoods::{greedy_collapse, DerivedAmbient};
use nervelab::subdivision::sd;
use nervelab::SimplicialComplex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex_from_seed(seed: u64) -> SimplicialComplex {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed), 7, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_agrees_with_dense_oracle(entries in prop::collection::vec(-4i64..=4, 1..=30), cols in 1usize..=6) {
        let rows = entries.len().div_ceil(cols);
        let mut dense = vec![vec![0i64; cols]; rows];
        for (i, x) in entries.iter().enumerate() {
            dense[i / cols][i % cols] = *x;
        }
        let m = SparseMatrix::from_dense(&dense);
        let snf = smith_normal_form(&m);
        let want = common::snf_diagonal(dense.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect());
        let got: Vec<i128> = snf.invariant_factors.iter().map(|x| x.to_string().parse().unwrap()).collect();
        let mut sorted = want.clone();
        sorted.sort();
        prop_assert_eq!(snf.rank, want.len());
        // Both sides are full SNF diagonals, so the multisets agree.
        let mut got_sorted = got.clone();
        got_sorted.sort();
        prop_assert_eq!(got_sorted, sorted);
        for w in got.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn homology_matches_oracle_and_euler(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        let h = homology(&k, false);
        prop_assert_eq!(common::from_library(&h), common::homology(&k));
        prop_assert_eq!(h.alternating_betti_sum(), k.euler_characteristic());
        prop_assert!(simplicial_chain_complex(&k).boundary_squares_to_zero());
    }

    #[test]
    fn subdivision_preserves_homology(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        let once = sd(&k).unwrap();
        prop_assert_eq!(common::from_library(&homology(&once, false)), common::homology(&k));
        prop_assert_eq!(once.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn star_cover_nerve_is_the_complex(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        let cover = star_cover(&k).unwrap();
        let nerve = common::nerve(cover.members());
        let faces: std::collections::BTreeSet<_> =
            k.faces().iter().map(|f| f.vertices().iter().cloned().collect()).collect();
        prop_assert_eq!(nerve, faces);
    }

    #[test]
    fn neighborhoods_meet_like_their_cores(seed in any::<u64>()) {
        let m = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let amb = DerivedAmbient::new(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l1 = random_subcomplex(&mut rng, &m);
        let l2 = random_subcomplex(&mut rng, &m);
        let lhs = amb.neighborhood(&l1.intersection(&l2)).unwrap();
        let rhs = amb.neighborhood(&l1).unwrap().intersection(&amb.neighborhood(&l2).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(common::face_sets(&amb.neighborhood(&l1).unwrap()), common::derived_neighborhood(amb.sd2(), &l1));
    }

    #[test]
    fn collapse_preserves_homology(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        if let nervelab::neighborhoods::CollapseOutcome::Stuck { remaining, .. } = greedy_collapse(&k).unwrap() {
            prop_assert_eq!(common::homology(&remaining), common::homology(&k));
        } else {
            prop_assert_eq!(common::homology(&k), common::point());
        }
    }

    #[test]
    fn deleted_product_is_symmetric(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        prop_assume!(k.vertices().len() >= 2);
        let dp = deleted_product(&k).unwrap();
        prop_assert!(dp.involution_is_free());
        prop_assert!(dp.bidegrees_symmetric());
        prop_assert!(dp.chain_complex().boundary_squares_to_zero());
    }

    #[test]
    fn relabelling_is_detected_as_isomorphism(seed in any::<u64>()) {
        let k = complex_from_seed(seed);
        let renamed: std::collections::BTreeMap<_, _> = k
            .vertices()
            .iter()
            .map(|v| (v.clone(), nervelab::Vertex::new(format!("x{}", v.as_str())).unwrap()))
            .collect();
        let other = k.relabel(&renamed).unwrap();
        let iso = find_isomorphism(&k, &other).unwrap();
        prop_assert_eq!(k.relabel(&iso).unwrap(), other);
    }
}

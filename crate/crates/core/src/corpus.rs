//! Bundled test complexes and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::constructions::{build_c, collar};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
}

fn entry(name: impl Into<String>, complex: SimplicialComplex) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        complex,
    }
}

fn from_index_facets(facets: &[[usize; 3]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.map(|i| i.to_string())))
        .expect("valid facets")
}

/// Minimal 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn csaszar_torus() -> SimplicialComplex {
    let facets: Vec<[usize; 3]> = (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    from_index_facets(&facets)
}

/// The 6-vertex projective plane.
pub fn rp2_6() -> SimplicialComplex {
    from_index_facets(&[
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ])
}

pub fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets((1..=n).map(|i| [i.to_string(), (i % n + 1).to_string()]))
        .expect("valid")
}

/// A path with `n` edges on vertices `1..=n+1`.
pub fn path(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets((1..=n).map(|i| [i.to_string(), (i + 1).to_string()]))
        .expect("valid")
}

/// The full corpus in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for d in 0..=4 {
        out.push(entry(format!("delta-{d}"), SimplicialComplex::simplex(d)));
    }
    for d in 1..=4 {
        out.push(entry(
            format!("boundary-delta-{d}"),
            SimplicialComplex::boundary_of_simplex(d).expect("d >= 1"),
        ));
    }
    for d in 1..=3 {
        out.push(entry(
            format!("crosspolytope-{d}"),
            SimplicialComplex::crosspolytope(d).expect("d >= 1"),
        ));
    }
    for d in 1..=3 {
        out.push(entry(format!("collar-{d}"), collar(d).expect("d >= 1")));
    }
    out.push(entry("csaszar-torus", csaszar_torus()));
    out.push(entry("rp2-6", rp2_6()));
    out.push(entry("cycle-3", cycle(3)));
    out.push(entry("cycle-4", cycle(4)));
    out.push(entry("path-2", path(2)));
    out.push(entry("path-3", path(3)));
    for d in [3, 4] {
        let sigma = SimplicialComplex::boundary_of_simplex(d).expect("d >= 1");
        let facet = sigma.facets()[0].clone();
        let c = build_c(&sigma, &facet).expect("boundary spheres admit a collar");
        out.push(entry(format!("c-boundary-delta-{d}"), c.c));
    }
    out
}

/// Entries with at most six vertices and dimension at most two.
pub fn corpus_small() -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| e.complex.vertices().len() <= 6 && e.complex.dim().unwrap_or(0) <= 2)
        .collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonempty complex on at most `max_vertices` vertices with facets of
/// dimension at most `max_dim`.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let labels: Vec<Vertex> = (1..=n)
        .map(|i| Vertex::new(i.to_string()).expect("valid"))
        .collect();
    let count = rng.gen_range(1..=6);
    let facets = (0..count).map(|_| {
        let size = rng.gen_range(1..=(max_dim + 1).min(n));
        Simplex::new(labels.choose_multiple(rng, size).cloned().collect()).expect("distinct")
    });
    SimplicialComplex::from_simplices(facets.collect::<Vec<_>>())
}

/// The closure of one to four randomly chosen faces of `ambient`.
pub fn random_subcomplex(rng: &mut impl Rng, ambient: &SimplicialComplex) -> SimplicialComplex {
    let faces: Vec<&Simplex> = ambient.faces().iter().collect();
    if faces.is_empty() {
        return SimplicialComplex::empty();
    }
    let count = rng.gen_range(1..=4);
    SimplicialComplex::from_simplices((0..count).map(|_| (*faces.choose(rng).expect("nonempty")).clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    fn get(name: &str) -> SimplicialComplex {
        corpus_entry(name).unwrap().complex
    }

    #[test]
    fn corpus_f_vectors() {
        assert_eq!(get("boundary-delta-3").f_vector(), vec![4, 6, 4]);
        assert_eq!(get("csaszar-torus").f_vector(), vec![7, 21, 14]);
        assert_eq!(get("rp2-6").f_vector(), vec![6, 15, 10]);
        assert_eq!(get("rp2-6").euler_characteristic(), 1);
        assert_eq!(get("c-boundary-delta-3").f_vector(), vec![7, 15, 9]);
    }

    #[test]
    fn names_unique() {
        let names: std::collections::BTreeSet<_> = corpus().into_iter().map(|e| e.name).collect();
        assert_eq!(names.len(), corpus().len());
        assert!(corpus_small().len() < corpus().len());
    }

    #[test]
    fn seeded_generation_repeats() {
        let a: Vec<_> = (0..5).map(|_| random_complex(&mut rng(7), 8, 3)).collect();
        let mut r = rng(7);
        let first = random_complex(&mut r, 8, 3);
        assert_eq!(a[0], first);
        assert!(first.vertices().len() <= 8 && first.dim().unwrap() <= 3);
        let m = get("boundary-delta-3");
        let l = random_subcomplex(&mut r, &m);
        assert!(!l.is_empty() && l.is_subcomplex_of(&m));
    }

    #[test]
    fn rp2_has_two_torsion() {
        let h = homology(&get("rp2-6"), false);
        assert_eq!(h.group(1).to_string(), "Z/2");
    }
}

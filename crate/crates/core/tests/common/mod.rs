//! Reference implementations used only by the integration tests. They are
//! deliberately naive and share no code with the library beyond the
//! complex type used to hand data around.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nervelab::homology::{ChainComplex, HomologyGroups};
use nervelab::{Simplex, SimplicialComplex};

/// One homology group: free rank and nontrivial torsion coefficients.
pub type Group = (usize, Vec<i128>);

/// Nonzero diagonal of the Smith normal form, by repeated min-pivot
/// elimination over `i128`.
pub fn snf_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                    if m[i][j].abs() == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let p = m[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t] / p;
            if q != 0 {
                for j in t..cols {
                    m[i][j] = m[i][j].checked_sub(q.checked_mul(m[t][j]).unwrap()).unwrap();
                }
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / p;
            if q != 0 {
                for i in t..rows {
                    m[i][j] = m[i][j].checked_sub(q.checked_mul(m[i][t]).unwrap()).unwrap();
                }
            }
            clean &= m[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // Divisibility: fold a row with a non-multiple into the pivot row.
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
        if let Some(i) = bad {
            for j in t..cols {
                m[t][j] += m[i][j];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

fn rank_and_torsion(m: Vec<Vec<i128>>) -> (usize, Vec<i128>) {
    let d = snf_diagonal(m);
    let torsion = d.iter().copied().filter(|&x| x > 1).collect();
    (d.len(), torsion)
}

/// Unreduced homology from dense boundary matrices, `boundaries[k]` being
/// `∂_k : C_k → C_{k-1}` as `rows = sizes[k-1]`. Trailing zero groups
/// are dropped.
pub fn homology_from_dense(sizes: &[usize], boundaries: &[Vec<Vec<i128>>]) -> Vec<Group> {
    let ranks: Vec<(usize, Vec<i128>)> = boundaries.iter().cloned().map(rank_and_torsion).collect();
    let groups = (0..sizes.len())
        .map(|k| {
            let rank_out = if k == 0 { 0 } else { ranks[k].0 };
            let (rank_in, torsion) = ranks.get(k + 1).cloned().unwrap_or((0, Vec::new()));
            (sizes[k] - rank_out - rank_in, torsion)
        })
        .collect();
    trim(groups)
}

/// Builds oriented boundary matrices from the face list alone.
pub fn homology(complex: &SimplicialComplex) -> Vec<Group> {
    let mut by_dim: Vec<Vec<Vec<String>>> = Vec::new();
    for f in complex.faces() {
        let labels: Vec<String> = f.vertices().iter().map(|v| v.as_str().to_owned()).collect();
        let d = labels.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(labels);
    }
    for faces in &mut by_dim {
        faces.sort();
    }
    let index: Vec<BTreeMap<&Vec<String>, usize>> = by_dim
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let sizes: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut boundaries = vec![Vec::new()];
    for k in 1..by_dim.len() {
        let mut m = vec![vec![0i128; sizes[k]]; sizes[k - 1]];
        for (j, f) in by_dim[k].iter().enumerate() {
            for i in 0..f.len() {
                let mut g = f.clone();
                g.remove(i);
                let row = index[k - 1][&g];
                m[row][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        boundaries.push(m);
    }
    homology_from_dense(&sizes, &boundaries)
}

/// Unreduced homology of an arbitrary chain complex, read densely.
pub fn chain_homology(cc: &ChainComplex) -> Vec<Group> {
    let sizes = cc.sizes().to_vec();
    let boundaries: Vec<Vec<Vec<i128>>> = (0..sizes.len())
        .map(|k| {
            cc.boundary(k)
                .to_dense()
                .into_iter()
                .map(|r| r.into_iter().map(i128::from).collect())
                .collect()
        })
        .collect();
    homology_from_dense(&sizes, &boundaries)
}

/// Drops trailing zero groups.
pub fn trim(mut h: Vec<Group>) -> Vec<Group> {
    while h.last().is_some_and(|(b, t)| *b == 0 && t.is_empty()) {
        h.pop();
    }
    h
}

/// Unreduced library homology in the oracle's shape.
pub fn from_library(h: &HomologyGroups) -> Vec<Group> {
    assert!(!h.reduced);
    trim(
        h.groups
            .iter()
            .map(|g| {
                let t = g.torsion.iter().map(|x| x.to_string().parse().unwrap()).collect();
                (g.betti, t)
            })
            .collect(),
    )
}

/// Homology of a `d`-sphere, unreduced (`d = 0` gives two points).
pub fn sphere(d: usize) -> Vec<Group> {
    if d == 0 {
        return vec![(2, vec![])];
    }
    let mut h = vec![(0, vec![]); d + 1];
    h[0] = (1, vec![]);
    h[d] = (1, vec![]);
    h
}

pub fn point() -> Vec<Group> {
    vec![(1, vec![])]
}

/// Index sets whose members share at least one face, by trying every subset.
pub fn nerve<I: Ord + Clone>(members: &BTreeMap<I, SimplicialComplex>) -> BTreeSet<BTreeSet<I>> {
    let keys: Vec<&I> = members.keys().collect();
    assert!(keys.len() < 20);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << keys.len()) {
        let chosen: Vec<&I> = (0..keys.len()).filter(|i| mask & (1 << i) != 0).map(|i| keys[i]).collect();
        let common = members[chosen[0]]
            .faces()
            .iter()
            .any(|f| chosen.iter().all(|k| members[*k].contains(f)));
        if common {
            out.insert(chosen.into_iter().cloned().collect());
        }
    }
    out
}

pub fn face_sets(complex: &SimplicialComplex) -> BTreeSet<BTreeSet<String>> {
    complex
        .faces()
        .iter()
        .map(|f| f.vertices().iter().map(|v| v.as_str().to_owned()).collect())
        .collect()
}

/// Atoms of a nested bracket label: `[[1],[1,2]]` ↦ `{1, 2}`.
pub fn atoms(label: &str) -> BTreeSet<String> {
    label
        .split(['[', ']', ','])
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Union of closed facets of `sd sd M` with a vertex whose realization
/// lies in `|L|`. A vertex of `sd sd M` sits in the open cell of the base
/// face spanned by all atoms of its label.
pub fn derived_neighborhood(sd2: &SimplicialComplex, core: &SimplicialComplex) -> BTreeSet<BTreeSet<String>> {
    let core_faces = face_sets(core);
    let inside = |label: &str| core_faces.contains(&atoms(label));
    let mut out = BTreeSet::new();
    for facet in sd2.facets() {
        if facet.vertices().iter().any(|v| inside(v.as_str())) {
            let labels: Vec<String> = facet.vertices().iter().map(|v| v.as_str().to_owned()).collect();
            for mask in 1u64..(1 << labels.len()) {
                out.insert(
                    (0..labels.len())
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| labels[i].clone())
                        .collect(),
                );
            }
        }
    }
    out
}

/// Connected components of the 1-skeleton, by union-find.
pub fn components(complex: &SimplicialComplex) -> usize {
    let verts: Vec<&str> = complex.vertices().iter().map(|v| v.as_str()).collect();
    let pos: BTreeMap<&str, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in complex.faces().iter().filter(|f| f.len() == 2) {
        let a = find(&mut parent, pos[e.vertices()[0].as_str()]);
        let b = find(&mut parent, pos[e.vertices()[1].as_str()]);
        parent[a] = b;
    }
    (0..verts.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Exhaustive fineness test for `sd K` over `K`: for every ordered pair of
/// disjoint faces `γ, δ` of `K` and every `α, β` of `sd K` carried inside
/// them, no edge of `sd K` joins `α` to `β`.
pub fn fineness_holds(complex: &SimplicialComplex, sd: &SimplicialComplex) -> bool {
    let carrier = |f: &Simplex| -> BTreeSet<String> {
        f.vertices().iter().flat_map(|v| atoms(v.as_str())).collect()
    };
    let edges: BTreeSet<(String, String)> = sd
        .faces()
        .iter()
        .filter(|f| f.len() == 2)
        .flat_map(|f| {
            let a = f.vertices()[0].as_str().to_owned();
            let b = f.vertices()[1].as_str().to_owned();
            [(a.clone(), b.clone()), (b, a)]
        })
        .collect();
    let base = face_sets(complex);
    let fine: Vec<(&Simplex, BTreeSet<String>)> = sd.faces().iter().map(|f| (f, carrier(f))).collect();
    for gamma in &base {
        for delta in base.iter().filter(|d| d.is_disjoint(gamma)) {
            let under = |c: &BTreeSet<String>| fine.iter().filter(|(_, k)| k.is_subset(c)).map(|(f, _)| *f).collect::<Vec<_>>();
            for alpha in under(gamma) {
                for beta in under(delta) {
                    for a in alpha.vertices() {
                        for b in beta.vertices() {
                            if edges.contains(&(a.as_str().to_owned(), b.as_str().to_owned())) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

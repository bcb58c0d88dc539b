//! Isomorphism of small complexes by backtracking over vertex bijections.
//! Exponential in the worst case; fine for a dozen vertices.

use std::collections::{BTreeMap, HashSet};

use crate::complex::{Simplex, SimplicialComplex, Vertex};

/// Per-vertex count of containing faces in each dimension.
fn signature(complex: &SimplicialComplex, v: &Vertex) -> Vec<usize> {
    let mut out = vec![0; complex.dim().map_or(0, |d| d + 1)];
    for f in complex.faces().iter().filter(|f| f.contains(v)) {
        out[f.dim()] += 1;
    }
    out
}

struct Search<'a> {
    order: Vec<Vertex>,
    /// Faces of the source, grouped by the position of their last vertex in `order`.
    completed_at: Vec<Vec<&'a Simplex>>,
    candidates: Vec<Vec<Vertex>>,
    target: &'a SimplicialComplex,
    map: BTreeMap<Vertex, Vertex>,
    used: HashSet<Vertex>,
}

impl Search<'_> {
    fn run(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let v = self.order[step].clone();
        for w in self.candidates[step].clone() {
            if self.used.contains(&w) {
                continue;
            }
            self.map.insert(v.clone(), w.clone());
            let ok = self.completed_at[step].iter().all(|f| {
                let image = Simplex::new(f.vertices().iter().map(|x| self.map[x].clone()).collect())
                    .expect("injective");
                self.target.contains(&image)
            });
            if ok {
                self.used.insert(w.clone());
                if self.run(step + 1) {
                    return true;
                }
                self.used.remove(&w);
            }
        }
        self.map.remove(&v);
        false
    }
}

/// A vertex bijection carrying the faces of `a` onto the faces of `b`.
pub fn find_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Option<BTreeMap<Vertex, Vertex>> {
    if a.f_vector() != b.f_vector() {
        return None;
    }
    let sig_b: Vec<(Vertex, Vec<usize>)> = b
        .vertices()
        .iter()
        .map(|w| (w.clone(), signature(b, w)))
        .collect();
    let mut rows: Vec<(Vertex, Vec<Vertex>)> = a
        .vertices()
        .iter()
        .map(|v| {
            let sig = signature(a, v);
            let cands = sig_b
                .iter()
                .filter(|(_, s)| *s == sig)
                .map(|(w, _)| w.clone())
                .collect();
            (v.clone(), cands)
        })
        .collect();
    // Most constrained first.
    rows.sort_by_key(|(_, c)| c.len());
    let position: BTreeMap<&Vertex, usize> =
        rows.iter().enumerate().map(|(i, (v, _))| (v, i)).collect();
    let mut completed_at = vec![Vec::new(); rows.len()];
    for f in a.faces() {
        let last = f.vertices().iter().map(|v| position[v]).max().expect("nonempty");
        completed_at[last].push(f);
    }
    let order = rows.iter().map(|(v, _)| v.clone()).collect();
    let candidates = rows.iter().map(|(_, c)| c.clone()).collect();
    let mut search = Search {
        order,
        completed_at,
        candidates,
        target: b,
        map: BTreeMap::new(),
        used: HashSet::new(),
    };
    search.run(0).then_some(search.map)
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    find_isomorphism(a, b).is_some()
}

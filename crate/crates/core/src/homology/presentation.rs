//! Edge-path group presentations and a Tietze simplifier.
//!
//! Triviality of a finitely presented group is undecidable, so
//! [`tietze_simplify`] is a heuristic: `Exhausted` or `Simplified` never
//! certifies that the group is nontrivial.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::chain::SparseMatrix;
use super::groups::AbelianGroup;
use super::snf::smith_normal_form;
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Default Tietze move budget.
pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

/// Words longer than this abort simplification.
const MAX_WORD_LEN: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

fn invert(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inv()).collect()
}

fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
fn cyclic_reduce(word: &[Letter]) -> Word {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

/// Least rotation of the word or its inverse; equal keys mean the relators
/// have the same normal closure.
fn canonical_key(word: &[Letter]) -> Word {
    let inv = invert(word);
    let n = word.len();
    (0..n)
        .flat_map(|r| {
            let a: Word = word[r..].iter().chain(&word[..r]).copied().collect();
            let b: Word = inv[r..].iter().chain(&inv[..r]).copied().collect();
            [a, b]
        })
        .min()
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator >= generators.len()) {
                return Err(Error::Input(format!(
                    "relator uses undeclared generator {}",
                    l.generator
                )));
            }
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn render_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.inverse {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            generators: &'a [String],
            relators: Vec<String>,
        }
        Repr {
            generators: &self.generators,
            relators: self.relators.iter().map(|r| self.render_word(r)).collect(),
        }
        .serialize(s)
    }
}

/// Breadth-first spanning tree from the least vertex, neighbors visited in
/// label order. Returns tree edges.
fn spanning_tree(complex: &SimplicialComplex) -> BTreeSet<Simplex> {
    let adj = complex.adjacency();
    let mut tree = BTreeSet::new();
    let Some(root) = complex.vertices().iter().next() else {
        return tree;
    };
    let mut seen: BTreeSet<&Vertex> = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let mut nbrs = adj[v].clone();
        nbrs.sort();
        for w in nbrs {
            if seen.insert(w) {
                tree.insert(Simplex::new(vec![v.clone(), w.clone()]).expect("distinct"));
                queue.push_back(w);
            }
        }
    }
    tree
}

/// Edge-path group: one generator per edge outside the spanning tree,
/// oriented from smaller to larger label, and one relator per triangle.
pub fn edge_path_presentation(complex: &SimplicialComplex) -> Result<GroupPresentation> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if !complex.is_connected() {
        return Err(Error::Disconnected);
    }
    let tree = spanning_tree(complex);
    let mut generator_of: BTreeMap<&Simplex, usize> = BTreeMap::new();
    let mut generators = Vec::new();
    for e in complex.faces_of_dim(1) {
        if !tree.contains(e) {
            generator_of.insert(e, generators.len());
            generators.push(e.to_string());
        }
    }
    let edge = |a: &Vertex, b: &Vertex| Simplex::new(vec![a.clone(), b.clone()]).expect("distinct");
    let relators = complex
        .faces_of_dim(2)
        .map(|t| {
            let [a, b, c] = [&t.vertices()[0], &t.vertices()[1], &t.vertices()[2]];
            // a -> b -> c -> a
            [(edge(a, b), false), (edge(b, c), false), (edge(a, c), true)]
                .into_iter()
                .filter_map(|(e, inverse)| generator_of.get(&e).map(|&g| Letter::new(g, inverse)))
                .collect()
        })
        .collect();
    GroupPresentation::new(generators, relators)
}

/// Cokernel of the relator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    let n = p.generators.len();
    let cols = p
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|l| (l.generator, if l.inverse { -1 } else { 1 }))
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&SparseMatrix::from_columns(n, cols));
    AbelianGroup {
        betti: n - snf.rank,
        torsion: snf.torsion().map(|t| t.magnitude().clone()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TietzeStatus {
    /// No generators remain: the group is trivial.
    Trivialized,
    /// A fixed point of the available moves with generators remaining.
    Simplified,
    /// Budget (or word-length guard) ran out first.
    Exhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct TietzeOutcome {
    pub presentation: GroupPresentation,
    pub status: TietzeStatus,
    pub moves: usize,
}

/// Relator cleanup plus generator elimination. Every move preserves the
/// isomorphism type of the presented group.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> TietzeOutcome {
    let mut generators = p.generators.clone();
    let mut relators: Vec<Word> = p.relators.clone();
    let mut moves = 0usize;

    let outcome = |generators: Vec<String>, relators: Vec<Word>, status, moves| TietzeOutcome {
        presentation: GroupPresentation {
            generators,
            relators,
        },
        status,
        moves,
    };

    loop {
        // Cleanup: reduce, drop trivial and duplicate relators.
        let mut seen = BTreeSet::new();
        let before = relators.clone();
        relators = relators
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty() && seen.insert(canonical_key(r)))
            .collect();
        if relators != before {
            moves += 1;
        }
        if generators.is_empty() {
            return outcome(generators, relators, TietzeStatus::Trivialized, moves);
        }
        if moves >= budget {
            return outcome(generators, relators, TietzeStatus::Exhausted, moves);
        }

        // Find (relator, generator) with the generator occurring exactly once.
        let mut order: Vec<usize> = (0..relators.len()).collect();
        order.sort_by_key(|&i| (relators[i].len(), i));
        let pick = order.into_iter().find_map(|i| {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for l in &relators[i] {
                *counts.entry(l.generator).or_default() += 1;
            }
            counts
                .into_iter()
                .find(|&(_, c)| c == 1)
                .map(|(g, _)| (i, g))
        });
        let Some((ri, g)) = pick else {
            return outcome(generators, relators, TietzeStatus::Simplified, moves);
        };

        // Rotate so g comes first: g^e W = 1, so g = W^{-1} (e = +1) or W.
        let r = relators.remove(ri);
        let pos = r.iter().position(|l| l.generator == g).expect("present");
        let rotated: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
        let rest = &rotated[1..];
        let replacement: Word = if rotated[0].inverse {
            rest.to_vec()
        } else {
            invert(rest)
        };
        let replacement_inv = invert(&replacement);
        let mut too_long = false;
        for rel in relators.iter_mut() {
            let mut out = Vec::with_capacity(rel.len());
            for &l in rel.iter() {
                if l.generator == g {
                    out.extend_from_slice(if l.inverse { &replacement_inv } else { &replacement });
                } else {
                    out.push(l);
                }
            }
            *rel = free_reduce(&out);
            too_long |= rel.len() > MAX_WORD_LEN;
        }
        // Renumber generators above g.
        generators.remove(g);
        for rel in relators.iter_mut() {
            for l in rel.iter_mut() {
                if l.generator > g {
                    l.generator -= 1;
                }
            }
        }
        moves += 1;
        if too_long {
            return outcome(generators, relators, TietzeStatus::Exhausted, moves);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn one_gen(relators: Vec<Word>) -> GroupPresentation {
        GroupPresentation::new(vec!["a".into()], relators).unwrap()
    }

    #[test]
    fn abelianizations() {
        let a = Letter::new(0, false);
        assert_eq!(abelianization(&one_gen(vec![])), AbelianGroup::free(1));
        let z2 = abelianization(&one_gen(vec![vec![a, a]]));
        assert_eq!(z2.betti, 0);
        assert_eq!(z2.torsion, vec![BigUint::from(2u32)]);
    }

    #[test]
    fn undeclared_generator_rejected() {
        assert!(GroupPresentation::new(vec![], vec![vec![Letter::new(0, false)]]).is_err());
    }

    #[test]
    fn edge_path_counts() {
        let cycle = SimplicialComplex::boundary_of_simplex(2).unwrap();
        let p = edge_path_presentation(&cycle).unwrap();
        assert_eq!((p.generators().len(), p.relators().len()), (1, 0));

        let sphere = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let p = edge_path_presentation(&sphere).unwrap();
        assert_eq!((p.generators().len(), p.relators().len()), (3, 4));
        assert!(abelianization(&p).is_trivial());

        let edge = SimplicialComplex::simplex(1);
        assert!(edge_path_presentation(&edge).unwrap().generators().is_empty());

        let two = SimplicialComplex::from_facets([["a"], ["b"]]).unwrap();
        assert_eq!(edge_path_presentation(&two).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn tietze_examples() {
        let a = Letter::new(0, false);
        let out = tietze_simplify(&one_gen(vec![vec![a]]), 10);
        assert_eq!(out.status, TietzeStatus::Trivialized);
        assert!(out.presentation.generators().is_empty());

        let out = tietze_simplify(&one_gen(vec![]), 10);
        assert_ne!(out.status, TietzeStatus::Trivialized);
        assert_eq!(out.presentation.generators().len(), 1);

        let sphere = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let out = tietze_simplify(&edge_path_presentation(&sphere).unwrap(), 100);
        assert_eq!(out.status, TietzeStatus::Trivialized);
    }

    #[test]
    fn tietze_zero_budget_is_exhausted() {
        let sphere = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let out = tietze_simplify(&edge_path_presentation(&sphere).unwrap(), 0);
        assert_eq!(out.status, TietzeStatus::Exhausted);
    }

    #[test]
    fn reductions() {
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert_eq!(cyclic_reduce(&[a.inv(), b, a, a, a.inv()]), vec![b]);
        assert_eq!(canonical_key(&[a, b]), canonical_key(&[b.inv(), a.inv()]));
    }
}

//! Covers, nerves and the blowup complex.
//!
//! Open covers are modeled combinatorially: a [`SubcomplexCover`] is a
//! family of subcomplexes of one ambient complex. Derived neighborhoods are
//! the intended source of such covers. The blowup complex
//! `⋃_{σ ∈ nerve} σ × U_σ` is a [`ProductCellComplex`] built under the
//! assumption that members are subcomplexes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::{chain_homology, homology, is_acyclic, HomologyGroups};
use crate::neighborhoods::{greedy_collapse, is_cone};
use crate::product::{ProductCell, ProductCellComplex};

/// Closure of the given vertex sets, skipping empty ones.
fn closure_of_sets(sets: impl IntoIterator<Item = BTreeSet<Vertex>>) -> SimplicialComplex {
    SimplicialComplex::from_simplices(
        sets.into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| Simplex::from_sorted(s.into_iter().collect())),
    )
}

/// An indexed family of finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCover {
    members: BTreeMap<Vertex, BTreeSet<String>>,
}

impl SetCover {
    pub fn new<I, S, T>(members: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<T>)>,
        S: AsRef<str>,
        T: Into<String>,
    {
        let members = members
            .into_iter()
            .map(|(i, set)| {
                let index = Vertex::new(i)?;
                let set: BTreeSet<String> = set.into_iter().map(Into::into).collect();
                if set.is_empty() {
                    return Err(Error::EmptyMember(index.to_string()));
                }
                Ok((index, set))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { members })
    }

    pub fn members(&self) -> &BTreeMap<Vertex, BTreeSet<String>> {
        &self.members
    }
}

/// A subfamily spans a face iff its members share an element.
pub fn nerve_of_sets(cover: &SetCover) -> SimplicialComplex {
    let mut holders: BTreeMap<&String, BTreeSet<Vertex>> = BTreeMap::new();
    for (i, set) in &cover.members {
        for x in set {
            holders.entry(x).or_default().insert(i.clone());
        }
    }
    closure_of_sets(holders.into_values())
}

/// Subcomplexes of a common ambient complex, indexed by vertex labels so
/// that the nerve lives on the index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexCover {
    ambient: SimplicialComplex,
    members: BTreeMap<Vertex, SimplicialComplex>,
}

impl SubcomplexCover {
    pub fn new(
        ambient: SimplicialComplex,
        members: impl IntoIterator<Item = (Vertex, SimplicialComplex)>,
    ) -> Result<Self> {
        Self::build(ambient, members, false)
    }

    /// Like [`SubcomplexCover::new`] but silently drops empty members.
    pub fn new_dropping_empty(
        ambient: SimplicialComplex,
        members: impl IntoIterator<Item = (Vertex, SimplicialComplex)>,
    ) -> Result<Self> {
        Self::build(ambient, members, true)
    }

    fn build(
        ambient: SimplicialComplex,
        members: impl IntoIterator<Item = (Vertex, SimplicialComplex)>,
        drop_empty: bool,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (index, member) in members {
            if member.is_empty() {
                if drop_empty {
                    continue;
                }
                return Err(Error::EmptyMember(index.to_string()));
            }
            member.check_subcomplex_of(&ambient)?;
            out.insert(index, member);
        }
        Ok(Self {
            ambient,
            members: out,
        })
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn members(&self) -> &BTreeMap<Vertex, SimplicialComplex> {
        &self.members
    }

    pub fn member(&self, index: &Vertex) -> Result<&SimplicialComplex> {
        self.members
            .get(index)
            .ok_or_else(|| Error::UnknownIndex(index.to_string()))
    }

    /// `U_S`: face-set intersection of the selected members.
    pub fn intersection(&self, indices: &[Vertex]) -> Result<SimplicialComplex> {
        let (first, rest) = indices
            .split_first()
            .ok_or_else(|| Error::Input("empty index set".into()))?;
        let mut acc = self.member(first)?.clone();
        for i in rest {
            acc = acc.intersection(self.member(i)?);
        }
        Ok(acc)
    }

    /// `U_∅`: the union of all members.
    pub fn union(&self) -> SimplicialComplex {
        self.members
            .values()
            .fold(SimplicialComplex::empty(), |acc, m| acc.union(m))
    }

    /// A subfamily intersects iff its members share a vertex.
    pub fn nerve(&self) -> SimplicialComplex {
        let mut holders: BTreeMap<&Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for (i, m) in &self.members {
            for v in m.vertices() {
                holders.entry(v).or_default().insert(i.clone());
            }
        }
        closure_of_sets(holders.into_values())
    }
}

pub fn nerve_of_subcomplexes(cover: &SubcomplexCover) -> SimplicialComplex {
    cover.nerve()
}

pub fn cover_intersection(cover: &SubcomplexCover, indices: &[Vertex]) -> Result<SimplicialComplex> {
    cover.intersection(indices)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub indices: Vec<String>,
    pub cone_apex: Option<String>,
    pub greedy_collapsible: bool,
    pub is_acyclic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverClass {
    /// Every nonempty intersection is a cone or greedily collapses.
    CertifiedGood,
    /// Every nonempty intersection is acyclic.
    Acyclic,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverClassification {
    pub class: CoverClass,
    pub intersections: Vec<IntersectionReport>,
}

pub fn classify_cover(cover: &SubcomplexCover) -> Result<CoverClassification> {
    let mut intersections = Vec::new();
    for face in cover.nerve().faces() {
        let x = cover.intersection(face.vertices())?;
        let apex = is_cone(&x);
        let collapsible = greedy_collapse(&x)?.collapsed();
        intersections.push(IntersectionReport {
            indices: face.vertices().iter().map(ToString::to_string).collect(),
            cone_apex: apex.map(|a| a.to_string()),
            greedy_collapsible: collapsible,
            is_acyclic: is_acyclic(&x),
        });
    }
    let class = if intersections
        .iter()
        .all(|r| r.cone_apex.is_some() || r.greedy_collapsible)
    {
        CoverClass::CertifiedGood
    } else if intersections.iter().all(|r| r.is_acyclic) {
        CoverClass::Acyclic
    } else {
        CoverClass::Neither
    };
    Ok(CoverClassification {
        class,
        intersections,
    })
}

/// Cells `σ × τ` with `σ` a nerve face and `τ` a face of `U_σ`.
pub fn blowup_complex(cover: &SubcomplexCover) -> Result<ProductCellComplex> {
    let mut cells = BTreeSet::new();
    for sigma in cover.nerve().faces() {
        for tau in cover.intersection(sigma.vertices())?.faces() {
            cells.insert(ProductCell::new(sigma.clone(), tau.clone()));
        }
    }
    ProductCellComplex::new(cells)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum NerveTheoremReport {
    Checked {
        nerve: HomologyGroups,
        union: HomologyGroups,
        blowup: HomologyGroups,
        agree: bool,
    },
    PreconditionFailed {
        /// Index sets whose intersection is not acyclic.
        offending: Vec<Vec<String>>,
    },
}

impl NerveTheoremReport {
    pub fn agrees(&self) -> bool {
        matches!(self, NerveTheoremReport::Checked { agree: true, .. })
    }
}

/// Compares the homology of the nerve, the union and the blowup complex
/// as abstract groups in every dimension.
pub fn verify_nerve_theorem(cover: &SubcomplexCover) -> Result<NerveTheoremReport> {
    let nerve = cover.nerve();
    let mut offending = Vec::new();
    for face in nerve.faces() {
        if !is_acyclic(&cover.intersection(face.vertices())?) {
            offending.push(face.vertices().iter().map(ToString::to_string).collect());
        }
    }
    if !offending.is_empty() {
        return Ok(NerveTheoremReport::PreconditionFailed { offending });
    }
    let blowup = blowup_complex(cover)?;
    let h_nerve = homology(&nerve, false);
    let h_union = homology(&cover.union(), false);
    let h_blowup = chain_homology(&blowup.chain_complex(), false);
    let agree = h_nerve.isomorphic(&h_union) && h_union.isomorphic(&h_blowup);
    Ok(NerveTheoremReport::Checked {
        nerve: h_nerve,
        union: h_union,
        blowup: h_blowup,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star_cover;

    fn v(s: &str) -> Vertex {
        Vertex::new(s).unwrap()
    }

    fn cx(facets: &[&[&str]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn set_nerves() {
        let c = SetCover::new([("a", vec!["1", "2"]), ("b", vec!["2", "3"]), ("c", vec!["3", "1"])]).unwrap();
        assert_eq!(nerve_of_sets(&c), cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]));
        let c = SetCover::new([("a", vec!["1"]), ("b", vec!["1"]), ("c", vec!["1"])]).unwrap();
        assert_eq!(nerve_of_sets(&c), SimplicialComplex::from_facets([["a", "b", "c"]]).unwrap());
        let c = SetCover::new([("a", vec!["1"]), ("b", vec!["2"]), ("c", vec!["3"])]).unwrap();
        assert_eq!(nerve_of_sets(&c).f_vector(), vec![3]);
        let empty: Vec<&str> = vec![];
        assert!(matches!(SetCover::new([("a", empty)]), Err(Error::EmptyMember(_))));
    }

    #[test]
    fn subcomplex_nerves() {
        let amb = cx(&[&["a", "b"], &["c", "d"]]);
        let cover = SubcomplexCover::new(
            amb.clone(),
            [(v("x"), cx(&[&["a", "b"]])), (v("y"), cx(&[&["c", "d"]]))],
        )
        .unwrap();
        assert_eq!(cover.nerve().f_vector(), vec![2]);
        assert!(cover.intersection(&[v("x"), v("y")]).unwrap().is_empty());
        assert_eq!(cover.intersection(&[v("x")]).unwrap(), cx(&[&["a", "b"]]));
        assert!(matches!(cover.intersection(&[v("z")]), Err(Error::UnknownIndex(_))));

        let nested = SubcomplexCover::new(
            amb.clone(),
            [(v("x"), cx(&[&["a"]])), (v("y"), cx(&[&["a", "b"]]))],
        )
        .unwrap();
        assert_eq!(nested.nerve(), cx(&[&["x", "y"]]));

        let bad = SubcomplexCover::new(amb.clone(), [(v("x"), cx(&[&["a", "c"]]))]);
        assert!(matches!(bad, Err(Error::NotSubcomplex(_))));
        let empty = SubcomplexCover::new(amb.clone(), [(v("x"), SimplicialComplex::empty())]);
        assert!(matches!(empty, Err(Error::EmptyMember(_))));
        let dropped =
            SubcomplexCover::new_dropping_empty(amb, [(v("x"), SimplicialComplex::empty())]).unwrap();
        assert!(dropped.members().is_empty());
    }

    #[test]
    fn edge_cover_of_triangle_boundary() {
        let cycle = SimplicialComplex::boundary_of_simplex(2).unwrap();
        let cover = SubcomplexCover::new(
            cycle.clone(),
            [
                (v("a"), cx(&[&["1", "2"]])),
                (v("b"), cx(&[&["2", "3"]])),
                (v("c"), cx(&[&["1", "3"]])),
            ],
        )
        .unwrap();
        let class = classify_cover(&cover).unwrap();
        assert_eq!(class.class, CoverClass::CertifiedGood);
        assert_eq!(cover.nerve(), cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]));
        assert!(verify_nerve_theorem(&cover).unwrap().agrees());
    }

    #[test]
    fn bad_member_fails_precondition() {
        let cycle = SimplicialComplex::boundary_of_simplex(2).unwrap();
        let cover = SubcomplexCover::new(cycle.clone(), [(v("a"), cycle)]).unwrap();
        assert_eq!(classify_cover(&cover).unwrap().class, CoverClass::Neither);
        match verify_nerve_theorem(&cover).unwrap() {
            NerveTheoremReport::PreconditionFailed { offending } => {
                assert_eq!(offending, vec![vec!["a".to_string()]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn blowups() {
        let path = cx(&[&["a", "b"], &["b", "c"]]);
        let cover = SubcomplexCover::new(
            path.clone(),
            [(v("1"), cx(&[&["a", "b"]])), (v("2"), cx(&[&["b", "c"]]))],
        )
        .unwrap();
        let blow = blowup_complex(&cover).unwrap();
        // 3 + 3 cells over the two vertices, 1 over the edge (the point b).
        assert_eq!(blow.len(), 7);
        assert!(blow.chain_complex().boundary_squares_to_zero());
        assert!(chain_homology(&blow.chain_complex(), true).is_trivial());

        let torus_like = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let single = SubcomplexCover::new(torus_like.clone(), [(v("only"), torus_like.clone())]).unwrap();
        let blow = blowup_complex(&single).unwrap();
        assert_eq!(blow.len(), torus_like.num_faces());
        assert_eq!(chain_homology(&blow.chain_complex(), false), homology(&torus_like, false));

        let cycle = SimplicialComplex::boundary_of_simplex(2).unwrap();
        let stars = star_cover(&cycle).unwrap();
        let blow = blowup_complex(&stars).unwrap();
        assert_eq!(chain_homology(&blow.chain_complex(), false), homology(&cycle, false));
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::chain::{simplicial_chain_complex, ChainComplex};
use super::snf::{rank_mod_p, smith_normal_form};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::Result;

/// A finitely generated abelian group `Z^betti ⊕ Z/t_1 ⊕ …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub betti: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigUint>,
}

fn serialize_torsion<S: Serializer>(torsion: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(torsion.len()))?;
    for t in torsion {
        match u64::try_from(t) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&t.to_string())?,
        }
    }
    seq.end()
}

impl AbelianGroup {
    pub fn free(betti: usize) -> Self {
        Self {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Coefficients a homology computation used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum Coefficients {
    Integers,
    ModP(u64),
}

/// Homology in dimensions `0..=dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroups {
    pub reduced: bool,
    pub coefficients: Coefficients,
    pub groups: Vec<AbelianGroup>,
}

impl HomologyGroups {
    /// Integral groups given dimension by dimension.
    pub fn integral(reduced: bool, groups: Vec<AbelianGroup>) -> Self {
        Self {
            reduced,
            coefficients: Coefficients::Integers,
            groups,
        }
    }

    pub fn group(&self, k: usize) -> AbelianGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Groups with trailing zeros dropped, for comparing complexes of
    /// different dimension.
    pub fn significant(&self) -> &[AbelianGroup] {
        let end = self
            .groups
            .iter()
            .rposition(|g| !g.is_trivial())
            .map_or(0, |i| i + 1);
        &self.groups[..end]
    }

    /// Same abstract groups in every dimension.
    pub fn isomorphic(&self, other: &Self) -> bool {
        self.reduced == other.reduced && self.significant() == other.significant()
    }

    pub fn is_trivial(&self) -> bool {
        self.significant().is_empty()
    }

    /// `Σ (-1)^k betti_k`.
    pub fn alternating_betti_sum(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Integer homology of a chain complex.
pub fn chain_homology(cc: &ChainComplex, reduced: bool) -> HomologyGroups {
    let cc = if reduced { cc.clone().augmented() } else { cc.clone() };
    let snfs: Vec<_> = (0..cc.sizes().len())
        .map(|k| smith_normal_form(cc.boundary(k)))
        .collect();
    let groups = (0..cc.sizes().len())
        .map(|k| {
            let rank_out = snfs[k].rank;
            let (rank_in, torsion) = match snfs.get(k + 1) {
                Some(s) => (
                    s.rank,
                    s.torsion()
                        .map(|t| t.magnitude().clone())
                        .collect::<Vec<_>>(),
                ),
                None => (0, Vec::new()),
            };
            AbelianGroup {
                betti: cc.sizes()[k] - rank_out - rank_in,
                torsion,
            }
        })
        .collect();
    HomologyGroups {
        reduced,
        coefficients: Coefficients::Integers,
        groups,
    }
}

/// Homology over `Z/p`: only Betti numbers, no torsion.
pub fn chain_homology_mod_p(cc: &ChainComplex, reduced: bool, p: u64) -> Result<HomologyGroups> {
    let cc = if reduced { cc.clone().augmented() } else { cc.clone() };
    let ranks = (0..cc.sizes().len())
        .map(|k| rank_mod_p(cc.boundary(k), p))
        .collect::<Result<Vec<_>>>()?;
    let groups = (0..cc.sizes().len())
        .map(|k| AbelianGroup::free(cc.sizes()[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0)))
        .collect();
    Ok(HomologyGroups {
        reduced,
        coefficients: Coefficients::ModP(p),
        groups,
    })
}

pub fn homology(complex: &SimplicialComplex, reduced: bool) -> HomologyGroups {
    chain_homology(&simplicial_chain_complex(complex), reduced)
}

pub fn homology_mod_p(complex: &SimplicialComplex, reduced: bool, p: u64) -> Result<HomologyGroups> {
    chain_homology_mod_p(&simplicial_chain_complex(complex), reduced, p)
}

/// Empty, or all reduced homology vanishes.
pub fn is_acyclic(complex: &SimplicialComplex) -> bool {
    complex.is_empty() || homology(complex, true).is_trivial()
}

/// Reduced homology equals that of `S^d`. Homology comparison only; no
/// manifold test.
pub fn is_homology_sphere(complex: &SimplicialComplex, d: usize) -> bool {
    if complex.is_empty() {
        return false;
    }
    let h = homology(complex, true);
    let mut expected = vec![AbelianGroup::default(); d + 1];
    expected[d] = AbelianGroup::free(1);
    h.significant() == expected.as_slice()
}

/// Nonempty with trivial reduced homology: the homology of `B^d` for any
/// `d`. Homology comparison only.
pub fn is_homology_ball(complex: &SimplicialComplex, _d: usize) -> bool {
    !complex.is_empty() && homology(complex, true).is_trivial()
}

/// Best-effort pseudomanifold test: pure, every ridge in exactly two
/// facets, and facets connected through ridges.
pub fn is_pseudomanifold(complex: &SimplicialComplex) -> bool {
    let Some(d) = complex.dim() else {
        return false;
    };
    if d == 0 || !complex.is_pure() {
        return d == 0 && complex.vertices().len() == 2;
    }
    let facets: Vec<&Simplex> = complex.faces_of_dim(d).collect();
    let mut ridge_facets: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary_faces() {
            ridge_facets.entry(r).or_default().push(i);
        }
    }
    if ridge_facets.values().any(|fs| fs.len() != 2) {
        return false;
    }
    let mut adj = vec![Vec::new(); facets.len()];
    for fs in ridge_facets.values() {
        adj[fs[0]].push(fs[1]);
        adj[fs[1]].push(fs[0]);
    }
    let mut seen = BTreeSet::from([0usize]);
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if seen.insert(j) {
                stack.push(j);
            }
        }
    }
    seen.len() == facets.len()
}

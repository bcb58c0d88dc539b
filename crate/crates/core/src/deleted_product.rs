//! The simplicial deleted product, its swap involution, remoteness of faces
//! and the fineness test for subdivisions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{chain_homology, ChainComplex, HomologyGroups};
use crate::product::{ProductCell, ProductCellComplex};
use crate::subdivision::{carrier_map, sd};

/// All cells `σ × τ` with `σ, τ ∈ K` disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletedProductComplex {
    base: SimplicialComplex,
    cells: ProductCellComplex,
}

impl DeletedProductComplex {
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn cells(&self) -> &ProductCellComplex {
        &self.cells
    }

    pub fn chain_complex(&self) -> ChainComplex {
        self.cells.chain_complex()
    }

    pub fn homology(&self, reduced: bool) -> HomologyGroups {
        chain_homology(&self.chain_complex(), reduced)
    }

    /// The swap `(σ, τ) ↦ (τ, σ)`.
    pub fn involution(&self, cell: &ProductCell) -> ProductCell {
        cell.swapped()
    }

    /// The swap fixes no cell and maps the cell set onto itself.
    pub fn involution_is_free(&self) -> bool {
        self.cells.cells().iter().all(|c| {
            let image = c.swapped();
            image != *c && self.cells.cells().contains(&image) && image.swapped() == *c
        })
    }

    /// The number of `(p,q)`-cells equals the number of `(q,p)`-cells.
    pub fn bidegrees_symmetric(&self) -> bool {
        let counts = self.cells.bidegree_counts();
        counts
            .iter()
            .all(|(&(p, q), n)| counts.get(&(q, p)) == Some(n))
    }
}

pub fn deleted_product(complex: &SimplicialComplex) -> Result<DeletedProductComplex> {
    if complex.vertices().len() < 2 {
        return Err(Error::TooFewVertices);
    }
    let faces: Vec<&Simplex> = complex.faces().iter().collect();
    let mut cells = BTreeSet::new();
    for a in &faces {
        for b in &faces {
            if a.is_disjoint(b) {
                cells.insert(ProductCell::new((*a).clone(), (*b).clone()));
            }
        }
    }
    Ok(DeletedProductComplex {
        base: complex.clone(),
        cells: ProductCellComplex::new(cells)?,
    })
}

fn check_face(face: &Simplex, complex: &SimplicialComplex) -> Result<()> {
    if complex.contains(face) {
        Ok(())
    } else {
        Err(Error::UnknownFace(face.to_string()))
    }
}

fn joining_edge(alpha: &Simplex, beta: &Simplex, complex: &SimplicialComplex) -> Option<Simplex> {
    alpha.vertices().iter().find_map(|a| {
        beta.vertices().iter().find_map(|b| {
            let edge = Simplex::vertex(a.clone()).with_vertex(b);
            (a != b && complex.contains(&edge)).then_some(edge)
        })
    })
}

/// No edge of `L` joins a vertex of `α` to a vertex of `β`. Shared vertices
/// are not edges and do not count.
pub fn is_remote(alpha: &Simplex, beta: &Simplex, complex: &SimplicialComplex) -> Result<bool> {
    check_face(alpha, complex)?;
    check_face(beta, complex)?;
    Ok(joining_edge(alpha, beta, complex).is_none())
}

/// Disjoint and remote.
pub fn is_strictly_remote(
    alpha: &Simplex,
    beta: &Simplex,
    complex: &SimplicialComplex,
) -> Result<bool> {
    Ok(is_remote(alpha, beta, complex)? && alpha.is_disjoint(beta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemotenessReport {
    pub remote: bool,
    pub disjoint: bool,
    /// An edge joining the two faces, if any.
    pub edge: Option<String>,
}

pub fn remoteness_report(
    alpha: &Simplex,
    beta: &Simplex,
    complex: &SimplicialComplex,
) -> Result<RemotenessReport> {
    check_face(alpha, complex)?;
    check_face(beta, complex)?;
    let edge = joining_edge(alpha, beta, complex);
    Ok(RemotenessReport {
        remote: edge.is_none(),
        disjoint: alpha.is_disjoint(beta),
        edge: edge.map(|e| e.to_string()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinenessCounterexample {
    pub gamma: String,
    pub delta: String,
    pub alpha: String,
    pub beta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FinenessReport {
    Pass { edges_checked: usize },
    Fail(FinenessCounterexample),
}

impl FinenessReport {
    pub fn passed(&self) -> bool {
        matches!(self, FinenessReport::Pass { .. })
    }
}

/// Whenever `γ, δ ∈ K` are disjoint, faces of `L` carried by `γ` and by `δ`
/// must be remote in `L`.
///
/// With a monotone carrier map a violation always shows up on a single
/// edge `{a,b}` of `L` whose endpoints have disjoint carriers, so only edges
/// are scanned. The map is validated first: it must cover every face of
/// `L`, land in `K`, and be monotone.
pub fn fineness_check(
    fine: &SimplicialComplex,
    coarse: &SimplicialComplex,
    carriers: &BTreeMap<Simplex, Simplex>,
) -> Result<FinenessReport> {
    for face in fine.faces() {
        let c = carriers
            .get(face)
            .ok_or_else(|| Error::BadCarrier(format!("no carrier for {face}")))?;
        if !coarse.contains(c) {
            return Err(Error::BadCarrier(format!("carrier {c} of {face} is not in K")));
        }
        for b in face.boundary_faces().into_iter().filter(|b| !b.is_empty()) {
            if !carriers.get(&b).is_some_and(|cb| cb.is_subset(c)) {
                return Err(Error::BadCarrier(format!(
                    "carrier of {b} is not inside the carrier {c} of {face}"
                )));
            }
        }
    }
    let mut edges_checked = 0;
    for edge in fine.faces_of_dim(1) {
        edges_checked += 1;
        let [a, b] = edge.vertices() else { unreachable!() };
        let (a, b) = (Simplex::vertex(a.clone()), Simplex::vertex(b.clone()));
        let (ca, cb) = (&carriers[&a], &carriers[&b]);
        if ca.is_disjoint(cb) {
            return Ok(FinenessReport::Fail(FinenessCounterexample {
                gamma: ca.to_string(),
                delta: cb.to_string(),
                alpha: a.to_string(),
                beta: b.to_string(),
            }));
        }
    }
    Ok(FinenessReport::Pass { edges_checked })
}

/// [`fineness_check`] for `L = sd K` with the subdivision carrier map.
pub fn fineness_check_sd(complex: &SimplicialComplex) -> Result<FinenessReport> {
    let fine = sd(complex)?;
    let carriers = carrier_map(&fine)?.into_iter().collect();
    fineness_check(&fine, complex, &carriers)
}

/// `3k ≤ 2d − 3`.
pub fn in_metastable_range(k: u64, d: u64) -> bool {
    3 * k as i128 <= 2 * d as i128 - 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex as K;

    fn s(l: &[&str]) -> Simplex {
        Simplex::from_labels(l.iter().copied()).unwrap()
    }

    #[test]
    fn edge_gives_two_points() {
        let dp = deleted_product(&K::simplex(1)).unwrap();
        assert_eq!(dp.cells().len(), 2);
        let h = dp.homology(false);
        assert_eq!(h.betti(), vec![2]);
        assert!(dp.involution_is_free());
    }

    #[test]
    fn triangle_boundary_gives_circle() {
        let dp = deleted_product(&K::boundary_of_simplex(2).unwrap()).unwrap();
        let counts = dp.cells().bidegree_counts();
        assert_eq!(counts[&(0, 0)], 6);
        assert_eq!(counts[&(0, 1)] + counts[&(1, 0)], 6);
        assert!(dp.chain_complex().boundary_squares_to_zero());
        assert_eq!(dp.homology(false).betti(), vec![1, 1]);
        assert!(dp.bidegrees_symmetric());
    }

    #[test]
    fn too_small() {
        assert_eq!(deleted_product(&K::simplex(0)), Err(Error::TooFewVertices));
    }

    #[test]
    fn remoteness() {
        let c4 = K::from_facets([["1", "2"], ["2", "3"], ["3", "4"], ["1", "4"]]).unwrap();
        assert!(is_remote(&s(&["1"]), &s(&["3"]), &c4).unwrap());
        let c3 = K::boundary_of_simplex(2).unwrap();
        assert!(!is_remote(&s(&["1"]), &s(&["2"]), &c3).unwrap());
        assert!(is_remote(&s(&["1"]), &s(&["9"]), &c3).is_err());

        let sd2 = sd(&K::simplex(2)).unwrap();
        assert!(is_remote(&s(&["[1]"]), &s(&["[2]", "[2,3]"]), &sd2).unwrap());

        let r = remoteness_report(&s(&["1", "2"]), &s(&["2"]), &c3).unwrap();
        assert!(!r.disjoint);
        assert!(!is_strictly_remote(&s(&["1"]), &s(&["1"]), &c3).unwrap());
        assert!(is_remote(&s(&["1"]), &s(&["1"]), &c3).unwrap());
    }

    #[test]
    fn fineness() {
        assert!(fineness_check_sd(&K::simplex(2)).unwrap().passed());
        let path = K::from_facets([["a", "b"], ["b", "c"], ["c", "d"]]).unwrap();
        let identity = path.faces().iter().map(|f| (f.clone(), f.clone())).collect();
        let report = fineness_check(&path, &path, &identity).unwrap();
        assert!(!report.passed());
        assert!(fineness_check_sd(&path).unwrap().passed());
    }

    #[test]
    fn bad_carriers() {
        let e = K::simplex(1);
        let mut m: BTreeMap<_, _> = e.faces().iter().map(|f| (f.clone(), f.clone())).collect();
        m.insert(s(&["1", "2"]), s(&["1"]));
        assert!(matches!(fineness_check(&e, &e, &m), Err(Error::BadCarrier(_))));
        m.insert(s(&["1", "2"]), s(&["1", "2"]));
        m.remove(&s(&["1"]));
        assert!(matches!(fineness_check(&e, &e, &m), Err(Error::BadCarrier(_))));
    }

    #[test]
    fn metastable() {
        assert!(in_metastable_range(3, 6));
        assert!(!in_metastable_range(2, 4));
        assert!(in_metastable_range(0, 2));
        assert!(!in_metastable_range(0, 1));
    }
}

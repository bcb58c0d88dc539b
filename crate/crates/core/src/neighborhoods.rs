//! Derived neighborhoods, simplicial complements, cones and collapses.
//!
//! For `L ⊆ M`, the derived neighborhood `N(L)` is the subcomplex of
//! `sd sd M` of faces `σ` with `μ(μ(σ)) ∈ L`. The oracle
//! [`DerivedAmbient::neighborhood_oracle`] builds the same complex the
//! geometric way: closed facets of `sd sd M` that touch `|L|`.
//!
//! Nerve computations use closed neighborhoods; there is no combinatorial
//! interior operator here. Because `N(L1 ∩ L2) = N(L1) ∩ N(L2)` holds
//! exactly, closed neighborhoods produce the same nerves.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::subdivision::{chain_vertex_face, mu_mu, sd_n_capped, ChainFace, DEFAULT_MAX_FACETS};

/// `sd sd M` with `μ∘μ` precomputed for every face.
#[derive(Clone, Debug)]
pub struct DerivedAmbient {
    base: SimplicialComplex,
    sd2: SimplicialComplex,
    mu_mu: HashMap<Simplex, Simplex>,
    /// Carrier in `M` of each vertex of `sd sd M`.
    vertex_carrier: BTreeMap<Vertex, Simplex>,
}

impl DerivedAmbient {
    pub fn new(ambient: &SimplicialComplex) -> Result<Self> {
        Self::with_cap(ambient, DEFAULT_MAX_FACETS)
    }

    pub fn with_cap(ambient: &SimplicialComplex, max_facets: u128) -> Result<Self> {
        let sd2 = if ambient.is_empty() {
            SimplicialComplex::empty()
        } else {
            sd_n_capped(ambient, 2, max_facets)?
        };
        let mu_mu = sd2
            .faces()
            .iter()
            .map(|f| Ok((f.clone(), mu_mu(f)?)))
            .collect::<Result<HashMap<_, _>>>()?;
        let vertex_carrier = sd2
            .vertices()
            .iter()
            .map(|v| {
                let outer = chain_vertex_face(v)?;
                Ok((v.clone(), ChainFace::from_face(&outer)?.carrier().clone()))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self {
            base: ambient.clone(),
            sd2,
            mu_mu,
            vertex_carrier,
        })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn sd2(&self) -> &SimplicialComplex {
        &self.sd2
    }

    /// `N(L) = {σ ∈ sd sd M : μ(μ(σ)) ∈ L}`.
    pub fn neighborhood(&self, core: &SimplicialComplex) -> Result<SimplicialComplex> {
        core.check_subcomplex_of(&self.base)?;
        Ok(self.sd2.filter_closed(|f| core.contains(&self.mu_mu[f])))
    }

    /// Union of the closed facets of `sd sd M` meeting `|L|`. A facet meets
    /// `|L|` exactly when one of its vertices lies in `sd sd L`, i.e. has its
    /// carrier in `L`.
    pub fn neighborhood_oracle(&self, core: &SimplicialComplex) -> Result<SimplicialComplex> {
        core.check_subcomplex_of(&self.base)?;
        let touching = self.sd2.facets().into_iter().filter(|facet| {
            facet
                .vertices()
                .iter()
                .any(|v| core.contains(&self.vertex_carrier[v]))
        });
        Ok(SimplicialComplex::from_simplices(touching))
    }

    /// Induced subcomplex of `sd sd M` on the vertices outside `N(L)`.
    pub fn complement(&self, core: &SimplicialComplex) -> Result<SimplicialComplex> {
        let nbhd = self.neighborhood(core)?;
        let outside: Vec<&Vertex> = self
            .sd2
            .vertices()
            .iter()
            .filter(|v| !nbhd.contains_vertex(v))
            .collect();
        self.sd2.induced(outside)
    }

    /// Induced subcomplex on the vertices of `N(L)` together with `extra`.
    pub fn neighborhood_with(
        &self,
        core: &SimplicialComplex,
        extra: &BTreeSet<Vertex>,
    ) -> Result<SimplicialComplex> {
        let nbhd = self.neighborhood(core)?;
        self.sd2.induced(nbhd.vertices().iter().chain(extra))
    }
}

/// A derived neighborhood together with the data it was built from.
#[derive(Clone, Debug)]
pub struct DerivedNeighborhood {
    pub ambient_sd2: SimplicialComplex,
    pub core: SimplicialComplex,
    pub faces: SimplicialComplex,
}

pub fn derived_neighborhood(
    core: &SimplicialComplex,
    ambient: &SimplicialComplex,
) -> Result<DerivedNeighborhood> {
    core.check_subcomplex_of(ambient)?;
    let amb = DerivedAmbient::new(ambient)?;
    let faces = amb.neighborhood(core)?;
    Ok(DerivedNeighborhood {
        ambient_sd2: amb.sd2,
        core: core.clone(),
        faces,
    })
}

pub fn derived_neighborhood_oracle(
    core: &SimplicialComplex,
    ambient: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    core.check_subcomplex_of(ambient)?;
    DerivedAmbient::new(ambient)?.neighborhood_oracle(core)
}

/// `N(L1 ∩ L2) = N(L1) ∩ N(L2)` as face sets.
pub fn verify_nbhd_intersection(
    l1: &SimplicialComplex,
    l2: &SimplicialComplex,
    ambient: &SimplicialComplex,
) -> Result<bool> {
    let amb = DerivedAmbient::new(ambient)?;
    verify_nbhd_intersection_in(&amb, l1, l2)
}

pub fn verify_nbhd_intersection_in(
    amb: &DerivedAmbient,
    l1: &SimplicialComplex,
    l2: &SimplicialComplex,
) -> Result<bool> {
    let lhs = amb.neighborhood(&l1.intersection(l2))?;
    let rhs = amb.neighborhood(l1)?.intersection(&amb.neighborhood(l2)?);
    Ok(lhs == rhs)
}

pub fn simplicial_complement(
    core: &SimplicialComplex,
    ambient: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    core.check_subcomplex_of(ambient)?;
    DerivedAmbient::new(ambient)?.complement(core)
}

/// Least vertex lying in every facet, if any.
pub fn is_cone(complex: &SimplicialComplex) -> Option<Vertex> {
    let facets = complex.facets();
    let (first, rest) = facets.split_first()?;
    first
        .vertices()
        .iter()
        .find(|v| rest.iter().all(|f| f.contains(v)))
        .cloned()
}

/// Whether `apex` joins every face of the complex.
pub fn is_apex(complex: &SimplicialComplex, apex: &Vertex) -> bool {
    complex.contains_vertex(apex) && complex.facets().iter().all(|f| f.contains(apex))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CollapseOutcome {
    CollapsedToPoint {
        steps: usize,
    },
    Stuck {
        steps: usize,
        #[serde(serialize_with = "crate::io::serialize_complex_facets")]
        remaining: SimplicialComplex,
        /// The input itself had no free face, so it is not collapsible.
        definitive: bool,
    },
}

impl CollapseOutcome {
    pub fn collapsed(&self) -> bool {
        matches!(self, CollapseOutcome::CollapsedToPoint { .. })
    }
}

/// Removes free pairs, smallest free face first, until a single vertex
/// remains or no free face exists. Incomplete: getting stuck does not in
/// general mean the input is not collapsible.
pub fn greedy_collapse(complex: &SimplicialComplex) -> Result<CollapseOutcome> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let mut alive: BTreeSet<Simplex> = complex.faces().clone();
    let mut cofaces: HashMap<Simplex, BTreeSet<Simplex>> =
        alive.iter().map(|f| (f.clone(), BTreeSet::new())).collect();
    for f in &alive {
        for b in f.boundary_faces() {
            cofaces.get_mut(&b).expect("closed").insert(f.clone());
        }
    }
    let is_free = |f: &Simplex, cofaces: &HashMap<Simplex, BTreeSet<Simplex>>| -> bool {
        let cs = &cofaces[f];
        cs.len() == 1 && cofaces[cs.iter().next().expect("one")].is_empty()
    };
    let mut free: BTreeSet<Simplex> = alive
        .iter()
        .filter(|f| is_free(f, &cofaces))
        .cloned()
        .collect();
    let definitive = free.is_empty() && alive.len() > 1;
    let mut steps = 0;
    while alive.len() > 1 {
        let Some(sigma) = free.pop_first() else {
            break;
        };
        if !alive.contains(&sigma) || !is_free(&sigma, &cofaces) {
            continue;
        }
        let tau = cofaces[&sigma].iter().next().expect("free face").clone();
        let mut touched: Vec<Simplex> = Vec::new();
        for removed in [&tau, &sigma] {
            for b in removed.boundary_faces() {
                cofaces.get_mut(&b).expect("alive").remove(removed);
                touched.push(b);
            }
        }
        alive.remove(&tau);
        alive.remove(&sigma);
        cofaces.remove(&tau);
        cofaces.remove(&sigma);
        free.remove(&tau);
        steps += 1;
        let mut candidates: BTreeSet<Simplex> = BTreeSet::new();
        for b in touched {
            if !alive.contains(&b) {
                continue;
            }
            candidates.extend(b.boundary_faces());
            candidates.insert(b);
        }
        for c in candidates {
            if is_free(&c, &cofaces) {
                free.insert(c);
            } else {
                free.remove(&c);
            }
        }
    }
    if alive.len() == 1 {
        Ok(CollapseOutcome::CollapsedToPoint { steps })
    } else {
        Ok(CollapseOutcome::Stuck {
            steps,
            remaining: SimplicialComplex::from_closed_faces(alive),
            definitive,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    fn v(s: &str) -> Vertex {
        Vertex::new(s).unwrap()
    }

    fn cycle3() -> SimplicialComplex {
        SimplicialComplex::boundary_of_simplex(2).unwrap()
    }

    fn vertex_complex(label: &str) -> SimplicialComplex {
        SimplicialComplex::from_facets([[label]]).unwrap()
    }

    #[test]
    fn vertex_neighborhood_in_hexagon_subdivision() {
        let n = derived_neighborhood(&vertex_complex("1"), &cycle3()).unwrap();
        assert_eq!(n.ambient_sd2.f_vector(), vec![12, 12]);
        assert_eq!(n.faces.f_vector(), vec![3, 2]);
        let oracle = derived_neighborhood_oracle(&vertex_complex("1"), &cycle3()).unwrap();
        assert_eq!(n.faces, oracle);
    }

    #[test]
    fn full_and_empty_cores() {
        let m = cycle3();
        let amb = DerivedAmbient::new(&m).unwrap();
        assert_eq!(amb.neighborhood(&m).unwrap(), *amb.sd2());
        assert!(amb.neighborhood(&SimplicialComplex::empty()).unwrap().is_empty());
        assert!(amb.neighborhood_oracle(&SimplicialComplex::empty()).unwrap().is_empty());
        assert!(amb.complement(&m).unwrap().is_empty());
    }

    #[test]
    fn non_subcomplex_rejected() {
        let err = derived_neighborhood(&vertex_complex("9"), &cycle3()).unwrap_err();
        assert!(matches!(err, Error::NotSubcomplex(_)));
    }

    #[test]
    fn equator_splits_the_sphere() {
        let m = SimplicialComplex::boundary_of_simplex(3).unwrap();
        let equator = SimplicialComplex::from_facets([["1", "2"], ["2", "3"], ["1", "3"]]).unwrap();
        let comp = simplicial_complement(&equator, &m).unwrap();
        assert_eq!(comp.connected_components().len(), 2);
        let edge = SimplicialComplex::from_facets([["1", "2"]]).unwrap();
        let comp = simplicial_complement(&edge, &m).unwrap();
        assert_eq!(comp.connected_components().len(), 1);
    }

    #[test]
    fn cones() {
        assert_eq!(is_cone(&SimplicialComplex::simplex(2)), Some(v("1")));
        assert_eq!(is_cone(&cycle3()), None);
        assert_eq!(is_cone(&SimplicialComplex::empty()), None);
        assert!(is_apex(&SimplicialComplex::simplex(2), &v("3")));
    }

    #[test]
    fn collapses() {
        assert!(greedy_collapse(&SimplicialComplex::simplex(3)).unwrap().collapsed());
        assert!(greedy_collapse(&vertex_complex("x")).unwrap().collapsed());
        match greedy_collapse(&cycle3()).unwrap() {
            CollapseOutcome::Stuck {
                remaining,
                definitive,
                steps,
            } => {
                assert_eq!(remaining, cycle3());
                assert!(definitive);
                assert_eq!(steps, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(greedy_collapse(&SimplicialComplex::empty()), Err(Error::EmptyComplex));
    }

    #[test]
    fn disk_with_hole_collapses_to_its_circle() {
        // Annulus: collar of dimension 2.
        let annulus = crate::constructions::collar(2).unwrap();
        match greedy_collapse(&annulus).unwrap() {
            CollapseOutcome::Stuck { remaining, definitive, .. } => {
                assert!(!definitive);
                assert!(homology(&remaining, true).isomorphic(&homology(&annulus, true)));
            }
            other => panic!("annulus collapsed: {other:?}"),
        }
    }
}

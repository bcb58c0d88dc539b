//! Barycentric subdivision.
//!
//! The vertices of `sd K` are the nonempty faces of `K`, named by their
//! bracketed label (`[1,2]`), and the faces of `sd K` are chains
//! `σ_1 ⊊ … ⊊ σ_m` of faces of `K`. Because labels nest, a face of `sd sd K`
//! can be peeled back one layer at a time with [`ChainFace::from_face`].

use std::collections::BTreeSet;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::label::{self, LabelTerm};

/// Default ceiling on predicted facet counts for iterated subdivision.
pub const DEFAULT_MAX_FACETS: u128 = 1_000_000;

/// A face of `sd K`, read as a chain of faces of `K`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainFace {
    chain: Vec<Simplex>,
}

impl ChainFace {
    /// Orders `faces` by size and checks strict nesting.
    pub fn new(mut faces: Vec<Simplex>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::EmptyChain);
        }
        faces.sort_by_key(Simplex::len);
        for w in faces.windows(2) {
            if w[0].len() == w[1].len() || !w[0].is_subset(&w[1]) {
                let shown: Vec<String> = faces.iter().map(ToString::to_string).collect();
                return Err(Error::NotAChain(shown.join(" < ")));
            }
        }
        Ok(Self { chain: faces })
    }

    /// Reads a face of a subdivision back into the chain it names.
    pub fn from_face(face: &Simplex) -> Result<Self> {
        let faces = face
            .vertices()
            .iter()
            .map(chain_vertex_face)
            .collect::<Result<Vec<_>>>()?;
        Self::new(faces)
    }

    /// The face of the subdivision this chain spans.
    pub fn to_face(&self) -> Simplex {
        let vertices = self
            .chain
            .iter()
            .map(|s| Vertex::new(s.label()).expect("labels of faces are well formed"))
            .collect();
        Simplex::new(vertices).expect("chain elements are distinct")
    }

    pub fn elements(&self) -> &[Simplex] {
        &self.chain
    }

    /// `μ`: the inclusion-minimal element.
    pub fn mu(&self) -> &Simplex {
        &self.chain[0]
    }

    /// The inclusion-maximal element, the smallest base face whose
    /// realization contains this chain's.
    pub fn carrier(&self) -> &Simplex {
        self.chain.last().expect("nonempty chain")
    }
}

/// The base face a subdivision vertex stands for: `[1,2]` ↦ `{1,2}`.
pub fn chain_vertex_face(v: &Vertex) -> Result<Simplex> {
    match label::parse(v.as_str())? {
        LabelTerm::Atom(_) => Err(Error::BadLabel(v.to_string())),
        LabelTerm::List(items) => Simplex::from_labels(items),
    }
}

pub fn mu(chain: &ChainFace) -> &Simplex {
    chain.mu()
}

pub fn carrier(chain: &ChainFace) -> &Simplex {
    chain.carrier()
}

/// `μ` applied to a face of `sd K`, returning a face of `K`.
pub fn mu_of_face(face: &Simplex) -> Result<Simplex> {
    Ok(ChainFace::from_face(face)?.mu().clone())
}

/// `μ(μ(σ))` for a face of `sd sd M`, returning a face of `M`.
pub fn mu_mu(face: &Simplex) -> Result<Simplex> {
    mu_of_face(&mu_of_face(face)?)
}

/// The carrier of a face of `sd K` in `K`.
pub fn carrier_of_face(face: &Simplex) -> Result<Simplex> {
    Ok(ChainFace::from_face(face)?.carrier().clone())
}

/// Maximal chains ending at `top`.
fn flags_of(top: &Simplex, out: &mut Vec<Vec<Simplex>>) {
    fn rec(current: &Simplex, acc: &mut Vec<Simplex>, out: &mut Vec<Vec<Simplex>>) {
        acc.push(current.clone());
        if current.len() == 1 {
            out.push(acc.clone());
        } else {
            for b in current.boundary_faces() {
                rec(&b, acc, out);
            }
        }
        acc.pop();
    }
    rec(top, &mut Vec::new(), out);
}

/// Barycentric subdivision.
pub fn sd(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let mut flags = Vec::new();
    for facet in complex.facets() {
        flags_of(&facet, &mut flags);
    }
    let label_of: std::collections::BTreeMap<&Simplex, Vertex> = complex
        .faces()
        .iter()
        .map(|f| (f, Vertex::new(f.label()).expect("well-formed")))
        .collect();
    let facets = flags.into_iter().map(|flag| {
        let vertices: Vec<Vertex> = flag.iter().map(|f| label_of[f].clone()).collect();
        Simplex::new(vertices).expect("distinct chain elements")
    });
    Ok(SimplicialComplex::from_simplices(facets))
}

/// Predicted facet count of `sd^n K`: every facet of dimension `k`
/// splits into `(k+1)!` pieces per round.
pub fn predicted_facets(complex: &SimplicialComplex, times: u32) -> u128 {
    complex
        .facets()
        .iter()
        .map(|f| {
            let per_round: u128 = (1..=f.len() as u128).product();
            per_round.saturating_pow(times)
        })
        .fold(0u128, u128::saturating_add)
}

/// Iterated subdivision under [`DEFAULT_MAX_FACETS`].
pub fn sd_n(complex: &SimplicialComplex, times: u32) -> Result<SimplicialComplex> {
    sd_n_capped(complex, times, DEFAULT_MAX_FACETS)
}

pub fn sd_n_capped(
    complex: &SimplicialComplex,
    times: u32,
    max_facets: u128,
) -> Result<SimplicialComplex> {
    if times == 0 {
        return Ok(complex.clone());
    }
    let predicted = predicted_facets(complex, times);
    if predicted > max_facets {
        return Err(Error::SizeCap {
            predicted,
            cap: max_facets,
        });
    }
    let mut out = sd(complex)?;
    for _ in 1..times {
        out = sd(&out)?;
    }
    Ok(out)
}

/// Maps every face of `sd K` to its carrier in `K`.
pub fn carrier_map(sd_complex: &SimplicialComplex) -> Result<Vec<(Simplex, Simplex)>> {
    sd_complex
        .faces()
        .iter()
        .map(|f| Ok((f.clone(), carrier_of_face(f)?)))
        .collect()
}

/// Vertices of `sd K` whose base face lies in `sub`; these span `sd(sub)`.
pub fn vertices_over(
    sd_complex: &SimplicialComplex,
    sub: &SimplicialComplex,
) -> Result<BTreeSet<Vertex>> {
    let mut out = BTreeSet::new();
    for v in sd_complex.vertices() {
        if sub.contains(&chain_vertex_face(v)?) {
            out.insert(v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(labels: &[&str]) -> Simplex {
        Simplex::from_labels(labels.iter().copied()).unwrap()
    }

    fn chain(faces: &[&[&str]]) -> ChainFace {
        ChainFace::new(faces.iter().map(|f| s(f)).collect()).unwrap()
    }

    #[test]
    fn mu_and_carrier() {
        let c = chain(&[&["1"], &["1", "2"]]);
        assert_eq!(mu(&c), &s(&["1"]));
        assert_eq!(carrier(&c), &s(&["1", "2"]));
        let c = chain(&[&["1", "2", "3"]]);
        assert_eq!(mu(&c), &s(&["1", "2", "3"]));
        let c = chain(&[&["2"], &["2", "3"], &["1", "2", "3"]]);
        assert_eq!(mu(&c), &s(&["2"]));
        assert_eq!(carrier(&c), &s(&["1", "2", "3"]));
        let c = chain(&[&["3"]]);
        assert_eq!(carrier(&c), &s(&["3"]));
        let c = chain(&[&["1"], &["1", "3"], &["1", "2", "3"]]);
        assert_eq!(carrier(&c), &s(&["1", "2", "3"]));
    }

    #[test]
    fn chain_errors() {
        assert_eq!(ChainFace::new(vec![]).unwrap_err(), Error::EmptyChain);
        assert!(ChainFace::new(vec![s(&["1"]), s(&["2", "3"])]).is_err());
        assert!(ChainFace::new(vec![s(&["1", "2"]), s(&["1", "3"])]).is_err());
    }

    #[test]
    fn chain_label_round_trip() {
        let c = chain(&[&["2"], &["2", "3"], &["1", "2", "3"]]);
        let face = c.to_face();
        assert_eq!(ChainFace::from_face(&face).unwrap(), c);
        // Second layer.
        let outer = ChainFace::new(vec![c.to_face(), chain(&[&["1"], &["1", "2", "3"]]).to_face()]);
        assert!(outer.is_err(), "not nested");
        let inner = chain(&[&["2"]]).to_face();
        let outer = ChainFace::new(vec![inner.clone(), c.to_face()]).unwrap();
        assert!(outer.to_face().vertices().iter().any(|v| v.as_str() == "[[2]]"));
        assert_eq!(mu_mu(&outer.to_face()).unwrap(), s(&["2"]));
    }

    #[test]
    fn subdivision_sizes() {
        let tri = SimplicialComplex::simplex(2);
        assert_eq!(sd(&tri).unwrap().f_vector(), vec![7, 12, 6]);
        let cycle = SimplicialComplex::boundary_of_simplex(2).unwrap();
        assert_eq!(sd(&cycle).unwrap().f_vector(), vec![6, 6]);
        let point = SimplicialComplex::simplex(0);
        assert_eq!(sd(&point).unwrap().f_vector(), vec![1]);
        assert_eq!(sd(&SimplicialComplex::empty()).unwrap_err(), Error::EmptyComplex);
        assert_eq!(sd_n(&cycle, 2).unwrap().f_vector(), vec![12, 12]);
        let sphere = SimplicialComplex::boundary_of_simplex(3).unwrap();
        assert_eq!(sd_n(&sphere, 2).unwrap().f_vector()[2], 144);
        assert_eq!(sd_n(&sphere, 0).unwrap(), sphere);
    }

    #[test]
    fn size_cap_refuses() {
        let tet = SimplicialComplex::simplex(3);
        assert_eq!(predicted_facets(&tet, 3), 24 * 24 * 24);
        let err = sd_n_capped(&tet, 3, 10_000).unwrap_err();
        assert_eq!(
            err,
            Error::SizeCap {
                predicted: 13_824,
                cap: 10_000
            }
        );
    }

    #[test]
    fn facets_are_flags() {
        for d in 0..=4 {
            let facets = sd(&SimplicialComplex::simplex(d)).unwrap().facets().len();
            assert_eq!(facets, (1..=d + 1).product::<usize>());
        }
    }
}

//! Facet removal and collaring, star covers, and the cover built from
//! derived neighborhoods of stars.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::covers::SubcomplexCover;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::neighborhoods::{greedy_collapse, DerivedAmbient};
use crate::subdivision::{predicted_facets, sd, DEFAULT_MAX_FACETS};

/// Prefix of the fresh collar labels `v#1, v#2, …`.
pub const COLLAR_PREFIX: &str = "v#";

/// `Σ` with one top-dimensional facet deleted; its proper faces stay.
pub fn remove_facet(sigma: &SimplicialComplex, facet: &Simplex) -> Result<SimplicialComplex> {
    if !sigma.contains(facet) || sigma.facets().binary_search(facet).is_err() {
        return Err(Error::NotAFacet(facet.to_string()));
    }
    if Some(facet.dim()) != sigma.dim() {
        return Err(Error::BadDimension(facet.dim() as i64));
    }
    Ok(sigma.without_facet(facet))
}

/// `Γ` on `U ∪ V`: faces avoid every pair `{u_j, v_j}` and differ from
/// `U` and `V`. `u` and `v` must have equal length and be disjoint.
pub fn collar_on(u: &[Vertex], v: &[Vertex]) -> Result<SimplicialComplex> {
    if u.is_empty() || u.len() != v.len() {
        return Err(Error::Input("collar needs two vertex lists of equal positive length".into()));
    }
    let n = u.len();
    let u_face = Simplex::new(u.to_vec())?;
    let v_face = Simplex::new(v.to_vec())?;
    if !u_face.is_disjoint(&v_face) {
        return Err(Error::LabelCollision(
            u.iter().find(|x| v_face.contains(x)).expect("shared").to_string(),
        ));
    }
    let facets = (0u64..(1 << n)).map(|mask| {
        Simplex::new(
            (0..n)
                .map(|j| if mask & (1 << j) == 0 { u[j].clone() } else { v[j].clone() })
                .collect(),
        )
        .expect("distinct")
    });
    let cross = SimplicialComplex::from_simplices(facets);
    Ok(cross.without_facet(&u_face).without_facet(&v_face))
}

/// The collar of dimension `d` on `u1..u{d+1}`, `v1..v{d+1}`.
pub fn collar(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(Error::BadDimension(0));
    }
    let side = |c: char| -> Vec<Vertex> {
        (1..=d + 1)
            .map(|j| Vertex::new(format!("{c}{j}")).expect("valid"))
            .collect()
    };
    collar_on(&side('u'), &side('v'))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollaredComplex {
    /// `B` with the removed facet put back.
    pub sigma: SimplicialComplex,
    pub removed_facet: Simplex,
    pub collar_vertices: Vec<Vertex>,
    pub b: SimplicialComplex,
    pub gamma: SimplicialComplex,
    /// `C = B ∪ Γ`.
    pub c: SimplicialComplex,
}

fn fresh_collar_labels(n: usize) -> Vec<Vertex> {
    (1..=n)
        .map(|j| Vertex::new(format!("{COLLAR_PREFIX}{j}")).expect("valid"))
        .collect()
}

/// Glues the collar `Γ` onto `B` along the boundary of the missing face `U`.
pub fn attach_collar(b: &SimplicialComplex, u: &Simplex) -> Result<CollaredComplex> {
    if b.contains(u) {
        return Err(Error::FacePresent(u.to_string()));
    }
    if let Some(missing) = u.subfaces().find(|f| f != u && !b.contains(f)) {
        return Err(Error::MissingBoundary(missing.to_string()));
    }
    let fresh = fresh_collar_labels(u.len());
    if let Some(clash) = fresh.iter().find(|x| b.contains_vertex(x)) {
        return Err(Error::LabelCollision(clash.to_string()));
    }
    let gamma = collar_on(u.vertices(), &fresh)?;
    let c = b.union(&gamma);
    Ok(CollaredComplex {
        sigma: b.with_face(u.clone()),
        removed_facet: u.clone(),
        collar_vertices: fresh,
        b: b.clone(),
        gamma,
        c,
    })
}

/// Removes `facet` from `Σ` and attaches the collar.
pub fn build_c(sigma: &SimplicialComplex, facet: &Simplex) -> Result<CollaredComplex> {
    let b = remove_facet(sigma, facet)?;
    let mut out = attach_collar(&b, facet)?;
    out.sigma = sigma.clone();
    Ok(out)
}

/// `C ∪ {V}`: closes the collar's free end with one facet.
pub fn cap(collared: &CollaredComplex) -> SimplicialComplex {
    let v = Simplex::new(collared.collar_vertices.clone()).expect("distinct fresh labels");
    collared.c.with_face(v)
}

/// [`cap`] for a bare complex: the collar vertices are recognized by
/// their `v#` prefix.
pub fn cap_complex(c: &SimplicialComplex) -> Result<SimplicialComplex> {
    let v: Vec<Vertex> = c
        .vertices()
        .iter()
        .filter(|x| x.as_str().starts_with(COLLAR_PREFIX))
        .cloned()
        .collect();
    if v.is_empty() {
        return Err(Error::Input(format!("no `{COLLAR_PREFIX}` collar vertices found")));
    }
    let face = Simplex::new(v)?;
    if c.contains(&face) {
        return Err(Error::FacePresent(face.to_string()));
    }
    if let Some(missing) = face.boundary_faces().into_iter().find(|f| !c.contains(f)) {
        return Err(Error::MissingBoundary(missing.to_string()));
    }
    Ok(c.with_face(face))
}

/// The vertex of `sd K` standing for the base vertex `v`.
pub fn sd_vertex(v: &Vertex) -> Vertex {
    Vertex::new(Simplex::vertex(v.clone()).label()).expect("valid")
}

/// `X_v = st({v}, sd K)` for every vertex `v` of `K`, indexed by `v`.
pub fn star_cover(complex: &SimplicialComplex) -> Result<SubcomplexCover> {
    let subdivided = sd(complex)?;
    star_cover_in(complex, &subdivided, &subdivided)
}

/// Stars of `{v}` in `sd K`, viewed as subcomplexes of `ambient ⊇ sd K`.
fn star_cover_in(
    complex: &SimplicialComplex,
    sd_complex: &SimplicialComplex,
    ambient: &SimplicialComplex,
) -> Result<SubcomplexCover> {
    let members = complex
        .vertices()
        .iter()
        .map(|v| Ok((v.clone(), sd_complex.star(&sd_vertex(v))?)))
        .collect::<Result<Vec<_>>>()?;
    SubcomplexCover::new(ambient.clone(), members)
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineCheck {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub checks: Vec<PipelineCheck>,
    /// Face counts of the nerve of the neighborhood cover.
    pub nerve_f_vector: Vec<usize>,
    pub ambient_f_vector: Vec<usize>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// For `K ⊆ M`, builds the stars `X_v` of `sd K` inside `sd M`, replaces
/// each by its derived neighborhood in `sd sd (sd M)`, and checks that the
/// new cover has nerve `K` and that every nonempty intersection of members
/// greedily collapses to a point.
pub fn representation_pipeline(
    complex: &SimplicialComplex,
    ambient: &SimplicialComplex,
    max_facets: u128,
) -> Result<RepresentationReport> {
    complex.check_subcomplex_of(ambient)?;
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if !ambient.is_pure() {
        return Err(Error::Input("ambient complex is not pure".into()));
    }
    let predicted = predicted_facets(ambient, 3);
    if predicted > max_facets {
        return Err(Error::SizeCap {
            predicted,
            cap: max_facets,
        });
    }
    let sd_ambient = sd(ambient)?;
    let stars = star_cover_in(complex, &sd(complex)?, &sd_ambient)?;
    let derived = DerivedAmbient::with_cap(&sd_ambient, max_facets)?;
    let members = stars
        .members()
        .iter()
        .map(|(v, x)| Ok((v.clone(), derived.neighborhood(x)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let cover = SubcomplexCover::new(derived.sd2().clone(), members)?;

    let star_nerve = stars.nerve();
    let nerve = cover.nerve();
    let mut checks = vec![
        PipelineCheck {
            name: "nerve of stars equals K".into(),
            passed: star_nerve == *complex,
            details: format!("f-vector {:?}", star_nerve.f_vector()),
        },
        PipelineCheck {
            name: "neighborhood nerve equals star nerve".into(),
            passed: nerve == star_nerve,
            details: format!("f-vector {:?}", nerve.f_vector()),
        },
        PipelineCheck {
            name: "neighborhood nerve isomorphic to K".into(),
            passed: is_isomorphic(&nerve, complex),
            details: String::new(),
        },
    ];
    let mut stuck = Vec::new();
    for face in nerve.faces() {
        let x = cover.intersection(face.vertices())?;
        if x.is_empty() || !greedy_collapse(&x)?.collapsed() {
            stuck.push(face.to_string());
        }
    }
    checks.push(PipelineCheck {
        name: "every nonempty intersection collapses".into(),
        passed: stuck.is_empty(),
        details: if stuck.is_empty() {
            format!("{} intersections", nerve.num_faces())
        } else {
            format!("stuck: {}", stuck.join(" "))
        },
    });
    Ok(RepresentationReport {
        checks,
        nerve_f_vector: nerve.f_vector(),
        ambient_f_vector: cover.ambient().f_vector(),
    })
}

/// [`representation_pipeline`] under the default size cap.
pub fn representation_pipeline_default(
    complex: &SimplicialComplex,
    ambient: &SimplicialComplex,
) -> Result<RepresentationReport> {
    representation_pipeline(complex, ambient, DEFAULT_MAX_FACETS)
}

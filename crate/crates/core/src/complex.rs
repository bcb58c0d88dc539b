//! Abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] stores its full downward closure. Faces are
//! [`Simplex`] values whose vertices are kept sorted by label, and every
//! iteration order in the crate derives from the lexicographic order on
//! those sorted label lists.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::label;

/// A vertex label. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(Arc<str>);

impl Vertex {
    pub fn new(label: impl AsRef<str>) -> Result<Self> {
        let label = label.as_ref();
        label::validate(label)?;
        Ok(Self(Arc::from(label)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// A nonempty face, vertices strictly increasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyFacet);
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        Ok(Self(vertices))
    }

    pub fn from_labels<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let vertices = labels
            .into_iter()
            .map(Vertex::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    /// Caller guarantees `vertices` is sorted, deduplicated and nonempty.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        !self.0.iter().any(|v| other.contains(v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(other.0.iter()).cloned().collect();
        v.sort();
        v.dedup();
        Simplex(v)
    }

    pub fn with_vertex(&self, v: &Vertex) -> Simplex {
        match self.0.binary_search(v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v.clone());
                Simplex(out)
            }
        }
    }

    /// Codimension-one faces; the `i`-th entry omits vertex `i`.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// All nonempty subsets, including `self`.
    pub fn subfaces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        assert!(n < 64, "simplex too large to enumerate");
        (1u64..(1u64 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i].clone())
                    .collect(),
            )
        })
    }

    /// Bracketed label `[a,b,c]`, used to name this face as a vertex of a
    /// subdivision.
    pub fn label(&self) -> String {
        label::join(self.0.iter().map(Vertex::as_str))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Downward-closed family of faces over labeled vertices.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: BTreeSet<Vertex>,
    faces: BTreeSet<Simplex>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("facets", &self.facets())
            .finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of the given facets.
    pub fn from_facets<F, S>(facets: impl IntoIterator<Item = F>) -> Result<Self>
    where
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let simplices = facets
            .into_iter()
            .map(Simplex::from_labels)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_simplices(simplices))
    }

    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut faces = BTreeSet::new();
        for s in simplices {
            if faces.contains(&s) {
                continue;
            }
            // Recursive closure, skipping subtrees already present.
            let mut stack = vec![s];
            while let Some(face) = stack.pop() {
                if faces.contains(&face) {
                    continue;
                }
                stack.extend(face.boundary_faces());
                faces.insert(face);
            }
        }
        Self::from_closed_faces(faces)
    }

    /// `faces` must already be downward closed.
    pub(crate) fn from_closed_faces(faces: BTreeSet<Simplex>) -> Self {
        let vertices = faces
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f.0[0].clone())
            .collect();
        let out = Self { vertices, faces };
        debug_assert!(out.is_closed());
        out
    }

    fn is_closed(&self) -> bool {
        self.faces
            .iter()
            .all(|f| f.boundary_faces().iter().all(|b| self.faces.contains(b)))
    }

    /// Keeps the faces satisfying `keep`; the predicate must describe a
    /// downward-closed family.
    pub(crate) fn filter_closed(&self, mut keep: impl FnMut(&Simplex) -> bool) -> Self {
        Self::from_closed_faces(self.faces.iter().filter(|f| keep(f)).cloned().collect())
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn faces(&self) -> &BTreeSet<Simplex> {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.faces.iter().filter(move |f| f.dim() == k)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: &Simplex) -> bool {
        self.faces.contains(face)
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(Simplex::dim).max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for face in &self.faces {
            f[face.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Inclusion-maximal faces in canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        let non_maximal: BTreeSet<Simplex> = self
            .faces
            .iter()
            .flat_map(Simplex::boundary_faces)
            .collect();
        self.faces
            .iter()
            .filter(|f| !non_maximal.contains(*f))
            .cloned()
            .collect()
    }

    /// Every facet has the top dimension.
    pub fn is_pure(&self) -> bool {
        match self.dim() {
            None => true,
            Some(d) => self.facets().iter().all(|f| f.dim() == d),
        }
    }

    pub fn skeleton(&self, k: usize) -> Self {
        self.filter_closed(|f| f.dim() <= k)
    }

    /// `K[U]`: the faces of `self` whose vertices all lie in `subset`.
    pub fn induced<'a>(&self, subset: impl IntoIterator<Item = &'a Vertex>) -> Result<Self> {
        let subset: BTreeSet<&Vertex> = subset.into_iter().collect();
        if let Some(v) = subset.iter().find(|v| !self.vertices.contains(**v)) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(self.filter_closed(|f| f.vertices().iter().all(|v| subset.contains(v))))
    }

    /// Closed star `{σ : σ ∪ {v} ∈ K}`.
    pub fn star(&self, v: &Vertex) -> Result<Self> {
        if !self.vertices.contains(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(self.filter_closed(|f| self.faces.contains(&f.with_vertex(v))))
    }

    /// Link `{σ ∈ st(v) : v ∉ σ}`.
    pub fn link(&self, v: &Vertex) -> Result<Self> {
        let star = self.star(v)?;
        Ok(star.filter_closed(|f| !f.contains(v)))
    }

    /// Cone over `self` with a fresh apex.
    pub fn cone(&self, apex: &Vertex) -> Result<Self> {
        if self.vertices.contains(apex) {
            return Err(Error::LabelCollision(apex.to_string()));
        }
        let mut faces = self.faces.clone();
        faces.insert(Simplex::vertex(apex.clone()));
        for f in &self.faces {
            faces.insert(f.with_vertex(apex));
        }
        Ok(Self::from_closed_faces(faces))
    }

    /// The full simplex `Δ^d` on vertices `1..=d+1`.
    pub fn simplex(d: usize) -> Self {
        Self::from_facets([(1..=d + 1).map(|i| i.to_string())]).expect("valid labels")
    }

    /// `∂Δ^d` on vertices `1..=d+1`. Requires `d >= 1`.
    pub fn boundary_of_simplex(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDimension(0));
        }
        let full = Self::simplex(d);
        Ok(full.filter_closed(|f| f.dim() < d))
    }

    /// The `d`-dimensional crosspolytope on `u1..u{d+1}`, `v1..v{d+1}`:
    /// every face avoids each antipodal pair `{u_j, v_j}`.
    pub fn crosspolytope(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDimension(0));
        }
        let facets = (0u64..(1 << (d + 1))).map(|mask| {
            (0..=d)
                .map(|j| {
                    let side = if mask & (1 << j) == 0 { 'u' } else { 'v' };
                    format!("{side}{}", j + 1)
                })
                .collect::<Vec<_>>()
        });
        Self::from_facets(facets)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_closed_faces(self.faces.union(&other.faces).cloned().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_closed_faces(self.faces.intersection(&other.faces).cloned().collect())
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.faces.is_subset(&other.faces)
    }

    /// First face of `self` missing from `other`, if any.
    pub(crate) fn check_subcomplex_of(&self, other: &Self) -> Result<()> {
        match self.faces.iter().find(|f| !other.faces.contains(f)) {
            Some(f) => Err(Error::NotSubcomplex(f.to_string())),
            None => Ok(()),
        }
    }

    /// Vertex adjacency through edges.
    pub fn adjacency(&self) -> BTreeMap<&Vertex, Vec<&Vertex>> {
        let mut adj: BTreeMap<&Vertex, Vec<&Vertex>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for e in self.faces_of_dim(1) {
            let [a, b] = [&e.0[0], &e.0[1]];
            adj.get_mut(a).expect("vertex").push(b);
            adj.get_mut(b).expect("vertex").push(a);
        }
        adj
    }

    /// Components of the 1-skeleton, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<BTreeSet<Vertex>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<&Vertex> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v.clone());
                for &w in &adj[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Removes exactly one face, which must be maximal.
    pub(crate) fn without_facet(&self, facet: &Simplex) -> Self {
        let mut faces = self.faces.clone();
        faces.remove(facet);
        Self::from_closed_faces(faces)
    }

    /// Adds one face whose boundary is already present.
    pub(crate) fn with_face(&self, face: Simplex) -> Self {
        let mut faces = self.faces.clone();
        faces.insert(face);
        Self::from_closed_faces(faces)
    }

    /// Renames vertices through `map`; unmapped vertices keep their label.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<Self> {
        let faces = self
            .faces
            .iter()
            .map(|f| {
                Simplex::new(
                    f.vertices()
                        .iter()
                        .map(|v| map.get(v).unwrap_or(v).clone())
                        .collect(),
                )
            })
            .collect::<Result<BTreeSet<_>>>()?;
        if faces.len() != self.faces.len() {
            return Err(Error::Input("relabeling is not injective".into()));
        }
        Ok(Self::from_closed_faces(faces))
    }
}

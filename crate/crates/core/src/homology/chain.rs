//! Sparse integer matrices and chain complexes.

use std::collections::HashMap;

use crate::complex::{Simplex, SimplicialComplex};

/// Column-major sparse integer matrix. Columns hold `(row, value)` pairs
/// sorted by row with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds from unsorted column entries; duplicates are summed.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!(r < rows, "row {r} out of range");
                    match merged.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|e| e.1 != 0);
                merged
            })
            .collect();
        Self { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r[j] != 0)
                    .map(|(i, r)| (i, r[j]))
                    .collect()
            })
            .collect();
        Self::from_columns(nrows, cols)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.num_cols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i][j] = v;
            }
        }
        out
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `self * other`, with `i128` accumulation.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.num_cols(), other.rows, "dimension mismatch");
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, i128> = HashMap::new();
                for &(k, b) in col {
                    for &(i, a) in &self.cols[k] {
                        *acc.entry(i).or_default() += a as i128 * b as i128;
                    }
                }
                acc.into_iter()
                    .filter(|e| e.1 != 0)
                    .map(|(i, v)| (i, i64::try_from(v).expect("product entry fits in i64")))
                    .collect()
            })
            .collect();
        Self::from_columns(self.rows, cols)
    }
}

/// A finite chain complex `… → C_k → C_{k-1} → … → C_0`.
///
/// `boundaries[k]` is the map `C_k → C_{k-1}`; `boundaries[0]` is either the
/// zero map or the augmentation `C_0 → Z` for reduced homology.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    sizes: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` must have `sizes[k]` columns and `sizes[k-1]` rows
    /// (one row for the augmentation at `k = 0`, or zero rows).
    pub fn new(sizes: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Self {
        assert_eq!(sizes.len(), boundaries.len());
        for (k, b) in boundaries.iter().enumerate() {
            assert_eq!(b.num_cols(), sizes[k]);
            if k > 0 {
                assert_eq!(b.num_rows(), sizes[k - 1]);
            }
        }
        Self { sizes, boundaries }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k]
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.sizes.len().checked_sub(1)
    }

    /// Replaces `∂_0` by the augmentation map.
    pub fn augmented(mut self) -> Self {
        if let Some(first) = self.boundaries.first_mut() {
            let n = self.sizes[0];
            *first = SparseMatrix::from_columns(1, (0..n).map(|_| vec![(0, 1)]).collect());
        }
        self
    }

    /// `∂_{k-1} ∘ ∂_k = 0` for every `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (1..self.boundaries.len()).all(|k| {
            let (lower, upper) = (&self.boundaries[k - 1], &self.boundaries[k]);
            lower.num_rows() == 0 || lower.mul(upper).is_zero()
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.sizes
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Faces of each dimension in canonical order, with index lookups.
pub struct FaceIndex<'a> {
    pub by_dim: Vec<Vec<&'a Simplex>>,
    pub position: Vec<HashMap<&'a Simplex, usize>>,
}

impl<'a> FaceIndex<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        let top = complex.dim().map_or(0, |d| d + 1);
        let mut by_dim: Vec<Vec<&Simplex>> = vec![Vec::new(); top];
        for f in complex.faces() {
            by_dim[f.dim()].push(f);
        }
        let position = by_dim
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        Self { by_dim, position }
    }
}

/// The oriented simplicial chain complex. Faces are oriented by sorted
/// labels and `∂[v_0…v_k] = Σ (-1)^i [v_0…v̂_i…v_k]`.
pub fn simplicial_chain_complex(complex: &SimplicialComplex) -> ChainComplex {
    let index = FaceIndex::new(complex);
    let sizes: Vec<usize> = index.by_dim.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(sizes.len());
    for (k, faces) in index.by_dim.iter().enumerate() {
        if k == 0 {
            boundaries.push(SparseMatrix::zero(0, faces.len()));
            continue;
        }
        let cols = faces
            .iter()
            .map(|f| {
                f.boundary_faces()
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (index.position[k - 1][b], sign)
                    })
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(sizes[k - 1], cols));
    }
    ChainComplex::new(sizes, boundaries)
}

//! Complexes whose cells are products `σ × τ` of two simplices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductCell {
    pub left: Simplex,
    pub right: Simplex,
}

impl ProductCell {
    pub fn new(left: Simplex, right: Simplex) -> Self {
        Self { left, right }
    }

    pub fn dim(&self) -> usize {
        self.left.dim() + self.right.dim()
    }

    /// `∂(σ×τ) = ∂σ×τ + (-1)^{dim σ} σ×∂τ`, as signed cells.
    pub fn boundary(&self) -> Vec<(ProductCell, i64)> {
        let mut out = Vec::new();
        for (i, f) in self.left.boundary_faces().into_iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.push((ProductCell::new(f, self.right.clone()), sign));
        }
        let base = if self.left.dim().is_multiple_of(2) { 1 } else { -1 };
        for (j, f) in self.right.boundary_faces().into_iter().enumerate() {
            let sign = if j % 2 == 0 { base } else { -base };
            out.push((ProductCell::new(self.left.clone(), f), sign));
        }
        out
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.right.clone(), self.left.clone())
    }
}

/// A finite set of product cells closed under taking boundary cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductCellComplex {
    cells: BTreeSet<ProductCell>,
}

impl ProductCellComplex {
    pub fn new(cells: BTreeSet<ProductCell>) -> Result<Self> {
        let out = Self { cells };
        if let Some(c) = out.first_unclosed() {
            return Err(Error::Input(format!(
                "product cell {}x{} has a boundary cell outside the complex",
                c.left, c.right
            )));
        }
        Ok(out)
    }

    fn first_unclosed(&self) -> Option<&ProductCell> {
        self.cells
            .iter()
            .find(|c| c.boundary().iter().any(|(b, _)| !self.cells.contains(b)))
    }

    pub fn cells(&self) -> &BTreeSet<ProductCell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(ProductCell::dim).max()
    }

    /// Number of cells with `(dim σ, dim τ) = (p, q)`.
    pub fn bidegree_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry((c.left.dim(), c.right.dim())).or_insert(0) += 1;
        }
        out
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let top = self.dim().map_or(0, |d| d + 1);
        let mut by_dim: Vec<Vec<&ProductCell>> = vec![Vec::new(); top];
        for c in &self.cells {
            by_dim[c.dim()].push(c);
        }
        let position: Vec<HashMap<&ProductCell, usize>> = by_dim
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i)).collect())
            .collect();
        let sizes: Vec<usize> = by_dim.iter().map(Vec::len).collect();
        let boundaries = by_dim
            .iter()
            .enumerate()
            .map(|(k, cells)| {
                if k == 0 {
                    return SparseMatrix::zero(0, cells.len());
                }
                let cols = cells
                    .iter()
                    .map(|c| {
                        c.boundary()
                            .into_iter()
                            .map(|(b, s)| (position[k - 1][&b], s))
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(sizes[k - 1], cols)
            })
            .collect();
        ChainComplex::new(sizes, boundaries)
    }
}

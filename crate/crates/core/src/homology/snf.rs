//! Smith normal form over the integers, plus ranks over `Z/p`.
//!
//! The integer path runs in two phases. A sparse phase pivots on `±1`
//! entries with checked `i64` arithmetic; each such pivot contributes an
//! invariant factor of one and deletes a row and a column. Whatever is left
//! is copied into a dense arbitrary-precision matrix and diagonalized with
//! minimal-absolute-value pivoting. If the sparse phase would overflow it
//! stops early and hands its (still equivalent) matrix to the dense phase.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::chain::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one())
    }
}

struct SparseWork {
    cols: Vec<BTreeMap<usize, i64>>,
    row_cols: Vec<BTreeSet<usize>>,
}

impl SparseWork {
    fn new(m: &SparseMatrix) -> Self {
        let mut row_cols = vec![BTreeSet::new(); m.num_rows()];
        let cols = m
            .columns()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                for &(i, _) in c {
                    row_cols[i].insert(j);
                }
                c.iter().copied().collect()
            })
            .collect();
        Self { cols, row_cols }
    }

    fn unit_pivot(&self, j: usize) -> Option<usize> {
        self.cols[j]
            .iter()
            .filter(|(_, v)| v.abs() == 1)
            .min_by_key(|(i, _)| (self.row_cols[**i].len(), **i))
            .map(|(i, _)| *i)
    }

    /// `col_target -= factor * col_source`, or `None` on overflow (no change).
    fn axpy(&self, target: usize, source: usize, factor: i64) -> Option<BTreeMap<usize, i64>> {
        let mut out = self.cols[target].clone();
        for (&i, &v) in &self.cols[source] {
            let delta = v.checked_mul(factor)?;
            let entry = out.entry(i).or_insert(0);
            *entry = entry.checked_sub(delta)?;
            if *entry == 0 {
                out.remove(&i);
            }
        }
        Some(out)
    }

    fn replace_column(&mut self, j: usize, new: BTreeMap<usize, i64>) {
        for i in self.cols[j].keys() {
            self.row_cols[*i].remove(&j);
        }
        for i in new.keys() {
            self.row_cols[*i].insert(j);
        }
        self.cols[j] = new;
    }

    /// Eliminates with `±1` pivots until none remain, returning the number
    /// of pivots taken. Stops early, with the matrix intact, on overflow.
    fn eliminate_units(&mut self) -> usize {
        let mut units = 0;
        loop {
            let mut progress = false;
            for j in 0..self.cols.len() {
                let Some(i) = self.unit_pivot(j) else {
                    continue;
                };
                let pivot = self.cols[j][&i];
                let others: Vec<usize> = self.row_cols[i].iter().copied().filter(|&l| l != j).collect();
                for l in others {
                    let factor = self.cols[l][&i] * pivot;
                    match self.axpy(l, j, factor) {
                        Some(new) => self.replace_column(l, new),
                        None => return units,
                    }
                }
                self.replace_column(j, BTreeMap::new());
                units += 1;
                progress = true;
            }
            if !progress {
                return units;
            }
        }
    }

    fn remaining_dense(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<usize> = (0..self.row_cols.len())
            .filter(|&i| !self.row_cols[i].is_empty())
            .collect();
        let cols: Vec<usize> = (0..self.cols.len())
            .filter(|&j| !self.cols[j].is_empty())
            .collect();
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut dense = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
        for (q, &j) in cols.iter().enumerate() {
            for (&i, &v) in &self.cols[j] {
                dense[row_pos[&i]][q] = BigInt::from(v);
            }
        }
        dense
    }
}

/// Invariant factors of an integer matrix.
pub fn smith_normal_form(m: &SparseMatrix) -> SnfResult {
    let mut work = SparseWork::new(m);
    let units = work.eliminate_units();
    let dense = work.remaining_dense();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_invariant_factors(dense));
    factors.sort();
    SnfResult {
        rank: factors.len(),
        invariant_factors: factors,
    }
}

/// Minimal nonzero |entry| in the trailing block, ties by row then column.
fn min_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Dense Smith normal form with arbitrary-precision entries.
pub fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_pivot(&a, t) else {
                return finish(out);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..n {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    for j in t..n {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    finish(out)
}

fn finish(mut factors: Vec<BigInt>) -> Vec<BigInt> {
    factors.sort();
    factors
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over `Z/p` by column reduction on lowest nonzero rows.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let reduce = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let inv = |a: u64| -> u64 { pow_mod(a, p - 2, p) };
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    let mut rank = 0;
    for col in m.columns() {
        let mut c: BTreeMap<usize, u64> = col
            .iter()
            .map(|&(i, v)| (i, reduce(v)))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some((&low, &lv)) = c.iter().next_back() {
            let Some(pc) = pivots.get(&low) else {
                break;
            };
            // c -= (lv / pc[low]) * pc
            let factor = lv * inv(pc[&low]) % p;
            for (&i, &v) in pc {
                let e = c.entry(i).or_insert(0);
                *e = (*e + p - factor * v % p) % p;
                if *e == 0 {
                    c.remove(&i);
                }
            }
        }
        if let Some((&low, _)) = c.iter().next_back() {
            pivots.insert(low, c);
            rank += 1;
        }
    }
    Ok(rank)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

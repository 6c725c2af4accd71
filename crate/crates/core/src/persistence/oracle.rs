//! Persistent Betti numbers straight from the quotient
//! `Z_k(X^l) / (B_k(X^{l+p}) ∩ Z_k(X^l))`, using dense Gaussian elimination
//! that shares no code with the sparse reduction behind barcodes.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{FilteredComplex, Level};
use crate::ring::is_prime;
use crate::simplex::Simplex;

use super::PersistentBettiTable;

/// Dense matrix over `Z/p`, row-major.
#[derive(Clone, Debug)]
struct Dense {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl Dense {
    fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Dense {
            p,
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(sel) = (row..self.rows).find(|&r| self.data[r][col] != 0) else {
                continue;
            };
            self.data.swap(row, sel);
            let scale = self.inv(self.data[row][col]);
            for x in self.data[row].iter_mut() {
                *x = *x * scale % p;
            }
            let pivot_row = self.data[row].clone();
            for r in 0..self.rows {
                let factor = self.data[r][col];
                if r != row && factor != 0 {
                    for (x, y) in self.data[r].iter_mut().zip(&pivot_row) {
                        *x = (*x + p - factor * y % p) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space, one vector per free column.
    fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (self.p - m.data[r][f]) % self.p;
                }
                v
            })
            .collect()
    }
}

fn sign(j: usize, p: u64) -> u64 {
    if j.is_multiple_of(2) {
        1
    } else {
        p - 1
    }
}

/// Matrix of the boundary map from `k`-simplices of `src` into the
/// `(k-1)`-simplices indexed by `rows`.
fn boundary_dense(p: u64, src: &[Simplex], rows: &HashMap<Simplex, usize>, n_rows: usize) -> Dense {
    let mut m = Dense::zeros(p, n_rows, src.len());
    for (c, s) in src.iter().enumerate() {
        for (j, f) in s.facets() {
            m.data[rows[&f]][c] = (m.data[rows[&f]][c] + sign(j, p)) % p;
        }
    }
    m
}

fn basis(x: &SimplicialComplex, k: usize) -> (Vec<Simplex>, HashMap<Simplex, usize>) {
    let list: Vec<Simplex> = x.simplices(k).cloned().collect();
    let index = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    (list, index)
}

/// `dim Z_k(X^l) - dim(B_k(X^{l+p}) ∩ Z_k(X^l))` over `Z/field`.
pub fn persistent_betti_oracle(f: &FilteredComplex, k: usize, level: Level, p: Level, field: u32) -> Result<usize> {
    if !is_prime(field) {
        return Err(Error::NotPrime(field));
    }
    let q = field as u64;
    let lower = f.sublevel(level);
    let upper = f.sublevel(level + p);
    let (ck_lower, _) = basis(&lower, k);
    let (ck_upper, idx_upper) = basis(&upper, k);
    if ck_lower.is_empty() {
        return Ok(0);
    }

    // Z_k(X^l), expressed in the k-simplex basis of X^{l+p}
    let cycles: Vec<Vec<u64>> = if k == 0 {
        (0..ck_lower.len())
            .map(|i| {
                let mut v = vec![0; ck_lower.len()];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        let (_, idx_faces) = basis(&lower, k - 1);
        boundary_dense(q, &ck_lower, &idx_faces, idx_faces.len()).kernel()
    };
    if cycles.is_empty() {
        return Ok(0);
    }

    // B_k(X^{l+p}) as columns
    let (ck1_upper, _) = basis(&upper, k + 1);
    let bounds = boundary_dense(q, &ck1_upper, &idx_upper, ck_upper.len());
    let rank_b = bounds.rank();

    let mut stacked = Dense::zeros(q, ck_upper.len(), cycles.len() + bounds.cols);
    for (c, z) in cycles.iter().enumerate() {
        for (i, &a) in z.iter().enumerate() {
            stacked.data[idx_upper[&ck_lower[i]]][c] = a;
        }
    }
    for r in 0..bounds.rows {
        for c in 0..bounds.cols {
            stacked.data[r][cycles.len() + c] = bounds.data[r][c];
        }
    }
    // dim(Z ∩ B) = dim Z + rank B - rank[Z | B]
    let rank_zb = stacked.rank();
    let dim_z = cycles.len();
    Ok(dim_z - (dim_z + rank_b - rank_zb))
}

/// Ordinary Betti number by rank-nullity on dense boundary matrices.
pub fn betti_rank_nullity(x: &SimplicialComplex, k: usize, field: u32) -> Result<usize> {
    if !is_prime(field) {
        return Err(Error::NotPrime(field));
    }
    let q = field as u64;
    let rank = |d: usize| -> usize {
        if d == 0 {
            return 0;
        }
        let (src, _) = basis(x, d);
        let (_, rows) = basis(x, d - 1);
        boundary_dense(q, &src, &rows, rows.len()).rank()
    };
    Ok(x.count(k) - rank(k) - rank(k + 1))
}

pub fn oracle_table(f: &FilteredComplex, max_dim: usize, field: u32) -> Result<PersistentBettiTable> {
    if !is_prime(field) {
        return Err(Error::NotPrime(field));
    }
    Ok(PersistentBettiTable::build(f.levels(), max_dim, |k, l, p| {
        persistent_betti_oracle(f, k, l, p, field).expect("field checked")
    }))
}

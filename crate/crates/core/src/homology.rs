//! Boundary matrices, Betti numbers, boundary membership and cycle bases.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chain::Chain;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{self, ColumnReduction, Field, PrimeField, Rationals, SparseCol};
use crate::ring::Ring;
use crate::simplex::Simplex;

/// Matrix of `d_k` in the lexicographic bases of `k`- and `(k-1)`-simplices.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub ring: Ring,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    pub columns: Vec<SparseCol<BigInt>>,
}

impl BoundaryMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn over<F: Field>(&self, field: &F) -> Vec<SparseCol<F::Elem>> {
        self.columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, a)| (*r, field.lift(a)))
                    .filter(|(_, a)| !field.is_zero(a))
                    .collect()
            })
            .collect()
    }

    pub fn rank_mod(&self, p: u32) -> usize {
        let f = PrimeField::new(p);
        ColumnReduction::new(f, self.over(&f), false).rank()
    }

    pub fn rank_rational(&self) -> usize {
        ColumnReduction::new(Rationals, self.over(&Rationals), false).rank()
    }
}

/// `d_k : C_k(X) -> C_{k-1}(X)`. For `k = 0` the matrix has no rows, and for
/// `k > dim X` it has no columns.
pub fn boundary_matrix(x: &SimplicialComplex, k: usize, ring: Ring) -> BoundaryMatrix {
    let cols: Vec<Simplex> = x.simplices(k).cloned().collect();
    let rows: Vec<Simplex> = if k == 0 {
        Vec::new()
    } else {
        x.simplices(k - 1).cloned().collect()
    };
    let row_index: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let columns = cols
        .iter()
        .map(|s| {
            let mut col: SparseCol<BigInt> = s
                .facets()
                .map(|(j, f)| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (row_index[&f], ring.normalize(BigInt::from(sign)))
                })
                .collect();
            col.sort_by_key(|(r, _)| *r);
            col
        })
        .collect();
    BoundaryMatrix {
        ring,
        rows,
        cols,
        columns,
    }
}

/// Betti numbers `b_0..=b_max_dim` over `Z/p` by rank-nullity.
pub fn betti_numbers(x: &SimplicialComplex, max_dim: usize, p: u32) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max_dim + 1)
        .map(|k| boundary_matrix(x, k, Ring::Prime(p)).rank_mod(p))
        .collect();
    (0..=max_dim)
        .map(|k| x.count(k) - ranks[k] - ranks[k + 1])
        .collect()
}

/// Decides membership in `B_k(X)` for `k`-chains, reusing one reduction of
/// `d_{k+1}`.
pub struct BoundarySolver {
    ring: Ring,
    k: usize,
    row_index: HashMap<Simplex, usize>,
    cols: Vec<Simplex>,
    inner: SolverInner,
}

enum SolverInner {
    Prime(PrimeField, ColumnReduction<PrimeField>),
    Rational(ColumnReduction<Rationals>),
}

impl BoundarySolver {
    pub fn new(x: &SimplicialComplex, k: usize, ring: Ring) -> Self {
        let m = boundary_matrix(x, k + 1, ring);
        // when k + 1 > dim X there are no columns; rows must still index C_k
        let rows: Vec<Simplex> = x.simplices(k).cloned().collect();
        let row_index = rows.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let inner = match ring {
            Ring::Prime(p) => {
                let f = PrimeField::new(p);
                SolverInner::Prime(f, ColumnReduction::new(f, m.over(&f), true))
            }
            Ring::Integers => SolverInner::Rational(ColumnReduction::new(Rationals, m.over(&Rationals), true)),
        };
        BoundarySolver {
            ring,
            k,
            row_index,
            cols: m.cols,
            inner,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// `Some(w)` with `dw = c`, or `None` when `c` is not a boundary.
    pub fn solve(&self, c: &Chain) -> Result<Option<Chain>> {
        if c.ring() != self.ring {
            return Err(Error::RingMismatch(c.ring().to_string(), self.ring.to_string()));
        }
        if c.is_zero() {
            return Ok(Some(Chain::zero(self.ring, self.k + 1)));
        }
        if c.degree() != self.k {
            return Err(Error::DimensionMismatch(c.degree(), self.k));
        }
        let mut target: Vec<(usize, BigInt)> = Vec::with_capacity(c.len());
        for (s, a) in c.terms() {
            let Some(&r) = self.row_index.get(s) else {
                return Err(Error::NotInComplex(s.clone()));
            };
            target.push((r, a.clone()));
        }
        target.sort_by_key(|(r, _)| *r);
        let witness: Option<SparseCol<BigInt>> = match &self.inner {
            SolverInner::Prime(f, red) => {
                let t: SparseCol<u64> = target.iter().map(|(r, a)| (*r, f.lift(a))).collect();
                red.solve(&t)
                    .map(|x| x.into_iter().map(|(j, a)| (j, BigInt::from(a))).collect())
            }
            SolverInner::Rational(red) => {
                let t: SparseCol<BigRational> =
                    target.iter().map(|(r, a)| (*r, BigRational::from_integer(a.clone()))).collect();
                match red.solve(&t) {
                    None => None,
                    Some(x) => Some(linalg::integral_vector(&x).ok_or(Error::NonIntegralWitness)?),
                }
            }
        };
        Ok(witness.map(|x| {
            Chain::from_terms(
                self.ring,
                self.k + 1,
                x.into_iter().map(|(j, a)| (self.cols[j].clone(), a)),
            )
        }))
    }
}

/// `Some(w)` with `dw = c` when `c` is a boundary in `x`. Over the integers
/// the system is solved over the rationals and the witness must be integral.
pub fn is_boundary_in(c: &Chain, x: &SimplicialComplex) -> Result<Option<Chain>> {
    for s in c.support() {
        if !x.contains(s) {
            return Err(Error::NotInComplex(s.clone()));
        }
    }
    BoundarySolver::new(x, c.degree(), c.ring()).solve(c)
}

/// A basis of `Z_k(X; Q)` scaled to primitive integer cycles.
pub fn integer_cycle_basis(x: &SimplicialComplex, k: usize) -> Vec<Chain> {
    let m = boundary_matrix(x, k, Ring::Integers);
    let red = ColumnReduction::new(Rationals, m.over(&Rationals), true);
    red.kernel_basis()
        .iter()
        .map(|v| {
            Chain::from_terms(
                Ring::Integers,
                k,
                linalg::primitive_integer_vector(v)
                    .into_iter()
                    .map(|(j, a)| (m.cols[j].clone(), a)),
            )
        })
        .collect()
}

//! Exact sparse linear algebra over prime fields and the rationals.
//!
//! Matrices are stored column-wise; the reduction is the left-to-right
//! "lowest nonzero" column elimination, which yields rank, pivot pairs,
//! a kernel basis (when `V` in `R = D V` is tracked) and a solver for
//! column-space membership.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn lift(&self, a: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// `Z/p` with `p` prime and below 2^32.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        assert!(crate::ring::is_prime(p), "{p} is not prime");
        PrimeField { p: p as u64 }
    }

    pub fn modulus(&self) -> u32 {
        self.p as u32
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = *a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }
    fn lift(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn lift(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

/// Sparse column: `(row, value)` sorted by row, no stored zeros.
pub type SparseCol<E> = Vec<(usize, E)>;

/// `a + factor * b`.
pub fn axpy<F: Field>(field: &F, a: &SparseCol<F::Elem>, factor: &F::Elem, b: &SparseCol<F::Elem>) -> SparseCol<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = field.mul(factor, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Result of reducing a column-major matrix `D` to `R = D V`.
#[derive(Clone, Debug)]
pub struct ColumnReduction<F: Field> {
    field: F,
    reduced: Vec<SparseCol<F::Elem>>,
    transform: Option<Vec<SparseCol<F::Elem>>>,
    /// pivot row -> column whose lowest nonzero sits in that row
    pivots: HashMap<usize, usize>,
}

impl<F: Field> ColumnReduction<F> {
    pub fn new(field: F, columns: Vec<SparseCol<F::Elem>>, track_transform: bool) -> Self {
        let n = columns.len();
        let mut reduced = columns;
        let mut transform = track_transform.then(|| {
            (0..n).map(|j| vec![(j, field.one())]).collect::<Vec<_>>()
        });
        let mut pivots = HashMap::new();
        for j in 0..n {
            while let Some(&(low, ref val)) = reduced[j].last() {
                let Some(&i) = pivots.get(&low) else {
                    pivots.insert(low, j);
                    break;
                };
                let pivot_val = &reduced[i].last().unwrap().1;
                let factor = field.neg(&field.mul(val, &field.inv(pivot_val)));
                let new_col = axpy(&field, &reduced[j], &factor, &reduced[i]);
                reduced[j] = new_col;
                if let Some(v) = transform.as_mut() {
                    let new_v = axpy(&field, &v[j], &factor, &v[i]);
                    v[j] = new_v;
                }
            }
        }
        ColumnReduction {
            field,
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn n_cols(&self) -> usize {
        self.reduced.len()
    }

    /// Row of the lowest nonzero of reduced column `j`.
    pub fn low(&self, j: usize) -> Option<usize> {
        self.reduced[j].last().map(|(r, _)| *r)
    }

    /// `(pivot row, column)` pairs.
    pub fn pivot_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pivots.iter().map(|(r, c)| (*r, *c))
    }

    /// Kernel basis of `D`: columns of `V` whose reduced column vanished.
    /// Requires the transform to have been tracked.
    pub fn kernel_basis(&self) -> Vec<SparseCol<F::Elem>> {
        let v = self.transform.as_ref().expect("kernel needs the tracked transform");
        (0..self.n_cols())
            .filter(|&j| self.reduced[j].is_empty())
            .map(|j| v[j].clone())
            .collect()
    }

    /// Finds `x` with `D x = target`, or `None` when `target` is not in the
    /// column space. Requires the transform to have been tracked.
    pub fn solve(&self, target: &SparseCol<F::Elem>) -> Option<SparseCol<F::Elem>> {
        let v = self.transform.as_ref().expect("solve needs the tracked transform");
        let field = &self.field;
        let mut rest = target.clone();
        let mut x: SparseCol<F::Elem> = Vec::new();
        while let Some(&(low, ref val)) = rest.last() {
            let &i = self.pivots.get(&low)?;
            let pivot_val = &self.reduced[i].last().unwrap().1;
            let factor = field.mul(val, &field.inv(pivot_val));
            rest = axpy(field, &rest, &field.neg(&factor), &self.reduced[i]);
            x = axpy(field, &x, &factor, &v[i]);
        }
        Some(x)
    }

    /// Whether `target` lies in the column space; needs no transform.
    pub fn in_column_space(&self, target: &SparseCol<F::Elem>) -> bool {
        let field = &self.field;
        let mut rest = target.clone();
        while let Some(&(low, ref val)) = rest.last() {
            let Some(&i) = self.pivots.get(&low) else {
                return false;
            };
            let pivot_val = &self.reduced[i].last().unwrap().1;
            let factor = field.neg(&field.mul(val, &field.inv(pivot_val)));
            rest = axpy(field, &rest, &factor, &self.reduced[i]);
        }
        true
    }
}

/// Multiplies a sparse rational vector by the lcm of its denominators and
/// divides by the gcd of the resulting numerators.
pub fn primitive_integer_vector(col: &SparseCol<BigRational>) -> SparseCol<BigInt> {
    let lcm = col
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let ints: Vec<(usize, BigInt)> = col
        .iter()
        .map(|(r, q)| (*r, q.numer() * (&lcm / q.denom())))
        .collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, (_, a)| acc.gcd(a));
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    ints.into_iter().map(|(r, a)| (r, a / &gcd)).collect()
}

/// Converts a rational vector to integers when every entry is integral.
pub fn integral_vector(col: &SparseCol<BigRational>) -> Option<SparseCol<BigInt>> {
    col.iter()
        .map(|(r, q)| q.is_integer().then(|| (*r, q.to_integer())))
        .collect()
}

/// Applies a sparse column-major matrix to a sparse vector.
pub fn mat_vec<F: Field>(field: &F, columns: &[SparseCol<F::Elem>], x: &SparseCol<F::Elem>) -> SparseCol<F::Elem> {
    let mut out: SparseCol<F::Elem> = Vec::new();
    for (j, a) in x {
        out = axpy(field, &out, a, &columns[*j]);
    }
    out
}

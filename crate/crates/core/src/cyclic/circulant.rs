//! Circulant matrices, the rotation shift, and the nearest-circulant projection.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::scalar::Scalar;

/// `rho(c_1, ..., c_n) = (c_n, c_1, ..., c_{n-1})`.
pub fn rotate<T: Clone>(v: &[T]) -> Vec<T> {
    rotate_by(v, 1)
}

/// `rho^{-1}`.
pub fn rotate_inv<T: Clone>(v: &[T]) -> Vec<T> {
    rotate_by(v, v.len().saturating_sub(1))
}

/// `rho^k`.
pub fn rotate_by<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let k = k % n;
    (0..n).map(|i| v[(i + n - k) % n].clone()).collect()
}

/// All `n` rotations `c, rho(c), ..., rho^{n-1}(c)`.
pub fn rotations<T: Clone>(c: &[T]) -> Vec<Vec<T>> {
    (0..c.len()).map(|k| rotate_by(c, k)).collect()
}

/// `P(c)` with entry `(i, j) = c[(j - i) mod n]`; row `k` is `rho^k(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantMatrix {
    first_row: Vec<Scalar>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<Scalar>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::param("circulant of size zero"));
        }
        crate::scalar::common_radicand(&first_row)?;
        Ok(CirculantMatrix { first_row })
    }

    pub fn from_ints(c: &[i64]) -> Self {
        CirculantMatrix { first_row: c.iter().map(|&x| Scalar::int(x)).collect() }
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Scalar] {
        &self.first_row
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        let n = self.n();
        &self.first_row[(j + n - i % n) % n]
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.n();
        let rows = (0..n).map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect()).collect();
        ExactMatrix::from_rows(rows).expect("entries share a field")
    }

    /// Recognizes a circulant matrix.
    pub fn from_matrix(m: &ExactMatrix) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let c = CirculantMatrix { first_row: m.row(0) };
        let n = m.rows();
        (0..n).all(|i| (0..n).all(|j| m.get(i, j) == c.entry(i, j))).then_some(c)
    }
}

/// Integer matrix whose columns are the rotations of `c`; its lattice is
/// `Lambda(c)` and its determinant equals `det P(c)`.
pub fn rotation_matrix(c: &[BigInt]) -> IntMatrix {
    IntMatrix::from_columns(c.len(), &rotations(c))
}

/// The circulant closest to `A` in Frobenius norm: `c_k` averages the
/// `k`-th wrapped diagonal `A[i][(i + k) mod n]`.
pub fn chan_preconditioner(a: &ExactMatrix) -> Result<CirculantMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let inv_n = Scalar::ratio(1, n as i64);
    let c = (0..n)
        .map(|k| {
            let s: Scalar = (0..n).map(|i| a.get(i, (i + k) % n).clone()).sum();
            &s * &inv_n
        })
        .collect();
    CirculantMatrix::new(c)
}

/// `Lambda(c)`, the lattice generated by all rotations of `c`. Its rank is
/// below `n` exactly when `c(x)` is a zero divisor in `Z[x]/(x^n - 1)`.
pub fn simple_cyclic_lattice(c: &[BigInt]) -> Result<Lattice> {
    Lattice::generated_by(c.len(), &rotations(c))
}

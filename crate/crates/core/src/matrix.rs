//! Dense exact matrices: integer matrices with Hermite normal form and
//! fraction-free determinants, and scalar matrices over Q or Q(sqrt D).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{common_radicand, lcm_of_denominators, Scalar};

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Columns are given as vectors of length `rows`.
    pub fn from_columns<T: Into<BigInt> + Clone>(rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let k = i * self.cols + c;
            self.data[k] = -&self.data[k];
        }
    }

    /// col[dst] -= q * col[src]
    fn axpy_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.data[i * self.cols + dst] -= v;
        }
    }

    /// (col a, col b) <- (s*a + t*b, u*a + v*b)
    fn combine_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.data[i * self.cols + a] = s * &x + t * &y;
            self.data[i * self.cols + b] = u * &x + v * &y;
        }
    }

    /// Determinant via Bareiss elimination (i128 fast path, BigInt fallback).
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let small: Option<Vec<i128>> = self.data.iter().map(|x| x.to_i128()).collect();
        if let Some(v) = small {
            if let Some(d) = bareiss_i128(self.rows, v) {
                return Ok(BigInt::from(d));
            }
        }
        Ok(bareiss_big(self.rows, self.data.clone()))
    }

    pub fn rank(&self) -> usize {
        hnf(self).rank
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

fn bareiss_i128(n: usize, mut a: Vec<i128>) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let p = (k + 1..n).find(|&r| a[r * n + k] != 0)?;
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(a[k * n + k])?;
                let y = a[i * n + k].checked_mul(a[k * n + j])?;
                a[i * n + j] = x.checked_sub(y)? / prev;
            }
        }
        prev = a[k * n + k];
    }
    Some(sign * a[n * n - 1])
}

fn bareiss_big(n: usize, mut a: Vec<BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(p) => {
                    for j in 0..n {
                        a.swap(k * n + j, p * n + j);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Column Hermite normal form `H = M U`.
#[derive(Clone, Debug)]
pub struct Hnf {
    /// Lower echelon form; the first `rank` columns are nonzero.
    pub h: IntMatrix,
    /// Unimodular transform with `M * u = h`.
    pub u: IntMatrix,
    pub rank: usize,
    /// Row index of the pivot of each nonzero column.
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    /// `h` restricted to its nonzero columns.
    pub fn trimmed(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.h.rows, self.rank);
        for i in 0..self.h.rows {
            for j in 0..self.rank {
                out.set(i, j, self.h.get(i, j).clone());
            }
        }
        out
    }

    pub fn pivots(&self) -> Vec<BigInt> {
        self.pivot_rows.iter().enumerate().map(|(j, &r)| self.h.get(r, j).clone()).collect()
    }

    /// Integer coordinates of `v` in the trimmed basis, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.h.rows);
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank);
        let mut next = 0;
        for i in 0..self.h.rows {
            if next < self.rank && self.pivot_rows[next] == i {
                let p = self.h.get(i, next);
                let (q, r) = residual[i].div_rem(p);
                if !r.is_zero() {
                    return None;
                }
                for (k, rk) in residual.iter_mut().enumerate().skip(i) {
                    *rk -= self.h.get(k, next) * &q;
                }
                coords.push(q);
                next += 1;
            } else if !residual[i].is_zero() {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }
}

/// Column-style Hermite normal form: `H = M U` with `U` unimodular, `H` in
/// lower echelon form with positive pivots, entries left of each pivot
/// reduced into `[0, pivot)`, and zero columns moved to the end.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut pivot_rows = Vec::new();
    let mut pc = 0usize;
    for row in 0..m.rows {
        if pc == m.cols {
            break;
        }
        for k in pc + 1..m.cols {
            if h.get(row, k).is_zero() {
                continue;
            }
            if h.get(row, pc).is_zero() {
                h.swap_cols(pc, k);
                u.swap_cols(pc, k);
                continue;
            }
            let a = h.get(row, pc).clone();
            let b = h.get(row, k).clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let (s, t) = (eg.x, eg.y);
            let bu = -(&b / &g);
            let av = &a / &g;
            h.combine_cols(pc, k, &s, &t, &bu, &av);
            u.combine_cols(pc, k, &s, &t, &bu, &av);
        }
        if h.get(row, pc).is_zero() {
            continue;
        }
        if h.get(row, pc).is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let p = h.get(row, pc).clone();
        for j in 0..pc {
            let q = h.get(row, j).div_floor(&p);
            if !q.is_zero() {
                h.axpy_col(j, pc, &q);
                u.axpy_col(j, pc, &q);
            }
        }
        pivot_rows.push(row);
        pc += 1;
    }
    Hnf { h, u, rank: pc, pivot_rows }
}

/// Row-major matrix of exact scalars sharing one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::param("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::param(format!("expected {} entries, got {}", rows * cols, data.len())));
        }
        common_radicand(&data)?;
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::param("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|x| x.len() != r) {
            return Err(Error::param("columns have different lengths"));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in &cols {
                data.push(col[i].clone());
            }
        }
        Self::new(r, c, data)
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        ExactMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(Scalar::from_bigint).collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_int(&IntMatrix::from_rows(rows))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn radicand(&self) -> Option<i64> {
        common_radicand(&self.data).expect("validated on construction")
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(Scalar::is_rational)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * o.get(k, j));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn scale(&self, k: &Scalar) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self^T self`.
    pub fn gram(&self) -> ExactMatrix {
        self.transpose().mul(self)
    }

    /// Frobenius inner product.
    pub fn frobenius_dot(&self, o: &ExactMatrix) -> Scalar {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        self.data.iter().zip(&o.data).map(|(a, b)| a * b).sum()
    }

    pub fn frobenius_norm_sq(&self) -> Scalar {
        self.frobenius_dot(self)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn leading_minor(&self, k: usize) -> Result<Scalar> {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx).det()
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Scalar::one();
        for k in 0..n {
            let p = match (k..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(p) => p,
                None => return Ok(Scalar::zero()),
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det = &det * &pivot;
            let inv = pivot.recip();
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let f = &a[i * n + k] * &inv;
                for j in k..n {
                    let v = &a[i * n + j] - &(&f * &a[k * n + j]);
                    a[i * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r * n + k].is_zero()).ok_or(Error::Singular)?;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                    inv.swap(k * n + j, p * n + j);
                }
            }
            let piv = a[k * n + k].recip();
            for j in 0..n {
                a[k * n + j] = &a[k * n + j] * &piv;
                inv[k * n + j] = &inv[k * n + j] * &piv;
            }
            for i in 0..n {
                if i == k || a[i * n + k].is_zero() {
                    continue;
                }
                let f = a[i * n + k].clone();
                for j in 0..n {
                    let x = &a[i * n + j] - &(&f * &a[k * n + j]);
                    a[i * n + j] = x;
                    let y = &inv[i * n + j] - &(&f * &inv[k * n + j]);
                    inv[i * n + j] = y;
                }
            }
        }
        Ok(ExactMatrix { rows: n, cols: n, data: inv })
    }

    /// Common denominator and integer matrix with `self = int / den`, if rational.
    pub fn to_integer_scaled(&self) -> Option<(BigInt, IntMatrix)> {
        let rats: Option<Vec<&BigRational>> = self.data.iter().map(Scalar::as_rational).collect();
        let rats = rats?;
        let den = lcm_of_denominators(rats.iter().copied());
        let data = rats.iter().map(|r| (*r * &den).to_integer()).collect();
        Some((den, IntMatrix { rows: self.rows, cols: self.cols, data }))
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let data: Option<Vec<BigInt>> = self.data.iter().map(Scalar::to_integer).collect();
        Some(IntMatrix { rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(Scalar::to_f64).collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

//! Enumeration of the rotation-invariant sublattices of `Z^n` of bounded
//! index, through their column Hermite normal forms.
//!
//! For a cyclic `L` with lower-triangular HNF columns `h_1..h_n` and
//! diagonal `d_1..d_n`, the sublattice `L_j` of vectors whose first `j-1`
//! coordinates vanish is spanned by `h_j..h_n`, and `rho^{-1}` maps `L_j`
//! into `L_{j-1}`. Hence `d_{j-1} | d_j`, and `h_{j-1}` must make
//! `rho^{-1}(h_j)` a lattice vector. The columns are built from the last one
//! backwards, solving that membership as congruences row by row.

use num_bigint::BigInt;
use num_integer::Integer;

use super::circulant::rotate_inv;
use super::{is_cyclic, local_obstruction, simple_status, SimpleStatus};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::scalar::Scalar;

pub const CENSUS_MAX_N: usize = 6;
pub const CENSUS_MAX_INDEX: u64 = 1000;

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub lattice: Lattice,
    /// Columns of the Hermite normal form.
    pub hnf_columns: Vec<Vec<i64>>,
    pub index: u64,
    pub status: SimpleStatus,
}

impl CensusEntry {
    /// `Some(true)` with a certificate, `Some(false)` with an obstruction,
    /// `None` when the search was not conclusive.
    pub fn is_simple(&self) -> Option<bool> {
        match self.status {
            SimpleStatus::Simple(_) => Some(true),
            SimpleStatus::NoneWithinBound | SimpleStatus::Inconclusive => None,
            SimpleStatus::NotSimple { .. } | SimpleStatus::NotCyclic => Some(false),
        }
    }
}

/// Column-major lower-triangular matrix under construction; `cols[j]` is
/// meaningful once column `j` has been fixed.
struct Builder {
    n: usize,
    t: u64,
    cols: Vec<Vec<i64>>,
    out: Vec<Vec<Vec<i64>>>,
}

/// Integer coordinates of `v` in the span of columns `from..n` (lower triangular).
fn in_span(cols: &[Vec<i64>], from: usize, v: &[i64]) -> bool {
    let n = v.len();
    let mut r = v.to_vec();
    if r[..from].iter().any(|&x| x != 0) {
        return false;
    }
    for i in from..n {
        let d = cols[i][i];
        if r[i] % d != 0 {
            return false;
        }
        let y = r[i] / d;
        for (k, rk) in r.iter_mut().enumerate().skip(i) {
            *rk -= y * cols[i][k];
        }
    }
    true
}

impl Builder {
    fn diagonal(&mut self, j: usize, prod: u64) {
        // choose d_{j} for column j, given columns j+1..n fixed
        let n = self.n;
        let candidates: Vec<u64> = if j == n - 1 {
            (1..=self.t).collect()
        } else {
            let dj = self.cols[j + 1][j + 1] as u64;
            (1..=dj).filter(|d| dj.is_multiple_of(*d)).collect()
        };
        for d in candidates {
            if prod * d > self.t {
                continue;
            }
            let mut col = vec![0i64; n];
            col[j] = d as i64;
            if j == n - 1 {
                self.cols[j] = col;
                self.next(j, prod * d);
            } else {
                let k = self.cols[j + 1][j + 1] / d as i64;
                // rho^{-1}(h_{j+1}) - k*h_j must lie in span(h_{j+1}..h_n)
                let w = rotate_inv(&self.cols[j + 1]);
                self.entries(j, k, col, w, j + 1, prod * d);
            }
        }
    }

    /// Fix entry `row` of column `j` (rows `> j`). `res` holds `w - k*h_j`
    /// minus the combination of later columns already accounted for.
    fn entries(&mut self, j: usize, k: i64, col: Vec<i64>, res: Vec<i64>, row: usize, prod: u64) {
        let n = self.n;
        if row == n {
            self.cols[j] = col;
            self.next(j, prod);
            return;
        }
        let di = self.cols[row][row];
        for x in 0..di {
            let ri = res[row] - k * x;
            if ri.mod_floor(&di) != 0 {
                continue;
            }
            let y = ri / di;
            let mut r2 = res.clone();
            r2[row] -= k * x;
            for (t, rt) in r2.iter_mut().enumerate().skip(row) {
                *rt -= y * self.cols[row][t];
            }
            let mut c2 = col.clone();
            c2[row] = x;
            self.entries(j, k, c2, r2, row + 1, prod);
        }
    }

    fn next(&mut self, j: usize, prod: u64) {
        if j == 0 {
            if in_span(&self.cols, 0, &rotate_inv(&self.cols[0])) {
                self.out.push(self.cols.clone());
            }
            return;
        }
        self.diagonal(j - 1, prod);
    }
}

/// All rotation-invariant sublattices of `Z^n` with index at most `t`,
/// ordered by index and then by HNF columns. A lattice is marked not simple
/// when `local_obstruction` finds a prime; otherwise a generator is searched
/// for with squared-norm bound `index^2 * n`.
pub fn cyclic_census(n: usize, t: u64) -> Result<Vec<CensusEntry>> {
    if n == 0 || t == 0 {
        return Err(Error::param("census needs n >= 1 and T >= 1"));
    }
    if n > CENSUS_MAX_N || t > CENSUS_MAX_INDEX {
        return Err(Error::ScaleLimit(format!(
            "census supports n <= {CENSUS_MAX_N} and index <= {CENSUS_MAX_INDEX}"
        )));
    }
    let mut b = Builder { n, t, cols: vec![vec![0; n]; n], out: Vec::new() };
    b.diagonal(n - 1, 1);
    let mut found: Vec<(u64, Vec<Vec<i64>>)> =
        b.out.into_iter().map(|cols| ((0..n).map(|i| cols[i][i] as u64).product(), cols)).collect();
    found.sort();
    found.dedup();
    let mut out = Vec::with_capacity(found.len());
    for (index, cols) in found {
        let lattice = Lattice::from_int_matrix(&IntMatrix::from_columns(n, &cols))?;
        if !is_cyclic(&lattice)? {
            return Err(Error::Inconsistent("census produced a non-cyclic lattice".into()));
        }
        let status = match local_obstruction(&lattice)? {
            Some(prime) => SimpleStatus::NotSimple { prime },
            None => {
                let bound = Scalar::from_bigint(BigInt::from(index * index * n as u64));
                simple_status(&lattice, &bound, &[])?
            }
        };
        out.push(CensusEntry { lattice, hnf_columns: cols, index, status });
    }
    Ok(out)
}

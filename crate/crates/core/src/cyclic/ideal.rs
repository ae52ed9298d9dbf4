//! The ring `R_n = Z[x]/(x^n - 1)`, its ideals, and the coefficient map to
//! cyclic sublattices of `Z^n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::circulant::{rotate, rotations};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poly::gcd_q;

/// `c(x) = sum_k c_k x^(k-1)` in `R_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RnPoly {
    coeffs: Vec<BigInt>,
}

impl RnPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("R_n needs n >= 1"));
        }
        Ok(RnPoly { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The constant `k` in `R_n`.
    pub fn constant(n: usize, k: i64) -> Self {
        let mut c = vec![BigInt::zero(); n];
        c[0] = BigInt::from(k);
        RnPoly { coeffs: c }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiplication by `x`, which is the rotation shift on coefficients.
    pub fn mul_x(&self) -> RnPoly {
        RnPoly { coeffs: rotate(&self.coeffs) }
    }

    pub fn mul(&self, o: &RnPoly) -> RnPoly {
        assert_eq!(self.n(), o.n());
        let n = self.n();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[(i + j) % n] += a * b;
            }
        }
        RnPoly { coeffs: out }
    }
}

/// True iff `gcd(c(x), x^n - 1)` is nonconstant over Q.
pub fn is_zero_divisor(p: &RnPoly) -> bool {
    let n = p.n();
    let mut m = vec![BigInt::zero(); n + 1];
    m[0] = -BigInt::one();
    m[n] = BigInt::one();
    gcd_q(p.coeffs(), &m).len() != 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnIdeal {
    n: usize,
    generators: Vec<RnPoly>,
}

impl RnIdeal {
    pub fn new(generators: Vec<RnPoly>) -> Result<Self> {
        let n = generators.first().ok_or_else(|| Error::param("ideal needs a generator"))?.n();
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::IncompatibleDimension(n, g.n()));
        }
        Ok(RnIdeal { n, generators })
    }

    pub fn principal(p: RnPoly) -> Self {
        RnIdeal { n: p.n(), generators: vec![p] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[RnPoly] {
        &self.generators
    }

    pub fn mul_x(&self) -> RnIdeal {
        RnIdeal { n: self.n, generators: self.generators.iter().map(RnPoly::mul_x).collect() }
    }
}

/// The lattice spanned by all rotations of all generators.
pub fn ideal_to_lattice(i: &RnIdeal) -> Result<Lattice> {
    let cols: Vec<Vec<BigInt>> = i.generators.iter().flat_map(|g| rotations(g.coeffs())).collect();
    Lattice::generated_by(i.n, &cols)
}

//! `det P(c)` as the product of `c(w^j)` over the n-th roots of unity,
//! evaluated in certified complex interval arithmetic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::circulant::rotation_matrix;
use crate::error::{Error, Result};
use crate::interval::{cos_sin_turn, CInterval, RInterval};

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 8192;

/// Exact `det P(c)` by fraction-free elimination.
pub fn circulant_det_exact(c: &[BigInt]) -> BigInt {
    if c.is_empty() {
        return BigInt::from(1);
    }
    rotation_matrix(c).det().expect("square")
}

type RootTable = Arc<Vec<CInterval>>;

/// Enclosures of the `n`-th roots of unity, cached per `(n, bits)`.
fn roots_of_unity(n: u64, bits: u32) -> RootTable {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), RootTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache lock").get(&(n, bits)) {
        return t.clone();
    }
    let table: RootTable = Arc::new(
        (0..n)
            .map(|m| {
                let (re, im) = cos_sin_turn(m, n, bits);
                CInterval { re, im }
            })
            .collect(),
    );
    cache.lock().expect("cache lock").insert((n, bits), table.clone());
    table
}

/// Enclosure of `prod_j c(w^j)` at the given working precision.
pub fn det_enclosure(c: &[BigInt], bits: u32) -> CInterval {
    let n = c.len() as u64;
    let roots = roots_of_unity(n, bits);
    let mut prod = CInterval::real(RInterval::from_int(1));
    for j in 0..n {
        let mut val = CInterval::real(RInterval::from_int(0));
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let w = &roots[((j * k as u64) % n) as usize];
            val = val.add(&w.scale(&BigRational::from_integer(ck.clone())));
        }
        prod = prod.mul(&val).round_out(bits + 16);
    }
    prod
}

/// The integer `det P(c)` from the root-of-unity product, doubling precision
/// until the enclosure isolates one integer.
pub fn det_via_roots(c: &[BigInt]) -> Result<BigInt> {
    if c.is_empty() {
        return Ok(BigInt::from(1));
    }
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let e = det_enclosure(c, bits);
        if !e.im.contains_zero() {
            return Err(Error::Inconsistent("imaginary part of det P(c) excludes zero".into()));
        }
        let lo = e.re.lo.ceil().to_integer();
        let hi = e.re.hi.floor().to_integer();
        if lo == hi {
            return Ok(lo);
        }
        if lo > hi {
            return Err(Error::Inconsistent("enclosure of det P(c) contains no integer".into()));
        }
        bits *= 2;
    }
    Err(Error::EnclosureTooWide(MAX_BITS))
}

/// Both evaluations of `det P(c)` and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetCheck {
    pub via_roots: BigInt,
    pub exact: BigInt,
}

impl DetCheck {
    pub fn agrees(&self) -> bool {
        self.via_roots == self.exact
    }
}

pub fn det_check(c: &[BigInt]) -> Result<DetCheck> {
    Ok(DetCheck { via_roots: det_via_roots(c)?, exact: circulant_det_exact(c) })
}

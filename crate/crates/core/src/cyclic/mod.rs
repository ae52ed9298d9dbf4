//! Cyclic lattices: invariance under the rotation shift, generation by the
//! rotations of one vector, and the ideals of `Z[x]/(x^n - 1)`.

mod census;
mod circulant;
mod det;
mod ideal;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub use census::{cyclic_census, CensusEntry, CENSUS_MAX_INDEX, CENSUS_MAX_N};
pub use circulant::{
    chan_preconditioner, rotate, rotate_by, rotate_inv, rotation_matrix, rotations, simple_cyclic_lattice,
    CirculantMatrix,
};
pub use det::{circulant_det_exact, det_check, det_enclosure, det_via_roots, DetCheck};
pub use ideal::{ideal_to_lattice, is_zero_divisor, RnIdeal, RnPoly};

use crate::enumerate::short_vectors_where;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{hnf, Hnf, IntMatrix};
use crate::scalar::Scalar;

/// `rho(L) = L`, checked on the basis; enough because `rho` has finite order.
pub fn is_cyclic(l: &Lattice) -> Result<bool> {
    for b in l.columns() {
        if !l.contains_vector(&rotate(&b))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `k >= 1` with `rho^k(x)` outside `L`, if any.
pub fn rotation_escape(l: &Lattice, x: &[Scalar]) -> Result<Option<usize>> {
    for k in 1..l.ambient_dim() {
        if !l.contains_vector(&rotate_by(x, k))? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Evidence that `L = Lambda(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCertificate {
    pub generator: Vec<Scalar>,
    /// `|det P(c)|`; zero when `L` is not of full rank in its ambient space.
    pub det_abs: Scalar,
    pub generated_in_lattice: bool,
    pub lattice_in_generated: bool,
}

/// Outcome of a bounded search for a single generating vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleStatus {
    Simple(CyclicCertificate),
    NoneWithinBound,
    /// `L/pL` is not a cyclic module under `rho`, so no generator exists.
    NotSimple { prime: u64 },
    /// The search budget ran out before the bound was reached.
    Inconclusive,
    NotCyclic,
}

impl SimpleStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SimpleStatus::Simple(_) => "simple",
            SimpleStatus::NoneWithinBound => "none_within_bound",
            SimpleStatus::NotSimple { .. } => "not_simple",
            SimpleStatus::Inconclusive => "inconclusive",
            SimpleStatus::NotCyclic => "not_cyclic",
        }
    }

    pub fn certificate(&self) -> Option<&CyclicCertificate> {
        match self {
            SimpleStatus::Simple(c) => Some(c),
            _ => None,
        }
    }
}

struct Target {
    den: BigInt,
    h: IntMatrix,
    h_form: Hnf,
    full: bool,
    index: BigInt,
    /// `den` times the basis, column by column, when it fits in `i64`.
    int_basis: Option<Vec<Vec<i64>>>,
}

impl Target {
    fn new(l: &Lattice) -> Result<Target> {
        let (den, h) = l
            .integer_form()
            .ok_or_else(|| Error::Unsupported("generator search needs a rational lattice".into()))?;
        let full = l.rank() == l.ambient_dim();
        let index = if full { h.det()?.abs() } else { BigInt::from(0) };
        let h_form = hnf(&h);
        let d = Scalar::from_bigint(den.clone());
        let int_basis = if full {
            l.columns()
                .iter()
                .map(|c| c.iter().map(|x| (x * &d).to_integer().and_then(|k| k.to_i64())).collect::<Option<Vec<i64>>>())
                .collect::<Option<Vec<_>>>()
        } else {
            None
        };
        Ok(Target { den, h, h_form, full, index, int_basis })
    }

    /// Cheap necessary conditions for `|det P(c)| = index`, on `c = den *` the
    /// lattice vector with coordinates `x`. `None` when no fast path applies.
    fn quick_reject(&self, x: &[i64]) -> Option<bool> {
        let b = self.int_basis.as_ref()?;
        let n = b.len();
        let mut c = vec![0i64; n];
        for (col, &xj) in b.iter().zip(x) {
            for (ci, bij) in c.iter_mut().zip(col) {
                *ci = ci.checked_add(bij.checked_mul(xj)?)?;
            }
        }
        let index = self.index.to_i64()?;
        // c(1) and, for even n, c(-1) are factors of det P(c)
        let s: i64 = c.iter().sum();
        if s == 0 || index % s != 0 {
            return Some(true);
        }
        if n % 2 == 0 {
            let a: i64 = c.iter().enumerate().map(|(i, v)| if i % 2 == 0 { *v } else { -v }).sum();
            if a == 0 || index % a != 0 {
                return Some(true);
            }
        }
        // |det P(c)| = prod_k |c(w^k)|
        let mut logdet = 0.0f64;
        for k in 0..n {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (j, &cj) in c.iter().enumerate() {
                let t = std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64;
                re += cj as f64 * t.cos();
                im += cj as f64 * t.sin();
            }
            logdet += 0.5 * (re * re + im * im).ln();
        }
        Some((logdet - (index as f64).ln()).abs() > 1e-6)
    }

    fn check(&self, c: &[Scalar]) -> Option<CyclicCertificate> {
        let ci: Vec<BigInt> = c
            .iter()
            .map(|x| (x * &Scalar::from_bigint(self.den.clone())).to_integer())
            .collect::<Option<_>>()?;
        let det = if self.full {
            let d = circulant_det_exact(&ci).abs();
            if d != self.index {
                return None;
            }
            d
        } else {
            BigInt::from(0)
        };
        let gen = hnf(&rotation_matrix(&ci));
        if gen.rank != self.h.cols() {
            return None;
        }
        let generated_in_lattice = rotations(&ci).iter().all(|v| self.h_form.contains(v));
        let lattice_in_generated = self.h.columns().iter().all(|v| gen.contains(v));
        if !(generated_in_lattice && lattice_in_generated) {
            return None;
        }
        let scale = Scalar::from_bigint(self.den.clone()).pow(self.h.cols() as u32);
        Some(CyclicCertificate {
            generator: c.to_vec(),
            det_abs: &Scalar::from_bigint(det) / &scale,
            generated_in_lattice,
            lattice_in_generated,
        })
    }
}

/// Candidate order: norm ascending, then coordinates lexicographically descending.
fn order(a: &(Scalar, Vec<Scalar>), b: &(Scalar, Vec<Scalar>)) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1))
}

fn positive_first(v: &[Scalar]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.signum() > 0)
}

/// Looks for `c` in `L` with `|c|^2 <= bound` and `Lambda(c) = L`. Seeds are
/// tried first; then lattice vectors in shells of growing radius, in a fixed
/// order. `Ok(None)` means no generator exists within the bound; a shell
/// expected to hold more than `SEARCH_BUDGET` vectors stops the search with
/// `Error::ScaleLimit`.
pub fn simple_cyclic_search(l: &Lattice, bound: &Scalar, seeds: &[Vec<Scalar>]) -> Result<Option<CyclicCertificate>> {
    if !is_cyclic(l)? {
        return Err(Error::NotCyclic);
    }
    let target = Target::new(l)?;
    let gram = l.gram();
    for s in seeds {
        if s.len() != l.ambient_dim() || !l.contains_vector(s)? {
            continue;
        }
        let norm: Scalar = s.iter().map(Scalar::square).sum();
        if norm > *bound {
            continue;
        }
        if let Some(cert) = target.check(s) {
            return Ok(Some(cert));
        }
    }
    let min = gram.minimal_vectors().min_norm_sq;
    if min > *bound {
        return Ok(None);
    }
    let two = Scalar::int(2);
    let mut lower: Option<Scalar> = None;
    let mut radius = min;
    let covolume = l.det_gram().to_f64().sqrt();
    loop {
        if expected_points(l.rank(), radius.to_f64(), covolume) > SEARCH_BUDGET {
            return Err(Error::ScaleLimit(format!("generator search beyond squared norm {radius}")));
        }
        let mut cands: Vec<(Scalar, Vec<Scalar>)> =
            short_vectors_where(gram.matrix(), &radius, &mut |x| target.quick_reject(x) != Some(true))
            .into_iter()
            .filter(|v| lower.as_ref().is_none_or(|lo| v.norm > *lo))
            .map(|v| (v.norm, l.vector(&v.coords)))
            .filter(|(_, v)| positive_first(v))
            .collect();
        cands.sort_by(order);
        for (_, c) in &cands {
            if let Some(cert) = target.check(c) {
                return Ok(Some(cert));
            }
        }
        if radius >= *bound {
            return Ok(None);
        }
        let next = &radius * &two;
        lower = Some(radius);
        radius = if next > *bound { bound.clone() } else { next };
    }
}

pub const SEARCH_BUDGET: f64 = 1_000_000.0;

/// Volume of the ball of squared radius `r` in rank `k` over the covolume.
fn expected_points(k: usize, r: f64, covolume: f64) -> f64 {
    // V_k = pi^{k/2} r^{k/2} / Gamma(k/2 + 1)
    let mut gamma = if k.is_multiple_of(2) { 1.0 } else { std::f64::consts::PI.sqrt() / 2.0 };
    let mut a = if k.is_multiple_of(2) { 1.0 } else { 1.5 };
    while a <= k as f64 / 2.0 + 0.5 {
        gamma *= a;
        a += 1.0;
    }
    (std::f64::consts::PI * r).powf(k as f64 / 2.0) / gamma / covolume
}

/// Search with a status that distinguishes non-cyclic input and searches
/// cut short by the budget.
pub fn simple_status(l: &Lattice, bound: &Scalar, seeds: &[Vec<Scalar>]) -> Result<SimpleStatus> {
    match simple_cyclic_search(l, bound, seeds) {
        Ok(Some(c)) => Ok(SimpleStatus::Simple(c)),
        Ok(None) => Ok(SimpleStatus::NoneWithinBound),
        Err(Error::NotCyclic) => Ok(SimpleStatus::NotCyclic),
        Err(Error::ScaleLimit(_)) => Ok(SimpleStatus::Inconclusive),
        Err(e) => Err(e),
    }
}

/// A prime `p` such that `rho` acting on `L/pL` has minimal polynomial of
/// degree below `n`. If `L = Lambda(c)` then `L/pL` is isomorphic to
/// `F_p[x]/(x^n - 1)`, whose minimal polynomial is `x^n - 1`; so such a `p`
/// proves that `L` has no single generator. Only primes dividing the index
/// of the integral form can obstruct. Needs a full-rank rational cyclic lattice.
pub fn local_obstruction(l: &Lattice) -> Result<Option<u64>> {
    let n = l.ambient_dim();
    if l.rank() != n {
        return Err(Error::WrongRank { expected: n, got: l.rank() });
    }
    let (_, h) = l
        .integer_form()
        .ok_or_else(|| Error::Unsupported("local test needs a rational lattice".into()))?;
    let Some(index) = h.det()?.abs().to_u64() else {
        return Err(Error::ScaleLimit("index does not fit in 64 bits".into()));
    };
    // matrix of rho in the basis of L
    let mut a = vec![vec![BigInt::from(0); n]; n];
    for (j, b) in l.columns().iter().enumerate() {
        let y = l.coordinates(&rotate(b))?.ok_or(Error::NotCyclic)?;
        for (i, yi) in y.into_iter().enumerate() {
            a[i][j] = yi;
        }
    }
    for p in prime_divisors(index) {
        if p > u32::MAX as u64 {
            continue;
        }
        let pm = p as i64;
        let am: Vec<Vec<i64>> = a
            .iter()
            .map(|r| r.iter().map(|x| (x % BigInt::from(pm)).to_i64().expect("reduced").rem_euclid(pm)).collect())
            .collect();
        // rows vec(A^k), k < n, must be independent mod p
        let mut powers = Vec::with_capacity(n);
        let mut cur: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..n {
            powers.push(cur.iter().flatten().copied().collect::<Vec<i64>>());
            cur = mat_mul_mod(&cur, &am, pm);
        }
        if rank_mod(powers, pm) < n {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn mat_mul_mod(a: &[Vec<i64>], b: &[Vec<i64>], p: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j] % p).sum::<i64>() % p).collect()).collect()
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let (mut r, mut e, mut b) = (1i64, p - 2, a % p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_mod(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Integer vector as exact scalars.
pub fn int_vector(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

//! Short and minimal vector enumeration under an exact Gram form.
//!
//! A floating-point LLL pass and Cholesky factorization drive a
//! Fincke-Pohst search with a slightly enlarged radius; each candidate is
//! then accepted or rejected by evaluating its norm exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::canonical_sign;
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVector {
    pub coords: Vec<BigInt>,
    pub norm: Scalar,
}

/// All vectors of minimal nonzero norm, in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVectorSet {
    pub min_norm_sq: Scalar,
    /// Closed under negation, sorted lexicographically.
    pub vectors: Vec<Vec<BigInt>>,
}

impl MinimalVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// One representative of each `+-` pair.
    pub fn half(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self.vectors.iter().map(|v| canonical_sign(v)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Exact evaluator for `x^T G x`. Rational forms are scaled to integers.
enum Form {
    Small { g: Vec<i128>, den: BigInt },
    Exact(ExactMatrix),
}

impl Form {
    fn new(g: &ExactMatrix) -> Form {
        if let Some((den, m)) = g.to_integer_scaled() {
            let small: Option<Vec<i128>> = (0..m.rows())
                .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
                .map(|(i, j)| m.get(i, j).to_i128().filter(|v| v.abs() < 1 << 40))
                .collect();
            if let Some(g) = small {
                return Form::Small { g, den };
            }
        }
        Form::Exact(g.clone())
    }

    fn eval(&self, x: &[i64]) -> Scalar {
        match self {
            Form::Small { g, den } => {
                let n = x.len();
                let mut fast: Option<i128> = Some(0);
                for i in 0..n {
                    for j in 0..n {
                        fast = fast.and_then(|f| {
                            let t = g[i * n + j].checked_mul(x[i] as i128)?.checked_mul(x[j] as i128)?;
                            f.checked_add(t)
                        });
                    }
                }
                let num = fast.map(BigInt::from).unwrap_or_else(|| {
                    let mut acc = BigInt::zero();
                    for i in 0..n {
                        for j in 0..n {
                            acc += BigInt::from(g[i * n + j]) * x[i] * x[j];
                        }
                    }
                    acc
                });
                Scalar::from(BigRational::new(num, den.clone()))
            }
            Form::Exact(g) => {
                let v: Vec<Scalar> = x.iter().map(|&k| Scalar::int(k)).collect();
                let gv = g.mul_vec(&v);
                v.iter().zip(&gv).map(|(a, b)| a * b).sum()
            }
        }
    }
}

/// Float LLL on a Gram matrix. Returns an integer unimodular `U` (columns are
/// the reduced basis in original coordinates); falls back to the identity if
/// coefficients leave `i64`. Only efficiency depends on the result.
fn lll_gram(g: &[f64], n: usize) -> Vec<i64> {
    let ident: Vec<i64> = (0..n * n).map(|k| i64::from(k % (n + 1) == 0)).collect();
    let mut u = ident.clone();
    let mut gm = g.to_vec();
    let mut k = 1;
    let mut steps = 0;
    while k < n {
        steps += 1;
        if steps > 100_000 {
            break;
        }
        for j in (0..k).rev() {
            let (mu, _) = gso(&gm, n);
            let q = mu[k * n + j].round();
            if q == 0.0 {
                continue;
            }
            if q.abs() > 1e12 {
                return ident;
            }
            let qi = q as i64;
            for r in 0..n {
                match u[r * n + j].checked_mul(qi).and_then(|t| u[r * n + k].checked_sub(t)) {
                    Some(v) => u[r * n + k] = v,
                    None => return ident,
                }
            }
            for i in 0..n {
                let v = bilinear(g, &u, n, k, i);
                gm[k * n + i] = v;
                gm[i * n + k] = v;
            }
        }
        let (mu, bstar) = gso(&gm, n);
        let m = mu[k * n + k - 1];
        if bstar[k] >= (0.99 - m * m) * bstar[k - 1] {
            k += 1;
        } else {
            for r in 0..n {
                u.swap(r * n + k, r * n + k - 1);
            }
            for i in 0..n {
                gm.swap(k * n + i, (k - 1) * n + i);
            }
            for i in 0..n {
                gm.swap(i * n + k, i * n + k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    u
}

/// `u_a^T G u_b` for columns `a`, `b` of `u`.
fn bilinear(g: &[f64], u: &[i64], n: usize, a: usize, b: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += g[i * n + j] * u[i * n + a] as f64 * u[j * n + b] as f64;
        }
    }
    s
}

/// Gram-Schmidt coefficients `mu[i][j]` and squared lengths from a Gram matrix.
fn gso(g: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut mu = vec![0.0; n * n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i * n + j];
            for k in 0..j {
                s -= mu[j * n + k] * mu[i * n + k] * b[k];
            }
            mu[i * n + j] = s / b[j];
        }
        let mut s = g[i * n + i];
        for k in 0..i {
            s -= mu[i * n + k] * mu[i * n + k] * b[k];
        }
        b[i] = s;
        mu[i * n + i] = 1.0;
    }
    (mu, b)
}

struct Search<'a> {
    n: usize,
    /// LLL transform; candidates are passed to `keep` in original coordinates.
    u: &'a [i64],
    keep: &'a mut dyn FnMut(&[i64]) -> bool,
    orig: Vec<i64>,
    /// `q[i]` squared Gram-Schmidt lengths, `mu[j*n+i]` (`j > i`) coefficients.
    q: Vec<f64>,
    mu: Vec<f64>,
    radius: f64,
    form: &'a Form,
    bound: &'a Scalar,
    x: Vec<i64>,
    out: Vec<(Vec<i64>, Scalar)>,
}

impl Search<'_> {
    /// Candidates whose original coordinates overflow are always kept.
    fn kept(&mut self) -> bool {
        let n = self.n;
        for i in 0..n {
            let mut acc = 0i64;
            for j in 0..n {
                match self.u[i * n + j].checked_mul(self.x[j]).and_then(|t| acc.checked_add(t)) {
                    Some(v) => acc = v,
                    None => return true,
                }
            }
            self.orig[i] = acc;
        }
        (self.keep)(&self.orig)
    }

    /// `x^T G x = sum_i q_i (x_i + sum_{j>i} mu_ji x_j)^2`.
    fn run(&mut self, level: usize, partial: f64) {
        let n = self.n;
        let mut c = 0.0;
        for j in level + 1..n {
            c -= self.mu[j * n + level] * self.x[j] as f64;
        }
        let rem = (self.radius - partial).max(0.0);
        let r = (rem / self.q[level]).sqrt();
        let lo = (c - r - 1e-9).ceil() as i64;
        let hi = (c + r + 1e-9).floor() as i64;
        for v in lo..=hi {
            self.x[level] = v;
            let d = v as f64 - c;
            let p = partial + self.q[level] * d * d;
            if p > self.radius {
                continue;
            }
            if level == 0 {
                if self.x.iter().all(|&t| t == 0) {
                    continue;
                }
                if !self.kept() {
                    continue;
                }
                let norm = self.form.eval(&self.x);
                if norm <= *self.bound {
                    self.out.push((self.x.clone(), norm));
                }
            } else {
                self.run(level - 1, p);
            }
        }
        self.x[level] = 0;
    }
}

fn int_to_scalar_matrix(u: &[i64], n: usize) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|i| u[i * n..(i + 1) * n].to_vec()).collect();
    ExactMatrix::from_i64_rows(&rows)
}

/// LLL transform and the reduced exact form `U^T G U`.
fn prepare(g: &ExactMatrix) -> (Vec<i64>, ExactMatrix) {
    let n = g.rows();
    let u = lll_gram(&g.to_f64(), n);
    let um = int_to_scalar_matrix(&u, n);
    let reduced = um.transpose().mul(g).mul(&um);
    (u, reduced)
}

fn search(u: &[i64], reduced: &ExactMatrix, bound: &Scalar, keep: &mut dyn FnMut(&[i64]) -> bool) -> Vec<ShortVector> {
    let n = reduced.rows();
    let (mu, q) = gso(&reduced.to_f64(), n);
    let radius = bound.enclosure(60).hi_f64() * (1.0 + 1e-7) + 1e-9;
    let form = Form::new(reduced);
    let mut s = Search { n, u, keep, orig: vec![0; n], q, mu, radius, form: &form, bound, x: vec![0; n], out: Vec::new() };
    s.run(n - 1, 0.0);
    let mut out: Vec<ShortVector> = s
        .out
        .into_iter()
        .map(|(x, norm)| {
            let coords = (0..n).map(|i| (0..n).map(|j| BigInt::from(u[i * n + j]) * x[j]).sum()).collect();
            ShortVector { coords, norm }
        })
        .collect();
    out.sort_by(|a, b| match a.norm.cmp(&b.norm) {
        Ordering::Equal => a.coords.cmp(&b.coords),
        o => o,
    });
    out
}

/// All nonzero `x` with `x^T G x <= bound`, sorted by norm then coordinates.
pub fn short_vectors(g: &ExactMatrix, bound: &Scalar) -> Vec<ShortVector> {
    if g.rows() == 0 || bound.signum() <= 0 {
        return Vec::new();
    }
    short_vectors_where(g, bound, &mut |_| true)
}

/// As `short_vectors`, keeping only vectors whose coordinates pass `keep`.
/// The predicate runs before the exact norm is computed.
pub fn short_vectors_where(g: &ExactMatrix, bound: &Scalar, keep: &mut dyn FnMut(&[i64]) -> bool) -> Vec<ShortVector> {
    if g.rows() == 0 || bound.signum() <= 0 {
        return Vec::new();
    }
    let (u, reduced) = prepare(g);
    search(&u, &reduced, bound, keep)
}

/// Minimal vectors of the form `G`; empty only for a zero-dimensional form.
pub fn minimal_vectors(g: &ExactMatrix) -> MinimalVectorSet {
    let n = g.rows();
    if n == 0 {
        return MinimalVectorSet { min_norm_sq: Scalar::zero(), vectors: Vec::new() };
    }
    let (u, reduced) = prepare(g);
    // the shortest reduced basis vector bounds the minimum from above
    let upper = (0..n).map(|i| reduced.get(i, i).clone()).min().expect("n > 0");
    let found = search(&u, &reduced, &upper, &mut |_| true);
    let min = found.first().map(|v| v.norm.clone()).expect("a basis vector attains the bound");
    let mut vectors: Vec<Vec<BigInt>> = found.into_iter().take_while(|v| v.norm == min).map(|v| v.coords).collect();
    vectors.sort();
    MinimalVectorSet { min_norm_sq: min, vectors }
}

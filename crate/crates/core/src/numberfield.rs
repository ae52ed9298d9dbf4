//! Trace-form lattices of quadratic and cyclotomic fields, handled through
//! their integer Gram matrix and the Galois action on an integral basis.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enumerate::ShortVector;
use crate::error::{Error, Result};
use crate::lattice::{GramMatrix, WrFlags};
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::poly::{cyclotomic, euler_phi, is_squarefree_u64, rem_monic};
use crate::scalar::{is_squarefree, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Quadratic(i64),
    Cyclotomic(u64),
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::param(format!("D = {d} is not a squarefree integer other than 0, 1")));
        }
        Ok(FieldSpec::Quadratic(d))
    }

    pub fn cyclotomic(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::param(format!("cyclotomic field needs n >= 3, got {n}")));
        }
        Ok(FieldSpec::Cyclotomic(n))
    }

    pub fn degree(&self) -> usize {
        match *self {
            FieldSpec::Quadratic(_) => 2,
            FieldSpec::Cyclotomic(n) => euler_phi(n) as usize,
        }
    }

    /// Absolute discriminant from the closed forms.
    pub fn abs_discriminant(&self) -> BigInt {
        match *self {
            FieldSpec::Quadratic(d) if d.rem_euclid(4) == 1 => BigInt::from(d.abs()),
            FieldSpec::Quadratic(d) => BigInt::from(4 * d.abs()),
            FieldSpec::Cyclotomic(n) => {
                let phi = euler_phi(n) as u32;
                let mut num = BigInt::from(n).pow(phi);
                for p in (2..=n).filter(|&p| n % p == 0 && (2..p).all(|q| p % q != 0)) {
                    num /= BigInt::from(p).pow(phi / (p as u32 - 1));
                }
                num
            }
        }
    }

    /// Tamely ramified: `D = 1 mod 4`, resp. `n` squarefree.
    pub fn tame(&self) -> bool {
        match *self {
            FieldSpec::Quadratic(d) => d.rem_euclid(4) == 1,
            FieldSpec::Cyclotomic(n) => is_squarefree_u64(n),
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            FieldSpec::Quadratic(d) => FieldSpec::quadratic(d).map(drop),
            FieldSpec::Cyclotomic(n) => FieldSpec::cyclotomic(n).map(drop),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Quadratic(d) => write!(f, "quad:{d}"),
            FieldSpec::Cyclotomic(n) => write!(f, "cyclo:{n}"),
        }
    }
}

/// `O_K` with its integral basis, multiplication table and the trace form.
#[derive(Clone, Debug)]
pub struct TraceLattice {
    pub spec: FieldSpec,
    pub labels: Vec<String>,
    pub gram: GramMatrix,
    /// Regular representation of the Galois group, identity first.
    pub galois: Vec<IntMatrix>,
    table: Vec<Vec<Vec<BigInt>>>,
    conj: IntMatrix,
}

fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Coordinates of `zeta^k` in the power basis.
fn zeta_power(n: u64, k: u64) -> Vec<BigInt> {
    let mut x = vec![BigInt::zero(); (k % n) as usize + 1];
    x[(k % n) as usize] = BigInt::one();
    rem_monic(&x, &cyclotomic(n))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TraceLattice {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.check()?;
        let d = spec.degree();
        let (labels, table, conj, galois) = match spec {
            FieldSpec::Quadratic(dd) => {
                let one = int_vec(&[1, 0]);
                let w = int_vec(&[0, 1]);
                let (label, ww, sigma) = if dd.rem_euclid(4) == 1 {
                    (format!("(1+sqrt({dd}))/2"), int_vec(&[(dd - 1) / 4, 1]), vec![vec![1, 0], vec![1, -1]])
                } else {
                    (format!("sqrt({dd})"), int_vec(&[dd, 0]), vec![vec![1, 0], vec![0, -1]])
                };
                let sigma = IntMatrix::from_columns(2, &sigma);
                let conj = if dd < 0 { sigma.clone() } else { IntMatrix::identity(2) };
                let table = vec![vec![one.clone(), w.clone()], vec![w, ww]];
                (vec!["1".to_string(), label], table, conj, vec![IntMatrix::identity(2), sigma])
            }
            FieldSpec::Cyclotomic(n) => {
                let labels = (0..d).map(|i| format!("zeta^{i}")).collect();
                let table = (0..d).map(|i| (0..d).map(|j| zeta_power(n, (i + j) as u64)).collect()).collect();
                let act = |a: u64| {
                    let cols: Vec<Vec<BigInt>> = (0..d as u64).map(|i| zeta_power(n, a * i)).collect();
                    IntMatrix::from_columns(d, &cols)
                };
                let galois = (1..n).filter(|&a| gcd(a, n) == 1).map(act).collect();
                (labels, table, act(n - 1), galois)
            }
        };
        let mut nf = TraceLattice {
            spec,
            labels,
            gram: GramMatrix::new(ExactMatrix::identity(d))?,
            galois,
            table,
            conj,
        };
        let mut g = ExactMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let bi = nf.basis_vector(i);
                let bj = nf.conj.mul_vec(&nf.basis_vector(j));
                g.set(i, j, Scalar::from_bigint(nf.trace(&nf.mul(&bi, &bj))));
            }
        }
        nf.gram = GramMatrix::new(g)?;
        let det = nf.gram.det();
        if det != Scalar::from_bigint(spec.abs_discriminant()) {
            return Err(Error::Inconsistent(format!("{spec}: Gram determinant {det} is not |disc|")));
        }
        nf.check_galois()?;
        Ok(nf)
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[i] = BigInt::one();
        v
    }

    /// Product of two elements given in the integral basis.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut out = vec![BigInt::zero(); d];
        for i in (0..d).filter(|&i| !a[i].is_zero()) {
            for j in (0..d).filter(|&j| !b[j].is_zero()) {
                let ab = &a[i] * &b[j];
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &ab * t;
                }
            }
        }
        out
    }

    /// Trace of the multiplication-by-`a` matrix.
    pub fn trace(&self, a: &[BigInt]) -> BigInt {
        (0..self.degree()).map(|i| self.mul(a, &self.basis_vector(i))[i].clone()).sum()
    }

    pub fn gram_matrix(&self) -> &ExactMatrix {
        self.gram.matrix()
    }

    /// Every Galois matrix preserves the form, and the set is closed under products.
    fn check_galois(&self) -> Result<()> {
        let g = ExactMatrix::from_int;
        for s in &self.galois {
            let e = g(s);
            if &e.transpose().mul(self.gram.matrix()).mul(&e) != self.gram.matrix() {
                return Err(Error::Inconsistent(format!("{}: Galois matrix is not an isometry", self.spec)));
            }
        }
        for a in &self.galois {
            for b in &self.galois {
                if !self.galois.contains(&a.mul(b)) {
                    return Err(Error::Inconsistent(format!("{}: Galois matrices are not closed", self.spec)));
                }
            }
        }
        Ok(())
    }

    pub fn element_order(&self, k: usize) -> usize {
        let id = IntMatrix::identity(self.degree());
        let mut p = self.galois[k].clone();
        let mut order = 1;
        while p != id {
            p = p.mul(&self.galois[k]);
            order += 1;
        }
        order
    }

    pub fn galois_cyclicity(&self) -> GaloisCyclicity {
        let d = self.degree();
        let Some(gen) = (0..self.galois.len()).find(|&k| self.element_order(k) == d) else {
            return GaloisCyclicity { cyclic: false, generator: None, ordering: Vec::new() };
        };
        // sigma_j = sigma^(d - j + 1), j = 1..d
        let mut powers = vec![IntMatrix::identity(d)];
        for _ in 1..d {
            powers.push(powers.last().expect("nonempty").mul(&self.galois[gen]));
        }
        let ordering = (1..=d)
            .map(|j| {
                let p = &powers[(d - j + 1) % d];
                self.galois.iter().position(|s| s == p).expect("closed group")
            })
            .collect();
        GaloisCyclicity { cyclic: true, generator: Some(gen), ordering }
    }

    /// Columns `sigma_j(theta)` for the recorded ordering.
    pub fn orbit_matrix(&self, theta: &[BigInt], ordering: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = ordering.iter().map(|&k| self.galois[k].mul_vec(theta)).collect();
        IntMatrix::from_columns(self.degree(), &cols)
    }

    /// Searches a normal integral basis among elements of trace norm at most `bound`.
    pub fn nib_search(&self, bound: &Scalar) -> Result<Option<NibCertificate>> {
        let gc = self.galois_cyclicity();
        if !gc.cyclic {
            return Err(Error::NonCyclicGalois);
        }
        let try_theta = |theta: &[BigInt]| -> Option<NibCertificate> {
            let m = self.orbit_matrix(theta, &gc.ordering);
            let det = m.det().ok()?;
            (det.abs() == BigInt::one()).then(|| NibCertificate { theta: theta.to_vec(), orbit: m, det })
        };
        for seed in self.seeds() {
            if self.gram.norm(&seed) <= *bound {
                if let Some(c) = try_theta(&seed) {
                    return Ok(Some(c));
                }
            }
        }
        let mut cands: Vec<ShortVector> = self.gram.short_vectors(bound);
        cands.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| b.coords.cmp(&a.coords)));
        Ok(cands.iter().find_map(|v| try_theta(&v.coords)))
    }

    fn seeds(&self) -> Vec<Vec<BigInt>> {
        match self.spec {
            FieldSpec::Cyclotomic(_) => vec![self.basis_vector(1)],
            FieldSpec::Quadratic(d) if d.rem_euclid(4) == 1 => vec![self.basis_vector(1)],
            FieldSpec::Quadratic(_) => Vec::new(),
        }
    }

    /// Search radius `2 d max_i G_ii`.
    pub fn default_nib_bound(&self) -> Scalar {
        let g = self.gram.matrix();
        let max = (0..self.degree()).map(|i| g.get(i, i).clone()).max().expect("nonempty");
        &max * &Scalar::int(2 * self.degree() as i64)
    }

    /// Gram matrix in the basis given by the columns of `m`.
    pub fn gram_in_basis(&self, m: &IntMatrix) -> ExactMatrix {
        let e = ExactMatrix::from_int(m);
        e.transpose().mul(self.gram.matrix()).mul(&e)
    }
}

/// Whether the Galois group is cyclic, with a generator and the ordering
/// `sigma_j = sigma^(d - j + 1)` as indices into the Galois matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCyclicity {
    pub cyclic: bool,
    pub generator: Option<usize>,
    pub ordering: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NibCertificate {
    pub theta: Vec<BigInt>,
    /// Columns: the conjugates of `theta` in the integral basis.
    pub orbit: IntMatrix,
    pub det: BigInt,
}

pub fn trace_gram(spec: FieldSpec) -> Result<TraceLattice> {
    TraceLattice::new(spec)
}

pub fn galois_matrices(spec: FieldSpec) -> Result<Vec<IntMatrix>> {
    Ok(TraceLattice::new(spec)?.galois)
}

pub fn is_galois_cyclic(spec: FieldSpec) -> Result<GaloisCyclicity> {
    Ok(TraceLattice::new(spec)?.galois_cyclicity())
}

pub fn tame(spec: FieldSpec) -> bool {
    spec.tame()
}

pub fn nib_search(spec: FieldSpec, norm_sq_bound: i64) -> Result<Option<NibCertificate>> {
    TraceLattice::new(spec)?.nib_search(&Scalar::int(norm_sq_bound))
}

/// True iff the matrix is circulant: row `k + 1` is row `k` rotated right.
pub fn is_circulant(m: &ExactMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| m.get(i, j) == m.get(0, (j + n - i) % n)))
}

#[derive(Clone, Debug)]
pub struct LambdaReport {
    pub spec: FieldSpec,
    pub degree: usize,
    pub cyclic: bool,
    pub tame: bool,
    pub nib: Option<NibCertificate>,
    pub wr: WrFlags,
    pub kissing: usize,
    pub det_gram: Scalar,
    pub semistable: Option<bool>,
}

impl LambdaReport {
    pub fn is_simple(&self) -> bool {
        self.cyclic && self.nib.is_some()
    }

    pub fn csv_line(&self) -> String {
        let cert = match &self.nib {
            Some(c) => c.theta.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            None => "-".into(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.spec,
            self.degree,
            self.cyclic,
            self.tame,
            self.is_simple(),
            cert,
            self.wr.is_wr,
            self.kissing,
            self.det_gram
        )
    }
}

pub const NF_HEADER: &str = "field,degree,cyclic,tame,simple,nib_certificate,wr,kissing,det_gram";

/// Cyclicity, simplicity and geometry of `Lambda_K`. A normal integral basis
/// found for a wild field, or missed for a tame cyclic one, is an error.
pub fn lambda_k_report(spec: FieldSpec) -> Result<LambdaReport> {
    let nf = TraceLattice::new(spec)?;
    let cyclic = nf.galois_cyclicity().cyclic;
    let tame = spec.tame();
    let nib = if cyclic { nf.nib_search(&nf.default_nib_bound())? } else { None };
    if cyclic && nib.is_some() != tame {
        return Err(Error::Inconsistent(format!("{spec}: normal integral basis search disagrees with tameness")));
    }
    if let Some(c) = &nib {
        if !is_circulant(&nf.gram_in_basis(&c.orbit)) {
            return Err(Error::Inconsistent(format!("{spec}: orbit Gram matrix is not circulant")));
        }
    }
    let degree = nf.degree();
    Ok(LambdaReport {
        spec,
        degree,
        cyclic,
        tame,
        nib,
        wr: nf.gram.wr_flags(),
        kissing: nf.gram.minimal_vectors().len(),
        det_gram: nf.gram.det(),
        semistable: if degree == 2 { Some(nf.gram.semistable_rank2()?) } else { None },
    })
}

/// Ramanujan sum `c_n(k)`, the trace of `zeta_n^k`.
pub fn ramanujan_sum(n: u64, k: u64) -> i64 {
    crate::poly::divisors(gcd(n, k % n))
        .into_iter()
        .map(|d| crate::poly::mobius(n / d) * d as i64)
        .sum()
}

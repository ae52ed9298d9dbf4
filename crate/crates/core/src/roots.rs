//! The root lattices `A_n`, `D_n`, `E_6`, `E_7`, `E_8`, their duals, and the
//! cyclicity report over them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclic::{is_cyclic, rotation_escape, rotation_matrix, simple_status, SimpleStatus};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::{hnf, ExactMatrix, IntMatrix};
use crate::scalar::Scalar;

/// Squared-norm radius of the generator search in the report.
pub const REPORT_BOUND: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootLatticeId {
    pub family: Family,
    pub n: usize,
    pub dual: bool,
}

impl RootLatticeId {
    pub fn new(family: Family, n: usize, dual: bool) -> Result<Self> {
        let ok = match family {
            Family::A | Family::D => n >= 2,
            Family::E => (6..=8).contains(&n),
        };
        if !ok {
            return Err(Error::param(format!("no root lattice {family}{n}")));
        }
        Ok(RootLatticeId { family, n, dual })
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.n + 1,
            Family::D => self.n,
            Family::E => 8,
        }
    }

    /// Gram determinant of the root lattice itself.
    pub fn classical_det(&self) -> i64 {
        match (self.family, self.n) {
            (Family::A, n) => n as i64 + 1,
            (Family::D, _) => 4,
            (Family::E, 6) => 3,
            (Family::E, 7) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RootLatticeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.family, self.n, if self.dual { "*" } else { "" })
    }
}

fn unit(m: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m];
    v[i] = BigInt::one();
    v
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn a_columns(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| sub(&unit(n + 1, i), &unit(n + 1, i + 1))).collect()
}

fn d_columns(n: usize) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<Vec<BigInt>> = (0..n - 1).map(|i| sub(&unit(n, i), &unit(n, i + 1))).collect();
    cols.push(add(&unit(n, n - 2), &unit(n, n - 1)));
    cols
}

/// `2 E_8`, generated by `2 D_8` and the all-ones vector.
fn e8_doubled() -> IntMatrix {
    let mut gens: Vec<Vec<BigInt>> = d_columns(8).iter().map(|c| c.iter().map(|x| x * 2).collect()).collect();
    gens.push(vec![BigInt::one(); 8]);
    hnf(&IntMatrix::from_columns(8, &gens)).trimmed()
}

/// Vectors of `2 E_8` orthogonal to every vector in `normals`.
fn e8_orthogonal(normals: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let h = e8_doubled();
    let w = IntMatrix::from_rows(normals).mul(&h);
    let f = hnf(&w);
    let u = f.u;
    let kernel: Vec<Vec<BigInt>> = (f.rank..u.cols()).map(|j| h.mul_vec(&u.column(j))).collect();
    if kernel.is_empty() {
        return Err(Error::Inconsistent("empty orthogonal complement".into()));
    }
    Ok(IntMatrix::from_columns(8, &kernel))
}

fn halved(m: &IntMatrix) -> Result<Lattice> {
    Lattice::new(ExactMatrix::from_int(m).scale(&Scalar::ratio(1, 2)))
}

fn e_pair(a: usize, b: usize) -> Vec<BigInt> {
    add(&unit(8, a), &unit(8, b))
}

/// Builds the lattice and checks its Gram determinant against the classical value.
pub fn build(id: RootLatticeId) -> Result<Lattice> {
    let id = RootLatticeId::new(id.family, id.n, id.dual)?;
    let root = match (id.family, id.n) {
        (Family::A, n) => Lattice::from_int_matrix(&IntMatrix::from_columns(n + 1, &a_columns(n)))?,
        (Family::D, n) => Lattice::from_int_matrix(&IntMatrix::from_columns(n, &d_columns(n)))?,
        (Family::E, 8) => halved(&e8_doubled())?,
        (Family::E, 7) => halved(&e8_orthogonal(&[e_pair(6, 7)])?)?,
        (Family::E, _) => halved(&e8_orthogonal(&[e_pair(6, 7), e_pair(5, 7)])?)?,
    };
    let det = Scalar::int(id.classical_det());
    if root.det_gram() != det {
        return Err(Error::Inconsistent(format!("{id}: Gram determinant {} != {det}", root.det_gram())));
    }
    if !id.dual {
        return Ok(root);
    }
    let dual = root.dual();
    if dual.det_gram() != det.recip() {
        return Err(Error::Inconsistent(format!("{id}: dual determinant {}", dual.det_gram())));
    }
    Ok(dual)
}

/// `e_4 + e_5`, which leaves `E_6` and `E_7` under a rotation.
pub fn e_witness() -> Vec<Scalar> {
    e_pair(3, 4).into_iter().map(Scalar::from_bigint).collect()
}

fn ints(v: &[BigInt]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::from_bigint).collect()
}

/// Generator of the dual of `Lambda(c)` for full-rank `Lambda(c)`: the first
/// column of `P^{-T}` where `P` has the rotations of `c` as columns.
pub fn dual_generator(c: &[Scalar]) -> Result<Vec<Scalar>> {
    let cols: Vec<Vec<Scalar>> = crate::cyclic::rotations(c);
    let p = ExactMatrix::from_columns(cols)?;
    Ok(p.inverse()?.transpose().column(0))
}

/// Known generators tried before the search.
pub fn seeds(id: RootLatticeId) -> Vec<Vec<Scalar>> {
    let m = id.ambient_dim();
    match (id.family, id.dual) {
        (Family::A, false) => vec![ints(&sub(&unit(m, 0), &unit(m, 1)))],
        (Family::A, true) => {
            // projection of e_1 onto the hyperplane sum x = 0
            let k = Scalar::ratio(1, m as i64);
            let mut v = vec![-&k; m];
            v[0] = &Scalar::one() - &k;
            vec![v]
        }
        (Family::D, dual) if id.n % 2 == 1 => {
            let c = ints(&add(&unit(m, 0), &unit(m, 1)));
            if dual {
                dual_generator(&c).map(|g| vec![g]).unwrap_or_default()
            } else {
                vec![c]
            }
        }
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub struct RootRow {
    pub id: RootLatticeId,
    pub det_gram: Scalar,
    pub kissing: usize,
    pub is_cyclic: bool,
    pub status: SimpleStatus,
    /// For non-cyclic lattices: `x` and the smallest `k` with `rho^k(x)` outside.
    pub witness: Option<(Vec<Scalar>, usize)>,
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl RootRow {
    pub fn certificate_field(&self) -> String {
        if let Some(c) = self.status.certificate() {
            return join(&c.generator);
        }
        match &self.witness {
            Some((x, k)) => format!("witness {} k={k}", join(x)),
            None => "-".into(),
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.id.family,
            self.id.n,
            self.id.dual,
            self.det_gram,
            self.kissing,
            self.is_cyclic,
            self.status.label(),
            self.certificate_field()
        )
    }
}

pub const REPORT_HEADER: &str = "family,n,dual,det_gram,kissing,is_cyclic,simple_status,certificate";

/// One report row, searching generators up to `bound`.
pub fn report_row(id: RootLatticeId, bound: &Scalar) -> Result<RootRow> {
    let l = build(id)?;
    let kissing = l.minimal_vectors()?.len();
    let cyclic = is_cyclic(&l)?;
    let (status, witness) = if cyclic {
        (simple_status(&l, bound, &seeds(id))?, None)
    } else {
        let x = e_witness();
        let w = if l.contains_vector(&x)? { rotation_escape(&l, &x)?.map(|k| (x, k)) } else { None };
        (SimpleStatus::NotCyclic, w)
    };
    Ok(RootRow { id, det_gram: l.det_gram(), kissing, is_cyclic: cyclic, status, witness })
}

/// Ids in report order: `A_n`, `A_n^*`, `D_n`, `D_n^*` for `2 <= n <= max_n`,
/// then the `E` lattices that fit (`E_8` once, being self-dual).
pub fn report_ids(max_n: usize) -> Vec<RootLatticeId> {
    let mut ids = Vec::new();
    for family in [Family::A, Family::D] {
        for n in 2..=max_n {
            for dual in [false, true] {
                ids.push(RootLatticeId { family, n, dual });
            }
        }
    }
    for n in 6..=max_n.min(8) {
        ids.push(RootLatticeId { family: Family::E, n, dual: false });
        if n < 8 {
            ids.push(RootLatticeId { family: Family::E, n, dual: true });
        }
    }
    ids
}

pub fn root_report(max_n: usize) -> Result<Vec<RootRow>> {
    if max_n > 8 {
        return Err(Error::ScaleLimit(format!("root report supports n <= 8, got {max_n}")));
    }
    let bound = Scalar::int(REPORT_BOUND);
    report_ids(max_n).into_iter().map(|id| report_row(id, &bound)).collect()
}

pub fn root_report_csv(max_n: usize) -> Result<String> {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for row in root_report(max_n)? {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    Ok(out)
}

/// `det P(c)` for `c = (1, 1, 0, ..., 0)` together with whether `Lambda(c) = D_n`.
pub fn d_odd_certificate(n: usize) -> Result<(BigInt, bool)> {
    let mut c = vec![BigInt::zero(); n];
    c[0] = BigInt::one();
    c[1] = BigInt::one();
    let p = rotation_matrix(&c);
    let gen = Lattice::from_int_matrix(&hnf(&p).trimmed())?;
    let d = Lattice::from_int_matrix(&IntMatrix::from_columns(n, &d_columns(n)))?;
    Ok((p.det()?, gen.same_lattice(&d)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(family: Family, n: usize, dual: bool) -> RootLatticeId {
        RootLatticeId::new(family, n, dual).unwrap()
    }

    #[test]
    fn small_lattices() {
        let a2 = build(id(Family::A, 2, false)).unwrap();
        assert_eq!(a2.det_gram(), Scalar::int(3));
        assert_eq!(a2.minimal_vectors().unwrap().len(), 6);
        let d4 = build(id(Family::D, 4, false)).unwrap();
        let s = d4.minimal_vectors().unwrap();
        assert_eq!((s.len(), s.min_norm_sq), (24, Scalar::int(2)));
    }

    #[test]
    fn exceptional_determinants() {
        for n in 6..=8 {
            let l = build(id(Family::E, n, false)).unwrap();
            assert_eq!(l.rank(), n);
            assert_eq!(l.minimal_vectors().unwrap().min_norm_sq, Scalar::int(2));
        }
        let e8 = build(id(Family::E, 8, false)).unwrap();
        assert!(e8.same_lattice(&e8.dual()).unwrap());
    }

    #[test]
    fn invalid_ids() {
        assert!(RootLatticeId::new(Family::E, 5, false).is_err());
        assert!(RootLatticeId::new(Family::A, 1, false).is_err());
    }

    #[test]
    fn classical_rows() {
        let b = Scalar::int(REPORT_BOUND);
        let a3 = report_row(id(Family::A, 3, false), &b).unwrap();
        assert!(a3.is_cyclic);
        assert_eq!(a3.certificate_field(), "1 -1 0 0");
        let d6 = report_row(id(Family::D, 6, false), &b).unwrap();
        assert!(d6.is_cyclic);
        assert_eq!(d6.status, SimpleStatus::NoneWithinBound);
        let e6 = report_row(id(Family::E, 6, false), &b).unwrap();
        assert!(!e6.is_cyclic);
        assert_eq!(e6.witness.as_ref().map(|w| w.1), Some(1));
        let e7 = report_row(id(Family::E, 7, false), &b).unwrap();
        assert_eq!(e7.witness.as_ref().map(|w| w.1), Some(2));
    }

    #[test]
    fn d_odd_generators() {
        for n in [3, 5, 7, 9, 11] {
            assert_eq!(d_odd_certificate(n).unwrap(), (BigInt::from(2), true));
        }
    }
}

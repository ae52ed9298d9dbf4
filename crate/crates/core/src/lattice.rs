//! Lattices given by an exact basis, Gram forms, and the predicates on
//! minimal vectors (well-roundedness, semistability, angle conditions).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{self, MinimalVectorSet};
use crate::error::{Error, Result};
use crate::matrix::{hnf, ExactMatrix, Hnf, IntMatrix};
use crate::scalar::{lcm_of_denominators, Scalar};

/// Symmetric positive definite form, checked exactly on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(ExactMatrix);

impl GramMatrix {
    pub fn new(m: ExactMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows(), m.cols()));
        }
        if !m.is_symmetric() {
            return Err(Error::param("Gram matrix is not symmetric"));
        }
        for k in 1..=m.rows() {
            if m.leading_minor(k)?.signum() <= 0 {
                return Err(Error::DependentBasis);
            }
        }
        Ok(GramMatrix(m))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(ExactMatrix::from_i64_rows(rows))
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn det(&self) -> Scalar {
        self.0.det().expect("square")
    }

    /// `x^T G x` for integer coordinates.
    pub fn norm(&self, x: &[BigInt]) -> Scalar {
        let v: Vec<Scalar> = x.iter().cloned().map(Scalar::from_bigint).collect();
        let gv = self.0.mul_vec(&v);
        v.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub fn minimal_vectors(&self) -> MinimalVectorSet {
        enumerate::minimal_vectors(&self.0)
    }

    /// All nonzero integer vectors with `x^T G x <= bound`, both signs.
    pub fn short_vectors(&self, bound: &Scalar) -> Vec<enumerate::ShortVector> {
        enumerate::short_vectors(&self.0, bound)
    }

    pub fn wr_flags(&self) -> WrFlags {
        wr_flags_of(self.dim(), &self.minimal_vectors())
    }

    pub fn semistable_rank2(&self) -> Result<bool> {
        if self.dim() != 2 {
            return Err(Error::WrongRank { expected: 2, got: self.dim() });
        }
        let m = self.minimal_vectors().min_norm_sq;
        Ok(self.det() <= m.square())
    }

    pub fn rank1_semistability_necessary(&self) -> bool {
        let m = self.minimal_vectors().min_norm_sq;
        self.det() <= m.pow(self.dim() as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WrFlags {
    pub is_wr: bool,
    pub generated_by_min: bool,
    pub basis_of_min: bool,
}

fn wr_flags_of(n: usize, s: &MinimalVectorSet) -> WrFlags {
    let half = s.half();
    if half.is_empty() {
        return WrFlags { is_wr: false, generated_by_min: false, basis_of_min: false };
    }
    let m = IntMatrix::from_columns(n, &half);
    let h = hnf(&m);
    let is_wr = h.rank == n;
    let generated_by_min = is_wr && h.pivots().iter().all(One::is_one);
    let basis_of_min = generated_by_min && find_basis(n, &half, &mut Vec::new(), 0);
    WrFlags { is_wr, generated_by_min, basis_of_min }
}

/// Depth-first search for `n` vectors forming a basis of `Z^n`, pruning any
/// partial choice that does not span a primitive sublattice.
fn find_basis(n: usize, vs: &[Vec<BigInt>], chosen: &mut Vec<usize>, start: usize) -> bool {
    if chosen.len() == n {
        return true;
    }
    for i in start..vs.len() {
        if vs.len() - i < n - chosen.len() {
            break;
        }
        chosen.push(i);
        let rows: Vec<Vec<BigInt>> = chosen.iter().map(|&k| vs[k].clone()).collect();
        let h = hnf(&IntMatrix::from_rows(&rows));
        if h.rank == chosen.len() && h.pivots().iter().all(One::is_one) && find_basis(n, vs, chosen, i + 1) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A lattice in `R^m` of rank `n <= m`, given by the columns of its basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: ExactMatrix,
    gram: GramMatrix,
    /// For rational bases: `basis = int / den` and the HNF of `int`.
    scaled: Option<(BigInt, Hnf)>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Lattice {
    pub fn new(basis: ExactMatrix) -> Result<Self> {
        if basis.cols() > basis.rows() {
            return Err(Error::DependentBasis);
        }
        let gram = GramMatrix::new(basis.gram())?;
        let scaled = basis.to_integer_scaled().map(|(d, m)| (d, hnf(&m)));
        Ok(Lattice { basis, gram, scaled })
    }

    pub fn from_columns(cols: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(ExactMatrix::from_columns(cols)?)
    }

    pub fn from_int_columns(cols: &[Vec<i64>]) -> Result<Self> {
        let m = cols.first().map_or(0, Vec::len);
        Self::from_int_matrix(&IntMatrix::from_columns(m, cols))
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Result<Self> {
        if m.cols() == 0 {
            return Err(Error::RankZero);
        }
        Self::new(ExactMatrix::from_int(m))
    }

    /// Lattice generated by arbitrary integer vectors (columns), possibly dependent.
    pub fn generated_by(dim: usize, gens: &[Vec<BigInt>]) -> Result<Self> {
        let h = hnf(&IntMatrix::from_columns(dim, gens));
        if h.rank == 0 {
            return Err(Error::RankZero);
        }
        Self::from_int_matrix(&h.trimmed())
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        Self::from_int_matrix(&IntMatrix::identity(n)).expect("identity basis")
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        self.basis.columns()
    }

    pub fn radicand(&self) -> Option<i64> {
        self.basis.radicand()
    }

    pub fn is_rational(&self) -> bool {
        self.scaled.is_some()
    }

    /// `(d, H)` with `d * L` the integer lattice spanned by the columns of `H`
    /// (trimmed Hermite normal form), for rational lattices.
    pub fn integer_form(&self) -> Option<(BigInt, IntMatrix)> {
        self.scaled.as_ref().map(|(d, h)| (d.clone(), h.trimmed()))
    }

    /// Determinant of the Gram matrix (the squared covolume).
    pub fn det_gram(&self) -> Scalar {
        self.gram.det()
    }

    pub fn vector(&self, coords: &[BigInt]) -> Vec<Scalar> {
        let v: Vec<Scalar> = coords.iter().cloned().map(Scalar::from_bigint).collect();
        self.basis.mul_vec(&v)
    }

    /// Integer coordinates of `v` in this basis, if `v` is a lattice vector.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient_dim() {
            return Err(Error::IncompatibleDimension(self.ambient_dim(), v.len()));
        }
        if let (Some((den, h)), Some(rats)) = (&self.scaled, rational_parts(v)) {
            // v * den must be an integer vector in the HNF lattice
            let mut w = Vec::with_capacity(v.len());
            for r in rats {
                let x = r * den;
                if !x.is_integer() {
                    return Ok(None);
                }
                w.push(x.to_integer());
            }
            return Ok(h.solve(&w).map(|y| {
                // y are coordinates in the HNF basis; H = M U so coordinates in M are U y
                let u = &h.u;
                (0..u.rows()).map(|i| (0..y.len()).map(|j| u.get(i, j) * &y[j]).sum()).collect()
            }));
        }
        let bt_v = self.basis.transpose().mul_vec(v);
        let y = self.gram.matrix().inverse()?.mul_vec(&bt_v);
        let mut coords = Vec::with_capacity(y.len());
        for c in &y {
            match c.to_integer() {
                Some(k) => coords.push(k),
                None => return Ok(None),
            }
        }
        if self.vector(&coords).as_slice() != v {
            return Ok(None);
        }
        Ok(Some(coords))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// True iff every basis vector of `m` lies in `self`.
    pub fn contains(&self, m: &Lattice) -> Result<bool> {
        if m.ambient_dim() != self.ambient_dim() {
            return Err(Error::IncompatibleDimension(self.ambient_dim(), m.ambient_dim()));
        }
        for c in m.columns() {
            if !self.contains_vector(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_lattice(&self, m: &Lattice) -> Result<bool> {
        Ok(self.rank() == m.rank() && self.contains(m)? && m.contains(self)?)
    }

    /// Dual lattice inside the real span, with basis `B (B^T B)^{-1}`.
    pub fn dual(&self) -> Lattice {
        let inv = self.gram.matrix().inverse().expect("Gram matrix is nonsingular");
        Lattice::new(self.basis.mul(&inv)).expect("dual basis is independent")
    }

    pub fn scale(&self, k: &Scalar) -> Result<Lattice> {
        if k.is_zero() {
            return Err(Error::param("scale factor must be nonzero"));
        }
        Lattice::new(self.basis.scale(k))
    }

    /// The lattice `M L` for a linear map `M`.
    pub fn transform(&self, m: &ExactMatrix) -> Result<Lattice> {
        if m.cols() != self.ambient_dim() {
            return Err(Error::IncompatibleDimension(m.cols(), self.ambient_dim()));
        }
        Lattice::new(m.mul(&self.basis))
    }

    /// The same lattice with basis `B U` for an integer change of basis `U`.
    pub fn rebased(&self, u: &IntMatrix) -> Result<Lattice> {
        if u.det()?.abs() != BigInt::one() {
            return Err(Error::param("change of basis is not unimodular"));
        }
        Lattice::new(self.basis.mul(&ExactMatrix::from_int(u)))
    }

    pub fn minimal_vectors(&self) -> Result<MinimalVectorSet> {
        Ok(self.gram.minimal_vectors())
    }

    pub fn wr_flags(&self) -> WrFlags {
        self.gram.wr_flags()
    }

    pub fn semistable_rank2(&self) -> Result<bool> {
        self.gram.semistable_rank2()
    }

    pub fn rank1_semistability_necessary(&self) -> bool {
        self.gram.rank1_semistability_necessary()
    }
}

fn rational_parts(v: &[Scalar]) -> Option<Vec<&num_rational::BigRational>> {
    v.iter().map(Scalar::as_rational).collect()
}

/// Common denominator of a rational vector, or `None` for surd entries.
pub fn vector_denominator(v: &[Scalar]) -> Option<BigInt> {
    rational_parts(v).map(lcm_of_denominators)
}

/// `sin^2` of the angle between each basis vector and the span of its
/// predecessors, via `|b*_k|^2 = D_k / D_{k-1}` with `D_k` leading Gram minors.
pub fn angle_profile(basis: &ExactMatrix) -> Result<Vec<Scalar>> {
    angle_profile_gram(&basis.gram())
}

pub fn angle_profile_gram(g: &ExactMatrix) -> Result<Vec<Scalar>> {
    let n = g.rows();
    let mut minors = vec![Scalar::one()];
    for k in 1..=n {
        let d = g.leading_minor(k)?;
        if d.signum() <= 0 {
            return Err(Error::DependentBasis);
        }
        minors.push(d);
    }
    Ok((1..n)
        .map(|k| {
            let gs = &minors[k + 1] / &minors[k];
            &gs / g.get(k, k)
        })
        .collect())
}

/// Each vector makes an angle of at least `pi/3` with the span of the
/// preceding ones (`sin^2 >= 3/4`).
pub fn is_weakly_nearly_orthogonal(basis: &ExactMatrix) -> Result<bool> {
    let q = Scalar::ratio(3, 4);
    Ok(angle_profile(basis)?.iter().all(|s| *s >= q))
}

const NEARLY_ORTHOGONAL_MAX_RANK: usize = 8;

/// Weak near-orthogonality for every ordering of the basis.
pub fn is_nearly_orthogonal(basis: &ExactMatrix) -> Result<bool> {
    let n = basis.cols();
    if n > NEARLY_ORTHOGONAL_MAX_RANK {
        return Err(Error::Unsupported(format!(
            "near-orthogonality is checked over all orderings only up to rank {NEARLY_ORTHOGONAL_MAX_RANK}"
        )));
    }
    let g = basis.gram();
    let q = Scalar::ratio(3, 4);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let gp = g.submatrix(&perm, &perm);
        if !angle_profile_gram(&gp)?.iter().all(|s| *s >= q) {
            return Ok(false);
        }
        if !next_permutation(&mut perm) {
            return Ok(true);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Coordinates scaled by the sign making the first nonzero entry positive.
pub fn canonical_sign(v: &[BigInt]) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|y| -y).collect(),
        _ => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn hexagonal() -> Lattice {
        Lattice::from_columns(vec![vec![s("1"), s("0")], vec![s("1/2"), s("0+1/2*sqrt(3)")]]).unwrap()
    }

    #[test]
    fn containment_of_scaled_lattices() {
        let z2 = Lattice::standard(2);
        let two = Lattice::from_int_columns(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert!(z2.contains(&two).unwrap());
        assert!(!two.contains(&z2).unwrap());
        let z3 = Lattice::standard(3);
        assert_eq!(z2.contains(&z3), Err(Error::IncompatibleDimension(2, 3)));
    }

    #[test]
    fn coordinates_in_non_hnf_basis() {
        let l = Lattice::from_int_columns(&[vec![3, 2], vec![2, 3]]).unwrap();
        let v = l.vector(&[BigInt::from(2), BigInt::from(-5)]);
        assert_eq!(l.coordinates(&v).unwrap(), Some(vec![BigInt::from(2), BigInt::from(-5)]));
        assert!(!l.contains_vector(&[s("1"), s("0")]).unwrap());
    }

    #[test]
    fn surd_lattice_membership() {
        let h = hexagonal();
        assert!(h.contains_vector(&[s("-1/2"), s("0+1/2*sqrt(3)")]).unwrap());
        assert!(!h.contains_vector(&[s("1/2"), s("0")]).unwrap());
    }

    #[test]
    fn dual_of_small_lattices() {
        let z3 = Lattice::standard(3);
        assert!(z3.dual().same_lattice(&z3).unwrap());
        let d4 = Lattice::from_int_columns(&[
            vec![1, -1, 0, 0],
            vec![0, 1, -1, 0],
            vec![0, 0, 1, -1],
            vec![0, 0, 1, 1],
        ])
        .unwrap();
        assert_eq!(d4.det_gram(), Scalar::int(4));
        assert_eq!(d4.dual().det_gram(), Scalar::ratio(1, 4));
        let a2 = Lattice::from_int_columns(&[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert_eq!(a2.det_gram(), Scalar::int(3));
        assert_eq!(a2.dual().det_gram(), Scalar::ratio(1, 3));
        assert!(a2.dual().dual().same_lattice(&a2).unwrap());
    }

    #[test]
    fn semistability_examples() {
        let l = Lattice::from_int_columns(&[vec![3, 2], vec![2, 3]]).unwrap();
        assert!(!l.semistable_rank2().unwrap());
        assert!(!l.rank1_semistability_necessary());
        assert!(Lattice::standard(2).semistable_rank2().unwrap());
        assert!(hexagonal().semistable_rank2().unwrap());
        let a2 = Lattice::from_int_columns(&[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert!(a2.rank1_semistability_necessary());
        assert_eq!(Lattice::standard(3).semistable_rank2(), Err(Error::WrongRank { expected: 2, got: 3 }));
    }

    #[test]
    fn angle_profiles() {
        let id = ExactMatrix::identity(3);
        assert_eq!(angle_profile(&id).unwrap(), vec![Scalar::one(), Scalar::one()]);
        assert_eq!(angle_profile(hexagonal().basis()).unwrap(), vec![Scalar::ratio(3, 4)]);
        assert!(is_weakly_nearly_orthogonal(hexagonal().basis()).unwrap());
        let skew = ExactMatrix::from_i64_rows(&[vec![1, 10], vec![0, 1]]);
        assert_eq!(angle_profile(&skew).unwrap(), vec![Scalar::ratio(1, 101)]);
        assert!(!is_weakly_nearly_orthogonal(&skew).unwrap());
        assert!(is_nearly_orthogonal(hexagonal().basis()).unwrap());
        let dep = ExactMatrix::from_i64_rows(&[vec![1, 2], vec![1, 2]]);
        assert_eq!(angle_profile(&dep), Err(Error::DependentBasis));
        assert!(matches!(is_nearly_orthogonal(&ExactMatrix::identity(9)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn wr_flags_examples() {
        let all = WrFlags { is_wr: true, generated_by_min: true, basis_of_min: true };
        assert_eq!(Lattice::standard(4).wr_flags(), all);
        let g = GramMatrix::from_i64_rows(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(g.wr_flags(), WrFlags { is_wr: false, generated_by_min: false, basis_of_min: false });
    }

    #[test]
    fn wr_but_not_generated() {
        // 2e_1..2e_4 and the all-ones vector: minima are the +-2e_i, spanning with index 2
        let l = Lattice::from_int_columns(&[
            vec![2, 0, 0, 0, 0],
            vec![0, 2, 0, 0, 0],
            vec![0, 0, 2, 0, 0],
            vec![0, 0, 0, 2, 0],
            vec![1, 1, 1, 1, 1],
        ])
        .unwrap();
        let m = l.minimal_vectors().unwrap();
        assert_eq!(m.min_norm_sq, Scalar::int(4));
        assert_eq!(m.vectors.len(), 10);
        assert_eq!(l.wr_flags(), WrFlags { is_wr: true, generated_by_min: false, basis_of_min: false });
    }
}

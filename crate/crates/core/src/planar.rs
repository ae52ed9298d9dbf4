//! Rank-two lattices: Lagrange reduction, the cyclic approximation of a basis,
//! and the canonical parameter `x` with `L ~ M(x) = [[1, x], [x, 1]] Z^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::heights::{alpha_max, weil_height, FieldDescriptor, HeightValue};
use crate::lattice::Lattice;
use crate::matrix::{ExactMatrix, IntMatrix};
use crate::scalar::{square_free_decomposition, Scalar};

/// Similarity class of a planar WR lattice, represented by `x` in `[0, 2 - sqrt 3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityClass {
    pub field: FieldDescriptor,
    pub x: Scalar,
}

fn require_rank2(l: &Lattice) -> Result<()> {
    if l.rank() != 2 {
        return Err(Error::WrongRank { expected: 2, got: l.rank() });
    }
    Ok(())
}

/// Gauss-Lagrange reduction under the exact Gram form. The returned basis
/// spans the same lattice, `a_1` is a shortest vector, `|a_1| <= |a_2|` and
/// `|<a_1, a_2>| <= |a_1|^2 / 2`.
pub fn lagrange_reduce(l: &Lattice) -> Result<Lattice> {
    require_rank2(l)?;
    let g = l.gram().matrix();
    let (mut n1, mut n2, mut m) = (g.get(0, 0).clone(), g.get(1, 1).clone(), g.get(0, 1).clone());
    // columns of u: current basis in terms of the input basis
    let mut u = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    if n1 > n2 {
        std::mem::swap(&mut n1, &mut n2);
        u.swap(0, 1);
    }
    loop {
        let q = (&m / &n1).round();
        if !q.is_zero() {
            let qs = Scalar::from_bigint(q.clone());
            // b2 <- b2 - q b1
            n2 = &n2 - &(&(&qs * &m) * &Scalar::int(2)) + &qs * &qs * &n1;
            m = &m - &(&qs * &n1);
            u[1] = [&u[1][0] - &q * &u[0][0], &u[1][1] - &q * &u[0][1]];
        }
        if n2 >= n1 {
            break;
        }
        std::mem::swap(&mut n1, &mut n2);
        u.swap(0, 1);
    }
    let um = IntMatrix::from_columns(2, &[u[0].to_vec(), u[1].to_vec()]);
    l.rebased(&um)
}

fn entries(a: &ExactMatrix) -> [Scalar; 4] {
    // columns a_1 = (a11, a12), a_2 = (a21, a22)
    [a.get(0, 0).clone(), a.get(1, 0).clone(), a.get(0, 1).clone(), a.get(1, 1).clone()]
}

fn negate_column(a: &ExactMatrix, j: usize) -> ExactMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        out.set(i, j, -a.get(i, j));
    }
    out
}

/// `s = a11 + a22`, `t = a12 + a21`.
fn diagonal_sums(a: &ExactMatrix) -> (Scalar, Scalar) {
    let [a11, a12, a21, a22] = entries(a);
    (&a11 + &a22, &a12 + &a21)
}

/// The lattice `1/2 [[s, t], [t, s]] Z^2`. A column of `A` is negated first
/// when `s = t = 0` or when the averaged circulant would be singular.
pub fn cyclic_approximation(a: &ExactMatrix) -> Result<Lattice> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let mut a = a.clone();
    let (s, t) = diagonal_sums(&a);
    if s.is_zero() && t.is_zero() {
        a = negate_column(&a, 0);
    }
    let (s, t) = diagonal_sums(&a);
    if s.square() == t.square() {
        a = negate_column(&a, 1);
    }
    let (s, t) = diagonal_sums(&a);
    let half = Scalar::ratio(1, 2);
    Lattice::from_columns(vec![vec![&s * &half, &t * &half], vec![&t * &half, &s * &half]])
}

/// `M(x)`, with basis columns `(1, x)` and `(x, 1)`.
pub fn m_lattice(x: &Scalar) -> Result<Lattice> {
    Lattice::from_columns(vec![vec![Scalar::one(), x.clone()], vec![x.clone(), Scalar::one()]])
}

/// The `x` in `[0, 2 - sqrt 3]` with `L ~ M(x)`.
pub fn canonical_x(l: &Lattice) -> Result<SimilarityClass> {
    require_rank2(l)?;
    if l.ambient_dim() != 2 {
        return Err(Error::IncompatibleDimension(2, l.ambient_dim()));
    }
    if !l.wr_flags().is_wr {
        return Err(Error::NotWellRounded);
    }
    let mut a = lagrange_reduce(l)?.basis().clone();
    let (s, t) = diagonal_sums(&a);
    if s.is_zero() && t.is_zero() {
        a = negate_column(&a, 0);
    }
    let (s, t) = diagonal_sums(&a);
    let x = if s.is_zero() || t.is_zero() {
        Scalar::zero()
    } else {
        let x = (&t / &s).abs();
        if x > Scalar::one() {
            x.recip()
        } else {
            x
        }
    };
    if x > alpha_max() {
        return Err(Error::Inconsistent(format!("canonical x = {x} exceeds 2-sqrt(3)")));
    }
    Ok(SimilarityClass { field: FieldDescriptor::of_radicand(l.radicand()), x })
}

pub fn similar_wr(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    Ok(canonical_x(l1)?.x == canonical_x(l2)?.x)
}

/// The arithmetic WR lattice with basis `(1, 0)`, `(a/b, sqrt(b^2 - a^2)/b)`
/// and its parameter `x = a / (sqrt(b^2 - a^2) + b)`.
pub fn arithmetic_wr(a: i64, b: i64) -> Result<(Lattice, Scalar)> {
    let ok = (a, b) == (0, 1) || (a > 0 && 2 * a <= b && a.gcd(&b) == 1);
    if !ok {
        return Err(Error::param(format!("need coprime 0 < a <= b/2 or (a, b) = (0, 1), got ({a}, {b})")));
    }
    let diff = u64::try_from(b * b - a * a).map_err(|_| Error::Overflow("b^2 - a^2"))?;
    let (sq, d) = square_free_decomposition(diff);
    let root = if d == 1 {
        Scalar::from_bigint(BigInt::from(sq))
    } else {
        Scalar::surd(BigRational::zero(), BigRational::from_integer(sq.into()), d as i64)?
    };
    let bs = Scalar::int(b);
    let l = Lattice::from_columns(vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::ratio(a, b), &root / &bs]])?;
    let x = &Scalar::int(a) / &(&root + &bs);
    Ok((l, x))
}

pub fn class_height(c: &SimilarityClass) -> HeightValue {
    weil_height(&c.x)
}

//! Weil heights of rationals and quadratic irrationals, the sets of
//! bounded height in a real field, and the counting bounds for well-rounded
//! similarity classes.
//!
//! For `x` of degree `d` with primitive minimal polynomial `f`, `h(x)^d` is the
//! Mahler measure of `f`: the leading coefficient times the product of
//! `max(1, |root|)`. For quadratic `x` this is exact in `Q(sqrt D)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{pi, RInterval};
use crate::scalar::{is_squarefree, Scalar};

/// Enclosures are tightened until their width is below `2^-TOLERANCE_BITS`
/// (about `5.7e-14`).
pub const TOLERANCE_BITS: u32 = 44;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    RealQuadratic(i64),
}

impl FieldDescriptor {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d <= 1 || !is_squarefree(d) {
            return Err(Error::param(format!("D = {d} must be squarefree and > 1")));
        }
        Ok(FieldDescriptor::RealQuadratic(d))
    }

    /// The field generated by the entries of a lattice or scalar.
    pub fn of_radicand(d: Option<i64>) -> Self {
        d.map_or(FieldDescriptor::Rationals, FieldDescriptor::RealQuadratic)
    }

    pub fn degree(&self) -> u32 {
        match self {
            FieldDescriptor::Rationals => 1,
            FieldDescriptor::RealQuadratic(_) => 2,
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x.radicand()) {
            (_, None) => true,
            (FieldDescriptor::RealQuadratic(d), Some(e)) => *d == e,
            (FieldDescriptor::Rationals, Some(_)) => false,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => f.write_str("rational"),
            FieldDescriptor::RealQuadratic(d) => write!(f, "quad:{d}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldDescriptor::Rationals);
        }
        let d = s
            .strip_prefix("quad:")
            .and_then(|d| d.parse::<i64>().ok())
            .ok_or_else(|| Error::param(format!("unknown field '{s}' (expected 'rational' or 'quad:D')")))?;
        FieldDescriptor::quadratic(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightValue {
    /// Contains `h(x)`.
    pub enclosure: RInterval,
    /// `h(x)^2`, exact.
    pub squared: Scalar,
}

impl HeightValue {
    fn from_squared(squared: Scalar) -> Self {
        let mut bits = 64;
        let tol = BigRational::new(BigInt::one(), BigInt::one() << TOLERANCE_BITS);
        loop {
            let enc = squared.enclosure(bits).sqrt(bits);
            if enc.width() <= tol {
                return HeightValue { enclosure: enc, squared };
            }
            bits *= 2;
        }
    }

    fn from_exact(h: BigInt) -> Self {
        let r = BigRational::from_integer(h);
        HeightValue { enclosure: RInterval::point(r.clone()), squared: Scalar::from(&r * &r) }
    }

    pub fn lo(&self) -> f64 {
        self.enclosure.lo_f64()
    }

    pub fn hi(&self) -> f64 {
        self.enclosure.hi_f64()
    }

    /// `h(x)` itself when it is rational.
    pub fn exact(&self) -> Option<BigRational> {
        (self.enclosure.lo == self.enclosure.hi).then(|| self.enclosure.lo.clone())
    }
}

/// `|lead| * prod max(1, |r|)`.
fn mahler(lead: &BigInt, roots: &[Scalar]) -> Scalar {
    let one = Scalar::one();
    roots.iter().fold(Scalar::from_bigint(lead.abs()), |acc, r| {
        let a = r.abs();
        if a > one {
            &acc * &a
        } else {
            acc
        }
    })
}

/// Primitive integer minimal polynomial, low degree first, positive leading coefficient.
pub fn minimal_polynomial(x: &Scalar) -> Vec<BigInt> {
    let coeffs: Vec<BigRational> = match x {
        Scalar::Rational(r) => vec![-r.clone(), BigRational::one()],
        Scalar::Surd { .. } => vec![x.norm(), -x.trace(), BigRational::one()],
    };
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.iter().map(|c| c / &g).collect()
}

pub fn weil_height(x: &Scalar) -> HeightValue {
    match x {
        Scalar::Rational(r) => HeightValue::from_exact(r.numer().abs().max(r.denom().clone())),
        Scalar::Surd { .. } => {
            let f = minimal_polynomial(x);
            HeightValue::from_squared(mahler(&f[2], &[x.clone(), x.conjugate()]))
        }
    }
}

/// Height of a rational viewed in a quadratic field: `h^2` is the Mahler
/// measure of its characteristic polynomial `(q t - p)^2`.
pub fn weil_height_quadratic_pathway(x: &BigRational) -> HeightValue {
    let q = x.denom();
    let lead = q * q;
    let root = Scalar::from(x.clone());
    HeightValue::from_squared(mahler(&lead, &[root.clone(), root]))
}

/// `2 - sqrt(3)`, the largest admissible canonical parameter.
pub fn alpha_max() -> Scalar {
    Scalar::surd(BigRational::from_integer(2.into()), BigRational::from_integer((-1).into()), 3).expect("valid surd")
}

fn floor_i64(r: &BigRational) -> Result<i64> {
    r.floor().to_integer().to_i64().ok_or(Error::Overflow("height bound"))
}

fn within(x: &Scalar, alpha: &Scalar, positive_only: bool) -> bool {
    if positive_only {
        x.signum() >= 0 && x <= alpha
    } else {
        x.abs() <= *alpha
    }
}

fn isqrt_exact(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Elements of `K` with `|x| <= alpha` (or `0 <= x <= alpha`) and height at
/// most `t`, each with its exact `h^2`, ordered by height then value.
pub fn enumerate_s_k_with_heights(
    k: FieldDescriptor,
    alpha: &Scalar,
    t: &BigRational,
    positive_only: bool,
) -> Result<Vec<(Scalar, Scalar)>> {
    if alpha.signum() <= 0 {
        return Err(Error::param("alpha must be positive"));
    }
    if *t < BigRational::one() {
        return Err(Error::param("height bound must be at least 1"));
    }
    let mut out: Vec<(Scalar, Scalar)> = Vec::new();
    // rationals: p/q with max(|p|, q) <= T
    let tf = floor_i64(t)?;
    for q in 1..=tf {
        let pmax = (alpha * &Scalar::int(q)).floor().to_i64().unwrap_or(i64::MAX).min(tf);
        let pmin = if positive_only { 0 } else { -pmax };
        for p in pmin..=pmax {
            if p.gcd(&q) != 1 {
                continue;
            }
            let x = Scalar::ratio(p, q);
            if within(&x, alpha, positive_only) {
                let h = p.abs().max(q);
                out.push((x, Scalar::int(h * h)));
            }
        }
    }
    if let FieldDescriptor::RealQuadratic(d) = k {
        // a t^2 + b t + c with Mahler measure M <= T^2 has a <= M, |b| <= 2M, |c| <= M
        let t2 = t * t;
        let m = floor_i64(&t2)?;
        let t2s = Scalar::from(t2);
        for a in 1..=m {
            for c in -m..=m {
                if c == 0 {
                    continue;
                }
                for b in -2 * m..=2 * m {
                    let disc = b * b - 4 * a * c;
                    if disc <= 0 || disc % d != 0 {
                        continue;
                    }
                    let Some(kk) = isqrt_exact(disc / d) else { continue };
                    if a.gcd(&b).gcd(&c) != 1 {
                        continue;
                    }
                    let re = BigRational::new(BigInt::from(-b), BigInt::from(2 * a));
                    let im = BigRational::new(BigInt::from(kk), BigInt::from(2 * a));
                    let r1 = Scalar::surd(re.clone(), im.clone(), d)?;
                    let r2 = r1.conjugate();
                    let hm = mahler(&BigInt::from(a), &[r1.clone(), r2.clone()]);
                    if hm > t2s {
                        continue;
                    }
                    for r in [r1, r2] {
                        if within(&r, alpha, positive_only) {
                            out.push((r, hm.clone()));
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// `S_K(alpha, T)`; see [`enumerate_s_k_with_heights`].
pub fn enumerate_s_k(k: FieldDescriptor, alpha: &Scalar, t: &BigRational, positive_only: bool) -> Result<Vec<Scalar>> {
    Ok(enumerate_s_k_with_heights(k, alpha, t, positive_only)?.into_iter().map(|(x, _)| x).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrCount {
    pub count: usize,
    pub bound: RInterval,
}

/// Number of planar WR similarity classes over `K` of height at most `T`,
/// i.e. of `x` in `K` with `0 <= x <= 2 - sqrt(3)` and `h(x) <= T`.
pub fn count_wr_classes(k: FieldDescriptor, t: &BigRational) -> Result<WrCount> {
    let count = enumerate_s_k(k, &alpha_max(), t, true)?.len();
    let bound = thm_bound(k.degree(), t);
    if BigRational::from_integer(BigInt::from(count)) > bound.hi {
        return Err(Error::Inconsistent(format!("count {count} exceeds the class bound")));
    }
    Ok(WrCount { count, bound })
}

const BOUND_BITS: u32 = 96;

/// `pi / sqrt(12)`.
fn pi_over_sqrt12() -> RInterval {
    let s12 = RInterval::sqrt_rational(&BigRational::from_integer(12.into()), BOUND_BITS);
    pi(BOUND_BITS).div(&s12)
}

fn pow_rat(r: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * r)
}

/// `(pi / (2 sqrt 12)) (1 + 4^(2(d+1)) (2 + sqrt 3)^d T^(2d))`.
pub fn thm_bound(d: u32, t: &BigRational) -> RInterval {
    let two_plus_sqrt3 =
        RInterval::sqrt_rational(&BigRational::from_integer(3.into()), BOUND_BITS).add(&RInterval::from_int(2));
    let four = BigRational::from_integer(BigInt::from(4u32).pow(2 * (d + 1)));
    let inner = two_plus_sqrt3.pow(d).scale(&(four * pow_rat(t, 2 * d))).add(&RInterval::from_int(1));
    pi_over_sqrt12().mul(&inner).scale(&BigRational::new(1.into(), 2.into())).round_out(BOUND_BITS)
}

/// `(pi / sqrt 12) (1 + 4^(2(d+1)) (T h(alpha))^(2d))`.
pub fn lemma_bound(d: u32, t: &BigRational, alpha: &Scalar) -> RInterval {
    let h2 = weil_height(alpha).squared.enclosure(BOUND_BITS);
    let four = BigRational::from_integer(BigInt::from(4u32).pow(2 * (d + 1)));
    let inner = h2.scale(&(t * t)).pow(d).scale(&four).add(&RInterval::from_int(1));
    pi_over_sqrt12().mul(&inner).round_out(BOUND_BITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_heights() {
        assert_eq!(weil_height(&Scalar::ratio(3, 2)).exact(), Some(r(3)));
        assert_eq!(weil_height(&Scalar::zero()).exact(), Some(r(1)));
        assert_eq!(weil_height(&Scalar::ratio(1, 4)).exact(), Some(r(4)));
    }

    #[test]
    fn quadratic_heights() {
        let h = weil_height(&s("2-1*sqrt(3)"));
        assert_eq!(h.squared, s("2+1*sqrt(3)"));
        assert!(h.enclosure.width() <= BigRational::new(1.into(), BigInt::one() << TOLERANCE_BITS));
        assert!((h.lo() - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-12);
        assert_eq!(minimal_polynomial(&s("-2+1*sqrt(5)")), vec![(-1).into(), 4.into(), 1.into()]);
        assert_eq!(weil_height(&s("-2+1*sqrt(5)")).squared, s("2+1*sqrt(5)"));
    }

    #[test]
    fn pathways_agree() {
        for (p, q) in [(3, 7), (-5, 2), (0, 1), (9, 9)] {
            let x = BigRational::new(p.into(), q.into());
            assert_eq!(weil_height(&Scalar::from(x.clone())).squared, weil_height_quadratic_pathway(&x).squared);
        }
    }

    #[test]
    fn small_sets() {
        let a = alpha_max();
        assert_eq!(enumerate_s_k(FieldDescriptor::Rationals, &a, &r(1), true).unwrap(), vec![Scalar::zero()]);
        assert_eq!(
            enumerate_s_k(FieldDescriptor::Rationals, &a, &r(4), true).unwrap(),
            vec![Scalar::zero(), Scalar::ratio(1, 4)]
        );
        let q2 = FieldDescriptor::quadratic(2).unwrap();
        assert_eq!(count_wr_classes(q2, &r(1)).unwrap().count, 1);
        assert_eq!(count_wr_classes(FieldDescriptor::Rationals, &r(4)).unwrap().count, 2);
    }

    #[test]
    fn bound_values() {
        let b = thm_bound(1, &r(1));
        let v = std::f64::consts::PI / (2.0 * 12f64.sqrt()) * (1.0 + 256.0 * (2.0 + 3f64.sqrt()));
        assert!(b.lo_f64() <= v && v <= b.hi_f64());
        assert!(b.width() < BigRational::new(1.into(), BigInt::from(1_000_000_000i64)));
        let b2 = thm_bound(1, &r(2));
        // (B2 - c) = 4 (B1 - c) with c = pi / (2 sqrt 12)
        let c = std::f64::consts::PI / (2.0 * 12f64.sqrt());
        assert!(((b2.lo_f64() - c) / (b.lo_f64() - c) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn field_descriptor_parsing() {
        assert_eq!("rational".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert_eq!("quad:5".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::RealQuadratic(5));
        assert!("quad:4".parse::<FieldDescriptor>().is_err());
        assert!("cubic".parse::<FieldDescriptor>().is_err());
        assert_eq!(FieldDescriptor::RealQuadratic(7).to_string(), "quad:7");
    }
}

//! Rigorous real and complex enclosures over exact rationals.
//!
//! Endpoints are exact rationals; `round_out` snaps them outward to a dyadic
//! grid to keep sizes bounded. Every operation returns an interval that
//! contains all results of the operation on members of its inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_dyadic(r: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let n = (r * &scale).floor().to_integer();
    BigRational::new(n, scale)
}

fn ceil_dyadic(r: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let n = (r * &scale).ceil().to_integer();
    BigRational::new(n, scale)
}

/// Largest f64 not above `r`.
pub fn f64_down(r: &BigRational) -> f64 {
    let mut f = r.to_f64().unwrap_or(f64::NEG_INFINITY);
    while f.is_finite() && BigRational::from_float(f).is_some_and(|v| &v > r) {
        f = next_toward(f, f64::NEG_INFINITY);
    }
    f
}

/// Smallest f64 not below `r`.
pub fn f64_up(r: &BigRational) -> f64 {
    let mut f = r.to_f64().unwrap_or(f64::INFINITY);
    while f.is_finite() && BigRational::from_float(f).is_some_and(|v| &v < r) {
        f = next_toward(f, f64::INFINITY);
    }
    f
}

fn next_toward(f: f64, target: f64) -> f64 {
    if f == target {
        return f;
    }
    if f == 0.0 {
        let tiny = f64::from_bits(1);
        return if target > 0.0 { tiny } else { -tiny };
    }
    let bits = f.to_bits();
    let up = (target > f) == (f > 0.0);
    f64::from_bits(if up { bits + 1 } else { bits - 1 })
}

impl RInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn add(&self, o: &Self) -> Self {
        RInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        RInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RInterval { lo: a, hi: b }
        } else {
            RInterval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RInterval { lo, hi }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let inv = RInterval::new(o.hi.recip(), o.lo.recip());
        self.mul(&inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RInterval::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Hull with `±r` added to both endpoints.
    pub fn widen(&self, r: &BigRational) -> Self {
        RInterval { lo: &self.lo - r, hi: &self.hi + r }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        RInterval { lo: floor_dyadic(&self.lo, bits), hi: ceil_dyadic(&self.hi, bits) }
    }

    /// Enclosure of `sqrt(r)` for `r >= 0`, width at most `2^-bits`.
    pub fn sqrt_rational(r: &BigRational, bits: u32) -> Self {
        assert!(!r.is_negative(), "sqrt of a negative rational");
        let p = r.numer();
        let q = r.denom();
        let scaled: BigInt = p * q * pow2(2 * bits);
        let s = scaled.sqrt();
        let den = q * pow2(bits);
        let lo = BigRational::new(s.clone(), den.clone());
        if &s * &s == scaled {
            return RInterval::point(lo);
        }
        RInterval { lo, hi: BigRational::new(s + 1u32, den) }
    }

    /// Enclosure of `sqrt` over a nonnegative interval.
    pub fn sqrt(&self, bits: u32) -> Self {
        let lo = if self.lo.is_negative() { BigRational::zero() } else { self.lo.clone() };
        let a = Self::sqrt_rational(&lo, bits);
        let b = Self::sqrt_rational(&self.hi, bits);
        RInterval { lo: a.lo, hi: b.hi }
    }

    pub fn lo_f64(&self) -> f64 {
        f64_down(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        f64_up(&self.hi)
    }
}

/// Enclosure of `atan(1/k)` for integer `k >= 2`.
fn atan_inv(k: u32, bits: u32) -> RInterval {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let guard = bits + 16;
    let eps = BigRational::new(BigInt::one(), pow2(guard));
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    let mut power = k.clone();
    let mut i = 0u32;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * i + 1));
        if term < eps {
            // alternating series with decreasing terms: tail bounded by this term
            lo -= &term;
            hi += &term;
            break;
        }
        let t_lo = floor_dyadic(&term, guard);
        let t_hi = ceil_dyadic(&term, guard);
        if i.is_multiple_of(2) {
            lo += t_lo;
            hi += t_hi;
        } else {
            lo -= t_hi;
            hi -= t_lo;
        }
        power *= &k2;
        i += 1;
    }
    RInterval { lo, hi }
}

/// Enclosure of pi (Machin's formula), width about `2^-bits`.
pub fn pi(bits: u32) -> RInterval {
    let a = atan_inv(5, bits + 8).scale(&BigRational::from_integer(16.into()));
    let b = atan_inv(239, bits + 8).scale(&BigRational::from_integer(4.into()));
    a.sub(&b).round_out(bits + 4)
}

/// Enclosures of `(cos x, sin x)` at a rational point with `|x| <= 8`.
fn cos_sin_point(x: &BigRational, bits: u32) -> (RInterval, RInterval) {
    let guard = bits + 16;
    let eps = BigRational::new(BigInt::one(), pow2(guard));
    let ax = x.abs();
    let mut term = BigRational::one();
    let mut k = 0u32;
    let mut cos = (BigRational::zero(), BigRational::zero());
    let mut sin = (BigRational::zero(), BigRational::zero());
    let two = BigRational::from_integer(2.into());
    loop {
        // term = x^k / k!
        let big_enough = BigRational::from_integer(BigInt::from(k)) >= &ax * &two + &two;
        if big_enough && term.abs() < eps {
            // geometric tail with ratio <= 1/2 bounds the remainder by 2|term|
            let r = term.abs() * &two;
            cos.0 -= &r;
            cos.1 += &r;
            sin.0 -= &r;
            sin.1 += &r;
            break;
        }
        let t_lo = floor_dyadic(&term, guard);
        let t_hi = ceil_dyadic(&term, guard);
        let (acc, sign) = match k % 4 {
            0 => (&mut cos, 1),
            1 => (&mut sin, 1),
            2 => (&mut cos, -1),
            _ => (&mut sin, -1),
        };
        if sign > 0 {
            acc.0 += t_lo;
            acc.1 += t_hi;
        } else {
            acc.0 -= t_hi;
            acc.1 -= t_lo;
        }
        k += 1;
        term = term * x / BigRational::from_integer(BigInt::from(k));
    }
    (RInterval::new(cos.0, cos.1), RInterval::new(sin.0, sin.1))
}

/// Enclosures of `(cos, sin)` of `2*pi*m/n`.
pub fn cos_sin_turn(m: u64, n: u64, bits: u32) -> (RInterval, RInterval) {
    assert!(n > 0);
    let m = m % n;
    // fold into [0, pi] and restore the sign of sin afterwards
    let (m_fold, flip) = if 2 * m > n { (n - m, true) } else { (m, false) };
    let theta = pi(bits + 8).scale(&BigRational::new(BigInt::from(2 * m_fold), BigInt::from(n)));
    let (c, s) = cos_sin_point(&theta.lo, bits + 8);
    // cos and sin are 1-Lipschitz
    let w = theta.width();
    let c = c.widen(&w).round_out(bits + 4);
    let s = s.widen(&w).round_out(bits + 4);
    if flip {
        (c, s.neg())
    } else {
        (c, s)
    }
}

#[derive(Clone, Debug)]
pub struct CInterval {
    pub re: RInterval,
    pub im: RInterval,
}

impl CInterval {
    pub fn real(x: RInterval) -> Self {
        CInterval { re: x, im: RInterval::from_int(0) }
    }

    pub fn add(&self, o: &Self) -> Self {
        CInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CInterval { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        CInterval { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(iv: &RInterval) -> (f64, f64) {
        (iv.lo_f64(), iv.hi_f64())
    }

    #[test]
    fn pi_enclosure() {
        let p = pi(80);
        let (lo, hi) = approx(&p);
        assert!(lo <= std::f64::consts::PI && std::f64::consts::PI <= hi);
        assert!(p.width() < BigRational::new(1.into(), pow2(76)));
    }

    #[test]
    fn sqrt_two_enclosure() {
        let r = RInterval::sqrt_rational(&BigRational::from_integer(2.into()), 60);
        assert!(&r.lo * &r.lo < BigRational::from_integer(2.into()));
        assert!(&r.hi * &r.hi > BigRational::from_integer(2.into()));
        let exact = RInterval::sqrt_rational(&BigRational::new(9.into(), 4.into()), 10);
        assert_eq!(exact.lo, BigRational::new(3.into(), 2.into()));
        assert_eq!(exact.lo, exact.hi);
    }

    #[test]
    fn trig_enclosures() {
        for n in 1..=12u64 {
            for m in 0..n {
                let (c, s) = cos_sin_turn(m, n, 64);
                let t = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
                let (cl, ch) = approx(&c);
                let (sl, sh) = approx(&s);
                assert!(cl - 1e-12 <= t.cos() && t.cos() <= ch + 1e-12, "cos {m}/{n}");
                assert!(sl - 1e-12 <= t.sin() && t.sin() <= sh + 1e-12, "sin {m}/{n}");
                assert!(c.width() < BigRational::new(1.into(), pow2(50)));
            }
        }
        // cos(2 pi / 4) = 0 must be enclosed exactly around zero
        let (c, _) = cos_sin_turn(1, 4, 64);
        assert!(c.contains_zero());
    }

    #[test]
    fn outward_f64() {
        let third = BigRational::new(1.into(), 3.into());
        assert!(BigRational::from_float(f64_down(&third)).unwrap() <= third);
        assert!(BigRational::from_float(f64_up(&third)).unwrap() >= third);
    }
}

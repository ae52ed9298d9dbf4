//! Exact scalars: rationals and elements of real quadratic fields.
//!
//! A [`Scalar`] is either a reduced rational `p/q` or `a + b*sqrt(D)` with
//! `b != 0` and `D > 1` squarefree. Arithmetic between two surds requires a
//! common radicand and panics otherwise; use [`common_radicand`] to validate
//! inputs at API boundaries. Comparison is exact and total, including across
//! different radicands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::RInterval;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// `a + b*sqrt(d)`; `b` is never zero and `d` is squarefree and `> 1`.
    Surd { a: BigRational, b: BigRational, d: i64 },
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Splits `n > 0` as `s^2 * d` with `d` squarefree.
pub fn square_free_decomposition(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (s, d * m)
}

/// The shared radicand of a collection of scalars, `None` when all are rational.
pub fn common_radicand<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Result<Option<i64>> {
    let mut found: Option<i64> = None;
    for s in items {
        if let Some(d) = s.radicand() {
            match found {
                None => found = Some(d),
                Some(e) if e != d => return Err(Error::MixedFields(e, d)),
                _ => {}
            }
        }
    }
    Ok(found)
}

fn join_radicand(x: Option<i64>, y: Option<i64>) -> Option<i64> {
    match (x, y) {
        (Some(a), Some(b)) if a != b => {
            panic!("arithmetic between sqrt({a}) and sqrt({b}) is not supported")
        }
        (Some(a), _) | (_, Some(a)) => Some(a),
        _ => None,
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(rat(n, d))
    }

    /// `a + b*sqrt(d)`, normalized. `d` must be squarefree and `> 1`.
    pub fn surd(a: BigRational, b: BigRational, d: i64) -> Result<Self> {
        if d <= 1 || !is_squarefree(d) {
            return Err(Error::param(format!("radicand {d} must be squarefree and > 1")));
        }
        Ok(Self::surd_unchecked(a, b, d))
    }

    pub(crate) fn surd_unchecked(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Surd { a, b, d }
        }
    }

    /// `sqrt(d)` for squarefree `d > 1`.
    pub fn sqrt_of(d: i64) -> Result<Self> {
        Self::surd(BigRational::zero(), BigRational::one(), d)
    }

    /// Parts `(a, b)` with `self = a + b*sqrt(D)`.
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(r) => (r.clone(), BigRational::zero()),
            Scalar::Surd { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    pub fn radicand(&self) -> Option<i64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Surd { d, .. } => Some(*d),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_integer())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Surd { a, b, d } => Scalar::Surd { a: a.clone(), b: -b, d: *d },
        }
    }

    /// Field norm `a^2 - b^2 D`.
    pub fn norm(&self) -> BigRational {
        match self {
            Scalar::Rational(r) => r * r,
            Scalar::Surd { a, b, d } => a * a - b * b * BigInt::from(*d),
        }
    }

    /// Field trace `2a`.
    pub fn trace(&self) -> BigRational {
        let (a, _) = self.parts();
        a * BigInt::from(2)
    }

    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => sign_of(r),
            Scalar::Surd { a, b, .. } => {
                let sa = sign_of(a);
                let sb = sign_of(b);
                if sa == sb || sa == 0 {
                    return sb;
                }
                // opposite signs: the sign of a wins iff a^2 > b^2 D
                let n = self.norm();
                sa * sign_of(&n)
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Rational(r.recip())
            }
            Scalar::Surd { a, b, d } => {
                let n = self.norm();
                Scalar::Surd { a: a / &n, b: -(b / &n), d: *d }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Surd { a, b, d } => {
                a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN) * (*d as f64).sqrt()
            }
        }
    }

    /// Rigorous enclosure with width at most about `2^-bits * (1 + |b|)`.
    pub fn enclosure(&self, bits: u32) -> RInterval {
        match self {
            Scalar::Rational(r) => RInterval::point(r.clone()),
            Scalar::Surd { a, b, d } => {
                let root = RInterval::sqrt_rational(&BigRational::from_integer(BigInt::from(*d)), bits);
                RInterval::point(a.clone()).add(&root.scale(b))
            }
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.floor().to_integer(),
            Scalar::Surd { .. } => {
                let mut g = self.enclosure(64).lo.floor().to_integer();
                while Scalar::from_bigint(&g + 1u32) <= *self {
                    g += 1u32;
                }
                while Scalar::from_bigint(g.clone()) > *self {
                    g -= 1u32;
                }
                g
            }
        }
    }

    /// Nearest integer, ties rounded up.
    pub fn round(&self) -> BigInt {
        (self + &Scalar::ratio(1, 2)).floor()
    }

    fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self.radicand(), other.radicand()) {
            (Some(d1), Some(d2)) if d1 != d2 => cross_field_cmp(self, other),
            _ => (self - other).signum().cmp(&0),
        }
    }
}

fn sign_of(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Compares `x` in Q(sqrt D1) with `y` in Q(sqrt D2) for `D1 != D2`.
fn cross_field_cmp(x: &Scalar, y: &Scalar) -> Ordering {
    let (ya, yb) = y.parts();
    let d2 = y.radicand().unwrap_or(1);
    // x - y = p - q with p = x - ya in Q(sqrt D1) and q = yb*sqrt(D2)
    let p = x - &Scalar::Rational(ya);
    let sp = p.signum();
    let sq = sign_of(&yb);
    if sp != sq {
        return sp.cmp(&sq);
    }
    if sp == 0 {
        return Ordering::Equal;
    }
    let q_sq = Scalar::Rational(&yb * &yb * BigInt::from(d2));
    let c = (p.square() - q_sq).signum();
    if sp > 0 {
        c.cmp(&0)
    } else {
        0.cmp(&c)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => {
                let d = join_radicand(self.radicand(), rhs.radicand()).unwrap();
                let (a1, b1) = self.parts();
                let (a2, b2) = rhs.parts();
                Scalar::surd_unchecked(a1 + a2, b1 + b2, d)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => {
                let d = join_radicand(self.radicand(), rhs.radicand()).unwrap();
                let (a1, b1) = self.parts();
                let (a2, b2) = rhs.parts();
                let a = &a1 * &a2 + &b1 * &b2 * BigInt::from(d);
                let b = a1 * b2 + a2 * b1;
                Scalar::surd_unchecked(a, b, d)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Surd { a, b, d } => Scalar::Surd { a: -a, b: -b, d: *d },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Entry grammar: `RAT | RAT SIGN RAT "*sqrt(" POSINT ")"`, with
/// `RAT := INT | INT "/" POSINT`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_rat(r)),
            Scalar::Surd { a, b, d } => {
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*sqrt({})", fmt_rat(a), sign, fmt_rat(&b.abs()), d)
            }
        }
    }
}

/// Parse failure inside one entry, with a byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: &str) -> std::result::Result<T, EntryError> {
        Err(EntryError { offset: self.pos, message: msg.to_string() })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> std::result::Result<BigInt, EntryError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digit");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }

    fn int(&mut self) -> std::result::Result<BigInt, EntryError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.digits()?;
        Ok(if neg { -v } else { v })
    }

    fn rat(&mut self) -> std::result::Result<BigRational, EntryError> {
        let n = self.int()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(EntryError { offset: at, message: "zero denominator".into() });
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn literal(&mut self, lit: &str) -> std::result::Result<(), EntryError> {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.err(&format!("expected '{lit}'"))
        }
    }
}

/// Parses one entry; `expected_d` is the declared radicand (if any).
pub fn parse_entry(text: &str, expected_d: Option<i64>) -> std::result::Result<Scalar, EntryError> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let a = c.rat()?;
    match c.peek() {
        None => return Ok(Scalar::Rational(a)),
        Some(b'+') | Some(b'-') => {}
        Some(_) => return c.err("expected '+', '-' or end of entry"),
    }
    let negative = c.peek() == Some(b'-');
    c.pos += 1;
    let mut b = c.rat()?;
    if negative {
        b = -b;
    }
    c.literal("*sqrt(")?;
    let at = c.pos;
    let d = c.digits()?;
    c.literal(")")?;
    if c.pos != text.len() {
        return c.err("trailing characters");
    }
    let d = d
        .to_i64()
        .ok_or_else(|| EntryError { offset: at, message: "radicand too large".into() })?;
    match expected_d {
        Some(e) if e == d => {}
        Some(e) => {
            return Err(EntryError { offset: at, message: format!("sqrt argument {d} differs from declared D = {e}") })
        }
        None => {
            return Err(EntryError { offset: at, message: "sqrt term in a rational document".into() })
        }
    }
    if d <= 1 || !is_squarefree(d) {
        return Err(EntryError { offset: at, message: format!("radicand {d} is not squarefree > 1") });
    }
    Ok(Scalar::surd_unchecked(a, b, d))
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        // a bare string parse accepts whichever radicand is written
        let d = s.find("*sqrt(").and_then(|i| {
            s[i + 6..].strip_suffix(')').and_then(|t| t.parse::<i64>().ok())
        });
        parse_entry(s, d).map_err(|e| Error::Parse { location: format!("offset {}", e.offset), message: e.message })
    }
}

/// Integer square root test: `Some(r)` when `n = r^2`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a>(items: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    items.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

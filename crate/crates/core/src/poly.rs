//! Univariate polynomials over Z and Q, coefficients stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn is_squarefree_u64(n: u64) -> bool {
    mobius(n) != 0
}

fn trim_int(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn trim_rat(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

/// Quotient of `a` by a monic `b`, asserting the division is exact.
pub fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let b = trim_int(b.to_vec());
    assert!(b.last().is_some_and(One::is_one), "divisor must be monic");
    let mut r = trim_int(a.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        assert!(r.is_empty(), "inexact division");
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact division");
    q
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for the proper divisors `d`.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            p = div_exact_monic(&p, &cyclotomic(d));
        }
    }
    p
}

/// Remainder of `a` modulo a monic `m`, padded to length `deg m`.
pub fn rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for k in (dm..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, mi) in m.iter().enumerate() {
            r[k - dm + i] -= &c * mi;
        }
    }
    r.resize(dm, BigInt::zero());
    r
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = trim_rat(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &c * bi;
        }
        r = trim_rat(r);
    }
    r
}

/// Monic gcd over Q; empty for `gcd(0, 0)`.
pub fn gcd_q(a: &[BigInt], b: &[BigInt]) -> Vec<BigRational> {
    let mut x: Vec<BigRational> = trim_rat(a.iter().cloned().map(BigRational::from_integer).collect());
    let mut y: Vec<BigRational> = trim_rat(b.iter().cloned().map(BigRational::from_integer).collect());
    while !y.is_empty() {
        let r = rat_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &l;
        }
    }
    x
}

/// Product of two integer polynomials.
pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Content-free copy with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let a = trim_int(a.to_vec());
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return a;
    }
    let s = if a.last().is_some_and(Signed::is_negative) { -g } else { g };
    a.iter().map(|c| c / &s).collect()
}

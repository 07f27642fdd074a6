//! Elementary and special functions on [`Real`] with rigorous truncation bounds.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{Dyadic, Real};
use crate::rational::{binomial, factorial, int, Rational};

impl Real {
    pub fn exp(&self) -> Real {
        if self.is_point() {
            return exp_point(&self.lo, self.prec);
        }
        let lo = exp_point(&self.lo, self.prec).lo;
        let hi = exp_point(&self.hi, self.prec).hi;
        Real { lo, hi, prec: self.prec }
    }

    /// Natural logarithm; the interval must be strictly positive.
    pub fn ln(&self) -> Real {
        assert!(self.is_positive(), "ln of a non-positive interval");
        if self.is_point() {
            return ln_point(&self.lo, self.prec);
        }
        let lo = ln_point(&self.lo, self.prec).lo;
        let hi = ln_point(&self.hi, self.prec).hi;
        Real { lo, hi, prec: self.prec }
    }

    /// `self^e` for a strictly positive base.
    pub fn pow(&self, e: &Real) -> Real {
        (e * &self.ln()).exp()
    }

    /// `self^q`; integer exponents stay algebraic, others go through `exp(q ln x)`.
    pub fn pow_rational(&self, q: &Rational) -> Real {
        if q.is_integer() {
            let n = q.to_integer();
            let m = n.abs().to_u32().expect("exponent too large");
            let p = self.powi(m);
            return if n.is_negative() { p.recip() } else { p };
        }
        if q.denom() == &BigInt::from(2) {
            let m = q.numer().abs().to_u32().expect("exponent too large");
            let p = self.sqrt().powi(m);
            return if q.is_negative() { p.recip() } else { p };
        }
        self.pow(&Real::from_rational(q, self.prec))
    }
}

/// Working precision for an intermediate series given the target.
fn working(prec: u32, extra: u32) -> u32 {
    prec + extra + 24
}

fn exp_point(x: &Dyadic, prec: u32) -> Real {
    if x.is_zero() {
        return Real::one(prec);
    }
    // Reduce to |y| < 2^-12 and undo with repeated squaring.
    let mag = x.log2_floor().unwrap() + 1;
    let s = (mag + 12).max(0) as u32;
    let wp = working(prec, s);
    let y = Real::from_dyadic(x.mul_pow2(-(s as i64)), wp);
    let eps = Dyadic::pow2(-(wp as i64));
    let mut sum = Real::one(wp);
    let mut term = Real::one(wp);
    let mut k: u32 = 1;
    loop {
        term = &(&term * &y) / &Real::from_int(k, wp);
        sum = &sum + &term;
        if term.mag() < eps {
            break;
        }
        k += 1;
    }
    // |y| < 1/2 so the remaining tail is at most |term|.
    let mut r = sum.widen(&term.mag());
    for _ in 0..s {
        r = r.sqr();
    }
    r.with_prec(prec)
}

/// `atanh(z)` for `|z| <= 1/3` enclosed in `z`.
fn atanh_series(z: &Real, wp: u32) -> Real {
    let eps = Dyadic::pow2(-(wp as i64));
    let z2 = z.sqr();
    let mut zpow = z.clone();
    let mut sum = z.clone();
    let mut k: u32 = 1;
    loop {
        zpow = &zpow * &z2;
        let term = &zpow / &Real::from_int(2 * k + 1, wp);
        sum = &sum + &term;
        if zpow.mag() < eps {
            break;
        }
        k += 1;
    }
    // Tail <= |z|^(2k+3) / (1 - z^2) <= |zpow| for |z| <= 1/3.
    sum.widen(&zpow.mag())
}

fn ln_point(x: &Dyadic, prec: u32) -> Real {
    assert!(x.signum() > 0);
    if *x == Dyadic::one() {
        return Real::zero(prec);
    }
    let wp = working(prec, 8);
    let mut e = x.log2_floor().unwrap();
    let mut m = x.mul_pow2(-e);
    // m in [1, 2); move to [3/4, 3/2) so that |z| <= 1/5.
    if m >= Dyadic::new(BigInt::from(3), -1) {
        m = m.mul_pow2(-1);
        e += 1;
    }
    let one = Real::one(wp);
    let mr = Real::from_dyadic(m, wp);
    let z = &(&mr - &one) / &(&mr + &one);
    let ln_m = atanh_series(&z, wp).mul_pow2(1);
    let res = if e == 0 { ln_m } else { &ln_m + &(&ln2(wp) * &Real::from_int(e, wp)) };
    res.with_prec(prec)
}

type ConstCache = Mutex<HashMap<u32, Real>>;

fn cached(cache: &'static OnceLock<ConstCache>, prec: u32, compute: impl Fn(u32) -> Real) -> Real {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = compute(prec);
    map.lock().unwrap().insert(prec, v.clone());
    v
}

pub fn ln2(prec: u32) -> Real {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let wp = working(prec, 4);
        let third = Real::from_rational(&Rational::new(1.into(), 3.into()), wp);
        atanh_series(&third, wp).mul_pow2(1).with_prec(prec)
    })
}

/// `atan(1/n)` for an integer `n >= 2` (alternating series).
fn atan_inv(n: u32, wp: u32) -> Real {
    let eps = Dyadic::pow2(-(wp as i64));
    let x = Real::from_rational(&Rational::new(1.into(), n.into()), wp);
    let x2 = x.sqr();
    let mut xpow = x.clone();
    let mut sum = x;
    let mut k: u32 = 1;
    loop {
        xpow = &xpow * &x2;
        let term = &xpow / &Real::from_int(2 * k + 1, wp);
        sum = if k % 2 == 1 { &sum - &term } else { &sum + &term };
        if term.mag() < eps {
            break sum.widen(&xpow.mag());
        }
        k += 1;
    }
}

pub fn pi(prec: u32) -> Real {
    static CACHE: OnceLock<ConstCache> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let wp = working(prec, 8);
        let a = atan_inv(5, wp).mul_pow2(4);
        let b = atan_inv(239, wp).mul_pow2(2);
        (&a - &b).with_prec(prec)
    })
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
fn bernoulli(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        let m = b.len();
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let s: Rational = (0..m).map(|k| Rational::from_integer(binomial(m as i64 + 1, k as i64)) * &b[k]).sum();
        let next = -s / Rational::from_integer(BigInt::from(m + 1));
        b.push(next);
    }
    b[..=n].to_vec()
}

/// `Γ(q)` for rational `q > 0`.
///
/// Integers and half-integers use exact closed forms; other arguments are
/// shifted upward and evaluated with the Stirling series, whose remainder for
/// real positive argument is bounded by the first omitted term.
pub fn gamma(q: &Rational, prec: u32) -> Real {
    assert!(q.is_positive(), "gamma is only provided for positive arguments");
    if q.is_integer() {
        let n = q.to_integer().to_u64().expect("gamma argument too large");
        return Real::from_int(factorial(n - 1), prec);
    }
    let two_q = q * int(2);
    if two_q.is_integer() {
        // Γ(n + 1/2) = (2n)! / (4^n n!) * sqrt(pi)
        let n = (two_q.to_integer() - 1u32).to_u64().unwrap() / 2;
        let c = Rational::new(factorial(2 * n), (BigInt::one() << (2 * n)) * factorial(n));
        let wp = prec + 8;
        return (&Real::from_rational(&c, wp) * &pi(wp).sqrt()).with_prec(prec);
    }
    let wp = working(prec, 16);
    // Shift so that the argument is at least wp/2.
    let target = int(wp as i64 / 2);
    let shift: u64 = if *q >= target { 0 } else { (&target - q).ceil().to_integer().to_u64().unwrap() };
    let z = q + Rational::from_integer(BigInt::from(shift));
    let zr = Real::from_rational(&z, wp);
    let half = Rational::new(1.into(), 2.into());
    let mut lg = &(&Real::from_rational(&(&z - &half), wp) * &zr.ln()) - &zr;
    lg = &lg + &(&pi(wp).mul_pow2(1)).ln().mul_pow2(-1);
    let eps = Dyadic::pow2(-(wp as i64));
    let zinv2 = (&zr * &zr).recip();
    let mut zpow = zr.recip();
    let mut k = 1usize;
    let tail = loop {
        let b = bernoulli(2 * k + 2);
        let coeff = |j: usize| &b[2 * j] / Rational::from_integer(BigInt::from((2 * j) * (2 * j - 1)));
        let term = zpow.mul_rational(&coeff(k));
        lg = &lg + &term;
        zpow = &zpow * &zinv2;
        let next = zpow.mul_rational(&coeff(k + 1).abs());
        if next.mag() < eps || k > 4 * wp as usize {
            break next.mag();
        }
        k += 1;
    };
    let lg = lg.widen(&tail);
    let mut g = lg.exp();
    // Undo the shift: Γ(q) = Γ(q + shift) / (q (q+1) ... (q+shift-1)).
    if shift > 0 {
        let mut denom = Rational::one();
        for j in 0..shift {
            denom *= q + Rational::from_integer(BigInt::from(j));
        }
        g = &g / &Real::from_rational(&denom, wp);
    }
    g.with_prec(prec)
}

impl Real {
    /// Lower endpoint rounded outward to `prec` bits, as an exact rational.
    pub fn lo_rational(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi_rational(&self) -> Rational {
        self.hi.to_rational()
    }
}

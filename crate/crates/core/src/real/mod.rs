//! Certified real arithmetic.
//!
//! A [`Real`] is a closed interval `[lo, hi]` with dyadic endpoints. Every
//! operation rounds outward, so the true value of any expression built from
//! exact inputs is always contained in the computed interval. Working
//! precision is carried per value in bits; [`bits_for_digits`] converts a
//! requested number of significant decimal digits into a working precision.

mod dyadic;
mod elementary;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use dyadic::{Dyadic, Round};
pub use elementary::{gamma, ln2, pi};

use crate::rational::Rational;

/// Extra bits carried beyond the requested decimal precision.
pub const GUARD_BITS: u32 = 32;

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// `10^-digits` as an exact rational.
pub fn decimal_tolerance(digits: u32) -> Rational {
    Rational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Rigorous enclosure of a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Real {
    pub fn from_bounds(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Real { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn from_dyadic(x: Dyadic, prec: u32) -> Self {
        Self::from_bounds(x.clone(), x, prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Real {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Self::from_dyadic(Dyadic::from_int(n), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_dyadic(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_dyadic(Dyadic::one(), prec)
    }

    /// `[-r, r]` for a nonnegative radius `r`.
    pub fn ball(r: &Dyadic, prec: u32) -> Self {
        let r = r.abs();
        Self::from_bounds(r.neg(), r, prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_bounds(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Dyadic {
        std::cmp::max(self.lo.abs(), self.hi.abs())
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo.signum() >= 0
    }

    /// Certainly `self < other`.
    pub fn lt(&self, other: &Real) -> bool {
        self.hi < other.lo
    }

    /// Certainly `self <= other`.
    pub fn le(&self, other: &Real) -> bool {
        self.hi <= other.lo
    }

    /// Interval hull.
    pub fn union(&self, other: &Real) -> Real {
        Real {
            lo: std::cmp::min(self.lo.clone(), other.lo.clone()),
            hi: std::cmp::max(self.hi.clone(), other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Adds the symmetric error `[-r, r]`.
    pub fn widen(&self, r: &Dyadic) -> Real {
        let r = r.abs();
        Real {
            lo: self.lo.sub(&r).round(self.prec, Round::Down),
            hi: self.hi.add(&r).round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Real {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            Real { lo: Dyadic::zero(), hi: self.mag(), prec: self.prec }
        }
    }

    pub fn sqr(&self) -> Real {
        let a = self.abs();
        Real {
            lo: a.lo.mul(&a.lo).round(self.prec, Round::Down),
            hi: a.hi.mul(&a.hi).round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn powi(&self, n: u32) -> Real {
        match n {
            0 => Real::one(self.prec),
            1 => self.clone(),
            _ if n % 2 == 0 => self.powi(n / 2).sqr(),
            _ => &self.powi(n - 1) * self,
        }
    }

    pub fn recip(&self) -> Real {
        &Real::one(self.prec) / self
    }

    pub fn checked_div(&self, other: &Real) -> Option<Real> {
        if other.contains_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        let cands = [(&self.lo, &other.lo), (&self.lo, &other.hi), (&self.hi, &other.lo), (&self.hi, &other.hi)];
        let lo = cands.iter().map(|(a, b)| a.div(b, prec, Round::Down)).min().unwrap();
        let hi = cands.iter().map(|(a, b)| a.div(b, prec, Round::Up)).max().unwrap();
        Some(Real { lo, hi, prec })
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "sqrt of a negative interval");
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.sqrt(self.prec, Round::Down) };
        Real { lo, hi: self.hi.sqrt(self.prec, Round::Up), prec: self.prec }
    }

    pub fn mul_rational(&self, q: &Rational) -> Real {
        self * &Real::from_rational(q, self.prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Real {
        Real { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), prec: self.prec }
    }

    /// Sum in the given order (deterministic rounding).
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Real>, prec: u32) -> Real {
        items.into_iter().fold(Real::zero(prec), |acc, x| &acc + x)
    }

    /// Midpoint rounded to `digits` significant decimal digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal_string(&self.mid().to_rational(), digits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10).floor() as usize;
        write!(f, "{}", self.to_decimal(digits.clamp(1, 60)))
    }
}

/// Scientific-notation decimal rendering of an exact rational.
pub fn decimal_string(q: &Rational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    // Find e with 10^e <= a < 10^(e+1).
    let mut e: i64 = (crate::rational::to_f64(&a).log10().floor() as i64).clamp(-100_000, 100_000);
    let p10 = |k: i64| -> Rational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    while a < p10(e) {
        e -= 1;
    }
    while a >= p10(e + 1) {
        e += 1;
    }
    let scaled = &a / p10(e - digits as i64 + 1);
    let mut m = scaled.round().to_integer();
    let mut exp = e;
    if m.to_string().len() > digits {
        m /= 10;
        exp += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    let sign = if neg { "-" } else { "" };
    if exp == 0 {
        format!("{sign}{body}")
    } else {
        format!("{sign}{body}e{exp}")
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        Real {
            lo: self.lo.add(&rhs.lo).round(prec, Round::Down),
            hi: self.hi.add(&rhs.hi).round(prec, Round::Up),
            prec,
        }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self + &(-rhs)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        let prec = self.prec.max(rhs.prec);
        if self.is_point() && rhs.is_point() {
            let p = self.lo.mul(&rhs.lo);
            return Real { lo: p.round(prec, Round::Down), hi: p.round(prec, Round::Up), prec };
        }
        let cands = [self.lo.mul(&rhs.lo), self.lo.mul(&rhs.hi), self.hi.mul(&rhs.lo), self.hi.mul(&rhs.hi)];
        let lo = cands.iter().min().unwrap().round(prec, Round::Down);
        let hi = cands.iter().max().unwrap().round(prec, Round::Up);
        Real { lo, hi, prec }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        self.checked_div(rhs).expect("interval division by an interval containing zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn enclosure_of_rational_arithmetic() {
        let prec = 100;
        let a = Real::from_rational(&ratio(1, 3), prec);
        let b = Real::from_rational(&ratio(2, 7), prec);
        let exact = ratio(1, 3) * ratio(2, 7) - ratio(1, 3) / ratio(2, 7);
        let got = &(&a * &b) - &(&a / &b);
        assert!(got.contains_rational(&exact));
        assert!(got.width().to_f64() < 1e-28);
    }

    #[test]
    fn abs_and_sqr_of_straddling_interval() {
        let x = Real::from_bounds(Dyadic::from_int(-2), Dyadic::from_int(1), 64);
        assert_eq!(x.abs().lo(), &Dyadic::zero());
        assert_eq!(x.sqr().hi(), &Dyadic::from_int(4));
        assert!(x.contains_zero());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&ratio(1, 3), 5), "3.3333e-1");
        assert_eq!(decimal_string(&int(945), 10), "9.45e2");
        assert_eq!(decimal_string(&int(-1), 3), "-1");
        assert_eq!(decimal_string(&ratio(999_999, 1_000_000), 3), "1");
    }

    #[test]
    fn division_by_zero_interval_is_refused() {
        let x = Real::one(64);
        let z = Real::from_bounds(Dyadic::from_int(-1), Dyadic::from_int(1), 64);
        assert!(x.checked_div(&z).is_none());
    }
}

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

/// Exact binary floating value `mant * 2^exp`, kept normalized (odd mantissa,
/// or zero with `exp == 0`) so that structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: k }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2|x|)`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.bits() as i64 - 1)
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Product of odd mantissas is odd: already normalized.
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let mant = shift_round(&self.mant, shift, dir);
        Self::new(mant, self.exp + shift as i64)
    }

    /// `num / den` rounded to `prec` significant bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale the numerator so that the integer quotient carries prec + 2 bits.
        let shift = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mant << shift;
        let q = div_round(&num, &other.mant, dir);
        Self::new(q, self.exp - other.exp - shift as i64).round(prec, dir)
    }

    pub fn from_rational(q: &Rational, prec: u32, dir: Round) -> Self {
        let n = Self::from_int(q.numer().clone());
        if q.denom().is_one() {
            return n.round(prec, dir);
        }
        n.div(&Self::from_int(q.denom().clone()), prec, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Square root of a nonnegative value rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let mut e = self.exp;
        let mut shift = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (e - shift).is_odd() {
            shift += 1;
        }
        e -= shift;
        let m = &self.mant << shift as u64;
        let mut r = m.sqrt();
        if dir == Round::Up && &r * &r != m {
            r += 1;
        }
        Self::new(r, e / 2).round(prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        let e = r.exp;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling so intermediate powers stay finite.
        let half = (e / 2) as i32;
        m * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // Same nonzero sign: compare magnitudes by leading bit before aligning.
        let (la, lb) = (self.log2_floor().unwrap(), other.log2_floor().unwrap());
        let mag = if la != lb { la.cmp(&lb) } else { self.abs().sub(&other.abs()).signum().cmp(&0) };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

fn shift_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    match dir {
        // BigInt >> rounds toward negative infinity.
        Round::Down => m >> shift,
        Round::Up => -((-m) >> shift),
        Round::Nearest => {
            let half = BigInt::one() << (shift - 1);
            (m + half) >> shift
        }
    }
}

fn div_round(n: &BigInt, d: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => n.div_floor(d),
        Round::Up => -((-n).div_floor(d)),
        Round::Nearest => {
            let (q, r) = n.div_mod_floor(d);
            if (&r << 1u32).abs() >= d.abs() {
                q + 1
            } else {
                q
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn directed_rounding_brackets_rationals() {
        for (n, d) in [(1, 3), (-1, 3), (22, 7), (-5, 9), (1, 1024)] {
            let q = ratio(n, d);
            let lo = Dyadic::from_rational(&q, 40, Round::Down).to_rational();
            let hi = Dyadic::from_rational(&q, 40, Round::Up).to_rational();
            assert!(lo <= q && q <= hi, "{n}/{d}");
            assert!(&hi - &lo < ratio(1, 1 << 30) * q.abs().max(ratio(1, 1)));
        }
    }

    #[test]
    fn ordering_and_normalization() {
        let a = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(a, Dyadic::new(BigInt::from(3), 2));
        assert!(Dyadic::from_int(-3) < Dyadic::from_int(-2));
        assert!(Dyadic::pow2(-3) < Dyadic::pow2(-2));
        assert!(Dyadic::zero() > Dyadic::from_int(-1));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(80, Round::Down);
        let hi = two.sqrt(80, Round::Up);
        assert!(lo.mul(&lo) <= two && two <= hi.mul(&hi));
        assert!((lo.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }
}

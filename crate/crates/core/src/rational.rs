//! Exact rational helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, integers, decimals (`"0.25"`) and scientific notation
/// (`"1e-9"`, `"2.5E3"`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| err())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let joined = format!("{whole}{frac}");
    let num: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().map_err(|_| err())? };
    let scale = exponent - frac.len() as i64;
    if scale.unsigned_abs() > 100_000 {
        return Err(err());
    }
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(num * Pow::pow(&ten, scale as u64))
    } else {
        Rational::new(num, Pow::pow(&ten, (-scale) as u64))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact conversion of a finite `f64`.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::OutOfRange(format!("non-finite value {x}")))
}

pub fn to_f64(q: &Rational) -> f64 {
    // Ratio<BigInt>::to_f64 handles large numerators/denominators.
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(2n-1)!!` with `(-1)!! = 1`.
pub fn double_factorial_odd(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * (2 * k - 1))
}

/// `C(n, k)` with the convention `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    BigInt::from(acc)
}

/// Row `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from((n - k) as u64) / BigInt::from((k + 1) as u64);
        row.push(next);
    }
    row
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Returns `Some(n)` when `q` is an even nonnegative integer `2n`.
pub fn as_even_integer(q: &Rational) -> Option<u64> {
    if !is_integer(q) || q.is_negative() {
        return None;
    }
    let n = q.numer().to_u64()?;
    n.is_even().then_some(n / 2)
}

pub fn powi(q: &Rational, e: u32) -> Rational {
    Pow::pow(q, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("-2.5E2").unwrap(), int(-250));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1/0", "", "abc", "1/2/3", "1..2", "e5", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn combinatorics() {
        assert_eq!(double_factorial_odd(0), BigInt::one());
        assert_eq!(double_factorial_odd(2), BigInt::from(3));
        assert_eq!(double_factorial_odd(5), BigInt::from(945));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn even_integer_detection() {
        assert_eq!(as_even_integer(&int(4)), Some(2));
        assert_eq!(as_even_integer(&int(3)), None);
        assert_eq!(as_even_integer(&ratio(7, 2)), None);
    }
}

//! Exact even moments, normalized r-sequences and the moment-comparison predicate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{as_even_integer, binomial, double_factorial_odd, format_rational, int, powi, Rational};
use crate::real::{bits_for_digits, gamma, pi, Real};
use crate::seq_tools::{elementary_symmetric, logconcave_slice, LogConcavity};

/// Even moments `m_n = E X^{2n}` and `r_n = m_n / (2n-1)!!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    even_moments: Vec<Rational>,
    r: Vec<Rational>,
}

impl MomentSequence {
    pub fn from_even_moments(m: Vec<Rational>) -> Result<Self> {
        Self::check(&m)?;
        let r = m
            .iter()
            .enumerate()
            .map(|(n, x)| x / Rational::from_integer(gaussian_even_moment(n as u64)))
            .collect();
        Ok(MomentSequence { even_moments: m, r })
    }

    /// Builds the sequence from its normalized form.
    pub fn from_r(r: Vec<Rational>) -> Result<Self> {
        Self::check(&r)?;
        let m = r
            .iter()
            .enumerate()
            .map(|(n, x)| x * Rational::from_integer(gaussian_even_moment(n as u64)))
            .collect();
        Ok(MomentSequence { even_moments: m, r })
    }

    fn check(v: &[Rational]) -> Result<()> {
        match v.first() {
            None => return Err(Error::InvalidSequence("moment sequence is empty".into())),
            Some(m0) if !m0.is_one() => {
                return Err(Error::InvalidSequence(format!("m_0 = {} but must be 1", format_rational(m0))))
            }
            _ => {}
        }
        if let Some(i) = v.iter().position(Signed::is_negative) {
            return Err(Error::InvalidSequence(format!("moment {i} is negative")));
        }
        Ok(())
    }

    /// The point mass at zero.
    pub fn delta(n_max: usize) -> Self {
        let mut m = vec![Rational::zero(); n_max + 1];
        m[0] = Rational::one();
        Self::from_even_moments(m).expect("valid")
    }

    /// Number of stored moments, `N + 1`.
    pub fn len(&self) -> usize {
        self.even_moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.even_moments.is_empty()
    }

    pub fn even_moments(&self) -> &[Rational] {
        &self.even_moments
    }

    pub fn r(&self) -> &[Rational] {
        &self.r
    }

    pub fn truncated(&self, n_max: usize) -> Self {
        let k = (n_max + 1).min(self.len());
        MomentSequence { even_moments: self.even_moments[..k].to_vec(), r: self.r[..k].to_vec() }
    }

    /// CSV columns `n,m_num,m_den,r_num,r_den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m_num,m_den,r_num,r_den\n");
        for (n, (m, r)) in self.even_moments.iter().zip(&self.r).enumerate() {
            out.push_str(&format!("{n},{},{},{},{}\n", m.numer(), m.denom(), r.numer(), r.denom()));
        }
        out
    }
}

/// Symmetric law on `{-n..n}` with `P(X=0) = p_0`, `P(X=±k) = p_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDistribution {
    p: Vec<Rational>,
}

impl LatticeDistribution {
    pub fn new(p: Vec<Rational>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidDistribution("no atoms given".into()));
        }
        if let Some(i) = p.iter().position(Signed::is_negative) {
            return Err(Error::InvalidDistribution(format!("p_{i} is negative")));
        }
        let total: Rational = &p[0] + p[1..].iter().sum::<Rational>() * int(2);
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "p_0 + 2 Σ p_k = {} but must be 1",
                format_rational(&total)
            )));
        }
        Ok(LatticeDistribution { p })
    }

    pub fn rademacher() -> Self {
        Self::new(vec![int(0), Rational::new(1.into(), 2.into())]).unwrap()
    }

    /// `P(X=0) = 1-β`, `P(X=±1) = β/2`.
    pub fn three_atom(beta: &Rational) -> Result<Self> {
        if beta.is_negative() || *beta > int(1) {
            return Err(Error::InvalidDistribution("β must lie in [0, 1]".into()));
        }
        Self::new(vec![int(1) - beta, beta / int(2)])
    }

    /// Uniform on `{±1, ..., ±n}` with an atom `p_0` at zero.
    pub fn uniform(n: usize, p0: &Rational) -> Result<Self> {
        if n == 0 {
            return Self::new(vec![p0.clone()]);
        }
        let pk = (int(1) - p0) / int(2 * n as i64);
        let mut p = vec![p0.clone()];
        p.extend(std::iter::repeat_n(pk, n));
        Self::new(p)
    }

    /// Largest atom as given.
    pub fn n(&self) -> usize {
        self.p.len() - 1
    }

    /// Largest `k` with `p_k > 0`.
    pub fn max_atom(&self) -> usize {
        self.p.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn p(&self) -> &[Rational] {
        &self.p
    }

    /// `(value, probability)` pairs in increasing order of value.
    pub fn atoms(&self) -> Vec<(i64, Rational)> {
        let mut out = Vec::new();
        for k in (1..self.p.len()).rev() {
            if !self.p[k].is_zero() {
                out.push((-(k as i64), self.p[k].clone()));
            }
        }
        if !self.p[0].is_zero() {
            out.push((0, self.p[0].clone()));
        }
        for k in 1..self.p.len() {
            if !self.p[k].is_zero() {
                out.push((k as i64, self.p[k].clone()));
            }
        }
        out
    }
}

/// Law with moment generating function `e^{a z^2 / 2} ∏ (1 + b_j z^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussPolyLaw {
    a: Rational,
    b: Vec<Rational>,
}

impl GaussPolyLaw {
    pub fn new(a: Rational, b: Vec<Rational>) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidDistribution("a must be positive".into()));
        }
        if let Some(j) = b.iter().position(Signed::is_negative) {
            return Err(Error::InvalidDistribution(format!("b_{} is negative", j + 1)));
        }
        Ok(GaussPolyLaw { a, b })
    }

    pub fn gaussian() -> Self {
        Self::new(int(1), Vec::new()).unwrap()
    }

    /// `Z_b`: characteristic function `e^{-t^2/2}(1 - b t^2)`.
    pub fn z_b(b: Rational) -> Result<Self> {
        Self::new(int(1), vec![b])
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn b_sum(&self) -> Rational {
        self.b.iter().sum()
    }

    /// `a + 2 Σ b_j`.
    pub fn variance(&self) -> Rational {
        &self.a + self.b_sum() * int(2)
    }

    /// `Σ b_j <= a`, where the law has a nonnegative density.
    pub fn in_density_regime(&self) -> bool {
        self.b_sum() <= self.a
    }

    /// Law of `X + Y` for independent `X`, `Y`.
    pub fn independent_sum(&self, other: &GaussPolyLaw) -> GaussPolyLaw {
        let mut b = self.b.clone();
        b.extend(other.b.iter().cloned());
        GaussPolyLaw { a: &self.a + &other.a, b }
    }

    /// Law of `c X`.
    pub fn scaled(&self, c2: &Rational) -> Result<GaussPolyLaw> {
        GaussPolyLaw::new(&self.a * c2, self.b.iter().map(|b| b * c2).collect())
    }
}

/// `E G^{2n} = (2n-1)!!`.
pub fn gaussian_even_moment(n: u64) -> BigInt {
    double_factorial_odd(n)
}

/// `E|G|^p = 2^{p/2} Γ((p+1)/2) / √π` to `digits` significant digits.
pub fn gaussian_abs_moment(p: &Rational, digits: u32) -> Result<Real> {
    if digits == 0 {
        return Err(Error::OutOfRange("precision of 0 digits requested".into()));
    }
    if p.is_negative() {
        return Err(Error::OutOfRange(format!("p = {} must be nonnegative", format_rational(p))));
    }
    Ok(gaussian_abs_moment_real(p, bits_for_digits(digits)))
}

/// [`gaussian_abs_moment`] at a working precision in bits.
pub fn gaussian_abs_moment_real(p: &Rational, prec: u32) -> Real {
    if let Some(n) = as_even_integer(p) {
        return Real::from_int(gaussian_even_moment(n), prec);
    }
    let wp = prec + 16;
    if p.is_integer() {
        // Odd p = 2n+1: n! 2^n √(2/π).
        let n: u64 = num_traits::ToPrimitive::to_u64(&((p.to_integer() - BigInt::one()) / BigInt::from(2))).expect("p too large");
        let c = Rational::from_integer(crate::rational::factorial(n) << n as usize);
        let r = (&Real::from_int(2, wp) / &pi(wp)).sqrt();
        return r.mul_rational(&c).with_prec(prec);
    }
    let half = Rational::new(1.into(), 2.into());
    let two_pow = Real::from_int(2, wp).pow_rational(&(p * &half));
    let g = gamma(&((p + int(1)) * &half), wp);
    (&(&two_pow * &g) / &pi(wp).sqrt()).with_prec(prec)
}

/// Sequence from a lattice law, `n = 0..=n_max`.
pub fn even_moments_lattice(d: &LatticeDistribution, n_max: usize) -> MomentSequence {
    let m = (0..=n_max)
        .map(|n| {
            let mut s = if n == 0 { d.p[0].clone() } else { Rational::zero() };
            for (k, pk) in d.p.iter().enumerate().skip(1) {
                if !pk.is_zero() {
                    s += pk * int(2) * Rational::from_integer(num_traits::pow(BigInt::from(k), 2 * n));
                }
            }
            s
        })
        .collect();
    MomentSequence::from_even_moments(m).expect("lattice moments are valid")
}

/// Sequence from a Gaussian-polynomial law via `r_n = Σ_k C(n,k) a^{n-k} σ_k k!`.
pub fn even_moments_gausspoly(law: &GaussPolyLaw, n_max: usize) -> MomentSequence {
    let alphas: Vec<Rational> = law.b.iter().map(|b| b * int(2)).collect();
    let sigma = elementary_symmetric(&alphas, n_max);
    let weighted: Vec<Rational> = sigma
        .iter()
        .enumerate()
        .map(|(k, s)| s * Rational::from_integer(crate::rational::factorial(k as u64)))
        .collect();
    let a_pow: Vec<Rational> = (0..=n_max).map(|e| powi(&law.a, e as u32)).collect();
    let r = (0..=n_max)
        .map(|n| {
            (0..=n)
                .filter(|&k| !weighted[k].is_zero())
                .map(|k| Rational::from_integer(binomial(n as i64, k as i64)) * &a_pow[n - k] * &weighted[k])
                .sum()
        })
        .collect();
    MomentSequence::from_r(r).expect("gauss-poly moments are valid")
}

/// `m_n(X+Y) = Σ_k C(2n,2k) m_k(X) m_{n-k}(Y)`, truncated to the shorter input.
pub fn moments_of_independent_sum(mx: &MomentSequence, my: &MomentSequence) -> MomentSequence {
    let len = mx.len().min(my.len());
    let m = (0..len)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    Rational::from_integer(binomial(2 * n as i64, 2 * k as i64))
                        * &mx.even_moments[k]
                        * &my.even_moments[n - k]
                })
                .sum()
        })
        .collect();
    MomentSequence::from_even_moments(m).expect("sum of valid sequences")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RLogConcavity {
    pub result: LogConcavity,
    /// Fewer than three entries: nothing was checked.
    pub vacuous: bool,
}

pub fn check_r_logconcave(seq: &MomentSequence) -> RLogConcavity {
    RLogConcavity { result: logconcave_slice(&seq.r), vacuous: seq.len() < 3 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub p: u32,
    pub q: u32,
    /// `r_{p/2}^{q/2} - r_{q/2}^{p/2}`.
    pub slack: Rational,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        !self.slack.is_negative()
    }
}

/// `‖X‖_q / ‖G‖_q <= ‖X‖_p / ‖G‖_p` for even `p <= q`, in the exact form
/// `r_{q/2}^{p/2} <= r_{p/2}^{q/2}`.
pub fn check_moment_comparison(seq: &MomentSequence, p: u32, q: u32) -> Result<Comparison> {
    validate_even_pair(p, q)?;
    let (i, j) = ((p / 2) as usize, (q / 2) as usize);
    if j >= seq.len() {
        return Err(Error::OutOfRange(format!("q = {q} needs moments up to order {q}, only {} available", 2 * (seq.len() - 1))));
    }
    let slack = powi(&seq.r[i], q / 2) - powi(&seq.r[j], p / 2);
    Ok(Comparison { p, q, slack })
}

pub(crate) fn validate_even_pair(p: u32, q: u32) -> Result<()> {
    if p % 2 != 0 || q % 2 != 0 {
        return Err(Error::OutOfRange(format!("p = {p}, q = {q} must be even")));
    }
    if p < 2 || p > q {
        return Err(Error::OutOfRange(format!("need 2 <= p <= q, got p = {p}, q = {q}")));
    }
    Ok(())
}

/// All even pairs `2 <= p <= q <= q_max`.
pub fn even_pairs(q_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=q_max).step_by(2) {
        for q in (p..=q_max).step_by(2) {
            out.push((p, q));
        }
    }
    out
}

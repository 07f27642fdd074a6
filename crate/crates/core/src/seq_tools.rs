//! Log-concave sequence algebra.
//!
//! Elementary symmetric functions and Newton's inequalities, binomial
//! convolution, log-concavity of exponential generating functions, and the
//! coefficient inequality behind it together with its folded sign-pattern form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, format_rational, Rational};
use crate::verdict::Verdict;

/// Finite sequence of nonnegative rationals `a_0, ..., a_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegSequence(Vec<Rational>);

impl NonnegSequence {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if let Some(i) = a.iter().position(|x| x.is_negative()) {
            return Err(Error::InvalidSequence(format!("entry {i} is negative")));
        }
        Ok(NonnegSequence(a))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a_k`, zero outside the stored range.
    pub fn get(&self, k: i64) -> Rational {
        if k < 0 {
            return Rational::zero();
        }
        self.0.get(k as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(a_{n+k})_{n >= 0}`.
    pub fn shifted(&self, k: usize) -> NonnegSequence {
        NonnegSequence(self.0.iter().skip(k).cloned().collect())
    }

    /// CSV rows `index,numerator,denominator`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,numerator,denominator\n");
        for (i, x) in self.0.iter().enumerate() {
            out.push_str(&format!("{i},{},{}\n", x.numer(), x.denom()));
        }
        out
    }
}

/// `σ_0..=σ_K` of the multiset `alphas`, with `σ_k = 0` for `k` past its size.
pub fn elementary_symmetric(alphas: &[Rational], k_max: usize) -> Vec<Rational> {
    // Multiply out prod (1 + α_j t) one factor at a time.
    let mut sigma = vec![Rational::zero(); k_max + 1];
    sigma[0] = Rational::one();
    for (j, a) in alphas.iter().enumerate() {
        let top = (j + 1).min(k_max);
        for k in (1..=top).rev() {
            let add = &sigma[k - 1] * a;
            sigma[k] += add;
        }
    }
    sigma
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonReport {
    /// `(k, slack_k)` with `slack_k = (σ_k/C(n,k))^2 - σ_{k-1}/C(n,k-1) * σ_{k+1}/C(n,k+1)`.
    pub slacks: Vec<(usize, Rational)>,
    pub holds: bool,
}

impl NewtonReport {
    pub fn worst(&self) -> Option<&Rational> {
        self.slacks.iter().map(|(_, s)| s).min()
    }
}

/// Newton's inequalities for `alphas` padded with zeros to `n` variables.
pub fn newton_check(alphas: &[Rational], n: usize) -> Result<NewtonReport> {
    if n < alphas.len() {
        return Err(Error::OutOfRange(format!("n = {n} is smaller than the number of parameters {}", alphas.len())));
    }
    if alphas.iter().any(Signed::is_negative) {
        return Err(Error::InvalidSequence("Newton check needs nonnegative parameters".into()));
    }
    let sigma = elementary_symmetric(alphas, n);
    let e = |k: usize| &sigma[k] / Rational::from_integer(binomial(n as i64, k as i64));
    let slacks: Vec<(usize, Rational)> = (1..n).map(|k| (k, e(k) * e(k) - e(k - 1) * e(k + 1))).collect();
    let holds = slacks.iter().all(|(_, s)| !s.is_negative());
    Ok(NewtonReport { slacks, holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "index", rename_all = "kebab-case")]
pub enum LogConcavity {
    Holds,
    /// `a_n^2 < a_{n-1} a_{n+1}`.
    FailsAt(usize),
    /// Zero at `n` strictly inside the support.
    SupportGap(usize),
}

impl LogConcavity {
    pub fn holds(self) -> bool {
        self == LogConcavity::Holds
    }

    pub fn verdict(self) -> Verdict {
        if self.holds() {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Log-concavity with the contiguous-support requirement.
pub fn logconcave_check(seq: &NonnegSequence) -> LogConcavity {
    logconcave_slice(seq.as_slice())
}

pub(crate) fn logconcave_slice(a: &[Rational]) -> LogConcavity {
    if let (Some(first), Some(last)) = (a.iter().position(|x| !x.is_zero()), a.iter().rposition(|x| !x.is_zero())) {
        if let Some(gap) = (first..=last).find(|&i| a[i].is_zero()) {
            return LogConcavity::SupportGap(gap);
        }
    }
    for n in 1..a.len().saturating_sub(1) {
        if &a[n] * &a[n] < &a[n - 1] * &a[n + 1] {
            return LogConcavity::FailsAt(n);
        }
    }
    LogConcavity::Holds
}

/// First violation `(k, l, j)` of `a_k a_l >= a_{k+j} a_{l-j}` for `k >= l`, `0 <= j <= l`.
pub fn derived_inequalities_check(seq: &NonnegSequence) -> Option<(usize, usize, usize)> {
    let m = seq.len();
    for k in 0..m {
        for l in 0..=k {
            for j in 0..=l {
                let lhs = seq.get(k as i64) * seq.get(l as i64);
                let rhs = seq.get((k + j) as i64) * seq.get((l - j) as i64);
                if lhs < rhs {
                    return Some((k, l, j));
                }
            }
        }
    }
    None
}

/// `(σ_k k!)_k`.
pub fn factorial_weighted(sigma: &[Rational]) -> NonnegSequence {
    NonnegSequence(
        sigma
            .iter()
            .enumerate()
            .map(|(k, s)| s * Rational::from_integer(factorial(k as u64)))
            .collect(),
    )
}

/// `c_n = Σ_k C(n,k) x_k y_{n-k}`.
pub fn binomial_convolution(x: &NonnegSequence, y: &NonnegSequence) -> NonnegSequence {
    if x.is_empty() || y.is_empty() {
        return NonnegSequence(Vec::new());
    }
    let len = x.len() + y.len() - 1;
    let out = (0..len)
        .map(|n| {
            let lo = n.saturating_sub(y.len() - 1);
            let hi = n.min(x.len() - 1);
            (lo..=hi)
                .map(|k| Rational::from_integer(binomial(n as i64, k as i64)) * &x.0[k] * &y.0[n - k])
                .sum()
        })
        .collect();
    NonnegSequence(out)
}

/// How a finite sequence is read when forming `f(t) = Σ a_n t^n / n!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EgfMode {
    /// The sequence is the whole of `a`; `f` is a polynomial.
    Exact,
    /// The sequence is a prefix of an infinite log-concave sequence; the
    /// unknown tail is dominated by the geometric continuation of the last ratio.
    Prefix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfPoint {
    pub t: Rational,
    /// Enclosure of `f'(t)^2 - f(t) f''(t)`.
    pub lower: Rational,
    pub upper: Rational,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfReport {
    pub verdict: Verdict,
    pub points: Vec<EgfPoint>,
}

const TAIL_TERM_CAP: usize = 100_000;

/// Upper bound on `Σ_{n > M} a_n t^{n-k} / (n-k)!` under `a_n <= a_M ρ^{n-M}`.
fn egf_tail_bound(a: &[Rational], k: usize, t: &Rational) -> Option<Rational> {
    let m = a.len() - 1;
    if a[m].is_zero() {
        return Some(Rational::zero());
    }
    if m == 0 || a[m - 1].is_zero() {
        return None;
    }
    let rho = &a[m] / &a[m - 1];
    let x = &rho * t;
    // First omitted index n = M + 1, i.e. j = n - k.
    let j0 = m + 1 - k.min(m + 1);
    let mut term = &a[m] * &rho * crate::rational::powi(t, j0 as u32) / Rational::from_integer(factorial(j0 as u64));
    if k > m + 1 {
        return None;
    }
    let half = Rational::new(1.into(), 2.into());
    let mut total = Rational::zero();
    let mut j = j0;
    for _ in 0..TAIL_TERM_CAP {
        let ratio = &x / Rational::from_integer(BigInt::from(j + 1));
        if ratio <= half {
            // Remaining tail is dominated by a geometric series with ratio <= 1/2.
            return Some(total + term * Rational::from_integer(2.into()));
        }
        total += &term;
        term = term * ratio;
        j += 1;
    }
    None
}

fn egf_derivative_partial(a: &[Rational], k: usize, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut pow = Rational::one();
    for (j, n) in (k..a.len()).enumerate() {
        acc += &a[n] * &pow / Rational::from_integer(factorial(j as u64));
        pow *= t;
    }
    acc
}

/// Certifies `f'(t)^2 >= f(t) f''(t)` at each grid point.
pub fn egf_logconcavity_grid(a: &NonnegSequence, grid: &[Rational], mode: EgfMode) -> Result<EgfReport> {
    if a.is_empty() {
        return Err(Error::InvalidSequence("empty sequence".into()));
    }
    if let Some(t) = grid.iter().find(|t| t.is_negative()) {
        return Err(Error::OutOfRange(format!("grid point {} is negative", format_rational(t))));
    }
    let s = a.as_slice();
    let mut points = Vec::with_capacity(grid.len());
    let mut overall = Verdict::Holds;
    for t in grid {
        let f: Vec<Rational> = (0..3).map(|k| egf_derivative_partial(s, k, t)).collect();
        let tails: Option<Vec<Rational>> = match mode {
            EgfMode::Exact => Some(vec![Rational::zero(); 3]),
            EgfMode::Prefix => (0..3).map(|k| egf_tail_bound(s, k, t)).collect(),
        };
        let point = match tails {
            Some(e) => {
                let lower = &f[1] * &f[1] - (&f[0] + &e[0]) * (&f[2] + &e[2]);
                let upper = (&f[1] + &e[1]) * (&f[1] + &e[1]) - &f[0] * &f[2];
                let verdict = if !lower.is_negative() {
                    Verdict::Holds
                } else if upper.is_negative() {
                    Verdict::Fails
                } else {
                    Verdict::Inconclusive
                };
                EgfPoint { t: t.clone(), lower, upper, verdict }
            }
            None => {
                let v = &f[1] * &f[1] - &f[0] * &f[2];
                EgfPoint { t: t.clone(), lower: v.clone(), upper: v, verdict: Verdict::Inconclusive }
            }
        };
        overall = overall.and(point.verdict);
        points.push(point);
    }
    Ok(EgfReport { verdict: overall, points })
}

/// Same check for the `k`-th derivative, via the shifted sequence `(a_{n+k})`.
pub fn egf_derivative_logconcavity_grid(a: &NonnegSequence, k: usize, grid: &[Rational], mode: EgfMode) -> Result<EgfReport> {
    let shifted = a.shifted(k);
    if shifted.is_empty() {
        // f^(k) vanishes identically.
        return Ok(EgfReport { verdict: Verdict::Na, points: Vec::new() });
    }
    egf_logconcavity_grid(&shifted, grid, mode)
}

/// `Σ_k (C(n,k-1) - C(n,k)) a_k a_{n-k+2}`.
pub fn gurvits_coefficient_check(a: &NonnegSequence, n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::OutOfRange(format!("n = {n} must be nonnegative")));
    }
    Ok((0..=n + 2)
        .map(|k| Rational::from_integer(binomial(n, k - 1) - binomial(n, k)) * a.get(k) * a.get(n - k + 2))
        .sum())
}

/// Largest `n` for which the coefficient can be nonzero.
pub fn gurvits_max_index(a: &NonnegSequence) -> i64 {
    (2 * a.len() as i64 - 4).max(0)
}

/// Coefficients `s_k` paired with `b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSequence {
    pub s: Vec<Rational>,
    pub b: Vec<Rational>,
}

/// `s_0..=s_m`, `m = ⌊n/2 + 1⌋`: the coefficient sum folded about `k = n/2 + 1`.
pub fn sk_sequence(n: i64) -> Result<Vec<Rational>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}; the cases n < 2 are checked directly")));
    }
    let m = n / 2 + 1;
    Ok((0..=m)
        .map(|k| {
            let v = if n % 2 == 0 && k == m {
                binomial(n, n / 2) - binomial(n, n / 2 - 1)
            } else {
                BigInt::from(2) * binomial(n, k - 1) - binomial(n, k) - binomial(n, k - 2)
            };
            Rational::from_integer(v)
        })
        .collect())
}

/// Unfolded coefficients `C(n,k-1) - C(n,k)` for `k = 0..=n+1`.
pub fn unfolded_coefficients(n: i64) -> Vec<Rational> {
    (0..=n + 1).map(|k| Rational::from_integer(binomial(n, k - 1) - binomial(n, k))).collect()
}

/// `-4k^2 + 4kn + 8k - n^2 - 3n - 2 <= 0`.
pub fn parabola_nonpositive(n: i64, k: i64) -> bool {
    let (n, k) = (BigInt::from(n), BigInt::from(k));
    let v = BigInt::from(-4) * &k * &k + BigInt::from(4) * &k * &n + BigInt::from(8) * &k - &n * &n - BigInt::from(3) * &n - 2;
    v <= BigInt::zero()
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `Σ s_k b_k`, after checking the pairing hypotheses.
pub fn sign_pairing_inequality(ss: &SignSequence) -> Result<Rational> {
    if ss.s.len() != ss.b.len() {
        return Err(Error::Precondition(format!("length mismatch: {} coefficients, {} values", ss.s.len(), ss.b.len())));
    }
    if !ss.s.iter().sum::<Rational>().is_zero() {
        return Err(Error::Precondition("coefficients do not sum to zero".into()));
    }
    if let Some(i) = ss.b.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::Precondition(format!("values not nondecreasing at index {}", i + 1)));
    }
    if let Some(i) = ss.s.windows(2).position(|w| sign_of(&w[0]) > sign_of(&w[1])) {
        return Err(Error::Precondition(format!("coefficient signs not nondecreasing at index {}", i + 1)));
    }
    Ok(ss.s.iter().zip(&ss.b).map(|(s, b)| s * b).sum())
}

/// The coefficient for `n >= 2` through the folded form with `b_k = a_k a_{n-k+2}`.
pub fn gurvits_folded(a: &NonnegSequence, n: i64) -> Result<Rational> {
    let s = sk_sequence(n)?;
    let b = (0..s.len() as i64).map(|k| a.get(k) * a.get(n - k + 2)).collect();
    sign_pairing_inequality(&SignSequence { s, b })
}

/// Convenience for tests and the CLI: the whole coefficient scan.
pub fn gurvits_scan(a: &NonnegSequence) -> Vec<(i64, Rational)> {
    (0..=gurvits_max_index(a)).map(|n| (n, gurvits_coefficient_check(a, n).expect("n >= 0"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn seq(v: &[i64]) -> NonnegSequence {
        NonnegSequence::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(&ints(&[1, 2, 3]), 3), ints(&[1, 6, 11, 6]));
        assert_eq!(elementary_symmetric(&[], 0), ints(&[1]));
        assert_eq!(elementary_symmetric(&ints(&[1, 2]), 4), ints(&[1, 3, 2, 0, 0]));
        let c = ratio(3, 2);
        let sig = elementary_symmetric(&vec![c.clone(); 5], 5);
        for (k, s) in sig.iter().enumerate() {
            assert_eq!(*s, Rational::from_integer(binomial(5, k as i64)) * crate::rational::powi(&c, k as u32));
        }
    }

    #[test]
    fn newton_examples() {
        let r = newton_check(&ints(&[1, 1]), 2).unwrap();
        assert_eq!(r.slacks, vec![(1, int(0))]);
        let r = newton_check(&ints(&[1, 2, 3]), 3).unwrap();
        assert_eq!(r.slacks[0], (1, int(4) - ratio(11, 3)));
        let r = newton_check(&ints(&[1, 4]), 2).unwrap();
        assert_eq!(r.worst(), Some(&ratio(9, 4)));
        assert!(newton_check(&ints(&[1, 2, 3]), 2).is_err());
    }

    #[test]
    fn logconcavity_examples() {
        assert!(logconcave_check(&seq(&[1, 1, 1, 1])).holds());
        for m in 0..=30 {
            let row = NonnegSequence::new(crate::rational::binomial_row(m).into_iter().map(Rational::from_integer).collect()).unwrap();
            assert!(logconcave_check(&row).holds());
            assert_eq!(derived_inequalities_check(&row), None);
        }
        assert_eq!(logconcave_check(&seq(&[1, 0, 1])), LogConcavity::SupportGap(1));
        assert_eq!(logconcave_check(&seq(&[1, 1, 3])), LogConcavity::FailsAt(1));
        assert!(logconcave_check(&seq(&[0, 0, 2, 1, 0])).holds());
    }

    #[test]
    fn factorial_weighting() {
        let sigma = elementary_symmetric(&ints(&[1, 2, 3]), 3);
        assert_eq!(factorial_weighted(&sigma), seq(&[1, 6, 22, 36]));
        assert_eq!(factorial_weighted(&ints(&[1])), seq(&[1]));
    }

    #[test]
    fn binomial_convolution_examples() {
        let y = seq(&[2, 3, 1]);
        assert_eq!(binomial_convolution(&seq(&[1]), &y), y);
        assert_eq!(binomial_convolution(&seq(&[1, 1]), &seq(&[1, 1])), seq(&[1, 2, 2]));
    }

    #[test]
    fn convolution_with_geometric_reproduces_r_identity() {
        // r_n = Σ C(n,k) b^{n-k} σ_k k!
        let b = ratio(3, 2);
        let alphas = ints(&[2, 5]);
        let n_max = 6;
        let geo = NonnegSequence::new((0..=n_max).map(|k| crate::rational::powi(&b, k)).collect()).unwrap();
        let fw = factorial_weighted(&elementary_symmetric(&alphas, 2));
        let conv = binomial_convolution(&geo, &fw);
        for n in 0..=n_max as usize {
            let direct: Rational = (0..=n.min(2))
                .map(|k| {
                    Rational::from_integer(binomial(n as i64, k as i64))
                        * crate::rational::powi(&b, (n - k) as u32)
                        * fw.get(k as i64)
                })
                .sum();
            assert_eq!(conv.get(n as i64), direct);
        }
    }

    #[test]
    fn egf_examples() {
        let grid = vec![ratio(1, 2), int(1), int(2)];
        let ones = seq(&[1; 12]);
        assert_eq!(egf_logconcavity_grid(&ones, &grid, EgfMode::Exact).unwrap().verdict, Verdict::Holds);
        let bad = egf_logconcavity_grid(&seq(&[1, 1, 3]), &[int(0)], EgfMode::Exact).unwrap();
        assert_eq!(bad.verdict, Verdict::Fails);
        assert_eq!(bad.points[0].lower, int(-2));
        let row = NonnegSequence::new(crate::rational::binomial_row(5).into_iter().map(Rational::from_integer).collect()).unwrap();
        assert_eq!(egf_logconcavity_grid(&row, &grid, EgfMode::Exact).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn egf_prefix_mode_is_never_falsely_negative() {
        // f = e^t is an equality case: the enclosure straddles zero.
        let ones = seq(&[1; 20]);
        let grid: Vec<Rational> = (-4..=4).map(|e| if e < 0 { ratio(1, 1 << -e) } else { int(1 << e) }).collect();
        let rep = egf_logconcavity_grid(&ones, &grid, EgfMode::Prefix).unwrap();
        assert!(rep.points.iter().all(|p| p.verdict == Verdict::Inconclusive));
        // a_n = 1/n! is strictly log-concave; small t certifies.
        let inv = NonnegSequence::new((0..20).map(|n| Rational::from_integer(factorial(n)).recip()).collect()).unwrap();
        let rep = egf_logconcavity_grid(&inv, &grid, EgfMode::Prefix).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn gurvits_coefficient_examples() {
        let a = seq(&[2, 3, 5, 7]);
        assert_eq!(gurvits_coefficient_check(&a, 0).unwrap(), int(9 - 10));
        assert_eq!(gurvits_coefficient_check(&a, 1).unwrap(), int(15 - 14));
        assert_eq!(gurvits_coefficient_check(&seq(&[1; 5]), 2).unwrap(), int(0));
        assert!(gurvits_coefficient_check(&a, -1).is_err());
    }

    #[test]
    fn sk_examples() {
        assert_eq!(sk_sequence(2).unwrap(), ints(&[-1, 0, 1]));
        assert_eq!(sk_sequence(3).unwrap(), ints(&[-1, -1, 2]));
        for n in 2..=60 {
            assert!(sk_sequence(n).unwrap().iter().sum::<Rational>().is_zero());
        }
        assert!(sk_sequence(1).is_err());
    }

    #[test]
    fn folded_matches_unfolded() {
        let a = seq(&[1, 3, 4, 4, 2, 1]);
        for n in 2..=gurvits_max_index(&a) {
            assert_eq!(gurvits_folded(&a, n).unwrap(), gurvits_coefficient_check(&a, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn sign_pairing_examples_and_errors() {
        let s = ints(&[-1, 0, 1]);
        assert_eq!(sign_pairing_inequality(&SignSequence { s: s.clone(), b: ints(&[4, 4, 4]) }).unwrap(), int(0));
        assert_eq!(sign_pairing_inequality(&SignSequence { s: s.clone(), b: ints(&[0, 0, 1]) }).unwrap(), int(1));
        let e = sign_pairing_inequality(&SignSequence { s: s.clone(), b: ints(&[1, 0, 1]) }).unwrap_err();
        assert!(e.to_string().contains("nondecreasing"));
        let e = sign_pairing_inequality(&SignSequence { s: ints(&[1, -1]), b: ints(&[0, 1]) }).unwrap_err();
        assert!(e.to_string().contains("signs"));
        let e = sign_pairing_inequality(&SignSequence { s: ints(&[1, 1]), b: ints(&[0, 1]) }).unwrap_err();
        assert!(e.to_string().contains("sum to zero"));
    }
}

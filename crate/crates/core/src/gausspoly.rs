//! Laws with characteristic function `e^{-a t^2/2} ∏ (1 - b_j t^2)`: exact
//! densities, absolute moments through Gamma closed forms, and the moment
//! bounds and monotonicity facts around them.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exact_moments::{gaussian_abs_moment_real, GaussPolyLaw, LatticeDistribution};
use crate::poly::Poly;
use crate::rational::{double_factorial_odd, factorial, format_rational, int, powi, ratio, to_f64, Rational};
use crate::real::{bits_for_digits, decimal_tolerance, Dyadic, Real, Round};
use crate::verdict::{check_nonnegative, SignCheck, Verdict};

/// Density `P(x) exp(-x^2/(2a)) / sqrt(2π a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGaussDensity {
    a: Rational,
    p: Poly,
}

impl PolyGaussDensity {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn polynomial(&self) -> &Poly {
        &self.p
    }

    /// `E X^{2n} = Σ_k c_{2k} a^{n+k} (2n+2k-1)!!`.
    pub fn even_moment(&self, n: usize) -> Rational {
        self.p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(j, c)| j % 2 == 0 && !c.is_zero())
            .map(|(j, c)| {
                let k = n + j / 2;
                c * powi(&self.a, k as u32) * Rational::from_integer(double_factorial_odd(k as u64))
            })
            .sum()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let px = self.p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c));
        let a = to_f64(&self.a);
        px * (-x * x / (2.0 * a)).exp() / (2.0 * std::f64::consts::PI * a).sqrt()
    }

    /// CSV rows `x,P(x),density`.
    pub fn to_csv(&self, xs: &[f64]) -> String {
        let mut out = String::from("x,P(x),density\n");
        for &x in xs {
            let px = self.p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c));
            out.push_str(&format!("{x},{px},{}\n", self.eval(x)));
        }
        out
    }
}

/// `P(x) >= 0` on the real line, for an even polynomial `P`.
///
/// With `u = x^2` the question is whether `P(√u)` changes sign on `u > 0`,
/// i.e. has a positive root of odd multiplicity.
pub fn even_poly_nonnegative(p: &Poly) -> bool {
    if p.is_zero() {
        return true;
    }
    let reduced = Poly::new(p.coeffs().iter().step_by(2).cloned().collect());
    if reduced.coeff(0).is_negative() || reduced.leading().is_negative() {
        return false;
    }
    let mut odd = Poly::constant(Rational::one());
    for (i, f) in reduced.squarefree_decomposition().iter().enumerate() {
        if i % 2 == 0 {
            odd = odd.mul(f);
        }
    }
    odd.count_positive_roots() == 0
}

/// Applies `∏ (1 + b_j D^2)` to the Gaussian density of variance `a`.
pub fn density_from_law(law: &GaussPolyLaw) -> Result<PolyGaussDensity> {
    if !law.in_density_regime() {
        return Err(Error::Precondition(format!(
            "Σ b_j = {} exceeds a = {}",
            format_rational(&law.b_sum()),
            format_rational(law.a())
        )));
    }
    let a = law.a().clone();
    let x = Poly::monomial(Rational::one(), 1);
    let x2 = Poly::monomial(Rational::one(), 2);
    let mut p = Poly::constant(Rational::one());
    for b in law.b() {
        if b.is_zero() {
            continue;
        }
        // (P φ_a)'' = (P'' - 2x P'/a + (x^2/a^2 - 1/a) P) φ_a
        let d1 = p.derivative();
        let second = d1
            .derivative()
            .sub(&x.mul(&d1).scale(&(int(2) / &a)))
            .add(&x2.mul(&p).scale(&(int(1) / (&a * &a))))
            .sub(&p.scale(&(int(1) / &a)));
        p = p.add(&second.scale(b));
    }
    if !even_poly_nonnegative(&p) {
        return Err(Error::Precondition("density polynomial takes negative values".into()));
    }
    let d = PolyGaussDensity { a, p };
    debug_assert!(d.even_moment(0).is_one());
    Ok(d)
}

/// `∫ |x|^p x^{2k} φ_a / (a^{p/2} E|G|^p) = a^k (p+1)(p+3)...(p+2k-1)`.
fn abs_moment_ratio(a: &Rational, p: &Rational, k: usize) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r *= a * (p + int(1 + 2 * i as i64));
    }
    r
}

/// `a^{p/2} E|G|^p`: the common transcendental factor.
fn gaussian_scale(a: &Rational, p: &Rational, prec: u32) -> Real {
    let g = gaussian_abs_moment_real(p, prec);
    if a.is_one() {
        return g;
    }
    &Real::from_rational(a, prec).pow_rational(&(p / int(2))) * &g
}

fn check_p(p: &Rational) -> Result<()> {
    if p.is_negative() {
        return Err(Error::OutOfRange(format!("p = {} must be nonnegative", format_rational(p))));
    }
    Ok(())
}

/// `E|X|^p` for a polynomial-Gaussian density, summed monomial by monomial in closed form.
pub fn abs_moment_quadrature(d: &PolyGaussDensity, p: &Rational, digits: u32) -> Result<Real> {
    check_p(p)?;
    let prec = bits_for_digits(digits);
    Ok(abs_moment_bits(d, p, prec))
}

fn abs_moment_bits(d: &PolyGaussDensity, p: &Rational, prec: u32) -> Real {
    let wp = prec + 16;
    let rational_part: Rational = d
        .p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(j, c)| j % 2 == 0 && !c.is_zero())
        .map(|(j, c)| c * abs_moment_ratio(&d.a, p, j / 2))
        .sum();
    gaussian_scale(&d.a, p, wp).mul_rational(&rational_part).with_prec(prec)
}

/// `E|Z_b|^p = E|G|^p (1 + p b)`, optionally divided by `(1+2b)^{p/2}`.
pub fn abs_moment_closed_zb(p: &Rational, b: &Rational, digits: u32, normalized: bool) -> Result<Real> {
    check_p(p)?;
    if b.is_negative() || *b > int(1) {
        return Err(Error::OutOfRange(format!("b = {} must lie in [0, 1]", format_rational(b))));
    }
    let prec = bits_for_digits(digits);
    Ok(zb_bits(p, b, prec, normalized))
}

fn zb_bits(p: &Rational, b: &Rational, prec: u32, normalized: bool) -> Real {
    let wp = prec + 16;
    let mut v = gaussian_abs_moment_real(p, wp).mul_rational(&(int(1) + p * b));
    if normalized {
        let var = int(1) + b * int(2);
        v = &v / &Real::from_rational(&var, wp).pow_rational(&(p / int(2)));
    }
    v.with_prec(prec)
}

/// Bounds `E|σ Z_1/√3|^p <= E|X|^p <= E|σ Z_0|^p` with `σ^2 = Var X`.
#[derive(Clone, Debug)]
pub struct MomentBoundsReport {
    pub sigma2: Rational,
    pub lower: Real,
    pub value: Real,
    pub upper: Real,
    pub lower_slack: Real,
    pub upper_slack: Real,
    pub lower_check: SignCheck,
    pub upper_check: SignCheck,
    /// `p < 3`: outside the range where the bounds are claimed.
    pub diagnostic: bool,
}

impl MomentBoundsReport {
    pub fn verdict(&self) -> Verdict {
        self.lower_check.verdict.and(self.upper_check.verdict)
    }
}

pub fn moment_bounds_check(law: &GaussPolyLaw, p: &Rational, digits: u32, diagnostic: bool) -> Result<MomentBoundsReport> {
    check_p(p)?;
    let is_diag = *p < int(3);
    if is_diag && !diagnostic {
        return Err(Error::OutOfRange(format!("p = {} < 3; pass the diagnostic flag to evaluate anyway", format_rational(p))));
    }
    let d = density_from_law(law)?;
    let prec = bits_for_digits(digits);
    let wp = prec + 32;
    let sigma2 = law.variance();
    let half_p = p / int(2);
    let g = gaussian_abs_moment_real(p, wp);
    let value = abs_moment_bits(&d, p, wp);
    let sp = Real::from_rational(&sigma2, wp).pow_rational(&half_p);
    let upper = &sp * &g;
    let lower = (&Real::from_rational(&(&sigma2 / int(3)), wp).pow_rational(&half_p) * &g).mul_rational(&(p + int(1)));
    let lower_slack = &value - &lower;
    let upper_slack = &upper - &value;
    let tol = decimal_tolerance(digits);
    Ok(MomentBoundsReport {
        lower_check: check_nonnegative(&lower_slack, &tol),
        upper_check: check_nonnegative(&upper_slack, &tol),
        sigma2,
        lower: lower.with_prec(prec),
        value: value.with_prec(prec),
        upper: upper.with_prec(prec),
        lower_slack: lower_slack.with_prec(prec),
        upper_slack: upper_slack.with_prec(prec),
        diagnostic: is_diag,
    })
}

/// Rescales so that `Σ b_j = 1`; returns the law of `X/c` and `c^2`.
pub fn normalize_b_sum(law: &GaussPolyLaw) -> Result<(GaussPolyLaw, Rational)> {
    let s = law.b_sum();
    if s.is_zero() {
        return Err(Error::Degenerate("all b_j vanish".into()));
    }
    Ok((law.scaled(&s.recip())?, s))
}

/// `g_λ(x) = (x^2 + λ(1-λ)(3 - 6x^2 + x^4)) φ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLambda {
    lambda: Rational,
}

impl GLambda {
    pub fn new(lambda: Rational) -> Result<Self> {
        if !lambda.is_positive() || lambda >= int(1) {
            return Err(Error::OutOfRange(format!("λ = {} must lie in (0, 1)", format_rational(&lambda))));
        }
        Ok(GLambda { lambda })
    }

    pub fn polynomial(&self) -> Poly {
        let c = &self.lambda * (int(1) - &self.lambda);
        Poly::new(vec![&c * int(3), int(0), int(1) - &c * int(6), int(0), c])
    }

    /// The density of `√λ X_1 + √(1-λ) X_2` for independent `Z_1` copies.
    pub fn as_density(&self) -> PolyGaussDensity {
        PolyGaussDensity { a: int(1), p: self.polynomial() }
    }
}

/// Zeros and sign pattern of `g_{λ2} - g_{λ1}` on `(0, ∞)`.
#[derive(Clone, Debug)]
pub struct GLambdaReport {
    pub identically_zero: bool,
    /// `√(3-√6)` and `√(3+√6)`.
    pub zeros: Vec<Real>,
    /// Exact sign changes bracket each zero within this width.
    pub bracket_width: Rational,
    pub brackets_verified: bool,
    /// Signs at the sample points, e.g. `"+-+"`.
    pub pattern: String,
    pub samples: Vec<Rational>,
}

fn sign_char(x: &Rational) -> char {
    if x.is_positive() {
        '+'
    } else if x.is_negative() {
        '-'
    } else {
        '0'
    }
}

/// `l1, l2 ∈ (0, 1/2)`; the zeros are located to `10^-digits`.
pub fn g_lambda_analysis(l1: &Rational, l2: &Rational, digits: u32) -> Result<GLambdaReport> {
    let half = ratio(1, 2);
    for l in [l1, l2] {
        if !l.is_positive() || *l >= half {
            return Err(Error::OutOfRange(format!("λ = {} must lie in (0, 1/2)", format_rational(l))));
        }
    }
    let diff = GLambda::new(l2.clone())?.polynomial().sub(&GLambda::new(l1.clone())?.polynomial());
    let samples = vec![ratio(1, 2), ratio(3, 2), int(3)];
    if diff.is_zero() {
        return Ok(GLambdaReport {
            identically_zero: true,
            zeros: Vec::new(),
            bracket_width: Rational::zero(),
            brackets_verified: true,
            pattern: "0".repeat(samples.len()),
            samples,
        });
    }
    let prec = bits_for_digits(digits + 5);
    let s6 = Real::from_int(6, prec).sqrt();
    let three = Real::from_int(3, prec);
    let zeros = vec![(&three - &s6).sqrt(), (&three + &s6).sqrt()];
    let width = decimal_tolerance(digits);
    let brackets_verified = zeros.iter().all(|z| {
        let mid = z.mid().to_rational();
        let lo = &mid - &width / int(2);
        let hi = &mid + &width / int(2);
        let (a, b) = (diff.eval(&lo), diff.eval(&hi));
        z.width().to_rational() < &width / int(4) && (a.is_positive() != b.is_positive()) && !a.is_zero() && !b.is_zero()
    });
    let pattern = samples.iter().map(|x| sign_char(&diff.eval(x))).collect();
    Ok(GLambdaReport { identically_zero: false, zeros, bracket_width: width, brackets_verified, pattern, samples })
}

/// Independent symmetric summand `Y` in the Schur-concavity probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YSpec {
    Zero,
    Lattice(LatticeDistribution),
    GaussPoly(GaussPolyLaw),
}

/// `b ≺ b'`: equal sums and dominated sorted partial sums.
pub fn is_majorized_by(b: &[Rational], b_prime: &[Rational]) -> bool {
    let n = b.len().max(b_prime.len());
    let sorted = |v: &[Rational]| {
        let mut s = v.to_vec();
        s.resize(n, Rational::zero());
        s.sort_by(|x, y| y.cmp(x));
        s
    };
    let (x, y) = (sorted(b), sorted(b_prime));
    let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
    for (u, v) in x.iter().zip(&y) {
        sx += u;
        sy += v;
        if sx > sy {
            return false;
        }
    }
    sx == sy
}

/// `E|S + c|^p` for `S` with density `d`, by expanding the Gaussian shift.
pub fn shifted_abs_moment(d: &PolyGaussDensity, c: &Rational, p: &Rational, prec: u32) -> Real {
    if c.is_zero() {
        return abs_moment_bits(d, p, prec);
    }
    let wp = prec + 32;
    let a = &d.a;
    // Q(x) = P(x - c)
    let shift = Poly::new(vec![-c.clone(), int(1)]);
    let mut q = Poly::zero();
    for coef in d.p.coeffs().iter().rev() {
        q = q.mul(&shift).add(&Poly::constant(coef.clone()));
    }
    let ca = c / a;
    let cutoff = Rational::new(1.into(), num_bigint::BigInt::one() << (wp as usize + 8));
    let mut total = Rational::zero();
    let mut err = Rational::zero();
    for (j, qj) in q.coeffs().iter().enumerate() {
        if qj.is_zero() {
            continue;
        }
        // Σ over m ≡ j (mod 2) of (c/a)^m / m! * ratio((j+m)/2)
        let mut m = j % 2;
        let mut partial = Rational::zero();
        loop {
            let t = powi(&ca, m as u32) / Rational::from_integer(factorial(m as u64)) * abs_moment_ratio(a, p, (j + m) / 2);
            partial += &t;
            let r = c * c * (p + int(1 + j as i64 + m as i64)) / (a * int(((m + 1) * (m + 2)) as i64));
            if r <= ratio(1, 2) && t.abs() * &r * int(2) <= &cutoff * partial.abs().max(int(1)) {
                // Remaining terms decrease at least geometrically with ratio r <= 1/2.
                err += (qj * &t).abs() * r * int(2);
                break;
            }
            m += 2;
        }
        total += qj * partial;
    }
    let scale = gaussian_scale(a, p, wp);
    let gauss_shift = Real::from_rational(&(-(c * c) / (a * int(2))), wp).exp();
    let err_d = Dyadic::from_rational(&err, 64, Round::Up);
    let series = Real::from_rational(&total, wp).widen(&err_d);
    (&(&scale * &gauss_shift) * &series).with_prec(prec)
}

fn psi(b: &[Rational], p: &Rational, y: &YSpec, prec: u32) -> Result<Real> {
    let nonzero: Vec<Rational> = b.iter().filter(|x| !x.is_zero()).cloned().collect();
    let total: Rational = nonzero.iter().sum();
    if total.is_zero() {
        return match y {
            YSpec::Zero => Ok(Real::zero(prec)),
            YSpec::GaussPoly(law) => Ok(abs_moment_bits(&density_from_law(law)?, p, prec)),
            YSpec::Lattice(l) => {
                let mut acc = Real::zero(prec);
                for (v, w) in l.atoms() {
                    let m = Real::from_int(v.abs(), prec).pow_rational(p);
                    acc = &acc + &m.mul_rational(&w);
                }
                Ok(acc)
            }
        };
    }
    let s = GaussPolyLaw::new(total, nonzero)?;
    match y {
        YSpec::Zero => Ok(abs_moment_bits(&density_from_law(&s)?, p, prec)),
        YSpec::GaussPoly(law) => Ok(abs_moment_bits(&density_from_law(&s.independent_sum(law))?, p, prec)),
        YSpec::Lattice(l) => {
            let d = density_from_law(&s)?;
            let mut acc = Real::zero(prec);
            for (v, w) in l.atoms() {
                acc = &acc + &shifted_abs_moment(&d, &int(v), p, prec).mul_rational(&w);
            }
            Ok(acc)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SchurProbe {
    pub psi_b: Real,
    pub psi_b_prime: Real,
    /// `Ψ(b) - Ψ(b')`.
    pub slack: Real,
    pub check: SignCheck,
}

/// `Ψ(b) >= Ψ(b')` for `b ≺ b'`, `Ψ(b) = E|Σ √b_j X_j + Y|^p` with `X_j` copies of `Z_1`.
pub fn schur_concavity_probe(b: &[Rational], b_prime: &[Rational], p: &Rational, y: &YSpec, digits: u32) -> Result<SchurProbe> {
    if *p < int(3) {
        return Err(Error::OutOfRange(format!("p = {} < 3", format_rational(p))));
    }
    if b.iter().chain(b_prime).any(Signed::is_negative) {
        return Err(Error::Precondition("weights must be nonnegative".into()));
    }
    if !is_majorized_by(b, b_prime) {
        return Err(Error::Precondition("b is not majorized by b'".into()));
    }
    let prec = bits_for_digits(digits);
    let wp = prec + 32;
    let psi_b = psi(b, p, y, wp)?;
    let psi_b_prime = psi(b_prime, p, y, wp)?;
    let slack = &psi_b - &psi_b_prime;
    let check = check_nonnegative(&slack, &decimal_tolerance(digits));
    Ok(SchurProbe { psi_b: psi_b.with_prec(prec), psi_b_prime: psi_b_prime.with_prec(prec), slack: slack.with_prec(prec), check })
}

#[derive(Clone, Debug)]
pub struct ZbMonotonicity {
    pub values: Vec<(Rational, Real)>,
    /// Sign of `d/db` at each grid point: `p b (2 - p)`, times a positive factor.
    pub derivative_signs: Vec<i8>,
    /// Successive values certified strictly decreasing.
    pub strictly_decreasing: bool,
    /// All values equal (the `p = 2` case).
    pub constant: bool,
    pub diagnostic: bool,
}

impl ZbMonotonicity {
    pub fn verdict(&self) -> Verdict {
        if self.strictly_decreasing {
            Verdict::Holds
        } else if self.values.len() < 2 {
            Verdict::Na
        } else {
            Verdict::Fails
        }
    }
}

/// `b ↦ E|(1+2b)^{-1/2} Z_b|^p` on an increasing grid in `[0, 1]`.
pub fn zb_monotone_in_b(p: &Rational, grid: &[Rational], digits: u32, diagnostic: bool) -> Result<ZbMonotonicity> {
    check_p(p)?;
    let is_diag = *p < int(3);
    if is_diag && !diagnostic {
        return Err(Error::OutOfRange(format!("p = {} < 3; pass the diagnostic flag to evaluate anyway", format_rational(p))));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("grid must be strictly increasing".into()));
    }
    let prec = bits_for_digits(digits);
    let mut values = Vec::with_capacity(grid.len());
    for b in grid {
        values.push((b.clone(), abs_moment_closed_zb(p, b, digits, true)?));
    }
    let derivative_signs = grid
        .iter()
        .map(|b| {
            let s = p * b * (int(2) - p);
            if s.is_positive() {
                1
            } else if s.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect();
    let strictly_decreasing = values.len() >= 2 && values.windows(2).all(|w| w[1].1.lt(&w[0].1));
    let tol = Real::from_rational(&decimal_tolerance(digits), prec);
    let constant = values.windows(2).all(|w| (&w[1].1 - &w[0].1).abs().le(&tol));
    Ok(ZbMonotonicity { values, derivative_signs, strictly_decreasing, constant, diagnostic: is_diag })
}

/// Draws from `Σ √b_j X_j + √(a - Σ b_j) Z_0`, `X_j` copies of `Z_1`.
pub fn sample(law: &GaussPolyLaw, seed: u64, count: usize) -> Result<Vec<f64>> {
    if !law.in_density_regime() {
        return Err(Error::Precondition("Σ b_j exceeds a".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let chi = ChiSquared::new(3.0).expect("valid degrees of freedom");
    let scales: Vec<f64> = law.b().iter().map(|b| to_f64(b).sqrt()).collect();
    let rest = to_f64(&(law.a() - law.b_sum())).sqrt();
    Ok((0..count)
        .map(|_| {
            let mut x = 0.0;
            for s in &scales {
                let r: f64 = chi.sample(&mut rng);
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                x += s * sign * r.sqrt();
            }
            let z: f64 = StandardNormal.sample(&mut rng);
            x + rest * z
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_moments::{even_moments_gausspoly, gaussian_abs_moment};

    fn law(a: Rational, b: &[Rational]) -> GaussPolyLaw {
        GaussPolyLaw::new(a, b.to_vec()).unwrap()
    }

    #[test]
    fn density_examples() {
        let z1 = density_from_law(&GaussPolyLaw::z_b(int(1)).unwrap()).unwrap();
        assert_eq!(z1.polynomial(), &Poly::monomial(int(1), 2));
        let b = ratio(1, 3);
        let zb = density_from_law(&GaussPolyLaw::z_b(b.clone()).unwrap()).unwrap();
        assert_eq!(zb.polynomial(), &Poly::new(vec![int(1) - &b, int(0), b]));
        assert_eq!(density_from_law(&GaussPolyLaw::gaussian()).unwrap().polynomial(), &Poly::constant(int(1)));
        assert!(density_from_law(&law(int(1), &[ratio(2, 3), ratio(2, 3)])).is_err());
    }

    #[test]
    fn density_moments_match_sigma_identity() {
        let laws = [law(int(1), &[int(1)]), law(ratio(5, 2), &[ratio(1, 2), int(1), ratio(1, 3)]), law(ratio(3, 7), &[ratio(1, 7), ratio(2, 7)])];
        for l in &laws {
            let d = density_from_law(l).unwrap();
            let m = even_moments_gausspoly(l, 8);
            for n in 0..=8 {
                assert_eq!(d.even_moment(n), m.even_moments()[n]);
            }
        }
    }

    #[test]
    fn nonnegativity_by_sturm() {
        assert!(even_poly_nonnegative(&Poly::new(vec![int(1), int(0), int(-2), int(0), int(1)])));
        assert!(!even_poly_nonnegative(&Poly::new(vec![int(1), int(0), int(-3), int(0), int(1)])));
        assert!(!even_poly_nonnegative(&Poly::new(vec![int(-1), int(0), int(1)])));
    }

    #[test]
    fn abs_moment_examples() {
        let g = density_from_law(&GaussPolyLaw::gaussian()).unwrap();
        assert!(abs_moment_quadrature(&g, &int(4), 30).unwrap().contains_rational(&int(3)));
        let z1 = density_from_law(&GaussPolyLaw::z_b(int(1)).unwrap()).unwrap();
        assert!(abs_moment_quadrature(&z1, &int(2), 30).unwrap().contains_rational(&int(3)));
        assert!(abs_moment_quadrature(&z1, &int(4), 30).unwrap().contains_rational(&int(15)));
        let b = ratio(3, 4);
        let zb = density_from_law(&GaussPolyLaw::z_b(b.clone()).unwrap()).unwrap();
        for p in [int(3), ratio(7, 2), ratio(15, 2)] {
            let a = abs_moment_quadrature(&zb, &p, 30).unwrap();
            let c = abs_moment_closed_zb(&p, &b, 30, false).unwrap();
            assert!((&a - &c).mag().to_f64() < 1e-28);
        }
    }

    #[test]
    fn closed_form_examples() {
        let p = ratio(7, 2);
        let g = gaussian_abs_moment(&p, 30).unwrap();
        assert!((&abs_moment_closed_zb(&p, &int(0), 30, true).unwrap() - &g).mag().to_f64() < 1e-28);
        assert!(abs_moment_closed_zb(&int(4), &int(1), 30, true).unwrap().contains_rational(&ratio(5, 3)));
        for b in [int(0), ratio(1, 4), int(1)] {
            assert!(abs_moment_closed_zb(&int(2), &b, 30, true).unwrap().contains_rational(&int(1)));
        }
    }

    #[test]
    fn moment_bounds_examples() {
        let p = int(3);
        let z1 = moment_bounds_check(&GaussPolyLaw::z_b(int(1)).unwrap(), &p, 20, false).unwrap();
        assert!(z1.lower_slack.mag().to_f64() < 1e-18);
        assert_eq!(z1.verdict(), Verdict::Holds);
        let g = moment_bounds_check(&GaussPolyLaw::gaussian(), &p, 20, false).unwrap();
        assert!(g.upper_slack.mag().to_f64() < 1e-18);
        let mixed = moment_bounds_check(&law(int(1), &[ratio(1, 2), ratio(1, 2)]), &p, 20, false).unwrap();
        assert_eq!(mixed.lower_check, SignCheck { verdict: Verdict::Holds, tight: false });
        assert_eq!(mixed.upper_check, SignCheck { verdict: Verdict::Holds, tight: false });
        assert!(moment_bounds_check(&GaussPolyLaw::gaussian(), &ratio(5, 2), 20, false).is_err());
        assert!(moment_bounds_check(&GaussPolyLaw::gaussian(), &ratio(5, 2), 20, true).unwrap().diagnostic);
    }

    #[test]
    fn g_lambda_density_is_mixture_density() {
        let l = ratio(1, 5);
        let g = GLambda::new(l.clone()).unwrap();
        let d = density_from_law(&law(int(1), &[l.clone(), int(1) - &l])).unwrap();
        assert_eq!(&g.polynomial(), d.polynomial());
        assert!(g.as_density().even_moment(0).is_one());
    }

    #[test]
    fn g_lambda_examples() {
        let r = g_lambda_analysis(&ratio(1, 10), &ratio(1, 5), 10).unwrap();
        assert_eq!(r.pattern, "+-+");
        assert!(r.brackets_verified);
        assert!((r.zeros[0].to_f64().powi(2) - (3.0 - 6f64.sqrt())).abs() < 1e-12);
        assert!((r.zeros[1].to_f64().powi(2) - (3.0 + 6f64.sqrt())).abs() < 1e-12);
        assert!(g_lambda_analysis(&ratio(1, 5), &ratio(1, 5), 10).unwrap().identically_zero);
        assert!(g_lambda_analysis(&ratio(1, 5), &ratio(1, 2), 10).is_err());
    }

    #[test]
    fn majorization() {
        assert!(is_majorized_by(&[ratio(1, 2), ratio(1, 2)], &[int(1)]));
        assert!(!is_majorized_by(&[int(1)], &[ratio(1, 2), ratio(1, 2)]));
        assert!(!is_majorized_by(&[int(1)], &[int(2)]));
    }

    #[test]
    fn shifted_moment_even_p_is_exact_oracle() {
        // E (S + c)^4 = m4 + 6 c^2 m2 + c^4 for symmetric S.
        let d = density_from_law(&law(int(2), &[ratio(1, 2), int(1)])).unwrap();
        let c = ratio(3, 2);
        let expected = d.even_moment(2) + int(6) * &c * &c * d.even_moment(1) + powi(&c, 4);
        let v = shifted_abs_moment(&d, &c, &int(4), 120);
        assert!(v.contains_rational(&expected), "{v} vs {}", format_rational(&expected));
        assert!(v.width().to_f64() < 1e-30);
    }

    #[test]
    fn schur_probe_examples() {
        let b = [ratio(1, 2), ratio(1, 2)];
        let bp = [int(1), int(0)];
        let r = schur_concavity_probe(&b, &bp, &int(3), &YSpec::Zero, 20).unwrap();
        assert_eq!(r.check.verdict, Verdict::Holds);
        assert!(!r.check.tight);
        let same = schur_concavity_probe(&b, &b, &int(3), &YSpec::Zero, 20).unwrap();
        assert_eq!(same.check, SignCheck { verdict: Verdict::Holds, tight: true });
        let lat = YSpec::Lattice(LatticeDistribution::rademacher());
        assert_eq!(schur_concavity_probe(&b, &bp, &ratio(7, 2), &lat, 20).unwrap().check.verdict, Verdict::Holds);
        assert!(schur_concavity_probe(&bp, &b, &int(3), &YSpec::Zero, 20).is_err());
    }

    #[test]
    fn zb_monotonicity_examples() {
        let grid = [int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)];
        let r = zb_monotone_in_b(&int(3), &grid, 20, false).unwrap();
        assert!(r.strictly_decreasing);
        assert!(r.derivative_signs[1..].iter().all(|&s| s == -1));
        let r2 = zb_monotone_in_b(&int(2), &grid, 20, true).unwrap();
        assert!(r2.constant && !r2.strictly_decreasing);
        let r4 = zb_monotone_in_b(&int(4), &[int(0), int(1)], 20, false).unwrap();
        assert!(r4.values[0].1.contains_rational(&int(3)));
        assert!(r4.values[1].1.contains_rational(&ratio(5, 3)));
    }

    #[test]
    fn sampler_variance() {
        let xs = sample(&GaussPolyLaw::z_b(int(1)).unwrap(), 7, 200_000).unwrap();
        let var = xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64;
        assert!((var - 3.0).abs() < 0.05, "{var}");
        assert_eq!(xs[..4], sample(&GaussPolyLaw::z_b(int(1)).unwrap(), 7, 4).unwrap()[..]);
    }
}

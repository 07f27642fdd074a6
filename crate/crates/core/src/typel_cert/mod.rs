//! Type-𝓛 certification for symmetric lattice laws through the unit-circle
//! zeros of `Q(w) = E w^{X+n}`.

mod charfn;
mod roots;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use charfn::{charfn_real_zero_scan, ZeroBracket};

use crate::error::{Error, Result};
use crate::exact_moments::LatticeDistribution;
use crate::poly::Poly;
use crate::rational::{format_rational, int, powi, to_f64, Rational};
use crate::real::{bits_for_digits, Dyadic, Real, Round};
use crate::verdict::Verdict;

/// Working precision (decimal digits) for the non-integer SV exponents.
pub const SV_DIGITS: u32 = 60;
/// Bits used when polishing roots of exact polynomials.
const POLISH_BITS: u32 = 160;
/// Roots of an inexact polynomial closer than this are treated as one cluster.
const CLUSTER_RADIUS: f64 = 1e-6;

/// Palindromic polynomial `q_0 + q_1 w + ... + q_{2n} w^{2n}`, `q_k = q_{2n-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfInversivePolynomial {
    coeffs: Vec<Rational>,
}

impl SelfInversivePolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate("zero polynomial".into()));
        }
        let m = coeffs.len() - 1;
        if coeffs[m].is_zero() {
            return Err(Error::Degenerate("leading coefficient is zero".into()));
        }
        if let Some(k) = (0..=m).find(|&k| coeffs[k] != coeffs[m - k]) {
            return Err(Error::Degenerate(format!("not palindromic: q_{k} != q_{}", m - k)));
        }
        Ok(SelfInversivePolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// CSV rows `k,numerator,denominator`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,numerator,denominator\n");
        for (k, q) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{k},{},{}\n", q.numer(), q.denom()));
        }
        out
    }
}

/// `Q(w) = E w^{X+n}` with `n` the largest atom carrying mass.
pub fn lattice_to_polynomial(d: &LatticeDistribution) -> SelfInversivePolynomial {
    let n = d.max_atom();
    let mut c = vec![Rational::zero(); 2 * n + 1];
    c[n] = d.p()[0].clone();
    for k in 1..=n {
        c[n + k] = d.p()[k].clone();
        c[n - k] = d.p()[k].clone();
    }
    debug_assert!(c.iter().sum::<Rational>().is_one());
    SelfInversivePolynomial::new(c).expect("lattice polynomial is palindromic")
}

/// `p_0/2 <= p_1 <= ... <= p_n`.
pub fn enestrom_kakeya(d: &LatticeDistribution) -> Verdict {
    let n = d.max_atom();
    if n == 0 {
        return Verdict::Na;
    }
    let p = d.p();
    let mut prev = &p[0] / int(2);
    for pk in &p[1..=n] {
        if *pk < prev {
            return Verdict::Fails;
        }
        prev = pk.clone();
    }
    Verdict::Holds
}

#[derive(Clone, Debug, Serialize)]
pub struct SvCheck {
    pub alpha: String,
    pub verdict: Verdict,
    /// `(2/(n'-2))^{α-1} p_n^α - (p_0^α/2 + Σ_{k<n} p_k^α)` as a decimal enclosure.
    pub slack: Option<String>,
}

/// `p_0^α/2 + Σ_{k=1}^{n-1} p_k^α <= (2/(n'-2))^{α-1} p_n^α`, with `n` the
/// largest atom and `n'` the number of nonzero coefficients of `Q`.
pub fn sv_alpha_condition(d: &LatticeDistribution, alpha: &Rational) -> Result<SvCheck> {
    if *alpha < int(1) {
        return Err(Error::OutOfRange(format!("α = {} must be at least 1", format_rational(alpha))));
    }
    let na = |alpha: &Rational| SvCheck { alpha: format_rational(alpha), verdict: Verdict::Na, slack: None };
    let n = d.max_atom();
    if n == 0 {
        return Ok(na(alpha));
    }
    let p = d.p();
    let nonzero = usize::from(!p[0].is_zero()) + 2 * p[1..].iter().filter(|x| !x.is_zero()).count();
    let exponent = alpha - int(1);
    if nonzero <= 2 && !exponent.is_zero() {
        return Ok(na(alpha));
    }
    if alpha.is_integer() {
        let e: u32 = alpha.to_integer().try_into().map_err(|_| Error::OutOfRange("α too large".into()))?;
        let factor = if e == 1 { int(1) } else { powi(&(int(2) / int(nonzero as i64 - 2)), e - 1) };
        let lhs = powi(&p[0], e) / int(2) + p[1..n].iter().map(|x| powi(x, e)).sum::<Rational>();
        let slack = factor * powi(&p[n], e) - lhs;
        let verdict = if slack.is_negative() { Verdict::Fails } else { Verdict::Holds };
        return Ok(SvCheck { alpha: format_rational(alpha), verdict, slack: Some(format_rational(&slack)) });
    }
    let prec = bits_for_digits(SV_DIGITS);
    let pw = |x: &Rational| {
        if x.is_zero() {
            Real::zero(prec)
        } else {
            Real::from_rational(x, prec).pow_rational(alpha)
        }
    };
    let mut lhs = pw(&p[0]).mul_pow2(-1);
    for x in &p[1..n] {
        lhs = &lhs + &pw(x);
    }
    let factor = Real::from_rational(&(int(2) / int(nonzero as i64 - 2)), prec).pow_rational(&exponent);
    let slack = &(&factor * &pw(&p[n])) - &lhs;
    let verdict = if slack.is_nonnegative() {
        Verdict::Holds
    } else if slack.is_negative() {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    };
    Ok(SvCheck { alpha: format_rational(alpha), verdict, slack: Some(slack.to_decimal(12)) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleVerdict {
    AllOnCircle,
    NotAllOnCircle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchurCohn {
    pub verdict: CircleVerdict,
    /// Some zero has multiplicity above one.
    pub repeated_roots: bool,
}

/// All roots strictly inside the unit disk, by the Schur–Cohn reduction.
pub fn all_roots_strictly_inside(p: &Poly) -> bool {
    let mut c: Vec<Rational> = p.coeffs().to_vec();
    while c.len() > 1 {
        let m = c.len() - 1;
        if c[0].abs() >= c[m].abs() {
            return false;
        }
        // (a_m P - a_0 P*) / z, with P*(z) = z^m P(1/z); its constant term vanishes.
        let next: Vec<Rational> = (1..=m).map(|k| &c[m] * &c[k] - &c[0] * &c[m - k]).collect();
        let lead = next[m - 1].clone();
        c = next.into_iter().map(|x| x / &lead).collect();
    }
    true
}

/// Exact unit-circle test for a self-inversive polynomial.
///
/// The squarefree part `S` of `Q` is again self-inversive. `S` has all zeros
/// on the circle iff `S'` has all zeros in the closed disk, and since a zero
/// of `S'` on the circle would be a repeated zero of `S`, iff `S'` has all
/// zeros strictly inside, which the Schur–Cohn recursion decides exactly.
pub fn schur_cohn_unit_circle(q: &SelfInversivePolynomial) -> SchurCohn {
    let poly = q.to_poly();
    let sf = poly.squarefree_part();
    let repeated = sf.degree() != poly.degree();
    let inside = all_roots_strictly_inside(&sf.derivative());
    SchurCohn {
        verdict: if inside { CircleVerdict::AllOnCircle } else { CircleVerdict::NotAllOnCircle },
        repeated_roots: repeated,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericRoots {
    /// Each root listed with its multiplicity.
    pub roots: Vec<(Complex64, usize)>,
    /// `max ||w| - 1|` over roots (over cluster centroids for inexact input).
    pub max_deviation: f64,
    /// Every `w` has a partner near `1/conj(w)`.
    pub pairing_ok: bool,
    pub residual_ok: bool,
    pub converged: bool,
}

fn sort_roots(r: &mut [(Complex64, usize)]) {
    r.sort_by(|a, b| {
        a.0.arg()
            .partial_cmp(&b.0.arg())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.norm().partial_cmp(&b.0.norm()).unwrap_or(std::cmp::Ordering::Equal))
    });
}

fn relative_residual(c: &[f64], w: Complex64) -> f64 {
    let mut q = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for a in c.iter().rev() {
        q = q * w + a;
        scale = scale * w.norm() + a.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        q.norm() / scale
    }
}

fn pairing_ok(roots: &[(Complex64, usize)], tol: f64) -> bool {
    let slack = (10.0 * tol).max(1e-8);
    roots.iter().all(|(w, _)| {
        let mirror = 1.0 / w.conj();
        roots.iter().any(|(v, _)| (v - mirror).norm() <= slack * mirror.norm().max(1.0))
    })
}

/// Roots of `Q` with multiplicities from its exact squarefree decomposition.
pub fn numeric_roots(q: &SelfInversivePolynomial, tol: f64) -> Result<NumericRoots> {
    if q.degree() == 0 {
        return Err(Error::Degenerate("constant polynomial has no roots".into()));
    }
    let poly = q.to_poly();
    let mut roots = Vec::new();
    let mut converged = true;
    for (i, f) in poly.squarefree_decomposition().iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let (r, ok) = roots::roots_exact(f.coeffs(), POLISH_BITS);
        converged &= ok;
        roots.extend(r.into_iter().map(|w| (w, i + 1)));
    }
    sort_roots(&mut roots);
    let cf: Vec<f64> = q.coeffs().iter().map(to_f64).collect();
    let residual_ok = roots.iter().all(|(w, _)| relative_residual(&cf, *w) < tol);
    let max_deviation = roots.iter().map(|(w, _)| (w.norm() - 1.0).abs()).fold(0.0, f64::max);
    Ok(NumericRoots { pairing_ok: pairing_ok(&roots, tol), roots, max_deviation, residual_ok, converged })
}

/// Roots of a palindromic polynomial whose coefficients are only known as
/// enclosures. Near-coincident roots are grouped and each cluster is scored
/// by its centroid.
pub fn numeric_roots_inexact(coeffs: &[Real], tol: f64) -> Result<NumericRoots> {
    let m = coeffs.len().checked_sub(1).ok_or_else(|| Error::Degenerate("empty polynomial".into()))?;
    if m == 0 {
        return Err(Error::Degenerate("constant polynomial has no roots".into()));
    }
    let prec = coeffs.iter().map(Real::prec).max().unwrap_or(POLISH_BITS).max(64);
    let mids: Vec<Dyadic> = coeffs.iter().map(|c| c.mid()).collect();
    if mids[m].is_zero() {
        return Err(Error::Degenerate("leading coefficient encloses zero".into()));
    }
    let cf: Vec<f64> = mids.iter().map(Dyadic::to_f64).collect();
    let (start, ok1) = roots::aberth_f64(&cf);
    let (r, ok2) = roots::aberth_polish(&mids, &start, prec);
    let mut roots: Vec<(Complex64, usize)> = r.iter().map(|&w| (w, 1)).collect();
    sort_roots(&mut roots);
    let residual_ok = roots.iter().all(|(w, _)| relative_residual(&cf, *w) < tol);
    let max_deviation = cluster_centroids(&r, CLUSTER_RADIUS)
        .iter()
        .map(|w| (w.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(NumericRoots { pairing_ok: pairing_ok(&roots, tol), roots, max_deviation, residual_ok, converged: ok1 || ok2 })
}

/// Single-linkage clusters of points closer than `radius`; returns centroids.
fn cluster_centroids(points: &[Complex64], radius: f64) -> Vec<Complex64> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() < radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let r = find(&mut label, i);
        groups.entry(r).or_default().push(points[i]);
    }
    groups.values().map(|g| g.iter().sum::<Complex64>() / g.len() as f64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub ek: Verdict,
    pub sv: Vec<SvCheck>,
    pub schur_cohn: SchurCohn,
    pub numeric: Option<NumericRoots>,
    pub overall: Overall,
    pub notes: Vec<String>,
}

/// Runs every test on `d` and combines them.
pub fn classify(d: &LatticeDistribution, alphas: &[Rational], tol: f64) -> Result<CertReport> {
    let ek = enestrom_kakeya(d);
    let sv = alphas.iter().map(|a| sv_alpha_condition(d, a)).collect::<Result<Vec<_>>>()?;
    let q = lattice_to_polynomial(d);
    let schur_cohn = schur_cohn_unit_circle(&q);
    let mut notes = Vec::new();
    let numeric = if q.degree() == 0 {
        notes.push("point mass at 0: Q is constant and has no zeros".to_string());
        None
    } else {
        Some(numeric_roots(&q, tol)?)
    };
    if schur_cohn.verdict == CircleVerdict::AllOnCircle && schur_cohn.repeated_roots {
        notes.push("boundary case: repeated zeros on the unit circle".to_string());
    }
    let sufficient = ek == Verdict::Holds || sv.iter().any(|s| s.verdict == Verdict::Holds);
    let on_circle = schur_cohn.verdict == CircleVerdict::AllOnCircle;
    let deviation = numeric.as_ref().map_or(0.0, |n| n.max_deviation);
    let overall = if on_circle {
        Overall::Certified
    } else if sufficient {
        notes.push("a sufficient condition passed but the exact test found zeros off the circle".to_string());
        Overall::Inconclusive
    } else if deviation > 10.0 * tol {
        Overall::Refuted
    } else {
        notes.push("exact test finds zeros off the circle but numeric deviation is within tolerance".to_string());
        Overall::Inconclusive
    };
    Ok(CertReport { ek, sv, schur_cohn, numeric, overall, notes })
}

/// Palindromic rational polynomial from an enclosure, pairing `q_k` with `q_{m-k}`.
pub fn midpoint_self_inversive(coeffs: &[Real]) -> Result<SelfInversivePolynomial> {
    let m = coeffs.len().checked_sub(1).ok_or_else(|| Error::Degenerate("empty polynomial".into()))?;
    let mut out = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let (a, b) = (&coeffs[k], &coeffs[m - k]);
        let lo = std::cmp::max(a.lo(), b.lo()).clone();
        let hi = std::cmp::min(a.hi(), b.hi()).clone();
        if lo > hi {
            return Err(Error::Degenerate(format!("q_{k} and q_{} are certainly different", m - k)));
        }
        out.push(lo.add(&hi).mul_pow2(-1).round(bits_for_digits(40) + 64, Round::Nearest).to_rational());
    }
    SelfInversivePolynomial::new(out)
}

//! Finite ferromagnetic spin systems by exact enumeration.
//!
//! `dρ(x) ∝ exp(Σ h_j x_j + Σ_{j,k} J_jk x_j x_k) dμ_1(x_1) ... dμ_n(x_n)` with
//! finite symmetric site measures, the ghost-spin transform that absorbs the
//! field into the couplings, Lee–Yang polynomials of integer combinations and
//! moment comparison for nonnegative combinations.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_moments::{gaussian_even_moment, validate_even_pair};
use crate::rational::{format_rational, int, powi, ratio, Rational};
use crate::real::{bits_for_digits, decimal_tolerance, Dyadic, Real};
use crate::typel_cert::{midpoint_self_inversive, numeric_roots_inexact, NumericRoots, SelfInversivePolynomial};
use crate::verdict::{check_nonnegative, SignCheck};

pub const DEFAULT_STATE_CAP: u64 = 2_000_000;
pub const DEFAULT_DIGITS: u32 = 50;
/// Largest Lee–Yang polynomial degree accepted.
pub const DEGREE_CAP: u64 = 4096;
const BLOCK: usize = 4096;

/// Finite symmetric probability measure on the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteMeasure {
    /// `(value, weight)` sorted by value, weights positive and summing to one.
    atoms: Vec<(Rational, Rational)>,
}

impl SiteMeasure {
    /// Weights are normalized; they need not sum to one on input.
    pub fn new(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (x, w) in atoms {
            if w.is_negative() {
                return Err(Error::InvalidSystem(format!("negative weight at atom {}", format_rational(&x))));
            }
            if !w.is_zero() {
                *merged.entry(x).or_insert_with(Rational::zero) += w;
            }
        }
        let total: Rational = merged.values().sum();
        if total.is_zero() {
            return Err(Error::InvalidSystem("site measure has no mass".into()));
        }
        for (x, w) in &merged {
            if merged.get(&-x) != Some(w) {
                return Err(Error::InvalidSystem(format!("site measure is not symmetric at {}", format_rational(x))));
            }
        }
        Ok(SiteMeasure { atoms: merged.into_iter().map(|(x, w)| (x, w / &total)).collect() })
    }

    pub fn rademacher() -> Self {
        Self::new(vec![(int(-1), int(1)), (int(1), int(1))]).unwrap()
    }

    /// Atoms `{-1, 0, 1}` with `P(0) = p0`.
    pub fn three_point(p0: &Rational) -> Result<Self> {
        let side = (int(1) - p0) / int(2);
        Self::new(vec![(int(-1), side.clone()), (int(0), p0.clone()), (int(1), side)])
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    fn is_integer_supported(&self) -> bool {
        self.atoms.iter().all(|(x, _)| x.is_integer())
    }

    fn max_abs(&self) -> Rational {
        self.atoms.last().map(|(x, _)| x.clone()).unwrap_or_else(Rational::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinSystem {
    sites: Vec<SiteMeasure>,
    j: Vec<Vec<Rational>>,
    h: Vec<Rational>,
}

impl SpinSystem {
    pub fn new(sites: Vec<SiteMeasure>, j: Vec<Vec<Rational>>, h: Vec<Rational>) -> Result<Self> {
        let n = sites.len();
        if n == 0 {
            return Err(Error::InvalidSystem("no sites".into()));
        }
        if j.len() != n || j.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSystem(format!("J must be {n}×{n}")));
        }
        if h.len() != n {
            return Err(Error::InvalidSystem(format!("h must have length {n}")));
        }
        for (r, row) in j.iter().enumerate() {
            if let Some(c) = row.iter().position(Signed::is_negative) {
                return Err(Error::InvalidSystem(format!("J[{r}][{c}] is negative")));
            }
        }
        if let Some(k) = h.iter().position(Signed::is_negative) {
            return Err(Error::InvalidSystem(format!("h[{k}] is negative")));
        }
        Ok(SpinSystem { sites, j, h })
    }

    /// Independent sites.
    pub fn free(sites: Vec<SiteMeasure>) -> Self {
        let n = sites.len();
        Self::new(sites, vec![vec![Rational::zero(); n]; n], vec![Rational::zero(); n]).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[SiteMeasure] {
        &self.sites
    }

    pub fn j(&self) -> &[Vec<Rational>] {
        &self.j
    }

    pub fn h(&self) -> &[Rational] {
        &self.h
    }

    pub fn state_count(&self) -> u128 {
        self.sites.iter().map(|s| s.len() as u128).product()
    }

    fn energy(&self, x: &[&Rational]) -> Rational {
        let mut e = Rational::zero();
        for (j, xj) in x.iter().enumerate() {
            if !self.h[j].is_zero() {
                e += &self.h[j] * *xj;
            }
            for (k, xk) in x.iter().enumerate() {
                if !self.j[j][k].is_zero() {
                    e += &self.j[j][k] * *xj * *xk;
                }
            }
        }
        e
    }
}

/// `(J + J^T) / 2`; the law depends on `J` only through this.
pub fn symmetrize(j: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = j.len();
    (0..n).map(|r| (0..n).map(|c| (&j[r][c] + &j[c][r]) / int(2)).collect()).collect()
}

/// Every configuration with its unnormalized weight, in lexicographic order
/// (site 1 most significant, atoms ascending).
#[derive(Clone, Debug)]
pub struct WeightedStateTable {
    atoms: Vec<Vec<Rational>>,
    /// Atom indices per configuration.
    states: Vec<Vec<u16>>,
    weights: Vec<Real>,
    z: Real,
}

impl WeightedStateTable {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn z(&self) -> &Real {
        &self.z
    }

    pub fn weight(&self, i: usize) -> &Real {
        &self.weights[i]
    }

    pub fn config(&self, i: usize) -> Vec<Rational> {
        self.states[i].iter().enumerate().map(|(s, &k)| self.atoms[s][k as usize].clone()).collect()
    }

    pub fn probability(&self, i: usize) -> Real {
        &self.weights[i] / &self.z
    }

    /// CSV rows `state,x_1,...,x_n,weight` with weights to `digits` digits.
    pub fn to_csv(&self, digits: usize) -> String {
        let n = self.atoms.len();
        let mut out = String::from("state");
        for s in 1..=n {
            out.push_str(&format!(",x_{s}"));
        }
        out.push_str(",weight\n");
        for i in 0..self.len() {
            out.push_str(&i.to_string());
            for x in self.config(i) {
                out.push(',');
                out.push_str(&format_rational(&x));
            }
            out.push_str(&format!(",{}\n", self.weights[i].to_decimal(digits)));
        }
        out
    }

    /// Law of `Σ a_j x_j` as `value -> probability`.
    pub fn law_of_combination(&self, a: &[Rational]) -> BTreeMap<Rational, Real> {
        let mut acc: BTreeMap<Rational, Real> = BTreeMap::new();
        for (state, w) in self.states.iter().zip(&self.weights) {
            let s: Rational = state
                .iter()
                .enumerate()
                .filter(|(j, _)| !a[*j].is_zero())
                .map(|(j, &k)| &a[j] * &self.atoms[j][k as usize])
                .sum();
            match acc.get_mut(&s) {
                Some(v) => *v = &*v + w,
                None => {
                    acc.insert(s, w.clone());
                }
            }
        }
        for v in acc.values_mut() {
            *v = &*v / &self.z;
        }
        acc
    }
}

fn decode(mut i: usize, radix: &[usize]) -> Vec<u16> {
    let mut out = vec![0u16; radix.len()];
    for s in (0..radix.len()).rev() {
        out[s] = (i % radix[s]) as u16;
        i /= radix[s];
    }
    out
}

/// Enumerates the state space at `digits` significant digits.
pub fn enumerate(sys: &SpinSystem, digits: u32, cap: u64) -> Result<WeightedStateTable> {
    let count = sys.state_count();
    if count > cap as u128 {
        return Err(Error::CapExceeded { states: count, cap });
    }
    let prec = bits_for_digits(digits);
    let count = count as usize;
    let radix: Vec<usize> = sys.sites.iter().map(SiteMeasure::len).collect();
    let atoms: Vec<Vec<Rational>> = sys.sites.iter().map(|s| s.atoms.iter().map(|(x, _)| x.clone()).collect()).collect();
    let blocks: Vec<(Vec<Vec<u16>>, Vec<Real>, Real)> = (0..count.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut states = Vec::with_capacity(BLOCK);
            let mut weights = Vec::with_capacity(BLOCK);
            let mut sum = Real::zero(prec);
            for i in b * BLOCK..((b + 1) * BLOCK).min(count) {
                let idx = decode(i, &radix);
                let x: Vec<&Rational> = idx.iter().enumerate().map(|(s, &k)| &atoms[s][k as usize]).collect();
                let mu: Rational = idx.iter().enumerate().map(|(s, &k)| &sys.sites[s].atoms[k as usize].1).product();
                let w = Real::from_rational(&sys.energy(&x), prec).exp().mul_rational(&mu);
                sum = &sum + &w;
                states.push(idx);
                weights.push(w);
            }
            (states, weights, sum)
        })
        .collect();
    let mut states = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    let mut z = Real::zero(prec);
    for (s, w, sum) in blocks {
        states.extend(s);
        weights.extend(w);
        z = &z + &sum;
    }
    let rel = z.width().to_f64() / z.lo().to_f64();
    if !(rel < 10f64.powi(-(digits as i32) / 2)) {
        return Err(Error::PrecisionExhausted(format!("partition function known only to relative width {rel:e}")));
    }
    Ok(WeightedStateTable { atoms, states, weights, z })
}

/// Moments `m_k = E(Σ a_j X_j)^k`, `k = 0..=2N`, as enclosures.
#[derive(Clone, Debug)]
pub struct RealMoments {
    pub moments: Vec<Real>,
}

impl RealMoments {
    pub fn even(&self, n: usize) -> &Real {
        &self.moments[2 * n]
    }

    /// `r_n = m_{2n} / (2n-1)!!`.
    pub fn r(&self, n: usize) -> Real {
        let g = Rational::from_integer(gaussian_even_moment(n as u64));
        self.even(n).mul_rational(&g.recip())
    }

    pub fn max_even_index(&self) -> usize {
        (self.moments.len() - 1) / 2
    }
}

fn check_weights(sys: &SpinSystem, a: &[Rational]) -> Result<()> {
    if a.len() != sys.n() {
        return Err(Error::InvalidSystem(format!("need {} coefficients, got {}", sys.n(), a.len())));
    }
    if a.iter().any(Signed::is_negative) {
        return Err(Error::InvalidSystem("coefficients must be nonnegative".into()));
    }
    Ok(())
}

pub fn linear_comb_moments(sys: &SpinSystem, a: &[Rational], n_max: usize, digits: u32) -> Result<RealMoments> {
    check_weights(sys, a)?;
    let table = enumerate(sys, digits, DEFAULT_STATE_CAP)?;
    Ok(moments_from_table(&table, a, n_max))
}

pub fn moments_from_table(table: &WeightedStateTable, a: &[Rational], n_max: usize) -> RealMoments {
    let law = table.law_of_combination(a);
    let prec = table.z.prec();
    let moments = (0..=2 * n_max)
        .map(|k| {
            let mut acc = Real::zero(prec);
            for (s, p) in &law {
                if k == 0 || !s.is_zero() {
                    acc = &acc + &p.mul_rational(&powi(s, k as u32));
                }
            }
            acc
        })
        .collect();
    RealMoments { moments }
}

/// Adds a Rademacher site 0 with `J'_{0k} = J'_{k0} = h_k / 2` and sets `h' = 0`.
pub fn ghost_spin(sys: &SpinSystem) -> SpinSystem {
    let n = sys.n();
    let mut sites = vec![SiteMeasure::rademacher()];
    sites.extend(sys.sites.iter().cloned());
    let mut j = vec![vec![Rational::zero(); n + 1]; n + 1];
    for k in 0..n {
        j[0][k + 1] = &sys.h[k] / int(2);
        j[k + 1][0] = &sys.h[k] / int(2);
        for l in 0..n {
            j[k + 1][l + 1] = sys.j[k][l].clone();
        }
    }
    SpinSystem { sites, j, h: vec![Rational::zero(); n + 1] }
}

#[derive(Clone, Debug)]
pub struct GhostCheck {
    /// Upper bound on `max |P_a(y) - P_b(y)|` over configurations.
    pub max_discrepancy: Dyadic,
    pub threshold: Rational,
    pub passes: bool,
}

/// Compares the law of `(ε, εX)` with the ghost system's law, configuration by configuration.
pub fn ghost_equivalence_check(sys: &SpinSystem, digits: u32) -> Result<GhostCheck> {
    let table = enumerate(sys, digits, DEFAULT_STATE_CAP)?;
    let ghost = enumerate(&ghost_spin(sys), digits, DEFAULT_STATE_CAP)?;
    let flip: Vec<usize> = sys.sites.iter().map(SiteMeasure::len).collect();
    let mut direct: BTreeMap<Vec<u16>, Real> = BTreeMap::new();
    for i in 0..table.len() {
        let p = table.probability(i).mul_pow2(-1);
        let state = &table.states[i];
        // ε = -1 is atom 0 of the Rademacher site, ε = +1 atom 1; εx flips the atom index.
        let mut minus = vec![0u16];
        minus.extend(state.iter().enumerate().map(|(s, &k)| (flip[s] - 1) as u16 - k));
        let mut plus = vec![1u16];
        plus.extend(state.iter().copied());
        direct.insert(minus, p.clone());
        direct.insert(plus, p);
    }
    let mut worst = Dyadic::zero();
    for i in 0..ghost.len() {
        let q = ghost.probability(i);
        let d = match direct.get(&ghost.states[i]) {
            Some(p) => (&q - p).mag(),
            None => q.mag(),
        };
        if d > worst {
            worst = d;
        }
    }
    let threshold = decimal_tolerance(digits) * int(10);
    let passes = worst.to_rational() < threshold;
    Ok(GhostCheck { max_discrepancy: worst, threshold, passes })
}

/// `E w^{S + D}` for `S = Σ a_j Y_j` over the ghost system, `D = max S`.
#[derive(Clone, Debug)]
pub struct LeeYangPolynomial {
    /// Coefficient of `w^k`, `k = 0..=2D`.
    pub coeffs: Vec<Real>,
    pub shift: u64,
}

impl LeeYangPolynomial {
    /// The exactly palindromic rational polynomial through the enclosure midpoints.
    pub fn midpoint(&self) -> Result<SelfInversivePolynomial> {
        midpoint_self_inversive(&self.coeffs)
    }

    pub fn roots(&self, tol: f64) -> Result<NumericRoots> {
        numeric_roots_inexact(&self.coeffs, tol)
    }
}

/// `a` has one entry per original site (the ghost coefficient is then 0) or
/// `n + 1` entries with `a[0]` the ghost coefficient.
pub fn lee_yang_polynomial(sys: &SpinSystem, a: &[u64], digits: u32) -> Result<LeeYangPolynomial> {
    let n = sys.n();
    let full: Vec<u64> = if a.len() == n {
        std::iter::once(0).chain(a.iter().copied()).collect()
    } else if a.len() == n + 1 {
        a.to_vec()
    } else {
        return Err(Error::InvalidSystem(format!("need {n} or {} coefficients, got {}", n + 1, a.len())));
    };
    if !sys.sites.iter().all(SiteMeasure::is_integer_supported) {
        return Err(Error::InvalidSystem("site supports must be integers".into()));
    }
    let ghost = ghost_spin(sys);
    let d: u64 = ghost
        .sites
        .iter()
        .zip(&full)
        .map(|(s, &k)| k * s.max_abs().to_integer().to_u64().unwrap_or(u64::MAX / 4))
        .sum();
    if 2 * d > DEGREE_CAP {
        return Err(Error::OutOfRange(format!("degree {} exceeds cap {DEGREE_CAP}", 2 * d)));
    }
    let table = enumerate(&ghost, digits, DEFAULT_STATE_CAP)?;
    let weights: Vec<Rational> = full.iter().map(|&k| int(k as i64)).collect();
    let law = table.law_of_combination(&weights);
    let prec = table.z.prec();
    let mut coeffs = vec![Real::zero(prec); 2 * d as usize + 1];
    for (s, p) in law {
        let idx = (s.to_integer() + d as i64).to_usize().expect("within degree");
        coeffs[idx] = p;
    }
    let poly = LeeYangPolynomial { coeffs, shift: d };
    poly.midpoint()?;
    Ok(poly)
}

#[derive(Clone, Debug)]
pub struct FerroComparison {
    pub p: u32,
    pub q: u32,
    /// `r_{p/2}^{q/2} - r_{q/2}^{p/2}`.
    pub slack: Real,
    pub check: SignCheck,
}

pub fn ferro_moment_comparison(sys: &SpinSystem, a: &[Rational], p: u32, q: u32, digits: u32) -> Result<FerroComparison> {
    validate_even_pair(p, q)?;
    let m = linear_comb_moments(sys, a, (q / 2) as usize, digits)?;
    Ok(compare_from_moments(&m, p, q, digits))
}

pub fn compare_from_moments(m: &RealMoments, p: u32, q: u32, digits: u32) -> FerroComparison {
    let rp = m.r((p / 2) as usize).powi(q / 2);
    let rq = m.r((q / 2) as usize).powi(p / 2);
    let slack = &rp - &rq;
    // Equality cases are resolved relative to the size of the compared terms.
    let scale = rp.mag().to_rational().max(int(1));
    let check = check_nonnegative(&slack, &(decimal_tolerance(digits) * scale));
    FerroComparison { p, q, slack, check }
}

/// Random ferromagnetic system with `n` sites, each Rademacher or `{-1, 0, 1}`
/// with `P(0) <= 1/2`, positive couplings above the diagonal and `h >= 0`.
pub fn random_system<R: Rng>(rng: &mut R, n: usize) -> SpinSystem {
    let sites = (0..n)
        .map(|_| match rng.random_range(0..=4) {
            0 => SiteMeasure::rademacher(),
            k => SiteMeasure::three_point(&ratio(k, 8)).expect("valid"),
        })
        .collect();
    let mut j = vec![vec![Rational::zero(); n]; n];
    for r in 0..n {
        for c in r + 1..n {
            j[r][c] = ratio(rng.random_range(1..=8), 8);
        }
    }
    let h = (0..n).map(|_| ratio(rng.random_range(0..=4), 4)).collect();
    SpinSystem::new(sites, j, h).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_moments::{even_moments_lattice, moments_of_independent_sum, LatticeDistribution, MomentSequence};
    use crate::real::Real;

    fn ising2(t: Rational, h: [Rational; 2]) -> SpinSystem {
        let half = &t / int(2);
        SpinSystem::new(
            vec![SiteMeasure::rademacher(), SiteMeasure::rademacher()],
            vec![vec![int(0), half.clone()], vec![half, int(0)]],
            h.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn single_rademacher_site() {
        let t = enumerate(&SpinSystem::free(vec![SiteMeasure::rademacher()]), 50, 10).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.z().contains_rational(&int(1)));
        assert!(t.probability(0).contains_rational(&ratio(1, 2)));
    }

    #[test]
    fn two_spin_partition_function() {
        // Σ_{j,k} J_jk x_j x_k = t x_1 x_2: Z = (e^t + e^{-t}) / 2.
        let t = ratio(3, 5);
        let table = enumerate(&ising2(t.clone(), [int(0), int(0)]), 50, 10).unwrap();
        let prec = table.z().prec();
        let et = Real::from_rational(&t, prec).exp();
        let expected = (&et + &et.recip()).mul_pow2(-1);
        assert!((table.z() - &expected).mag().to_f64() < 1e-45);
        // E X_1 X_2 = tanh t
        let m = moments_from_table(&table, &[int(1), int(1)], 1);
        let tanh = &(&et - &et.recip()) / &(&et + &et.recip());
        let want = (&tanh.mul_pow2(1)) + &Real::from_int(2, prec);
        assert!((m.even(1) - &want).mag().to_f64() < 1e-45);
    }

    #[test]
    fn scaling_measures_leaves_law_unchanged() {
        let s = SiteMeasure::new(vec![(int(-1), int(3)), (int(0), int(2)), (int(1), int(3))]).unwrap();
        assert_eq!(s, SiteMeasure::three_point(&ratio(1, 4)).unwrap());
        assert!(SiteMeasure::new(vec![(int(-1), int(1)), (int(1), int(2))]).is_err());
    }

    #[test]
    fn free_rademachers_match_exact_convolution() {
        let n = 4;
        let sys = SpinSystem::free(vec![SiteMeasure::rademacher(); n]);
        let m = linear_comb_moments(&sys, &vec![int(1); n], 5, 50).unwrap();
        let rad = even_moments_lattice(&LatticeDistribution::rademacher(), 5);
        let mut acc = MomentSequence::delta(5);
        for _ in 0..n {
            acc = moments_of_independent_sum(&acc, &rad);
        }
        for k in 0..=5 {
            assert!((m.even(k) - &Real::from_rational(&acc.even_moments()[k], 200)).mag().to_f64() < 1e-40);
        }
        // Odd moments vanish by symmetry.
        assert!(m.moments[3].contains_zero());
    }

    #[test]
    fn ghost_spin_structure() {
        let sys = SpinSystem::new(vec![SiteMeasure::rademacher()], vec![vec![int(0)]], vec![int(1)]).unwrap();
        let g = ghost_spin(&sys);
        assert_eq!(g.j()[0][1], ratio(1, 2));
        assert_eq!(g.j()[1][0], ratio(1, 2));
        assert!(g.h().iter().all(Zero::is_zero));
        let free = ghost_spin(&SpinSystem::free(vec![SiteMeasure::rademacher(); 2]));
        assert!(free.j()[0].iter().all(Zero::is_zero));
    }

    #[test]
    fn ghost_equivalence_small_systems() {
        let sys = ising2(ratio(2, 3), [ratio(1, 2), ratio(5, 4)]);
        assert!(ghost_equivalence_check(&sys, 50).unwrap().passes);
        let three = SiteMeasure::three_point(&ratio(1, 3)).unwrap();
        let sys = SpinSystem::new(
            vec![three.clone(), three.clone(), three],
            vec![vec![int(0), ratio(1, 3), int(0)], vec![int(0), ratio(1, 5), ratio(1, 2)], vec![ratio(1, 7), int(0), int(0)]],
            vec![ratio(1, 3), int(0), int(2)],
        )
        .unwrap();
        let g = ghost_equivalence_check(&sys, 50).unwrap();
        assert!(g.passes, "{:?}", g.max_discrepancy.to_f64());
    }

    #[test]
    fn lee_yang_examples() {
        let ly = lee_yang_polynomial(&SpinSystem::free(vec![SiteMeasure::rademacher()]), &[1], 50).unwrap();
        let mid = ly.midpoint().unwrap();
        assert_eq!(mid.coeffs(), &[ratio(1, 2), int(0), ratio(1, 2)]);
        let ly = lee_yang_polynomial(&ising2(int(2), [int(1), int(0)]), &[1, 1], 50).unwrap();
        assert!(ly.roots(1e-9).unwrap().max_deviation < 1e-9);
        let big_h = SpinSystem::new(vec![SiteMeasure::rademacher()], vec![vec![int(0)]], vec![int(40)]).unwrap();
        let ly = lee_yang_polynomial(&big_h, &[1, 1], 50).unwrap();
        assert!(ly.roots(1e-9).unwrap().max_deviation < 1e-9);
    }

    #[test]
    fn moment_comparison_examples() {
        let sys = SpinSystem::free(vec![SiteMeasure::rademacher(); 3]);
        let c = ferro_moment_comparison(&sys, &[int(1), int(1), int(1)], 2, 4, 50).unwrap();
        assert_eq!(c.check.verdict, crate::verdict::Verdict::Holds);
        let zero = ferro_moment_comparison(&sys, &[int(0), int(0), int(0)], 2, 4, 50).unwrap();
        assert_eq!(zero.check.verdict, crate::verdict::Verdict::Holds);
        assert!(zero.slack.contains_zero());
        assert!(enumerate(&SpinSystem::free(vec![SiteMeasure::rademacher(); 30]), 50, DEFAULT_STATE_CAP).is_err());
    }
}

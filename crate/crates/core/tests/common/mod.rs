//! Random generators shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use typel_core::exact_moments::{GaussPolyLaw, LatticeDistribution};
use typel_core::poly::Poly;
use typel_core::rational::{int, ratio, Rational};
use typel_core::seq_tools::NonnegSequence;
use typel_core::typel_cert::SelfInversivePolynomial;

pub fn rat<R: Rng>(rng: &mut R, num_max: i64, den_max: i64) -> Rational {
    ratio(rng.random_range(0..=num_max), rng.random_range(1..=den_max))
}

pub fn pos_rat<R: Rng>(rng: &mut R, num_max: i64, den_max: i64) -> Rational {
    ratio(rng.random_range(1..=num_max), rng.random_range(1..=den_max))
}

/// Lattice law with `p_0/2 <= p_1 <= ... <= p_n`, `1 <= n <= max_n`.
pub fn ek_lattice<R: Rng>(rng: &mut R, max_n: usize) -> LatticeDistribution {
    let n = rng.random_range(1..=max_n);
    let w0: i64 = rng.random_range(0..=20);
    let mut w = vec![w0];
    let mut prev = (w0 + 1) / 2;
    for _ in 0..n {
        prev += rng.random_range(0..=5);
        w.push(prev.max(1));
        prev = prev.max(1);
    }
    let total: i64 = w[0] + 2 * w[1..].iter().sum::<i64>();
    LatticeDistribution::new(w.iter().map(|&x| ratio(x, total)).collect()).unwrap()
}

/// `e^{a z^2/2} ∏ (1 + b_j z^2)` with up to `max_m` factors; `Σ b_j <= a` when `density`.
pub fn gausspoly_law<R: Rng>(rng: &mut R, max_m: usize, density: bool) -> GaussPolyLaw {
    let m = rng.random_range(0..=max_m);
    let b: Vec<Rational> = (0..m).map(|_| pos_rat(rng, 8, 8)).collect();
    let s: Rational = b.iter().sum();
    let a = if density { &s + rat(rng, 4, 4) } else { pos_rat(rng, 12, 4) };
    let a = if a.is_zero() { pos_rat(rng, 4, 4) } else { a };
    GaussPolyLaw::new(a, b).unwrap()
}

/// Positive head with nonincreasing ratios, so log-concave with no internal zeros.
pub fn logconcave_seq<R: Rng>(rng: &mut R, max_len: usize) -> NonnegSequence {
    let len = rng.random_range(1..=max_len);
    let mut ratios: Vec<Rational> = (1..len).map(|_| pos_rat(rng, 12, 6)).collect();
    ratios.sort_by(|a, b| b.cmp(a));
    let mut v = vec![pos_rat(rng, 10, 5)];
    for r in ratios {
        let next = v.last().unwrap() * r;
        v.push(next);
    }
    NonnegSequence::new(v).unwrap()
}

pub fn alphas<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Rational> {
    let len = rng.random_range(1..=max_len);
    (0..len)
        .map(|_| if rng.random_range(0..5) == 0 { int(0) } else { pos_rat(rng, 20, 10) })
        .collect()
}

/// Random self-inversive polynomial of degree at most `max_deg`, with the
/// expected answer where the construction fixes it.
pub fn self_inversive<R: Rng>(rng: &mut R, max_deg: usize) -> (SelfInversivePolynomial, Option<bool>) {
    match rng.random_range(0..3) {
        // Quadratic factors w^2 - t w + 1 with |t| < 2 and optional (w + 1).
        0 => {
            let mut p = Poly::constant(int(1));
            let k = rng.random_range(1..=max_deg / 2);
            for _ in 0..k {
                let t = ratio(rng.random_range(-19..=19), 10);
                p = p.mul(&Poly::new(vec![int(1), -t, int(1)]));
            }
            if p.degree().unwrap() < max_deg && rng.random_bool(0.3) {
                p = p.mul(&Poly::new(vec![int(1), int(1)]));
            }
            (SelfInversivePolynomial::new(p.coeffs().to_vec()).unwrap(), Some(true))
        }
        // A circle-symmetric pair of zeros off the circle times on-circle factors.
        1 => {
            let rho2 = loop {
                let r = ratio(rng.random_range(1..=16), 4);
                if r != int(1) {
                    break r;
                }
            };
            let s = ratio(rng.random_range(-3..=3), 4);
            let s = if &s * &s >= rho2 { int(0) } else { s };
            let inner = Poly::new(vec![rho2.clone(), int(-2) * &s, int(1)]);
            let outer = Poly::new(vec![int(1), int(-2) * &s, rho2]);
            let mut p = inner.mul(&outer);
            let extra = rng.random_range(0..=(max_deg - 4) / 2);
            for _ in 0..extra {
                let t = ratio(rng.random_range(-19..=19), 10);
                p = p.mul(&Poly::new(vec![int(1), -t, int(1)]));
            }
            (SelfInversivePolynomial::new(p.coeffs().to_vec()).unwrap(), Some(false))
        }
        // Random palindromic coefficients; no expectation.
        _ => {
            let deg = rng.random_range(1..=max_deg);
            let mut c = vec![int(0); deg + 1];
            for k in 0..=deg / 2 {
                let v = int(rng.random_range(0..=9));
                c[k] = v.clone();
                c[deg - k] = v;
            }
            if c[0] == int(0) {
                c[0] = int(1);
                c[deg] = int(1);
            }
            (SelfInversivePolynomial::new(c).unwrap(), None)
        }
    }
}

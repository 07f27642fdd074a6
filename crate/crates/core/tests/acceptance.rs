//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero on any failure.

mod common;

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use common::*;
use typel_core::exact_moments::{
    check_moment_comparison, check_r_logconcave, even_moments_gausspoly, even_moments_lattice, even_pairs, GaussPolyLaw,
    LatticeDistribution, MomentSequence,
};
use typel_core::ferro::{compare_from_moments, ghost_equivalence_check, lee_yang_polynomial, linear_comb_moments, random_system};
use typel_core::gausspoly::{abs_moment_closed_zb, abs_moment_quadrature, density_from_law, g_lambda_analysis, moment_bounds_check, zb_monotone_in_b};
use typel_core::rational::{int, ratio, Rational};
use typel_core::real::{decimal_tolerance, Real};
use typel_core::seq_tools::{
    binomial_convolution, egf_logconcavity_grid, elementary_symmetric, factorial_weighted, gurvits_scan, logconcave_check, newton_check,
    sk_sequence, EgfMode,
};
use typel_core::typel_cert::{classify, numeric_roots, schur_cohn_unit_circle, CircleVerdict, Overall};
use typel_core::Verdict;

type Outcome = (bool, String);

fn rng(tag: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(0x7e11_0000 + tag)
}

/// Certified lattice laws (degree <= 20) and gausspoly laws shared by the first two criteria.
fn corpus() -> (Vec<LatticeDistribution>, Vec<GaussPolyLaw>) {
    let mut r = rng(1);
    let mut lattices = Vec::new();
    while lattices.len() < 120 {
        let d = ek_lattice(&mut r, 10);
        if classify(&d, &[], 1e-9).unwrap().overall == Overall::Certified {
            lattices.push(d);
        }
    }
    lattices.push(LatticeDistribution::rademacher());
    let mut laws: Vec<GaussPolyLaw> = (0..120).map(|_| gausspoly_law(&mut r, 5, false)).collect();
    laws.push(GaussPolyLaw::z_b(int(1)).unwrap());
    (lattices, laws)
}

fn criterion_1(seqs: &[MomentSequence]) -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut checks = 0;
    for s in seqs {
        for (p, q) in even_pairs(20) {
            checks += 1;
            if !check_moment_comparison(s, p, q).unwrap().holds() {
                failures += 1;
            }
        }
    }
    let t = start.elapsed();
    (failures == 0 && t < Duration::from_secs(60), format!("{} laws, {checks} pairs, {failures} failures, {:.2?}", seqs.len(), t))
}

fn criterion_2(seqs: &[MomentSequence]) -> Outcome {
    let failures = seqs.iter().filter(|s| !check_r_logconcave(s).result.holds()).count();
    (failures == 0, format!("{} laws up to N=25, {failures} failures", seqs.len()))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut failures = 0;
    for _ in 0..1000 {
        let a = alphas(&mut r, 15);
        let newton = newton_check(&a, a.len()).unwrap().holds;
        let fw = logconcave_check(&factorial_weighted(&elementary_symmetric(&a, a.len()))).holds();
        if !(newton && fw) {
            failures += 1;
        }
    }
    (failures == 0, format!("1000 alpha vectors, {failures} failures"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut failures = 0;
    for _ in 0..1000 {
        let (x, y) = (logconcave_seq(&mut r, 10), logconcave_seq(&mut r, 10));
        if !logconcave_check(&binomial_convolution(&x, &y)).holds() {
            failures += 1;
        }
    }
    (failures == 0, format!("1000 pairs, {failures} failures"))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut coeff_fail = 0;
    let mut coeffs = 0;
    for _ in 0..1000 {
        for (_, v) in gurvits_scan(&logconcave_seq(&mut r, 12)) {
            coeffs += 1;
            if v.is_negative() {
                coeff_fail += 1;
            }
        }
    }
    let mut sk_fail = 0;
    for n in 2..=200 {
        let s = sk_sequence(n).unwrap();
        let signs: Vec<i8> = s.iter().map(|x| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 }).collect();
        if !s.iter().sum::<Rational>().is_zero() || signs.windows(2).any(|w| w[0] > w[1]) {
            sk_fail += 1;
        }
    }
    let grid: Vec<Rational> = (-4..=4).map(|k| int(2).pow(k)).collect();
    let mut egf_fail = 0;
    for _ in 0..100 {
        if egf_logconcavity_grid(&logconcave_seq(&mut r, 12), &grid, EgfMode::Exact).unwrap().verdict != Verdict::Holds {
            egf_fail += 1;
        }
    }
    (
        coeff_fail == 0 && sk_fail == 0 && egf_fail == 0,
        format!("{coeffs} coefficients ({coeff_fail} negative), s_k n<=200 ({sk_fail} bad), 100 egf grids ({egf_fail} not certified)"),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let (mut disagree, mut on, mut off) = (0, 0, 0);
    for _ in 0..1000 {
        let (q, expected) = self_inversive(&mut r, 20);
        let sc = schur_cohn_unit_circle(&q).verdict == CircleVerdict::AllOnCircle;
        let dev = numeric_roots(&q, 1e-9).unwrap().max_deviation;
        let agree = if sc { dev < 1e-9 } else { dev > 1e-6 };
        if !agree || expected.is_some_and(|e| e != sc) {
            disagree += 1;
        }
        if sc {
            on += 1;
        } else {
            off += 1;
        }
    }
    let mut family_ok = true;
    for (b, want) in [((1, 8), Overall::Refuted), ((1, 4), Overall::Refuted), ((3, 8), Overall::Refuted), ((5, 8), Overall::Certified), ((3, 4), Overall::Certified), ((1, 1), Overall::Certified)] {
        let rep = classify(&LatticeDistribution::three_atom(&ratio(b.0, b.1)).unwrap(), &[], 1e-9).unwrap();
        family_ok &= rep.overall == want;
    }
    let half = classify(&LatticeDistribution::three_atom(&ratio(1, 2)).unwrap(), &[], 1e-9).unwrap();
    let boundary = half.schur_cohn.verdict == CircleVerdict::AllOnCircle && half.notes.iter().any(|n| n.contains("boundary"));
    (
        disagree == 0 && family_ok && boundary,
        format!("1000 polynomials ({on} on, {off} off, {disagree} disagreements), three-atom family {}, beta=1/2 boundary {}", ok(family_ok), ok(boundary)),
    )
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "WRONG"
    }
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let ps = [int(3), ratio(7, 2), int(4), int(5), ratio(15, 2)];
    let mut failures = 0;
    for _ in 0..50 {
        let law = gausspoly_law(&mut r, 5, true);
        for p in &ps {
            if moment_bounds_check(&law, p, 20, false).unwrap().verdict() != Verdict::Holds {
                failures += 1;
            }
        }
    }
    let tiny = decimal_tolerance(18);
    let mut tight = true;
    for p in &ps {
        let g = moment_bounds_check(&GaussPolyLaw::gaussian(), p, 20, false).unwrap();
        let z1 = moment_bounds_check(&GaussPolyLaw::z_b(int(1)).unwrap(), p, 20, false).unwrap();
        tight &= g.verdict() == Verdict::Holds && g.upper_slack.mag().to_rational() < tiny;
        tight &= z1.verdict() == Verdict::Holds && z1.lower_slack.mag().to_rational() < tiny;
    }
    (failures == 0 && tight, format!("50 laws x 5 exponents, {failures} failures, extremes tight {}", ok(tight)))
}

fn criterion_8() -> Outcome {
    let tol = decimal_tolerance(20);
    let bs: Vec<Rational> = (0..=4).map(|k| ratio(k, 4)).collect();
    let mut worst = 0.0f64;
    let mut agree = true;
    for p in [int(2), int(3), int(4), int(5), ratio(15, 2)] {
        for b in &bs {
            let d = density_from_law(&GaussPolyLaw::z_b(b.clone()).unwrap()).unwrap();
            let diff = (&abs_moment_closed_zb(&p, b, 25, false).unwrap() - &abs_moment_quadrature(&d, &p, 25).unwrap()).mag();
            worst = worst.max(diff.to_f64());
            agree &= diff.to_rational() <= tol;
        }
    }
    let mono = [int(3), int(4), int(5), ratio(15, 2)].iter().all(|p| zb_monotone_in_b(p, &bs, 25, false).unwrap().strictly_decreasing);
    let m = even_moments_gausspoly(&GaussPolyLaw::z_b(int(1)).unwrap(), 2);
    let exact = m.even_moments()[1] == int(3) && m.even_moments()[2] == int(15);
    (agree && mono && exact, format!("closed form vs quadrature max diff {worst:.1e}, decreasing {}, E Z1^4=15 and Var Z1=3 {}", ok(mono), ok(exact)))
}

fn criterion_9() -> Outcome {
    let prec = 200;
    let s6 = Real::from_int(6, prec).sqrt();
    let targets = [&Real::from_int(3, prec) - &s6, &Real::from_int(3, prec) + &s6];
    let tol = 1e-10;
    let mut good = true;
    for (l1, l2) in [(ratio(1, 4), ratio(1, 3)), (ratio(1, 10), ratio(2, 5))] {
        let g = g_lambda_analysis(&l1, &l2, 12).unwrap();
        good &= !g.identically_zero && g.brackets_verified && g.pattern == "+-+" && g.zeros.len() == 2;
        good &= g.bracket_width <= ratio(1, 10_000_000_000);
        for (z, t) in g.zeros.iter().zip(&targets) {
            good &= (&z.sqr() - t).mag().to_f64() < tol;
        }
    }
    (good, "zeros at x^2 = 3 -/+ sqrt 6 within 1e-10, pattern +-+".to_string())
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut r = rng(10);
    let bound = decimal_tolerance(40);
    let (mut ghost_bad, mut ly_bad, mut cmp_bad) = (0, 0, 0);
    let mut worst_dev = 0.0f64;
    for _ in 0..50 {
        let n = r.random_range(1..=6);
        let sys = random_system(&mut r, n);
        let w: Vec<u64> = (0..n).map(|_| r.random_range(1..=2)).collect();
        let g = ghost_equivalence_check(&sys, 50).unwrap();
        if g.max_discrepancy.to_rational() >= bound {
            ghost_bad += 1;
        }
        let ly = lee_yang_polynomial(&sys, &w, 50).unwrap();
        let dev = ly.roots(1e-9).unwrap().max_deviation;
        worst_dev = worst_dev.max(dev);
        if dev >= 1e-9 {
            ly_bad += 1;
        }
        let a: Vec<Rational> = w.iter().map(|&x| int(x as i64)).collect();
        let m = linear_comb_moments(&sys, &a, 5, 50).unwrap();
        for (p, q) in [(2, 4), (2, 8), (4, 10)] {
            if compare_from_moments(&m, p, q, 50).check.verdict != Verdict::Holds {
                cmp_bad += 1;
            }
        }
    }
    let t = start.elapsed();
    (
        ghost_bad + ly_bad + cmp_bad == 0 && t < Duration::from_secs(300),
        format!("50 systems: ghost {ghost_bad} bad, Lee-Yang {ly_bad} bad (max dev {worst_dev:.1e}), comparisons {cmp_bad} bad, {t:.2?}"),
    )
}

fn main() {
    let (lattices, laws) = corpus();
    let seqs_10: Vec<MomentSequence> = lattices
        .iter()
        .map(|d| even_moments_lattice(d, 10))
        .chain(laws.iter().map(|l| even_moments_gausspoly(l, 10)))
        .collect();
    let seqs_25: Vec<MomentSequence> = lattices
        .iter()
        .map(|d| even_moments_lattice(d, 25))
        .chain(laws.iter().map(|l| even_moments_gausspoly(l, 25)))
        .collect();
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome>)> = vec![
        (1, Box::new(|| criterion_1(&seqs_10))),
        (2, Box::new(|| criterion_2(&seqs_25))),
        (3, Box::new(criterion_3)),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, f) in criteria {
        let (pass, detail) = f();
        println!("criterion {i:>2}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

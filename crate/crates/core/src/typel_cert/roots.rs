//! Simultaneous root finding: an `f64` Aberth–Ehrlich pass followed by the same
//! iteration in binary multiprecision.

use num_complex::Complex64;

use crate::rational::{from_f64, to_f64, Rational};
use crate::real::{Dyadic, Round};

const F64_ITER_CAP: usize = 500;
const MP_ITER_CAP: usize = 80;

/// Roots of `sum c_k z^k` (`c` low to high, nonzero leading term) in `f64`.
pub(crate) fn aberth_f64(c: &[f64]) -> (Vec<Complex64>, bool) {
    let n = c.len() - 1;
    if n == 0 {
        return (Vec::new(), true);
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    // Start on a circle at the geometric mean root modulus, rotated off the axes.
    let r0 = monic[0].abs().powf(1.0 / n as f64);
    let r0 = if r0.is_finite() && r0 > 0.0 { r0 } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..F64_ITER_CAP {
        let mut max_step: f64 = 0.0;
        let prev = z.clone();
        for i in 0..n {
            let (q, dq) = horner_f64(&monic, prev[i]);
            if q == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = q / dq;
            let s: Complex64 = (0..n).filter(|&j| j != i && prev[i] != prev[j]).map(|j| 1.0 / (prev[i] - prev[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] = prev[i] - w;
                max_step = max_step.max(w.norm() / prev[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            return (z, true);
        }
    }
    (z, false)
}

fn horner_f64(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut q = Complex64::new(0.0, 0.0);
    let mut dq = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dq = dq * z + q;
        q = q * z + a;
    }
    (q, dq)
}

#[derive(Clone, Debug)]
struct Cd {
    re: Dyadic,
    im: Dyadic,
}

impl Cd {
    fn from_c64(z: Complex64, prec: u32) -> Self {
        let conv = |x: f64| Dyadic::from_rational(&from_f64(x).expect("finite"), prec, Round::Nearest);
        Cd { re: conv(z.re), im: conv(z.im) }
    }

    fn real(x: Dyadic) -> Self {
        Cd { re: x, im: Dyadic::zero() }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Cd, prec: u32) -> Cd {
        Cd { re: self.re.add(&o.re).round(prec, Round::Nearest), im: self.im.add(&o.im).round(prec, Round::Nearest) }
    }

    fn sub(&self, o: &Cd, prec: u32) -> Cd {
        Cd { re: self.re.sub(&o.re).round(prec, Round::Nearest), im: self.im.sub(&o.im).round(prec, Round::Nearest) }
    }

    fn mul(&self, o: &Cd, prec: u32) -> Cd {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Cd { re: re.round(prec, Round::Nearest), im: im.round(prec, Round::Nearest) }
    }

    fn div(&self, o: &Cd, prec: u32) -> Cd {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Cd { re: re.div(&den, prec, Round::Nearest), im: im.div(&den, prec, Round::Nearest) }
    }
}

fn horner_mp(c: &[Cd], z: &Cd, prec: u32) -> (Cd, Cd) {
    let zero = Cd::real(Dyadic::zero());
    let (mut q, mut dq) = (zero.clone(), zero);
    for a in c.iter().rev() {
        dq = dq.mul(z, prec).add(&q, prec);
        q = q.mul(z, prec).add(a, prec);
    }
    (q, dq)
}

/// Refines approximate roots of `c` (exact coefficients) with Aberth steps at `prec` bits.
pub(crate) fn aberth_polish(c: &[Dyadic], start: &[Complex64], prec: u32) -> (Vec<Complex64>, bool) {
    let n = start.len();
    let coeffs: Vec<Cd> = c.iter().map(|x| Cd::real(x.round(prec, Round::Nearest))).collect();
    let one = Cd::real(Dyadic::one());
    let mut z: Vec<Cd> = start.iter().map(|&w| Cd::from_c64(w, prec)).collect();
    let target = (-(prec as f64) + 12.0).exp2();
    for _ in 0..MP_ITER_CAP {
        let prev = z.clone();
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (q, dq) = horner_mp(&coeffs, &prev[i], prec);
            if q.is_zero() || dq.is_zero() {
                continue;
            }
            let ratio = q.div(&dq, prec);
            let mut s = Cd::real(Dyadic::zero());
            for j in (0..n).filter(|&j| j != i) {
                let d = prev[i].sub(&prev[j], prec);
                if !d.is_zero() {
                    s = s.add(&one.div(&d, prec), prec);
                }
            }
            let den = one.sub(&ratio.mul(&s, prec), prec);
            if den.is_zero() {
                continue;
            }
            let w = ratio.div(&den, prec);
            z[i] = prev[i].sub(&w, prec);
            let step = w.to_c64().norm() / prev[i].to_c64().norm().max(1.0);
            max_step = max_step.max(step);
        }
        if max_step <= target {
            return (z.iter().map(Cd::to_c64).collect(), true);
        }
    }
    (z.iter().map(Cd::to_c64).collect(), false)
}

/// Roots of a polynomial with exact rational coefficients (low to high).
pub(crate) fn roots_exact(c: &[Rational], prec: u32) -> (Vec<Complex64>, bool) {
    let f: Vec<f64> = c.iter().map(to_f64).collect();
    let (start, ok1) = aberth_f64(&f);
    let dy: Vec<Dyadic> = c.iter().map(|q| Dyadic::from_rational(q, prec, Round::Nearest)).collect();
    let (roots, ok2) = aberth_polish(&dy, &start, prec);
    (roots, ok1 || ok2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn quadratic_roots() {
        // w^2 + 6w + 1: -3 ± 2√2
        let (r, ok) = roots_exact(&[int(1), int(6), int(1)], 128);
        assert!(ok);
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] - (-3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-13);
        assert!((re[1] - (-3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!(r.iter().all(|z| z.im.abs() < 1e-15));
    }

    #[test]
    fn roots_of_unity() {
        let mut c = vec![int(0); 13];
        c[0] = int(-1);
        c[12] = int(1);
        let (r, ok) = roots_exact(&c, 128);
        assert!(ok);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }
}

//! Real-zero scan of the characteristic function of an even density on `[-1, 1]`.
//! Diagnostic only; nothing here is a certificate.

use crate::error::{Error, Result};

const QUAD_TOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroBracket {
    pub lo: f64,
    pub hi: f64,
    /// Bisection estimate inside the bracket.
    pub t: f64,
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Option<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    Some(simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)? + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    // Split into panels first so oscillatory integrands are resolved.
    let panels = 16;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
        let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
        let whole = h / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson(f, x0, x1, f0, fm, f1, whole, tol / panels as f64, MAX_DEPTH)
            .ok_or_else(|| Error::NoConvergence(MAX_DEPTH as usize))?;
    }
    Ok(total)
}

/// Brackets sign changes of `φ(t) = ∫ cos(tx) f(x) dx` on `(0, t_max]`.
///
/// `f` is given on `[0, 1]` and extended evenly.
pub fn charfn_real_zero_scan(f: &dyn Fn(f64) -> f64, t_max: f64, step: f64) -> Result<Vec<ZeroBracket>> {
    if !(step > 0.0 && t_max.is_finite()) {
        return Err(Error::OutOfRange("step must be positive and t_max finite".into()));
    }
    let mass = 2.0 * integrate(f, 0.0, 1.0, QUAD_TOL)?;
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!("density integrates to {mass}, not 1")));
    }
    let phi = |t: f64| -> Result<f64> { Ok(2.0 * integrate(&|x| (t * x).cos() * f(x), 0.0, 1.0, QUAD_TOL)?) };
    let mut out = Vec::new();
    let mut t0 = 0.0;
    let mut v0 = 1.0;
    let steps = (t_max / step).floor() as usize;
    for i in 1..=steps {
        let t1 = i as f64 * step;
        let v1 = phi(t1)?;
        if v0 * v1 <= 0.0 && v0 != 0.0 {
            let (mut lo, mut hi, mut flo) = (t0, t1, v0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = phi(mid)?;
                if fm == 0.0 || hi - lo < 1e-12 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            out.push(ZeroBracket { lo: t0, hi: t1, t: 0.5 * (lo + hi) });
        }
        t0 = t1;
        v0 = v1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn uniform_density_zeros_at_multiples_of_pi() {
        let z = charfn_real_zero_scan(&|_| 0.5, 10.0, 0.25).unwrap();
        assert_eq!(z.len(), 3);
        for (k, b) in z.iter().enumerate() {
            assert!((b.t - (k + 1) as f64 * PI).abs() < 1e-9, "{b:?}");
        }
    }

    #[test]
    fn parabolic_density_first_zero() {
        let z = charfn_real_zero_scan(&|x| 0.75 * (1.0 - x * x), 8.0, 0.25).unwrap();
        // Zeros of tan t = t.
        assert!((z[0].t - 4.493409457909064).abs() < 1e-9);
        assert!((z[1].t - 7.725251836937707).abs() < 1e-9);
    }

    #[test]
    fn short_scan_and_bad_mass() {
        assert!(charfn_real_zero_scan(&|_| 0.5, 3.0, 0.25).unwrap().is_empty());
        assert!(charfn_real_zero_scan(&|_| 1.0, 3.0, 0.25).is_err());
    }
}

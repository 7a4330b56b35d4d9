//! Adaptive composite Simpson quadrature.

/// Recursion depth cap; intervals are not split further below it.
const MAX_DEPTH: u32 = 48;

/// `∫ₐᵇ f` to absolute tolerance `tol` by adaptive Simpson with Richardson
/// correction. Returns `0` for `a == b` and a negated integral for `b < a`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -adaptive_simpson(f, b, a, tol);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn polynomials_are_exact() {
        let v = adaptive_simpson(&|x: f64| 3.0 * x * x + 1.0, 0.0, 2.0, 1e-12);
        assert!((v - 10.0).abs() < 1e-12);
        assert_eq!(adaptive_simpson(&|_| 1.0, 3.0, 3.0, 1e-10), 0.0);
        assert!((adaptive_simpson(&|_| 2.0, 1.0, 0.0, 1e-10) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn sine_against_antiderivative() {
        for &t in &[0.3, 1.0, 5.0, 20.0] {
            let v = adaptive_simpson(&math::sin, 0.0, t, 1e-10);
            assert!((v - (1.0 - math::cos(t))).abs() < 1e-9, "t={t}");
        }
    }
}

//! Minimal-root search for partial, piecewise-continuous scalar functions.
//!
//! The residuals have gaps (undefined stretches), jumps of about `2π` where a
//! wrapped angle rolls over, and, for the cycled families, no sign changes at
//! all: a distance touches zero from above. The search samples a uniform grid
//! and turns every feature that can hide a root into a candidate:
//!
//! * sign changes across a continuous cell, refined by bisection;
//! * grid-local minima of `|f|`, refined by golden-section search and kept if
//!   the minimum is within `value_tol` of zero;
//! * jump cells, where the discontinuity is isolated and both sides checked;
//! * boundaries of defined runs, located by bisection.
//!
//! Candidates are sorted and handed to a caller-supplied certifier; the first
//! that passes is the answer.

use alloc::vec::Vec;

use crate::math;

/// Golden-section searches stop once the bracket is this narrow, relative to
/// `max(1, |t|)`.
const GOLDEN_REL_WIDTH: f64 = 1e-13;
const GOLDEN_MAX_ITER: usize = 200;
const BISECT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSettings {
    /// Grid spacing of the initial scan.
    pub scan_step: f64,
    /// Width to which sign-change brackets and boundaries are refined.
    pub root_tol: f64,
    /// `|f|` at or below this counts as zero for non-crossing candidates.
    pub value_tol: f64,
    /// A cell whose values differ by this much or more is a jump, not a
    /// crossing.
    pub jump_guard: f64,
}

impl Default for RootSettings {
    fn default() -> Self {
        Self { scan_step: 1e-3, root_tol: 1e-9, value_tol: 1e-6, jump_guard: core::f64::consts::PI }
    }
}

/// What the scan saw, for reporting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanDiagnostics {
    pub samples: usize,
    pub undefined_samples: usize,
    pub sign_changes: usize,
    pub jumps: usize,
    pub tangency_checks: usize,
    pub run_edges: usize,
    pub candidates: usize,
    pub rejected: usize,
}

/// Result of [`find_min_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootScan {
    pub root: Option<f64>,
    pub diagnostics: ScanDiagnostics,
}

/// Smallest certified root of `f` in `[t_lo, t_hi]`.
///
/// `f` returns `None` where it is undefined. `certify` is called on
/// candidates in increasing order until one passes.
pub fn find_min_root<F, C>(f: F, t_lo: f64, t_hi: f64, settings: &RootSettings, mut certify: C) -> RootScan
where
    F: Fn(f64) -> Option<f64>,
    C: FnMut(f64) -> bool,
{
    let mut diag = ScanDiagnostics::default();
    if !(t_lo <= t_hi) || !t_lo.is_finite() || !t_hi.is_finite() || !(settings.scan_step > 0.0) {
        return RootScan { root: None, diagnostics: diag };
    }
    let f = |t: f64| f(t).filter(|v| v.is_finite());

    let n = math::ceil((t_hi - t_lo) / settings.scan_step) as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|i| if i == n { t_hi } else { t_lo + i as f64 * settings.scan_step })
        .collect();
    let values: Vec<Option<f64>> = grid.iter().map(|&t| f(t)).collect();
    diag.samples = grid.len();
    diag.undefined_samples = values.iter().filter(|v| v.is_none()).count();

    let mut candidates = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if v == Some(0.0) {
            candidates.push(grid[i]);
        }
    }

    for i in 0..n {
        let (a, b) = (grid[i], grid[i + 1]);
        match (values[i], values[i + 1]) {
            (Some(fa), Some(fb)) => {
                if fa == 0.0 || fb == 0.0 {
                    continue;
                }
                if (fb - fa).abs() >= settings.jump_guard {
                    diag.jumps += 1;
                    jump_candidates(&f, a, fa, b, fb, settings, &mut candidates);
                } else if (fa < 0.0) != (fb < 0.0) {
                    diag.sign_changes += 1;
                    if let Some(r) = bisect(&f, a, fa, b, fb, settings.root_tol) {
                        candidates.push(r);
                    }
                }
            }
            (Some(fa), None) => {
                diag.run_edges += 1;
                edge_candidates(&f, a, fa, b, settings, &mut candidates);
            }
            (None, Some(fb)) => {
                diag.run_edges += 1;
                edge_candidates(&f, b, fb, a, settings, &mut candidates);
            }
            (None, None) => {}
        }
    }

    // Touching zeros: grid-local minima of |f| that are small compared with
    // how fast |f| changes nearby.
    let mag = |i: usize| values[i].map_or(f64::INFINITY, f64::abs);
    for i in 0..=n {
        let Some(v) = values[i] else { continue };
        let here = v.abs();
        if here == 0.0 {
            continue;
        }
        let left = if i > 0 { mag(i - 1) } else { f64::INFINITY };
        let right = if i < n { mag(i + 1) } else { f64::INFINITY };
        if here > left || here > right {
            continue;
        }
        let slope = [left, right].iter().filter(|m| m.is_finite()).map(|m| m - here).fold(0.0, f64::max);
        if here > settings.value_tol + 2.0 * slope {
            continue;
        }
        diag.tangency_checks += 1;
        let lo = if i > 0 { grid[i - 1] } else { grid[i] };
        let hi = if i < n { grid[i + 1] } else { grid[i] };
        let (t, m) = golden_min_abs(&f, lo, hi);
        if m <= settings.value_tol {
            candidates.push(t);
        }
    }

    candidates.sort_by(f64::total_cmp);
    candidates.dedup_by(|a, b| (*a - *b).abs() <= settings.root_tol);
    diag.candidates = candidates.len();

    for t in candidates {
        if certify(t) {
            return RootScan { root: Some(t), diagnostics: diag };
        }
        diag.rejected += 1;
    }
    RootScan { root: None, diagnostics: diag }
}

/// Bisection on a bracket with `fa`, `fb` of opposite sign. Returns the
/// midpoint of the final bracket, or `None` if `f` is undefined inside.
fn bisect<F: Fn(f64) -> Option<f64>>(f: &F, mut a: f64, mut fa: f64, mut b: f64, fb: f64, tol: f64) -> Option<f64> {
    debug_assert!((fa < 0.0) != (fb < 0.0));
    for _ in 0..BISECT_MAX_ITER {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Some(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Isolates the discontinuity in a jump cell and collects roots on either
/// side of it.
fn jump_candidates<F: Fn(f64) -> Option<f64>>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    settings: &RootSettings,
    out: &mut Vec<f64>,
) {
    let (mut l, mut fl, mut r, mut fr) = (a, fa, b, fb);
    for _ in 0..BISECT_MAX_ITER {
        if r - l <= settings.root_tol {
            break;
        }
        let m = 0.5 * (l + r);
        if m <= l || m >= r {
            break;
        }
        let Some(fm) = f(m) else {
            // A gap inside the cell: treat both halves as run edges.
            edge_candidates(f, a, fa, m, settings, out);
            edge_candidates(f, b, fb, m, settings, out);
            return;
        };
        if (fm - fl).abs() >= (fr - fm).abs() {
            r = m;
            fr = fm;
        } else {
            l = m;
            fl = fm;
        }
    }
    for (p, fp) in [(l, fl), (r, fr)] {
        if fp.abs() <= settings.value_tol {
            out.push(p);
        }
    }
    if l > a && (fa < 0.0) != (fl < 0.0) && fl != 0.0 {
        if let Some(t) = bisect(f, a, fa, l, fl, settings.root_tol) {
            out.push(t);
        }
    }
    if r < b && (fr < 0.0) != (fb < 0.0) && fr != 0.0 {
        if let Some(t) = bisect(f, r, fr, b, fb, settings.root_tol) {
            out.push(t);
        }
    }
}

/// Locates the end of a defined run between `inside` (defined) and
/// `outside` (undefined) and collects a root next to it.
fn edge_candidates<F: Fn(f64) -> Option<f64>>(
    f: &F,
    inside: f64,
    f_inside: f64,
    outside: f64,
    settings: &RootSettings,
    out: &mut Vec<f64>,
) {
    let (mut p, mut fp, mut q) = (inside, f_inside, outside);
    for _ in 0..BISECT_MAX_ITER {
        if (q - p).abs() <= settings.root_tol {
            break;
        }
        let m = 0.5 * (p + q);
        if m == p || m == q {
            break;
        }
        match f(m) {
            Some(fm) => {
                p = m;
                fp = fm;
            }
            None => q = m,
        }
    }
    if fp.abs() <= settings.value_tol {
        out.push(p);
    } else if (fp < 0.0) != (f_inside < 0.0) && (fp - f_inside).abs() < settings.jump_guard {
        let (lo, flo, hi, fhi) = if inside < p { (inside, f_inside, p, fp) } else { (p, fp, inside, f_inside) };
        if let Some(t) = bisect(f, lo, flo, hi, fhi, settings.root_tol) {
            out.push(t);
        }
    }
}

/// Golden-section minimization of `|f|` on `[a, b]`; undefined points count
/// as `+∞`. Returns the best point seen and its `|f|`.
fn golden_min_abs<F: Fn(f64) -> Option<f64>>(f: &F, a: f64, b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let g = |t: f64| f(t).map_or(f64::INFINITY, f64::abs);
    let (mut a, mut b) = (a, b);
    let mut best = (a, g(a));
    let gb = g(b);
    if gb < best.1 {
        best = (b, gb);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    for _ in 0..GOLDEN_MAX_ITER {
        if b - a <= GOLDEN_REL_WIDTH * a.abs().max(1.0) {
            break;
        }
        if g1 <= g2 {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - INV_PHI * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + INV_PHI * (b - a);
            g2 = g(x2);
        }
    }
    for (t, v) in [(x1, g1), (x2, g2)] {
        if v < best.1 {
            best = (t, v);
        }
    }
    best
}

//! Bang-bang control schedules and the car's closed-form endpoint maps.
//!
//! Every candidate optimal control has one of two shapes with switch times
//! `0 ≤ τ₁ ≤ τ₂`:
//!
//! * CSC: `s` on `[0, τ₁)`, `0` on `[τ₁, τ₂)`, `σ` afterwards;
//! * CCC: `s` on `[0, τ₁)`, `−s` on `[τ₁, τ₂)`, `s` afterwards.
//!
//! The closed forms are the production path. [`integrate_ode`] integrates the
//! dynamics numerically and only exists to cross-check them.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};
use core::fmt;

use crate::geometry::{Angle, Configuration};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MotionError {
    /// Switch times or query time out of order (`0 ≤ τ₁ ≤ τ₂ ≤ t` violated).
    Ordering { tau1: f64, tau2: f64, t: f64 },
    /// First switch time must be below `2π`.
    FirstArcTooLong(f64),
    /// CCC middle arc must be shorter than `2π`.
    MiddleArcTooLong(f64),
    NonPositiveStep(f64),
    TooFewSamples(usize),
    NotFinite,
}

impl fmt::Display for MotionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ordering { tau1, tau2, t } => {
                write!(f, "expected 0 <= tau1 <= tau2 <= t, got tau1={tau1}, tau2={tau2}, t={t}")
            }
            Self::FirstArcTooLong(tau1) => write!(f, "first arc must be shorter than 2π, got {tau1}"),
            Self::MiddleArcTooLong(len) => write!(f, "CCC middle arc must be shorter than 2π, got {len}"),
            Self::NonPositiveStep(h) => write!(f, "integration step must be positive, got {h}"),
            Self::TooFewSamples(n) => write!(f, "need at least 2 samples, got {n}"),
            Self::NotFinite => f.write_str("non-finite switch time"),
        }
    }
}

impl core::error::Error for MotionError {}

/// Turn direction: `Left` is `u = +1` (counter-clockwise), `Right` is `u = −1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TurnSign {
    Left,
    Right,
}

impl TurnSign {
    /// Both signs, `+1` first.
    pub const ALL: [TurnSign; 2] = [TurnSign::Left, TurnSign::Right];

    #[inline]
    pub const fn value(self) -> f64 {
        match self {
            Self::Left => 1.0,
            Self::Right => -1.0,
        }
    }

    #[inline]
    pub const fn as_i8(self) -> i8 {
        match self {
            Self::Left => 1,
            Self::Right => -1,
        }
    }

    #[inline]
    pub const fn flipped(self) -> Self {
        match self {
            Self::Left => Self::Right,
            Self::Right => Self::Left,
        }
    }

    /// Sign of a non-zero real; `None` for zero or NaN.
    pub fn of(v: f64) -> Option<Self> {
        if v > 0.0 {
            Some(Self::Left)
        } else if v < 0.0 {
            Some(Self::Right)
        } else {
            None
        }
    }

    /// `L` or `R`.
    pub const fn letter(self) -> char {
        match self {
            Self::Left => 'L',
            Self::Right => 'R',
        }
    }
}

impl fmt::Display for TurnSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Left => "+1",
            Self::Right => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    Csc,
    Ccc,
}

/// A bang-bang control with two switch times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ControlSchedule {
    Csc { s: TurnSign, sigma: TurnSign, tau1: f64, tau2: f64 },
    Ccc { s: TurnSign, tau1: f64, tau2: f64 },
}

impl ControlSchedule {
    pub fn csc(s: TurnSign, sigma: TurnSign, tau1: f64, tau2: f64) -> Result<Self, MotionError> {
        check_switches(tau1, tau2)?;
        Ok(Self::Csc { s, sigma, tau1, tau2 })
    }

    pub fn ccc(s: TurnSign, tau1: f64, tau2: f64) -> Result<Self, MotionError> {
        check_switches(tau1, tau2)?;
        if tau2 - tau1 >= TAU {
            return Err(MotionError::MiddleArcTooLong(tau2 - tau1));
        }
        Ok(Self::Ccc { s, tau1, tau2 })
    }

    /// The schedule that drives straight ahead forever.
    pub fn straight() -> Self {
        Self::Csc { s: TurnSign::Left, sigma: TurnSign::Left, tau1: 0.0, tau2: f64::INFINITY }
    }

    pub fn kind(&self) -> PathKind {
        match self {
            Self::Csc { .. } => PathKind::Csc,
            Self::Ccc { .. } => PathKind::Ccc,
        }
    }

    #[inline]
    pub fn s(&self) -> TurnSign {
        match *self {
            Self::Csc { s, .. } | Self::Ccc { s, .. } => s,
        }
    }

    /// Last-arc sign for CSC; `None` for CCC.
    pub fn sigma(&self) -> Option<TurnSign> {
        match *self {
            Self::Csc { sigma, .. } => Some(sigma),
            Self::Ccc { .. } => None,
        }
    }

    #[inline]
    pub fn tau1(&self) -> f64 {
        match *self {
            Self::Csc { tau1, .. } | Self::Ccc { tau1, .. } => tau1,
        }
    }

    #[inline]
    pub fn tau2(&self) -> f64 {
        match *self {
            Self::Csc { tau2, .. } | Self::Ccc { tau2, .. } => tau2,
        }
    }

    /// Same switch times with every turn direction reversed.
    pub fn mirrored(&self) -> Self {
        match *self {
            Self::Csc { s, sigma, tau1, tau2 } => Self::Csc { s: s.flipped(), sigma: sigma.flipped(), tau1, tau2 },
            Self::Ccc { s, tau1, tau2 } => Self::Ccc { s: s.flipped(), tau1, tau2 },
        }
    }

    /// Control value at time `t` (right-continuous).
    pub fn control_at(&self, t: f64) -> f64 {
        control_at(self, t)
    }

    /// Configuration reached at time `t ≥ 0`, following the schedule up to `t`.
    ///
    /// Switch times beyond `t` are clamped, so this also evaluates
    /// mid-trajectory points.
    pub fn config_at(&self, t: f64) -> Configuration {
        let t = t.max(0.0);
        match *self {
            Self::Csc { s, sigma, tau1, tau2 } => {
                let a = tau1.min(t);
                csc_unchecked(s, sigma, a, tau2.min(t).max(a), t)
            }
            Self::Ccc { s, tau1, tau2 } => {
                let a = tau1.min(t);
                ccc_unchecked(s, a, tau2.min(t).max(a), t)
            }
        }
    }

    /// Largest total turning, in radians, of a run of same-direction turns
    /// up to time `t`. Pieces shorter than `gap` are ignored, so a
    /// zero-length straight or middle arc joins its neighbours.
    ///
    /// A value of `2π` or more means the path contains a full loop.
    pub fn longest_turn(&self, t: f64, gap: f64) -> f64 {
        let mut best: f64 = 0.0;
        let mut run = (0.0, 0.0);
        for (dur, u) in schedule_pieces(self, t) {
            if dur < gap {
                continue;
            }
            if u != run.1 {
                run = (0.0, u);
            }
            run.0 += dur;
            if u != 0.0 {
                best = best.max(run.0);
            }
        }
        best
    }

    /// Arc/segment letters, e.g. `LSR` or `RLR`.
    pub fn word(&self) -> [char; 3] {
        match *self {
            Self::Csc { s, sigma, .. } => [s.letter(), 'S', sigma.letter()],
            Self::Ccc { s, .. } => [s.letter(), s.flipped().letter(), s.letter()],
        }
    }
}

fn check_switches(tau1: f64, tau2: f64) -> Result<(), MotionError> {
    if !tau1.is_finite() || tau2.is_nan() {
        return Err(MotionError::NotFinite);
    }
    if !(0.0 <= tau1 && tau1 <= tau2) {
        return Err(MotionError::Ordering { tau1, tau2, t: f64::NAN });
    }
    if tau1 >= TAU {
        return Err(MotionError::FirstArcTooLong(tau1));
    }
    Ok(())
}

/// Control value of `sched` at time `t` (right-continuous at switches).
pub fn control_at(sched: &ControlSchedule, t: f64) -> f64 {
    match *sched {
        ControlSchedule::Csc { s, sigma, tau1, tau2 } => {
            if t < tau1 {
                s.value()
            } else if t < tau2 {
                0.0
            } else {
                sigma.value()
            }
        }
        ControlSchedule::Ccc { s, tau1, tau2 } => {
            if t < tau1 || t >= tau2 {
                s.value()
            } else {
                -s.value()
            }
        }
    }
}

fn check_order(tau1: f64, tau2: f64, t: f64) -> Result<(), MotionError> {
    if !(tau1.is_finite() && tau2.is_finite() && t.is_finite()) {
        return Err(MotionError::NotFinite);
    }
    if 0.0 <= tau1 && tau1 <= tau2 && tau2 <= t {
        Ok(())
    } else {
        Err(MotionError::Ordering { tau1, tau2, t })
    }
}

/// Closed-form CSC endpoint at time `t` from the start configuration.
pub fn csc_endpoint(s: TurnSign, sigma: TurnSign, tau1: f64, tau2: f64, t: f64) -> Result<Configuration, MotionError> {
    check_order(tau1, tau2, t)?;
    Ok(csc_unchecked(s, sigma, tau1, tau2, t))
}

#[inline]
pub(crate) fn csc_unchecked(s: TurnSign, sigma: TurnSign, tau1: f64, tau2: f64, t: f64) -> Configuration {
    let (s, sg) = (s.value(), sigma.value());
    let (s1, c1) = math::sin_cos(tau1);
    let len = tau2 - tau1;
    let psi = s * tau1 + sg * (t - tau2);
    let (sp, cp) = math::sin_cos(psi);
    let x = s * (c1 - 1.0 - len * s1) + sg * (cp - c1);
    let y = s1 + len * c1 - sg * (s * s1 - sp);
    Configuration { x, y, phi: Angle::new(FRAC_PI_2 + psi) }
}

/// Closed-form CCC endpoint at time `t` from the start configuration.
pub fn ccc_endpoint(s: TurnSign, tau1: f64, tau2: f64, t: f64) -> Result<Configuration, MotionError> {
    check_order(tau1, tau2, t)?;
    if tau2 - tau1 >= TAU {
        return Err(MotionError::MiddleArcTooLong(tau2 - tau1));
    }
    Ok(ccc_unchecked(s, tau1, tau2, t))
}

#[inline]
pub(crate) fn ccc_unchecked(s: TurnSign, tau1: f64, tau2: f64, t: f64) -> Configuration {
    let s = s.value();
    let (s1, c1) = math::sin_cos(tau1);
    let (s2, c2) = math::sin_cos(2.0 * tau1 - tau2);
    let last = 2.0 * tau1 - 2.0 * tau2 + t;
    let (s3, c3) = math::sin_cos(last);
    let x = s * (2.0 * c1 - 1.0 - 2.0 * c2 + c3);
    let y = 2.0 * s1 - 2.0 * s2 + s3;
    Configuration { x, y, phi: Angle::new(FRAC_PI_2 + s * last) }
}

/// Exact motion under a constant control `u` for `dt` time units.
pub fn advance(c: &Configuration, u: f64, dt: f64) -> Configuration {
    let phi = c.phi.radians();
    if u == 0.0 {
        let (sp, cp) = math::sin_cos(phi);
        return Configuration { x: c.x + dt * cp, y: c.y + dt * sp, phi: c.phi };
    }
    let end = phi + u * dt;
    let (s0, c0) = math::sin_cos(phi);
    let (s1, c1) = math::sin_cos(end);
    Configuration { x: c.x + (s1 - s0) / u, y: c.y + (c0 - c1) / u, phi: Angle::new(end) }
}

/// Fixed-step fourth-order Runge–Kutta integration of the dynamics under a
/// piecewise-constant control given as `(duration, u)` pieces.
///
/// Each piece is integrated with its own equal sub-steps no longer than
/// `step`, so the control is constant within every step.
pub fn integrate_pieces(start: Configuration, pieces: &[(f64, f64)], step: f64) -> Result<Configuration, MotionError> {
    if !(step > 0.0) {
        return Err(MotionError::NonPositiveStep(step));
    }
    let mut state = [start.x, start.y, start.phi.radians()];
    for &(duration, u) in pieces {
        if !(duration > 0.0) {
            continue;
        }
        let n = math::ceil(duration / step).max(1.0) as usize;
        let h = duration / n as f64;
        for _ in 0..n {
            state = rk4_step(state, u, h);
        }
    }
    Ok(Configuration { x: state[0], y: state[1], phi: Angle::new(state[2]) })
}

#[inline]
fn rk4_step(y: [f64; 3], u: f64, h: f64) -> [f64; 3] {
    let f = |p: f64| [math::cos(p), math::sin(p)];
    let k1 = f(y[2]);
    let k2 = f(y[2] + 0.5 * h * u);
    let k3 = k2;
    let k4 = f(y[2] + h * u);
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        y[2] + h * u,
    ]
}

/// Split a schedule into constant-control pieces up to time `t`.
pub fn schedule_pieces(sched: &ControlSchedule, t: f64) -> [(f64, f64); 3] {
    let a = sched.tau1().min(t).max(0.0);
    let b = sched.tau2().min(t).max(a);
    let (u1, u2, u3) = match *sched {
        ControlSchedule::Csc { s, sigma, .. } => (s.value(), 0.0, sigma.value()),
        ControlSchedule::Ccc { s, .. } => (s.value(), -s.value(), s.value()),
    };
    [(a, u1), (b - a, u2), (t - b, u3)]
}

/// RK4 integration of the dynamics under `sched` from the start
/// configuration, with integration intervals split at the switch times.
pub fn integrate_ode(sched: &ControlSchedule, t: f64, step: f64) -> Result<Configuration, MotionError> {
    if !(step > 0.0) {
        return Err(MotionError::NonPositiveStep(step));
    }
    integrate_pieces(Configuration::START, &schedule_pieces(sched, t.max(0.0)), step)
}

#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub config: Configuration,
    pub u: f64,
}

/// `n` samples uniform in time on `[0, t_end]`, endpoints included.
pub fn sample_trajectory(sched: &ControlSchedule, t_end: f64, n: usize) -> Result<Vec<TrajectorySample>, MotionError> {
    if n < 2 {
        return Err(MotionError::TooFewSamples(n));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let t = if i + 1 == n { t_end } else { t_end * i as f64 / last };
            TrajectorySample { t, config: sched.config_at(t), u: control_at(sched, t) }
        })
        .collect())
}

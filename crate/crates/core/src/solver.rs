//! Minimum-time interception: scan all ten families and keep the earliest
//! certified root.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use crate::geometry::{metric, Configuration};
use crate::motion::{ControlSchedule, MotionError, TurnSign};
use crate::residual::{cc_residual_and_sign, ccc_intermediates, csc_intermediates, residual, FamilyId};
use crate::roots::{find_min_root, RootSettings, ScanDiagnostics};
use crate::targets::TargetTrajectory;

/// Turning within this of `2π`, or pieces shorter than this, count as a
/// full loop and as absent respectively. Near the `ρ² → 4` domain edge the
/// switch times are square-root sensitive, so limit points land a few
/// micro-radians short of a full turn.
const LOOP_MARGIN: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub roots: RootSettings,
    /// A candidate is accepted when the closed-form endpoint of its schedule
    /// is within this configuration distance of the target.
    pub certify_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { roots: RootSettings::default(), certify_tol: 1e-6 }
    }
}

impl SolverSettings {
    /// Default settings with a different scan step.
    pub fn with_scan_step(scan_step: f64) -> Self {
        let mut s = Self::default();
        s.roots.scan_step = scan_step;
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverError {
    InvalidHorizon(f64),
    InvalidSettings(&'static str),
    /// The family's switch times do not exist at this time.
    Undefined { family: FamilyId, t: f64 },
    Schedule(MotionError),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidHorizon(h) => write!(f, "horizon must be positive and finite, got {h}"),
            Self::InvalidSettings(what) => write!(f, "invalid solver settings: {what}"),
            Self::Undefined { family, t } => write!(f, "{family} has no switch times at T={t}"),
            Self::Schedule(e) => write!(f, "recovered schedule is invalid: {e}"),
        }
    }
}

impl core::error::Error for SolverError {}

impl From<MotionError> for SolverError {
    fn from(e: MotionError) -> Self {
        Self::Schedule(e)
    }
}

/// Outcome of one family's scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateResult {
    pub family: FamilyId,
    /// `false` when the scan interval was empty or the solve short-circuited.
    pub scanned: bool,
    /// Minimal certified root, if any.
    pub root: Option<f64>,
    pub schedule: Option<ControlSchedule>,
    /// Residual value at the root.
    pub residual: Option<f64>,
    /// Configuration distance between the schedule's endpoint and the target.
    pub certification_error: Option<f64>,
    pub diagnostics: ScanDiagnostics,
}

impl CandidateResult {
    fn unscanned(family: FamilyId) -> Self {
        Self {
            family,
            scanned: false,
            root: None,
            schedule: None,
            residual: None,
            certification_error: None,
            diagnostics: ScanDiagnostics::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    /// Minimal interception time, `None` if infeasible within the horizon.
    pub t_star: Option<f64>,
    pub winner: Option<FamilyId>,
    pub schedule: Option<ControlSchedule>,
    /// One entry per family, in [`FamilyId::ALL`] order.
    pub all_candidates: Vec<CandidateResult>,
}

/// Switch times of `family` at interception time `t`.
///
/// Tiny overshoots of `τ₂` past `t` left by root-finding round-off are
/// clamped to `t`.
pub fn recover_schedule(family: FamilyId, t: f64, target: &TargetTrajectory) -> Result<ControlSchedule, SolverError> {
    const OVERSHOOT: f64 = 1e-6;
    let e_t = target.at(t);
    let undefined = SolverError::Undefined { family, t };
    let clamp = |tau2: f64| if tau2 > t && tau2 - t <= OVERSHOOT { t } else { tau2 };
    let sched = match family {
        FamilyId::Csc { s, sigma } => {
            let k = csc_intermediates(s, sigma, &e_t).ok_or(undefined)?;
            ControlSchedule::csc(s, sigma, k.theta1.min(clamp(k.theta2)), clamp(k.theta2))?
        }
        FamilyId::Ccc { s, mu } => {
            let k = ccc_intermediates(s, mu, &e_t).ok_or(undefined)?;
            ControlSchedule::ccc(s, k.theta1.min(clamp(k.theta2)), clamp(k.theta2))?
        }
        FamilyId::Sc => {
            if t < TAU {
                return Err(undefined);
            }
            ControlSchedule::csc(TurnSign::Left, TurnSign::Left, 0.0, t - TAU)?
        }
        FamilyId::Cc => {
            if t < TAU {
                return Err(undefined);
            }
            let (_, s) = cc_residual_and_sign(t, &e_t);
            ControlSchedule::ccc(s, 0.0, t - TAU)?
        }
    };
    if sched.tau2() > t {
        return Err(SolverError::Schedule(MotionError::Ordering { tau1: sched.tau1(), tau2: sched.tau2(), t }));
    }
    Ok(sched)
}

/// Configuration distance between the car's endpoint under `sched` and the
/// target at time `t`.
pub fn certification_error(sched: &ControlSchedule, t: f64, target: &TargetTrajectory) -> f64 {
    metric(&sched.config_at(t), &target.at(t))
}

fn check(horizon: f64, settings: &SolverSettings) -> Result<(), SolverError> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(SolverError::InvalidHorizon(horizon));
    }
    let r = &settings.roots;
    if !(r.scan_step > 0.0 && r.scan_step.is_finite()) {
        return Err(SolverError::InvalidSettings("scan step must be positive"));
    }
    if !(r.root_tol > 0.0) {
        return Err(SolverError::InvalidSettings("root tolerance must be positive"));
    }
    if !(r.value_tol >= 0.0) {
        return Err(SolverError::InvalidSettings("value tolerance must be non-negative"));
    }
    if !(r.jump_guard > 0.0) {
        return Err(SolverError::InvalidSettings("jump guard must be positive"));
    }
    if !(settings.certify_tol > 0.0) {
        return Err(SolverError::InvalidSettings("certification tolerance must be positive"));
    }
    Ok(())
}

/// Scan interval of a family, or `None` if it is empty.
fn family_interval(family: FamilyId, horizon: f64) -> Option<(f64, f64)> {
    let lo = family.earliest();
    let hi = match family {
        // The recovered CC schedule needs a middle arc shorter than 2π.
        FamilyId::Cc => horizon.min(2.0 * TAU * (1.0 - f64::EPSILON)),
        _ => horizon,
    };
    (lo <= hi).then_some((lo, hi))
}

/// Scans one family on its interval within `horizon`.
///
/// CSC and CCC candidates whose schedule contains a full loop are rejected.
/// They show up as one-sided limits at the wrap of `θ¹` or of the final-arc
/// term, or where `ρ² → 0`; the same paths are the SC and CC families' job.
pub fn solve_family(
    family: FamilyId,
    target: &TargetTrajectory,
    horizon: f64,
    settings: &SolverSettings,
) -> CandidateResult {
    let Some((lo, hi)) = family_interval(family, horizon) else {
        return CandidateResult::unscanned(family);
    };
    let mut accepted: Option<(ControlSchedule, f64)> = None;
    let scan = find_min_root(
        |t| residual(family, t, target),
        lo,
        hi,
        &settings.roots,
        |t| {
            let Ok(sched) = recover_schedule(family, t, target) else {
                return false;
            };
            if !family.is_cycled() && sched.longest_turn(t, LOOP_MARGIN) >= TAU - LOOP_MARGIN {
                return false;
            }
            let err = certification_error(&sched, t, target);
            if err <= settings.certify_tol {
                accepted = Some((sched, err));
                true
            } else {
                false
            }
        },
    );
    CandidateResult {
        family,
        scanned: true,
        root: scan.root,
        schedule: accepted.map(|a| a.0),
        residual: scan.root.and_then(|t| residual(family, t, target)),
        certification_error: accepted.map(|a| a.1),
        diagnostics: scan.diagnostics,
    }
}

/// Minimum interception time of `target` within `[0, horizon]`.
///
/// Returns `Ok` with `t_star = None` when no family has a certified root in
/// range. Ties within the root tolerance go to the family listed first in
/// [`FamilyId::ALL`].
pub fn solve(target: &TargetTrajectory, horizon: f64, settings: &SolverSettings) -> Result<SolverResult, SolverError> {
    check(horizon, settings)?;

    let start_gap = metric(&target.at(0.0), &Configuration::START);
    if start_gap <= settings.certify_tol {
        let first = FamilyId::ALL[0];
        let sched = ControlSchedule::csc(TurnSign::Left, TurnSign::Left, 0.0, 0.0)?;
        let mut all: Vec<_> = FamilyId::ALL.iter().map(|&f| CandidateResult::unscanned(f)).collect();
        all[0] = CandidateResult {
            root: Some(0.0),
            schedule: Some(sched),
            residual: residual(first, 0.0, target),
            certification_error: Some(start_gap),
            ..all[0]
        };
        return Ok(SolverResult { t_star: Some(0.0), winner: Some(first), schedule: Some(sched), all_candidates: all });
    }

    let all: Vec<CandidateResult> =
        FamilyId::ALL.iter().map(|&f| solve_family(f, target, horizon, settings)).collect();
    let best = all.iter().filter_map(|c| c.root).fold(f64::INFINITY, f64::min);
    let winner = all.iter().find(|c| c.root.is_some_and(|t| t - best <= settings.roots.root_tol));
    Ok(SolverResult {
        t_star: winner.and_then(|c| c.root),
        winner: winner.map(|c| c.family),
        schedule: winner.and_then(|c| c.schedule),
        all_candidates: all,
    })
}

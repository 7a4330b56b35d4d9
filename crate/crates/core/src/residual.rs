//! The ten residual functions whose minimal roots are the candidate
//! interception times.
//!
//! For a CSC or CCC family the terminal position equations are solved in
//! closed form for the switch times `τ₁ = θ¹(T)` and `τ₂ = θ²(T)`; what is
//! left is a scalar heading condition `F(T) = 0`. The cycled families SC and
//! CC have their switch times fixed by `T` and their residual is a plain
//! configuration distance.
//!
//! Residuals are *partial* functions. Left/right-mixed CSC families need
//! `ρ² ≥ 4`, CCC families need `ρ² ≤ 4`, and `ρ² = 0` leaves `τ₁`
//! undetermined. Gaps are returned as `None`, not as errors; the root scanner
//! treats them as data.

use core::f64::consts::{FRAC_PI_2, PI, TAU};
use core::fmt;

use crate::geometry::{metric, polar_angle, wrap_tau, Configuration};
use crate::math;
use crate::motion::TurnSign;
use crate::targets::TargetTrajectory;

/// `ρ²` below this counts as zero: the first switch time is then set by
/// rounding noise, e.g. `cos(π/2) ≈ 6e-17` at the start configuration.
const RHO2_FLOOR: f64 = 1e-24;

/// One of the ten candidate families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Csc { s: TurnSign, sigma: TurnSign },
    Ccc { s: TurnSign, mu: TurnSign },
    /// Straight segment followed by a full circle.
    Sc,
    /// Turn followed by a full circle in the opposite direction.
    Cc,
}

impl FamilyId {
    /// Every family, in tie-break order.
    pub const ALL: [FamilyId; 10] = {
        use TurnSign::{Left as P, Right as M};
        [
            FamilyId::Csc { s: P, sigma: P },
            FamilyId::Csc { s: P, sigma: M },
            FamilyId::Csc { s: M, sigma: P },
            FamilyId::Csc { s: M, sigma: M },
            FamilyId::Ccc { s: P, mu: P },
            FamilyId::Ccc { s: P, mu: M },
            FamilyId::Ccc { s: M, mu: P },
            FamilyId::Ccc { s: M, mu: M },
            FamilyId::Sc,
            FamilyId::Cc,
        ]
    };

    /// Position in [`FamilyId::ALL`].
    pub fn index(self) -> usize {
        let bit = |t: TurnSign| usize::from(t == TurnSign::Right);
        match self {
            Self::Csc { s, sigma } => 2 * bit(s) + bit(sigma),
            Self::Ccc { s, mu } => 4 + 2 * bit(s) + bit(mu),
            Self::Sc => 8,
            Self::Cc => 9,
        }
    }

    /// Whether the last arc is a full circle.
    pub fn is_cycled(self) -> bool {
        matches!(self, Self::Sc | Self::Cc)
    }

    /// Family of the mirrored problem: turn directions flip, `μ` does not.
    pub fn mirrored(self) -> Self {
        match self {
            Self::Csc { s, sigma } => Self::Csc { s: s.flipped(), sigma: sigma.flipped() },
            Self::Ccc { s, mu } => Self::Ccc { s: s.flipped(), mu },
            other => other,
        }
    }

    /// Earliest time at which the family can intercept.
    pub fn earliest(self) -> f64 {
        if self.is_cycled() {
            TAU
        } else {
            0.0
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Csc { s, sigma } => write!(f, "CSC({s},{sigma})"),
            Self::Ccc { s, mu } => write!(f, "CCC({s},{mu})"),
            Self::Sc => f.write_str("SC"),
            Self::Cc => f.write_str("CC"),
        }
    }
}

/// Intermediate quantities of a CSC family at one time instant.
///
/// `cos_tau1`/`sin_tau1` are the cosine and sine the first switch time must
/// have; `theta1`, `theta2` are the switch times themselves.
#[derive(Debug, Clone, Copy)]
pub struct CscIntermediates {
    pub xi: f64,
    pub eta: f64,
    pub rho2: f64,
    pub cos_tau1: f64,
    pub sin_tau1: f64,
    pub theta1: f64,
    pub theta2: f64,
}

/// Intermediate quantities of a CCC family at one time instant.
#[derive(Debug, Clone, Copy)]
pub struct CccIntermediates {
    pub xi: f64,
    pub eta: f64,
    pub rho2: f64,
    pub cos_tau1: f64,
    pub sin_tau1: f64,
    pub theta1: f64,
    pub theta2: f64,
}

/// Switch times of the CSC family `(s, σ)` that put the car's position at
/// `e_t`, or `None` where they do not exist.
pub fn csc_intermediates(s: TurnSign, sigma: TurnSign, e_t: &Configuration) -> Option<CscIntermediates> {
    let (s, sg) = (s.value(), sigma.value());
    let (sin_phi, cos_phi) = math::sin_cos(e_t.phi.radians());
    let a = 1.0 - s * sg;
    let xi = s * e_t.x + 1.0 - s * sg * sin_phi;
    let eta = e_t.y + sg * cos_phi;
    let rho2 = xi * xi + eta * eta;
    if rho2 < a * a || rho2 < RHO2_FLOOR {
        return None;
    }
    let straight = math::sqrt(rho2 - a * a);
    let cos_tau1 = (eta * straight + a * xi) / rho2;
    let sin_tau1 = (-xi * straight + a * eta) / rho2;
    let theta1 = polar_angle(sin_tau1, cos_tau1).ok()?;
    Some(CscIntermediates { xi, eta, rho2, cos_tau1, sin_tau1, theta1, theta2: theta1 + straight })
}

/// Residual `F` of the CSC family `(s, σ)`:
/// `−T + θ² + mod(σ(φ_E − π/2) − sσθ¹, 2π)`.
pub fn residual_csc(t: f64, s: TurnSign, sigma: TurnSign, e: &TargetTrajectory) -> Option<f64> {
    let e_t = e.at(t);
    let k = csc_intermediates(s, sigma, &e_t)?;
    let (s, sg) = (s.value(), sigma.value());
    Some(-t + k.theta2 + wrap_tau(sg * (e_t.phi.radians() - FRAC_PI_2) - s * sg * k.theta1))
}

/// Switch times of the CCC family `(s, μ)` that put the car's position at
/// `e_t`. `μ = +1` selects a middle arc in `[0, π]`, `μ = −1` one in `(π, 2π)`.
pub fn ccc_intermediates(s: TurnSign, mu: TurnSign, e_t: &Configuration) -> Option<CccIntermediates> {
    let (s, m) = (s.value(), mu.value());
    let (sin_phi, cos_phi) = math::sin_cos(e_t.phi.radians());
    let xi = 0.5 * (s * e_t.x + 1.0 - sin_phi);
    let eta = 0.5 * (e_t.y + s * cos_phi);
    let rho2 = xi * xi + eta * eta;
    if !(RHO2_FLOOR..=4.0).contains(&rho2) {
        return None;
    }
    let q = 1.0 - 0.5 * rho2;
    let sin_mid = math::sqrt((1.0 - q * q).max(0.0));
    let cos_tau1 = m * eta * sin_mid / rho2 + 0.5 * xi;
    let sin_tau1 = -m * xi * sin_mid / rho2 + 0.5 * eta;
    let theta1 = polar_angle(sin_tau1, cos_tau1).ok()?;
    let theta2 = theta1 - PI * (m - 1.0) + m * math::acos(q.clamp(-1.0, 1.0));
    Some(CccIntermediates { xi, eta, rho2, cos_tau1, sin_tau1, theta1, theta2 })
}

/// Residual `F` of the CCC family `(s, μ)`:
/// `−T + θ² + mod(s(φ_E − π/2) − 2θ¹ + θ², 2π)`.
pub fn residual_ccc(t: f64, s: TurnSign, mu: TurnSign, e: &TargetTrajectory) -> Option<f64> {
    let e_t = e.at(t);
    let k = ccc_intermediates(s, mu, &e_t)?;
    let sv = s.value();
    Some(-t + k.theta2 + wrap_tau(sv * (e_t.phi.radians() - FRAC_PI_2) - 2.0 * k.theta1 + k.theta2))
}

/// Domain error of the cycled residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeforeFullCircle(pub f64);

impl fmt::Display for BeforeFullCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cycled residuals need T >= 2π, got {}", self.0)
    }
}

impl core::error::Error for BeforeFullCircle {}

/// SC residual: distance from `E(T)` to `(0, T − 2π, π/2)`, the end of a
/// straight run followed by one full circle.
pub fn residual_sc(t: f64, e: &TargetTrajectory) -> Result<f64, BeforeFullCircle> {
    if t < TAU {
        return Err(BeforeFullCircle(t));
    }
    Ok(metric(&e.at(t), &Configuration::new(0.0, t - TAU, FRAC_PI_2)))
}

/// Endpoint of the cycled CC path with first turn `s` at time `t`.
pub(crate) fn cc_point(t: f64, s: TurnSign) -> Configuration {
    let (sin_t, cos_t) = math::sin_cos(t);
    let s = s.value();
    Configuration::new((1.0 - cos_t) * s, sin_t, FRAC_PI_2 - t * s)
}

/// CC residual and the turn sign that achieves it. The sign follows `x_E(T)`;
/// at `x_E(T) = 0` both signs are tried and the smaller residual wins.
pub(crate) fn cc_residual_and_sign(t: f64, e_t: &Configuration) -> (f64, TurnSign) {
    match TurnSign::of(e_t.x) {
        Some(s) => (metric(e_t, &cc_point(t, s)), s),
        None => {
            let left = metric(e_t, &cc_point(t, TurnSign::Left));
            let right = metric(e_t, &cc_point(t, TurnSign::Right));
            if right < left {
                (right, TurnSign::Right)
            } else {
                (left, TurnSign::Left)
            }
        }
    }
}

/// CC residual: distance from `E(T)` to
/// `((1 − cos T)·sgn x_E, sin T, π/2 − T·sgn x_E)`.
pub fn residual_cc(t: f64, e: &TargetTrajectory) -> Result<f64, BeforeFullCircle> {
    if t < TAU {
        return Err(BeforeFullCircle(t));
    }
    Ok(cc_residual_and_sign(t, &e.at(t)).0)
}

/// Residual of any family at time `t`; `None` where undefined.
pub fn residual(family: FamilyId, t: f64, e: &TargetTrajectory) -> Option<f64> {
    match family {
        FamilyId::Csc { s, sigma } => residual_csc(t, s, sigma, e),
        FamilyId::Ccc { s, mu } => residual_ccc(t, s, mu, e),
        FamilyId::Sc => residual_sc(t, e).ok(),
        FamilyId::Cc => residual_cc(t, e).ok(),
    }
}

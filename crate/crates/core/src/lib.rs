#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` deliberately rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Minimum-time lateral interception of a moving target by a Dubins car.
//!
//! The car starts at the configuration `(0, 0, π/2)`, moves forward at unit
//! speed and turns with a rate bounded by one radian per unit time. Lateral
//! interception requires the car's position *and* heading to match the
//! target's at the same instant.
//!
//! The optimal control is bang-bang with at most two switches: either a
//! turn–straight–turn (CSC) or a turn–turn–turn (CCC) schedule. The solver
//! evaluates ten scalar residual functions of the interception time, finds
//! the minimal certified root of each and keeps the smallest:
//!
//! * four CSC families `(s, σ)`,
//! * four CCC families `(s, μ)`,
//! * the cycled families SC and CC whose last arc is a full circle.
//!
//! ```
//! use dubins_intercept_core::{solve, Configuration, SolverSettings, TargetTrajectory};
//!
//! let target = TargetTrajectory::static_target(Configuration::new(0.0, 4.0, core::f64::consts::FRAC_PI_2));
//! let result = solve(&target, 10.0, &SolverSettings::default()).unwrap();
//! assert!((result.t_star.unwrap() - 4.0).abs() < 1e-6);
//! ```
//!
//! The [`oracle`] module holds an independent brute-force search over switch
//! times that certifies solver output within grid resolution.

extern crate alloc;

mod math;

pub mod geometry;
pub mod motion;
pub mod oracle;
pub mod quadrature;
pub mod residual;
pub mod roots;
pub mod solver;
pub mod targets;

pub use geometry::{angle_abs, metric, polar_angle, real_mod, Angle, Configuration, GeometryError};
pub use motion::{
    ccc_endpoint, control_at, csc_endpoint, integrate_ode, sample_trajectory, ControlSchedule,
    MotionError, PathKind, TrajectorySample, TurnSign,
};
pub use oracle::{
    brute_force_min_time, ode_discrepancy, verify_solution, OracleMode, OracleResult, OracleSettings,
    VerificationReport, CERTIFICATION_TOLERANCE,
};
pub use residual::{
    ccc_intermediates, csc_intermediates, residual, residual_cc, residual_ccc, residual_csc, residual_sc,
    BeforeFullCircle, CccIntermediates, CscIntermediates, FamilyId,
};
pub use roots::{find_min_root, RootScan, RootSettings, ScanDiagnostics};
pub use solver::{
    certification_error, recover_schedule, solve, solve_family, CandidateResult, SolverError, SolverResult,
    SolverSettings,
};
pub use targets::{TargetError, TargetKind, TargetTrajectory, WindField, WindModel};

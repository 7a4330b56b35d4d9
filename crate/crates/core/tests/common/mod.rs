#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use dubins_intercept_core::{Configuration, ControlSchedule, FamilyId, TargetTrajectory, TurnSign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_d0b1;

/// Seed from `DUBINS_INTERCEPT_SEED`, or a fixed default.
pub fn base_seed() -> u64 {
    std::env::var("DUBINS_INTERCEPT_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(base_seed());
    r.set_stream(stream);
    r
}

pub fn sign(rng: &mut impl Rng) -> TurnSign {
    if rng.random_bool(0.5) {
        TurnSign::Left
    } else {
        TurnSign::Right
    }
}

/// Draws a schedule of `family` ending at `t0 ≤ t_max`. First and last arcs stay
/// under a full turn; cycled families get `τ₁ = 0` and a final full loop.
pub fn schedule_for(family: FamilyId, t_max: f64, rng: &mut impl Rng) -> (ControlSchedule, f64) {
    loop {
        let drawn = match family {
            FamilyId::Csc { s, sigma } => {
                let tau1 = rng.random_range(0.0..TAU);
                let last = rng.random_range(0.0..TAU);
                let room = t_max - tau1 - last;
                if room < 0.0 {
                    continue;
                }
                let tau2 = tau1 + rng.random_range(0.0..=room);
                (ControlSchedule::csc(s, sigma, tau1, tau2), tau2 + last)
            }
            FamilyId::Ccc { s, mu } => {
                let middle = if mu == TurnSign::Left { rng.random_range(0.0..=PI) } else { rng.random_range(PI..TAU) };
                let tau1 = rng.random_range(0.0..TAU);
                let last = rng.random_range(0.0..TAU);
                let t0 = tau1 + middle + last;
                if t0 > t_max {
                    continue;
                }
                (ControlSchedule::ccc(s, tau1, tau1 + middle), t0)
            }
            FamilyId::Sc => {
                let t0 = rng.random_range(TAU..=t_max);
                (ControlSchedule::csc(sign(rng), sign(rng), 0.0, t0 - TAU), t0)
            }
            FamilyId::Cc => {
                let t0 = rng.random_range(TAU..(2.0 * TAU).min(t_max));
                (ControlSchedule::ccc(sign(rng), 0.0, t0 - TAU), t0)
            }
        };
        if let (Ok(sched), t0) = drawn {
            return (sched, t0);
        }
    }
}

pub fn random_family(rng: &mut impl Rng) -> FamilyId {
    FamilyId::ALL[rng.random_range(0..FamilyId::ALL.len())]
}

pub fn random_configuration(rng: &mut impl Rng, half_width: f64) -> Configuration {
    Configuration::new(
        rng.random_range(-half_width..=half_width),
        rng.random_range(-half_width..=half_width),
        rng.random_range(0.0..TAU),
    )
}

/// A random static, linear, circular or rotating-point target.
pub fn random_scenario(rng: &mut impl Rng) -> TargetTrajectory {
    match rng.random_range(0..4) {
        0 => TargetTrajectory::static_target(random_configuration(rng, 6.0)),
        1 => {
            let speed = rng.random_range(0.0..0.8);
            let dir = rng.random_range(0.0..TAU);
            TargetTrajectory::linear_uniform(random_configuration(rng, 5.0), speed * dir.cos(), speed * dir.sin())
        }
        2 => {
            let r = rng.random_range(0.5..3.0);
            let omega = rng.random_range(-0.3..0.3);
            let offset = if rng.random_bool(0.5) { PI / 2.0 } else { -PI / 2.0 };
            TargetTrajectory::circular(
                rng.random_range(-4.0..4.0),
                rng.random_range(-4.0..4.0),
                r,
                omega,
                rng.random_range(0.0..TAU),
                offset,
            )
            .unwrap()
        }
        _ => TargetTrajectory::rotating_point(
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            rng.random_range(-1.0..1.0),
        ),
    }
}

/// How a forward-generated target moves through the endpoint `P` it reaches at `t0`.
#[derive(Debug, Clone, Copy)]
pub enum Motion {
    Static,
    /// Constant velocity, heading frozen at `P`'s heading.
    Linear { vx: f64, vy: f64 },
    /// Circle of radius `r` with angular rate `omega`; heading = polar angle + `offset`.
    Circular { r: f64, omega: f64, offset: f64 },
}

pub fn target_through(p: Configuration, t0: f64, motion: Motion) -> TargetTrajectory {
    match motion {
        Motion::Static => TargetTrajectory::static_target(p),
        Motion::Linear { vx, vy } => {
            TargetTrajectory::linear_uniform(Configuration::new(p.x - vx * t0, p.y - vy * t0, p.phi.radians()), vx, vy)
        }
        Motion::Circular { r, omega, offset } => {
            let a0 = p.phi.radians() - offset;
            let (cx, cy) = (p.x - r * a0.cos(), p.y - r * a0.sin());
            TargetTrajectory::circular(cx, cy, r, omega, a0 - omega * t0, offset).unwrap()
        }
    }
}

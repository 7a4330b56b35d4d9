//! Prescribed target motions `t ↦ E(t)`.
//!
//! Target headings are independent of the direction of travel: a target may
//! slide sideways, rotate in place or jump between samples of a track.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::geometry::{metric, wrap_tau, Angle, Configuration};
use crate::math;
use crate::quadrature::adaptive_simpson;

/// Spacing of cached wind-integral checkpoints.
const WIND_CHECKPOINT: f64 = 0.25;
/// Checkpoints are precomputed up to this time; later queries integrate from
/// the last checkpoint.
const WIND_CACHE_HORIZON: f64 = 64.0;
const WIND_QUADRATURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetError {
    NonPositiveRadius(f64),
    TooFewSamples(usize),
    /// Sample times must be strictly increasing; holds the offending index.
    NonMonotoneTimes(usize),
    NotFinite,
}

impl fmt::Display for TargetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveRadius(r) => write!(f, "circle radius must be positive, got {r}"),
            Self::TooFewSamples(n) => write!(f, "a sampled track needs at least 2 samples, got {n}"),
            Self::NonMonotoneTimes(i) => write!(f, "sample times must be strictly increasing (sample {i})"),
            Self::NotFinite => f.write_str("non-finite target parameter"),
        }
    }
}

impl core::error::Error for TargetError {}

type WindFn = Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>;
type TargetFn = Arc<dyn Fn(f64) -> Configuration + Send + Sync>;

/// Time-dependent wind velocity `w(t) = (wx, wy)`.
#[derive(Clone)]
pub enum WindModel {
    Constant { wx: f64, wy: f64 },
    /// `w(t) = mean + amplitude · sin(ω t + phase)`, per axis.
    Sinusoidal { mean: (f64, f64), amplitude: (f64, f64), omega: f64, phase: f64 },
    /// Arbitrary continuous wind with a bound on its speed.
    Custom { f: WindFn, max_speed: f64 },
}

impl WindModel {
    pub fn custom<F>(f: F, max_speed: f64) -> Self
    where
        F: Fn(f64) -> (f64, f64) + Send + Sync + 'static,
    {
        Self::Custom { f: Arc::new(f), max_speed }
    }

    #[inline]
    pub fn at(&self, t: f64) -> (f64, f64) {
        match self {
            Self::Constant { wx, wy } => (*wx, *wy),
            Self::Sinusoidal { mean, amplitude, omega, phase } => {
                let s = math::sin(omega * t + phase);
                (mean.0 + amplitude.0 * s, mean.1 + amplitude.1 * s)
            }
            Self::Custom { f, .. } => f(t),
        }
    }

    /// Upper bound on `|w(t)|`.
    pub fn max_speed(&self) -> f64 {
        match self {
            Self::Constant { wx, wy } => math::hypot(*wx, *wy),
            Self::Sinusoidal { mean, amplitude, .. } => {
                math::hypot(mean.0, mean.1) + math::hypot(amplitude.0, amplitude.1)
            }
            Self::Custom { max_speed, .. } => *max_speed,
        }
    }
}

impl fmt::Debug for WindModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant { wx, wy } => f.debug_struct("Constant").field("wx", wx).field("wy", wy).finish(),
            Self::Sinusoidal { mean, amplitude, omega, phase } => f
                .debug_struct("Sinusoidal")
                .field("mean", mean)
                .field("amplitude", amplitude)
                .field("omega", omega)
                .field("phase", phase)
                .finish(),
            Self::Custom { max_speed, .. } => f.debug_struct("Custom").field("max_speed", max_speed).finish_non_exhaustive(),
        }
    }
}

/// A wind model together with the ground-frame goal configuration.
#[derive(Debug, Clone)]
pub struct WindField {
    pub model: WindModel,
    pub goal: Configuration,
}

/// Air-frame image of a ground-frame goal under wind drift.
#[derive(Clone)]
pub struct WindTarget {
    field: WindField,
    /// Cumulative drift `∫₀^{kΔ} w` at every checkpoint `kΔ`.
    checkpoints: Arc<[(f64, f64)]>,
}

impl WindTarget {
    fn new(field: WindField) -> Self {
        let n = math::ceil(WIND_CACHE_HORIZON / WIND_CHECKPOINT) as usize;
        let mut checkpoints = Vec::with_capacity(n + 1);
        let (mut ix, mut iy) = (0.0, 0.0);
        checkpoints.push((ix, iy));
        for k in 0..n {
            let a = k as f64 * WIND_CHECKPOINT;
            let b = a + WIND_CHECKPOINT;
            let (dx, dy) = drift(&field.model, a, b);
            ix += dx;
            iy += dy;
            checkpoints.push((ix, iy));
        }
        Self { field, checkpoints: checkpoints.into() }
    }

    pub fn field(&self) -> &WindField {
        &self.field
    }

    /// `∫₀ᵗ w(τ) dτ` for `t ≥ 0`.
    pub fn drift_until(&self, t: f64) -> (f64, f64) {
        let t = t.max(0.0);
        let k = (math::floor(t / WIND_CHECKPOINT) as usize).min(self.checkpoints.len() - 1);
        let a = k as f64 * WIND_CHECKPOINT;
        let (cx, cy) = self.checkpoints[k];
        let (dx, dy) = drift(&self.field.model, a, t);
        (cx + dx, cy + dy)
    }
}

fn drift(model: &WindModel, a: f64, b: f64) -> (f64, f64) {
    match model {
        WindModel::Constant { wx, wy } => {
            // Simpson's rule is exact for constants; skip the recursion.
            (wx * (b - a), wy * (b - a))
        }
        _ => (
            adaptive_simpson(&|t| model.at(t).0, a, b, WIND_QUADRATURE_TOL),
            adaptive_simpson(&|t| model.at(t).1, a, b, WIND_QUADRATURE_TOL),
        ),
    }
}

/// The parameters that define a target motion.
#[derive(Clone)]
pub enum TargetKind {
    Static(Configuration),
    RotatingPoint { x0: f64, y0: f64, alpha: f64 },
    Linear { start: Configuration, vx: f64, vy: f64 },
    Circular { cx: f64, cy: f64, r: f64, omega: f64, phase: f64, heading_offset: f64 },
    Wind(WindTarget),
    Sampled(Arc<[(f64, Configuration)]>),
    Mirror(Arc<TargetTrajectory>),
    Custom { f: TargetFn, lipschitz: f64 },
}

impl fmt::Debug for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Static(p) => f.debug_tuple("Static").field(p).finish(),
            Self::RotatingPoint { x0, y0, alpha } => {
                f.debug_struct("RotatingPoint").field("x0", x0).field("y0", y0).field("alpha", alpha).finish()
            }
            Self::Linear { start, vx, vy } => {
                f.debug_struct("Linear").field("start", start).field("vx", vx).field("vy", vy).finish()
            }
            Self::Circular { cx, cy, r, omega, phase, heading_offset } => f
                .debug_struct("Circular")
                .field("cx", cx)
                .field("cy", cy)
                .field("r", r)
                .field("omega", omega)
                .field("phase", phase)
                .field("heading_offset", heading_offset)
                .finish(),
            Self::Wind(w) => f.debug_tuple("Wind").field(&w.field).finish(),
            Self::Sampled(s) => f.debug_struct("Sampled").field("samples", &s.len()).finish(),
            Self::Mirror(inner) => f.debug_tuple("Mirror").field(inner).finish(),
            Self::Custom { lipschitz, .. } => f.debug_struct("Custom").field("lipschitz", lipschitz).finish_non_exhaustive(),
        }
    }
}

/// A continuous target motion `E(t) = (x_E(t), y_E(t), φ_E(t))`.
///
/// Values are immutable and cheap to clone; evaluation is a pure function of
/// `t` and safe to call from several threads.
#[derive(Clone, Debug)]
pub struct TargetTrajectory {
    kind: TargetKind,
}

impl TargetTrajectory {
    /// `E(t) = p` for all `t`.
    pub fn static_target(p: Configuration) -> Self {
        Self { kind: TargetKind::Static(p) }
    }

    /// A point resting at `(x0, y0)` whose orientation turns at rate `alpha`.
    pub fn rotating_point(x0: f64, y0: f64, alpha: f64) -> Self {
        Self { kind: TargetKind::RotatingPoint { x0, y0, alpha } }
    }

    /// Uniform straight-line motion with constant orientation.
    pub fn linear_uniform(start: Configuration, vx: f64, vy: f64) -> Self {
        Self { kind: TargetKind::Linear { start, vx, vy } }
    }

    /// Motion on the circle of radius `r` about `(cx, cy)` at polar angle
    /// `phase + ωt`, with heading `phase + ωt + heading_offset`
    /// (`heading_offset = π/2` is tangential for `ω > 0`).
    pub fn circular(cx: f64, cy: f64, r: f64, omega: f64, phase: f64, heading_offset: f64) -> Result<Self, TargetError> {
        if !(r > 0.0) {
            return Err(TargetError::NonPositiveRadius(r));
        }
        Ok(Self { kind: TargetKind::Circular { cx, cy, r, omega, phase, heading_offset } })
    }

    /// The air-frame point whose arrival at time `T` is equivalent to reaching
    /// the ground-frame goal under wind drift:
    /// `E(t) = goal − ∫₀ᵗ w(τ) dτ`, heading fixed.
    pub fn wind_goal(field: WindField) -> Self {
        Self { kind: TargetKind::Wind(WindTarget::new(field)) }
    }

    /// Piecewise-linear track through `(t, config)` samples; headings follow
    /// the shortest arc and the track is held constant outside its time span.
    pub fn sampled(samples: Vec<(f64, Configuration)>) -> Result<Self, TargetError> {
        if samples.len() < 2 {
            return Err(TargetError::TooFewSamples(samples.len()));
        }
        for (i, (t, c)) in samples.iter().enumerate() {
            if !(t.is_finite() && c.x.is_finite() && c.y.is_finite() && c.phi.radians().is_finite()) {
                return Err(TargetError::NotFinite);
            }
            if i > 0 && !(*t > samples[i - 1].0) {
                return Err(TargetError::NonMonotoneTimes(i));
            }
        }
        Ok(Self { kind: TargetKind::Sampled(samples.into()) })
    }

    /// Mirror image across the plane `x = 0`: `(−x_E, y_E, π − φ_E)`.
    pub fn mirror(&self) -> Self {
        Self { kind: TargetKind::Mirror(Arc::new(self.clone())) }
    }

    /// Arbitrary continuous motion with a declared Lipschitz constant (in the
    /// configuration metric, per unit time).
    pub fn from_fn<F>(f: F, lipschitz: f64) -> Self
    where
        F: Fn(f64) -> Configuration + Send + Sync + 'static,
    {
        Self { kind: TargetKind::Custom { f: Arc::new(f), lipschitz } }
    }

    pub fn kind(&self) -> &TargetKind {
        &self.kind
    }

    /// Short tag naming the motion model.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            TargetKind::Static(_) => "static",
            TargetKind::RotatingPoint { .. } => "rotating_point",
            TargetKind::Linear { .. } => "linear",
            TargetKind::Circular { .. } => "circular",
            TargetKind::Wind(_) => "wind",
            TargetKind::Sampled(_) => "track",
            TargetKind::Mirror(_) => "mirror",
            TargetKind::Custom { .. } => "custom",
        }
    }

    /// `E(t)`.
    pub fn at(&self, t: f64) -> Configuration {
        match &self.kind {
            TargetKind::Static(p) => *p,
            TargetKind::RotatingPoint { x0, y0, alpha } => Configuration::new(*x0, *y0, alpha * t),
            TargetKind::Linear { start, vx, vy } => {
                Configuration { x: start.x + vx * t, y: start.y + vy * t, phi: start.phi }
            }
            TargetKind::Circular { cx, cy, r, omega, phase, heading_offset } => {
                let a = phase + omega * t;
                let (s, c) = math::sin_cos(a);
                Configuration::new(cx + r * c, cy + r * s, a + heading_offset)
            }
            TargetKind::Wind(w) => {
                let (dx, dy) = w.drift_until(t);
                let g = w.field.goal;
                Configuration { x: g.x - dx, y: g.y - dy, phi: g.phi }
            }
            TargetKind::Sampled(s) => interpolate(s, t),
            TargetKind::Mirror(inner) => inner.at(t).mirrored(),
            TargetKind::Custom { f, .. } => f(t),
        }
    }

    /// Declared Lipschitz constant of `t ↦ E(t)` in the configuration metric.
    pub fn lipschitz(&self) -> f64 {
        match &self.kind {
            TargetKind::Static(_) => 0.0,
            TargetKind::RotatingPoint { alpha, .. } => alpha.abs(),
            TargetKind::Linear { vx, vy, .. } => math::hypot(*vx, *vy),
            TargetKind::Circular { r, omega, .. } => omega.abs() * math::sqrt(r * r + 1.0),
            TargetKind::Wind(w) => w.field.model.max_speed(),
            TargetKind::Sampled(s) => s
                .windows(2)
                .map(|w| {
                    let (t0, a) = w[0];
                    let (t1, b) = w[1];
                    metric(&a, &b) / (t1 - t0)
                })
                .fold(0.0, f64::max),
            TargetKind::Mirror(inner) => inner.lipschitz(),
            TargetKind::Custom { lipschitz, .. } => *lipschitz,
        }
    }

    /// Largest observed rate `ρ(E(t), E(t+h)) / h` over probe times
    /// `0, spacing, 2·spacing, … ≤ t_end`.
    pub fn max_observed_rate(&self, t_end: f64, spacing: f64, h: f64) -> f64 {
        let n = math::floor(t_end / spacing) as usize;
        (0..=n)
            .map(|k| {
                let t = k as f64 * spacing;
                metric(&self.at(t), &self.at(t + h)) / h
            })
            .fold(0.0, f64::max)
    }
}

fn interpolate(samples: &[(f64, Configuration)], t: f64) -> Configuration {
    let first = samples[0];
    let last = samples[samples.len() - 1];
    if t <= first.0 {
        return first.1;
    }
    if t >= last.0 {
        return last.1;
    }
    // First index whose time is > t; t lies in [t_{i-1}, t_i).
    let i = samples.partition_point(|(ti, _)| *ti <= t);
    let (t0, a) = samples[i - 1];
    let (t1, b) = samples[i];
    let w = (t - t0) / (t1 - t0);
    let a_phi = a.phi.radians();
    let delta = shortest_arc(a_phi, b.phi.radians());
    Configuration { x: a.x + w * (b.x - a.x), y: a.y + w * (b.y - a.y), phi: Angle::new(a_phi + w * delta) }
}

/// Signed shortest rotation from `a` to `b`, in `[−π, π)`.
pub(crate) fn shortest_arc(a: f64, b: f64) -> f64 {
    wrap_tau(b - a + PI) - PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn near(a: &Configuration, b: &Configuration, tol: f64) -> bool {
        metric(a, b) <= tol
    }

    #[test]
    fn static_examples() {
        let p = Configuration::new(0.0, 4.0, FRAC_PI_2);
        let e = TargetTrajectory::static_target(p);
        assert!(near(&e.at(17.0), &p, 0.0));
        assert_eq!(e.lipschitz(), 0.0);
        let s = TargetTrajectory::static_target(Configuration::START);
        assert!(near(&s.at(0.0), &Configuration::START, 0.0));
    }

    #[test]
    fn rotating_point_examples() {
        let e = TargetTrajectory::rotating_point(1.0, 2.0, PI);
        assert!(near(&e.at(1.0), &Configuration::new(1.0, 2.0, PI), 1e-15));
        assert!(near(&e.at(2.0), &Configuration::new(1.0, 2.0, 0.0), 1e-15));
        let e = TargetTrajectory::rotating_point(0.0, 0.0, 1.0);
        assert!(near(&e.at(FRAC_PI_2), &Configuration::new(0.0, 0.0, FRAC_PI_2), 1e-15));
    }

    #[test]
    fn linear_examples() {
        let e = TargetTrajectory::linear_uniform(Configuration::new(3.0, 0.0, FRAC_PI_2), 0.0, 0.5);
        assert!(near(&e.at(2.0), &Configuration::new(3.0, 1.0, FRAC_PI_2), 1e-15));
        let still = TargetTrajectory::linear_uniform(Configuration::new(3.0, 0.0, 1.0), 0.0, 0.0);
        assert!(near(&still.at(9.0), &Configuration::new(3.0, 0.0, 1.0), 0.0));
    }

    #[test]
    fn circular_examples() {
        let e = TargetTrajectory::circular(1.0, -2.0, 1.0, 1.0, 0.0, FRAC_PI_2).unwrap();
        assert!(near(&e.at(0.0), &Configuration::new(2.0, -2.0, FRAC_PI_2), 1e-15));
        for k in 0..50 {
            let p = e.at(k as f64 * 0.37);
            assert!((math::hypot(p.x - 1.0, p.y + 2.0) - 1.0).abs() < 1e-14);
        }
        let still = TargetTrajectory::circular(0.0, 0.0, 2.0, 0.0, 0.5, 0.0).unwrap();
        assert!(near(&still.at(0.0), &still.at(5.0), 0.0));
        assert_eq!(TargetTrajectory::circular(0.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap_err(), TargetError::NonPositiveRadius(0.0));
    }

    #[test]
    fn wind_examples() {
        let goal = Configuration::new(2.0, 5.0, 1.0);
        let calm = TargetTrajectory::wind_goal(WindField { model: WindModel::Constant { wx: 0.0, wy: 0.0 }, goal });
        assert!(near(&calm.at(12.3), &goal, 0.0));

        let sine = TargetTrajectory::wind_goal(WindField {
            model: WindModel::Sinusoidal { mean: (0.0, 0.0), amplitude: (1.0, 0.0), omega: 1.0, phase: 0.0 },
            goal,
        });
        for k in 0..80 {
            let t = k as f64 * 0.41;
            let expected = goal.x - (1.0 - math::cos(t));
            assert!((sine.at(t).x - expected).abs() < 1e-9, "t={t}");
            assert!((sine.at(t).y - goal.y).abs() < 1e-12);
        }
        // Beyond the checkpoint cache.
        let t = WIND_CACHE_HORIZON + 3.3;
        assert!((sine.at(t).x - (goal.x - (1.0 - math::cos(t)))).abs() < 1e-8);
    }

    #[test]
    fn mirror_examples() {
        let e = TargetTrajectory::static_target(Configuration::new(3.0, 2.0, FRAC_PI_2));
        assert!(near(&e.mirror().at(1.0), &Configuration::new(-3.0, 2.0, FRAC_PI_2), 1e-15));
        let z = TargetTrajectory::static_target(Configuration::new(1.0, 1.0, 0.0));
        assert!(z.mirror().at(0.0).phi.same_as(Angle::new(PI)));
        let c = TargetTrajectory::circular(1.0, 3.0, 2.0, 0.7, 0.1, 0.4).unwrap();
        let cc = c.mirror().mirror();
        for k in 0..20 {
            let t = k as f64 * 0.5;
            assert!(near(&cc.at(t), &c.at(t), 1e-14));
        }
    }

    #[test]
    fn sampled_examples() {
        let s = TargetTrajectory::sampled(alloc::vec![
            (0.0, Configuration::new(0.0, 0.0, 0.0)),
            (1.0, Configuration::new(2.0, 0.0, 0.0)),
        ])
        .unwrap();
        assert!(near(&s.at(0.5), &Configuration::new(1.0, 0.0, 0.0), 1e-15));
        assert!(near(&s.at(1.0), &Configuration::new(2.0, 0.0, 0.0), 0.0));
        assert!(near(&s.at(7.0), &Configuration::new(2.0, 0.0, 0.0), 0.0));

        let h = TargetTrajectory::sampled(alloc::vec![
            (0.0, Configuration::new(0.0, 0.0, 7.0 * PI / 4.0)),
            (1.0, Configuration::new(0.0, 0.0, PI / 4.0)),
        ])
        .unwrap();
        assert!(h.at(0.5).phi.same_as(Angle::new(0.0)));
        assert!(near(&h.at(0.0), &Configuration::new(0.0, 0.0, 7.0 * PI / 4.0), 0.0));
        assert!((h.lipschitz() - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn sampled_validation() {
        let one = alloc::vec![(0.0, Configuration::START)];
        assert_eq!(TargetTrajectory::sampled(one).unwrap_err(), TargetError::TooFewSamples(1));
        let back = alloc::vec![(0.0, Configuration::START), (1.0, Configuration::START), (1.0, Configuration::START)];
        assert_eq!(TargetTrajectory::sampled(back).unwrap_err(), TargetError::NonMonotoneTimes(2));
    }

    #[test]
    fn shortest_arc_signs() {
        assert!((shortest_arc(0.1, 0.3) - 0.2).abs() < 1e-15);
        assert!((shortest_arc(7.0 * PI / 4.0, PI / 4.0) - FRAC_PI_2).abs() < 1e-12);
        assert!((shortest_arc(PI / 4.0, 7.0 * PI / 4.0) + FRAC_PI_2).abs() < 1e-12);
    }
}

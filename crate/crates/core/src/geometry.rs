//! Arithmetic on the circle and the configuration space `ℝ² × 𝕊`.

use core::f64::consts::{PI, TAU};
use core::fmt;

use crate::math;

/// Default tolerance, in radians, for equality of two angles on the circle.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryError {
    /// `real_mod` was called with a non-positive modulus.
    NonPositiveModulus(f64),
    /// `polar_angle` is undefined at the origin.
    ZeroVector,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveModulus(b) => write!(f, "modulus must be positive, got {b}"),
            Self::ZeroVector => f.write_str("polar angle of the zero vector is undefined"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// Floor-based remainder `a - b⌊a/b⌋`, always in `[0, b)` for `b > 0`.
pub fn real_mod(a: f64, b: f64) -> Result<f64, GeometryError> {
    if b > 0.0 {
        Ok(wrap(a, b))
    } else {
        Err(GeometryError::NonPositiveModulus(b))
    }
}

/// `real_mod` for a modulus already known to be positive.
#[inline]
pub(crate) fn wrap(a: f64, b: f64) -> f64 {
    let r = a - b * math::floor(a / b);
    // Rounding can land exactly on `b` for tiny negative `a`.
    if r >= b {
        0.0
    } else {
        r
    }
}

/// Representative of `a` in `[0, 2π)`.
#[inline]
pub(crate) fn wrap_tau(a: f64) -> f64 {
    wrap(a, TAU)
}

/// Distance from `phi` to zero along the circle, in `[0, π]`.
#[inline]
pub fn angle_abs(phi: f64) -> f64 {
    let r = wrap_tau(phi);
    r.min(TAU - r)
}

/// Counter-clockwise angle of the vector `(x, y)` from the x-axis, in `[0, 2π)`.
///
/// Uses the two-branch arccos form: `arccos(x/|v|)` for `y ≥ 0` and
/// `2π − arccos(x/|v|)` otherwise, so the range is `[0, 2π)` without any
/// remapping of a four-quadrant routine.
pub fn polar_angle(y: f64, x: f64) -> Result<f64, GeometryError> {
    if x == 0.0 && y == 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    let c = (x / math::hypot(x, y)).clamp(-1.0, 1.0);
    let a = math::acos(c);
    if y >= 0.0 {
        Ok(a)
    } else {
        let r = TAU - a;
        Ok(if r >= TAU { 0.0 } else { r })
    }
}

/// An element of the circle `𝕊`, stored as an unnormalized real.
///
/// Normalization only happens in comparisons and [`Angle::abs`], so sums of
/// arc lengths do not accumulate wrap errors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Angle(f64);

impl Angle {
    #[inline]
    pub const fn new(radians: f64) -> Self {
        Self(radians)
    }

    /// The stored (unnormalized) value.
    #[inline]
    pub const fn radians(self) -> f64 {
        self.0
    }

    /// Representative in `[0, 2π)`.
    #[inline]
    pub fn normalized(self) -> f64 {
        wrap_tau(self.0)
    }

    /// Circle distance to zero, in `[0, π]`.
    #[inline]
    pub fn abs(self) -> f64 {
        angle_abs(self.0)
    }

    /// Circle distance between two angles, in `[0, π]`.
    #[inline]
    pub fn distance(self, other: Angle) -> f64 {
        angle_abs(self.0 - other.0)
    }

    /// Equality on the circle within `tol` radians.
    #[inline]
    pub fn approx_eq(self, other: Angle, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Equality on the circle within [`ANGLE_TOLERANCE`].
    #[inline]
    pub fn same_as(self, other: Angle) -> bool {
        self.approx_eq(other, ANGLE_TOLERANCE)
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Self(radians)
    }
}

/// A point of `ℝ² × 𝕊`: planar position plus heading.
///
/// Lengths are in units of the minimum turn radius; the heading is measured
/// counter-clockwise from the x-axis.
#[derive(Debug, Clone, Copy, Default)]
pub struct Configuration {
    pub x: f64,
    pub y: f64,
    pub phi: Angle,
}

impl Configuration {
    #[inline]
    pub const fn new(x: f64, y: f64, phi: f64) -> Self {
        Self { x, y, phi: Angle::new(phi) }
    }

    /// The car's configuration at time zero: origin, heading straight up.
    pub const START: Configuration = Configuration::new(0.0, 0.0, PI / 2.0);

    /// Mirror image across the plane `x = 0`: `(x, y, φ) ↦ (−x, y, π − φ)`.
    #[inline]
    pub fn mirrored(self) -> Self {
        Self::new(-self.x, self.y, PI - self.phi.radians())
    }

    #[inline]
    pub fn distance(&self, other: &Configuration) -> f64 {
        metric(self, other)
    }

    /// Planar distance only.
    #[inline]
    pub fn position_distance(&self, other: &Configuration) -> f64 {
        math::hypot(self.x - other.x, self.y - other.y)
    }
}

/// `√((x − x₀)² + (y − y₀)² + |φ − φ₀|²)` with `|·|` the circle distance.
#[inline]
pub fn metric(p: &Configuration, q: &Configuration) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let da = p.phi.distance(q.phi);
    math::sqrt(dx * dx + dy * dy + da * da)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn real_mod_examples() {
        assert!(close(real_mod(5.0 * PI / 2.0, TAU).unwrap(), FRAC_PI_2));
        assert!(close(real_mod(-PI, TAU).unwrap(), PI));
        assert!(close(real_mod(7.0, TAU).unwrap(), 7.0 - TAU));
        assert_eq!(real_mod(1.0, 0.0), Err(GeometryError::NonPositiveModulus(0.0)));
        assert!(real_mod(1.0, -2.0).is_err());
    }

    #[test]
    fn real_mod_tiny_negative_stays_in_range() {
        let r = real_mod(-1e-300, TAU).unwrap();
        assert!((0.0..TAU).contains(&r));
    }

    #[test]
    fn angle_abs_examples() {
        assert!(close(angle_abs(3.0 * PI / 2.0), FRAC_PI_2));
        assert!(close(angle_abs(PI), PI));
        assert!(close(angle_abs(TAU), 0.0));
    }

    #[test]
    fn metric_examples() {
        let o = Configuration::new(0.0, 0.0, 0.0);
        assert_eq!(metric(&o, &o), 0.0);
        assert!(close(metric(&o, &Configuration::new(3.0, 4.0, 0.0)), 5.0));
        assert!(close(metric(&o, &Configuration::new(0.0, 0.0, 3.0 * PI)), PI));
    }

    #[test]
    fn polar_angle_examples() {
        assert!(close(polar_angle(0.0, 1.0).unwrap(), 0.0));
        assert!(close(polar_angle(1.0, 0.0).unwrap(), FRAC_PI_2));
        assert!(close(polar_angle(-1.0, 0.0).unwrap(), 3.0 * FRAC_PI_2));
        assert_eq!(polar_angle(0.0, 0.0), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn polar_angle_negative_zero_is_upper_branch() {
        assert_eq!(polar_angle(-0.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn angle_equality_on_circle() {
        assert!(Angle::new(0.0).same_as(Angle::new(TAU)));
        assert!(Angle::new(-FRAC_PI_2).same_as(Angle::new(3.0 * FRAC_PI_2)));
        assert!(!Angle::new(0.0).same_as(Angle::new(1e-6)));
    }

    #[test]
    fn mirror_is_involution() {
        let p = Configuration::new(3.0, 2.0, 0.3);
        let back = p.mirrored().mirrored();
        assert!(metric(&p, &back) < 1e-15);
        assert!(p.mirrored().phi.same_as(Angle::new(PI - 0.3)));
    }
}

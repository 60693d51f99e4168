//! Real-plane primitives: the billiard ellipse, its eccentric-angle
//! parametrization, tangents, the confocal family and chord intersections.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this cosine between a chord direction and the boundary normal the
/// direction is treated as tangent.
const TANGENCY_COS: f64 = 1e-14;
/// Chords shorter than this (relative to `a`) cannot be resolved.
const MIN_ROOT_SEPARATION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RealPoint {
    pub x: f64,
    pub y: f64,
}

impl RealPoint {
    pub const ORIGIN: RealPoint = RealPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: RealPoint) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product.
    pub fn cross(self, other: RealPoint) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: RealPoint) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Mirror image in the x-axis.
    pub fn mirror_x(self) -> Self {
        Self::new(self.x, -self.y)
    }
}

impl Add for RealPoint {
    type Output = RealPoint;
    fn add(self, rhs: RealPoint) -> RealPoint {
        RealPoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for RealPoint {
    type Output = RealPoint;
    fn sub(self, rhs: RealPoint) -> RealPoint {
        RealPoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<RealPoint> for f64 {
    type Output = RealPoint;
    fn mul(self, rhs: RealPoint) -> RealPoint {
        RealPoint::new(self * rhs.x, self * rhs.y)
    }
}

impl Neg for RealPoint {
    type Output = RealPoint;
    fn neg(self) -> RealPoint {
        RealPoint::new(-self.x, -self.y)
    }
}

/// A unit vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    dx: f64,
    dy: f64,
}

impl Direction {
    /// Normalizes `(dx, dy)`. Zero or non-finite input is a domain error.
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        let n = dx.hypot(dy);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain(format!("cannot normalize direction ({dx}, {dy})")));
        }
        Ok(Self { dx: dx / n, dy: dy / n })
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            dx: theta.cos(),
            dy: theta.sin(),
        }
    }

    /// Unit direction from `from` towards `to`.
    pub fn between(from: RealPoint, to: RealPoint) -> Result<Self> {
        Self::new(to.x - from.x, to.y - from.y)
    }

    pub fn dx(self) -> f64 {
        self.dx
    }

    pub fn dy(self) -> f64 {
        self.dy
    }

    pub fn as_vector(self) -> RealPoint {
        RealPoint::new(self.dx, self.dy)
    }

    pub fn dot(self, other: Direction) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    pub fn cross(self, other: Direction) -> f64 {
        self.dx * other.dy - self.dy * other.dx
    }

    /// Signed angle turning `self` onto `other`, in (-π, π].
    pub fn angle_to(self, other: Direction) -> f64 {
        self.cross(other).atan2(self.dot(other))
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

/// Axis-aligned ellipse x²/a² + y²/b² = 1 centered at the origin, with the
/// foci on the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    a: f64,
    b: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > 0.0 && a >= b) {
            return Err(Error::Domain(format!(
                "ellipse needs a >= b > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_circle(&self) -> bool {
        self.a == self.b
    }

    /// Linear eccentricity c = sqrt(a² − b²), half the focal distance.
    pub fn linear_eccentricity(&self) -> f64 {
        ((self.a - self.b) * (self.a + self.b)).sqrt()
    }

    /// x²/a² + y²/b² − 1.
    pub fn implicit(&self, p: RealPoint) -> f64 {
        (p.x / self.a).powi(2) + (p.y / self.b).powi(2) - 1.0
    }

    /// Eccentric-angle parameter of a point on (or near) the ellipse.
    pub fn parameter_of(&self, p: RealPoint) -> f64 {
        (p.y / self.b).atan2(p.x / self.a).rem_euclid(TAU)
    }

    pub fn point(&self, t: f64) -> RealPoint {
        ellipse_point(self, t)
    }

    pub fn tangent(&self, t: f64) -> Direction {
        ellipse_tangent_dir(self, t)
    }
}

/// `(a cos t, b sin t)`.
pub fn ellipse_point(e: &Ellipse, t: f64) -> RealPoint {
    let (s, c) = t.sin_cos();
    RealPoint::new(e.a * c, e.b * s)
}

/// Counterclockwise unit tangent at parameter `t`.
pub fn ellipse_tangent_dir(e: &Ellipse, t: f64) -> Direction {
    let (s, c) = t.sin_cos();
    Direction::new(-e.a * s, e.b * c).expect("ellipse tangent never vanishes")
}

/// Member of the confocal family with squared semi-axes shifted down by `lambda`.
pub fn confocal_ellipse(e: &Ellipse, lambda: f64) -> Result<Ellipse> {
    let b2 = e.b * e.b;
    if !(lambda.is_finite() && (0.0..b2).contains(&lambda)) {
        return Err(Error::Domain(format!(
            "confocal shift {lambda} outside [0, {b2})"
        )));
    }
    Ellipse::new((e.a * e.a - lambda).sqrt(), (b2 - lambda).sqrt())
}

/// Parameter of the second intersection of the line through `P(t)` with
/// direction `d`, returned in [0, 2π).
pub fn chord_from(e: &Ellipse, t: f64, d: Direction) -> Result<f64> {
    let p = ellipse_point(e, t);
    let (a2, b2) = (e.a * e.a, e.b * e.b);
    // Quadratic in the line parameter s with the root s = 0 factored out:
    //   s * (quad * s + 2 * lin) = 0
    let quad = d.dx * d.dx / a2 + d.dy * d.dy / b2;
    let lin = p.x * d.dx / a2 + p.y * d.dy / b2;
    let normal = RealPoint::new(p.x / a2, p.y / b2).norm();
    if (lin / normal).abs() <= TANGENCY_COS {
        return Err(Error::Tangency { t });
    }
    let s = -2.0 * lin / quad;
    if s.abs() < MIN_ROOT_SEPARATION * e.a {
        return Err(Error::NearTangency { t, separation: s.abs() });
    }
    Ok(e.parameter_of(p + s * d.as_vector()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn angle_close(a: f64, b: f64, tol: f64) -> bool {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d) <= tol
    }

    #[test]
    fn points_on_axes() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let p = ellipse_point(&e, 0.0);
        assert_eq!((p.x, p.y), (2.0, 0.0));
        let p = ellipse_point(&e, FRAC_PI_2);
        assert!(close(p.x, 0.0, 1e-15) && close(p.y, 1.0, 1e-15));
        let c = Ellipse::new(1.0, 1.0).unwrap();
        let p = ellipse_point(&c, PI);
        assert!(close(p.x, -1.0, 1e-15) && close(p.y, 0.0, 1e-15));
    }

    #[test]
    fn tangent_directions() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let cases = [(0.0, (0.0, 1.0)), (FRAC_PI_2, (-1.0, 0.0)), (PI, (0.0, -1.0))];
        for (t, (dx, dy)) in cases {
            let d = ellipse_tangent_dir(&e, t);
            assert!(close(d.dx(), dx, 1e-15) && close(d.dy(), dy, 1e-15), "t = {t}");
        }
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(Ellipse::new(1.0, 2.0).is_err());
        assert!(Ellipse::new(1.0, 0.0).is_err());
        assert!(Ellipse::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn confocal_family() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert_eq!(confocal_ellipse(&e, 0.0).unwrap(), e);
        let g = confocal_ellipse(&e, 0.75).unwrap();
        assert!(close(g.a(), 3.25f64.sqrt(), 1e-15));
        assert!(close(g.b(), 0.5, 1e-15));
        assert!(matches!(confocal_ellipse(&e, 1.0), Err(Error::Domain(_))));
        assert!(matches!(confocal_ellipse(&e, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn chords() {
        let c = Ellipse::new(1.0, 1.0).unwrap();
        let t = chord_from(&c, 0.0, Direction::new(-1.0, 0.0).unwrap()).unwrap();
        assert!(angle_close(t, PI, 1e-14));
        let h = 0.5f64.sqrt();
        let t = chord_from(&c, 0.0, Direction::new(-h, h).unwrap()).unwrap();
        assert!(angle_close(t, FRAC_PI_2, 1e-14));

        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert_eq!(
            chord_from(&e, 0.0, Direction::new(0.0, 1.0).unwrap()),
            Err(Error::Tangency { t: 0.0 })
        );
        let near = Direction::from_angle(FRAC_PI_2 + 1e-12);
        assert!(matches!(
            chord_from(&e, 0.0, near),
            Err(Error::NearTangency { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn points_satisfy_implicit(a in 1.0f64..20.0, ratio in 0.05f64..=1.0, t in -10.0f64..10.0) {
                let e = Ellipse::new(a, a * ratio).unwrap();
                prop_assert!(e.implicit(ellipse_point(&e, t)).abs() <= 1e-14);
            }

            #[test]
            fn confocal_keeps_focal_distance(a in 1.0f64..20.0, ratio in 0.05f64..=1.0, frac in 0.0f64..0.999) {
                let e = Ellipse::new(a, a * ratio).unwrap();
                let g = confocal_ellipse(&e, frac * e.b() * e.b()).unwrap();
                let c2 = e.a() * e.a() - e.b() * e.b();
                let g2 = g.a() * g.a() - g.b() * g.b();
                prop_assert!((c2 - g2).abs() <= 1e-14 * e.a() * e.a());
            }

            #[test]
            fn chord_is_an_involution(a in 1.0f64..10.0, ratio in 0.1f64..=1.0, t in 0.0f64..TAU, turn in 0.05f64..3.09) {
                let e = Ellipse::new(a, a * ratio).unwrap();
                // rotate the tangent inwards by `turn` so the chord is transversal
                let tan = ellipse_tangent_dir(&e, t);
                let d = Direction::from_angle(tan.dy().atan2(tan.dx()) + turn);
                let t2 = chord_from(&e, t, d).unwrap();
                prop_assert!(e.implicit(ellipse_point(&e, t2)).abs() <= 1e-12);
                let back = chord_from(&e, t2, -d).unwrap();
                prop_assert!(angle_close(back, t, 1e-10), "{} vs {}", back, t);
            }
        }
    }
}

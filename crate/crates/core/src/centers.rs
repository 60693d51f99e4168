//! Circumcenter, incenter, centroid and orthocenter of a triangle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conic::RealPoint;
use crate::error::{Error, Result};

const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKind {
    Circumcenter,
    Incenter,
    Centroid,
    Orthocenter,
}

impl CenterKind {
    pub const ALL: [CenterKind; 4] = [
        CenterKind::Circumcenter,
        CenterKind::Incenter,
        CenterKind::Centroid,
        CenterKind::Orthocenter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CenterKind::Circumcenter => "circumcenter",
            CenterKind::Incenter => "incenter",
            CenterKind::Centroid => "centroid",
            CenterKind::Orthocenter => "orthocenter",
        }
    }
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CenterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CenterKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown center kind '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleData {
    pub center: RealPoint,
    pub radius: f64,
}

/// Rejects collinear input; thresholds scale with the squared diameter.
fn check_triangle(v1: RealPoint, v2: RealPoint, v3: RealPoint) -> Result<()> {
    if !(v1.is_finite() && v2.is_finite() && v3.is_finite()) {
        return Err(Error::Degenerate("non-finite vertex".into()));
    }
    let diam = v1.distance(v2).max(v2.distance(v3)).max(v3.distance(v1));
    let twice_area = (v2 - v1).cross(v3 - v1);
    if !(twice_area.abs() > COLLINEAR_TOL * diam * diam) {
        return Err(Error::Degenerate(format!(
            "collinear vertices (twice signed area {twice_area:e})"
        )));
    }
    Ok(())
}

/// Solves the 2×2 system `[r0; r1] x = rhs` with partial pivoting.
fn solve2(r0: [f64; 2], r1: [f64; 2], rhs: [f64; 2]) -> Result<[f64; 2]> {
    let (mut r0, mut r1, mut rhs) = (r0, r1, rhs);
    if r1[0].abs() > r0[0].abs() {
        std::mem::swap(&mut r0, &mut r1);
        rhs.swap(0, 1);
    }
    if r0[0] == 0.0 {
        return Err(Error::Degenerate("singular 2x2 system".into()));
    }
    let m = r1[0] / r0[0];
    let a11 = r1[1] - m * r0[1];
    let b1 = rhs[1] - m * rhs[0];
    if a11 == 0.0 {
        return Err(Error::Degenerate("singular 2x2 system".into()));
    }
    let y = b1 / a11;
    let x = (rhs[0] - r0[1] * y) / r0[0];
    Ok([x, y])
}

/// Circle through three non-collinear points, from the perpendicular bisectors.
pub fn circumcircle(v1: RealPoint, v2: RealPoint, v3: RealPoint) -> Result<CircleData> {
    check_triangle(v1, v2, v3)?;
    // Work relative to v1: 2 (vi − v1) · x = |vi − v1|².
    let (p, q) = (v2 - v1, v3 - v1);
    let [x, y] = solve2([2.0 * p.x, 2.0 * p.y], [2.0 * q.x, 2.0 * q.y], [p.dot(p), q.dot(q)])?;
    let offset = RealPoint::new(x, y);
    Ok(CircleData {
        center: v1 + offset,
        radius: offset.norm(),
    })
}

pub fn centroid(v1: RealPoint, v2: RealPoint, v3: RealPoint) -> RealPoint {
    (1.0 / 3.0) * (v1 + v2 + v3)
}

pub fn incenter(v1: RealPoint, v2: RealPoint, v3: RealPoint) -> Result<RealPoint> {
    check_triangle(v1, v2, v3)?;
    let (l1, l2, l3) = (v2.distance(v3), v3.distance(v1), v1.distance(v2));
    Ok((1.0 / (l1 + l2 + l3)) * (l1 * v1 + l2 * v2 + l3 * v3))
}

/// Intersection of the altitudes from `v1` and `v2`.
pub fn orthocenter(v1: RealPoint, v2: RealPoint, v3: RealPoint) -> Result<RealPoint> {
    check_triangle(v1, v2, v3)?;
    // (x − v1) · (v3 − v2) = 0 and (x − v2) · (v3 − v1) = 0, relative to v1.
    let (s1, s2) = (v3 - v2, v3 - v1);
    let [x, y] = solve2([s1.x, s1.y], [s2.x, s2.y], [0.0, (v2 - v1).dot(s2)])?;
    Ok(v1 + RealPoint::new(x, y))
}

pub fn triangle_center(kind: CenterKind, v1: RealPoint, v2: RealPoint, v3: RealPoint) -> Result<RealPoint> {
    match kind {
        CenterKind::Circumcenter => circumcircle(v1, v2, v3).map(|c| c.center),
        CenterKind::Incenter => incenter(v1, v2, v3),
        CenterKind::Centroid => {
            check_triangle(v1, v2, v3)?;
            Ok(centroid(v1, v2, v3))
        }
        CenterKind::Orthocenter => orthocenter(v1, v2, v3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> RealPoint {
        RealPoint::new(x, y)
    }

    fn close(a: RealPoint, b: RealPoint, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn circumcircle_examples() {
        let c = circumcircle(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)).unwrap();
        assert!(close(c.center, p(0.5, 0.5), 1e-15));
        assert!((c.radius - 0.5f64.sqrt()).abs() <= 1e-15);

        let third = std::f64::consts::TAU / 3.0;
        let v = [0.0, third, 2.0 * third].map(|t: f64| p(t.cos(), t.sin()));
        let c = circumcircle(v[0], v[1], v[2]).unwrap();
        assert!(close(c.center, RealPoint::ORIGIN, 1e-15));
        assert!((c.radius - 1.0).abs() <= 1e-15);

        assert!(matches!(
            circumcircle(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn other_centers() {
        let g = triangle_center(CenterKind::Centroid, p(0.0, 0.0), p(3.0, 0.0), p(0.0, 3.0)).unwrap();
        assert!(close(g, p(1.0, 1.0), 1e-15));
        let i = triangle_center(CenterKind::Incenter, p(0.0, 0.0), p(4.0, 0.0), p(0.0, 3.0)).unwrap();
        assert!(close(i, p(1.0, 1.0), 1e-15));
        let h = triangle_center(CenterKind::Orthocenter, p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)).unwrap();
        assert!(close(h, p(0.0, 0.0), 1e-15));
        for kind in CenterKind::ALL {
            assert!(triangle_center(kind, p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)).is_err());
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in CenterKind::ALL {
            assert_eq!(kind.name().parse::<CenterKind>().unwrap(), kind);
        }
        assert!("nine-point".parse::<CenterKind>().is_err());
    }

    fn triangle() -> impl Strategy<Value = [RealPoint; 3]> {
        prop::array::uniform3((-10.0f64..10.0, -10.0f64..10.0))
            .prop_map(|v| v.map(|(x, y)| p(x, y)))
            .prop_filter("well-shaped", |v| {
                let d = v[0].distance(v[1]).max(v[1].distance(v[2])).max(v[2].distance(v[0]));
                (v[1] - v[0]).cross(v[2] - v[0]).abs() > 1e-2 * d * d && d > 0.1
            })
    }

    proptest! {
        #[test]
        fn euler_line(v in triangle()) {
            let o = circumcircle(v[0], v[1], v[2]).unwrap().center;
            let g = centroid(v[0], v[1], v[2]);
            let h = orthocenter(v[0], v[1], v[2]).unwrap();
            let defect = (h - g) - 2.0 * (g - o);
            let scale = o.norm().max(h.norm()).max(1.0);
            prop_assert!(defect.norm() <= 1e-9 * scale);
        }

        #[test]
        fn circumcircle_passes_through_vertices(v in triangle()) {
            let c = circumcircle(v[0], v[1], v[2]).unwrap();
            for q in v {
                prop_assert!((c.center.distance(q) - c.radius).abs() <= 1e-10 * c.radius);
            }
        }

        #[test]
        fn rigid_motion_equivariance(v in triangle(), angle in 0.0f64..6.3, tx in -5.0f64..5.0, ty in -5.0f64..5.0) {
            let (s, c) = angle.sin_cos();
            let motion = |q: RealPoint| p(c * q.x - s * q.y + tx, s * q.x + c * q.y + ty);
            for kind in CenterKind::ALL {
                let before = motion(triangle_center(kind, v[0], v[1], v[2]).unwrap());
                let after = triangle_center(kind, motion(v[0]), motion(v[1]), motion(v[2])).unwrap();
                let scale = before.norm().max(1.0);
                prop_assert!(before.distance(after) <= 1e-10 * scale, "{kind}");
            }
        }
    }
}

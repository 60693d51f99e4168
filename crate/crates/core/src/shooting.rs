//! Independent cross-check for the caustic: solves the reflection law at the
//! vertices directly, without any reference to confocal tangent chords.

use std::f64::consts::{PI, TAU};

use crate::conic::{ellipse_point, ellipse_tangent_dir, Direction, Ellipse};
use crate::error::{Error, Result};

/// Signed equal-angle defect at `P(t)` for a path `P(prev) → P(t) → P(next)`.
fn law_defect(e: &Ellipse, prev: f64, t: f64, next: f64) -> f64 {
    let (p, v, n) = (ellipse_point(e, prev), ellipse_point(e, t), ellipse_point(e, next));
    let (Ok(incoming), Ok(outgoing)) = (Direction::between(p, v), Direction::between(v, n)) else {
        return f64::NAN;
    };
    let tangent = ellipse_tangent_dir(e, t);
    let d = incoming.angle_to(tangent) - tangent.angle_to(outgoing);
    (d + PI).rem_euclid(TAU) - PI
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotOrbit {
    pub t: [f64; 3],
    /// Max equal-angle defect over all three vertices.
    pub residual: f64,
    /// Confocal shift that makes side `P(t0)P(t1)` tangent to Γ_λ.
    pub lambda: f64,
}

/// Symmetric start: with the first vertex at (a, 0) the other two sit at
/// ±s, and the law at `P(s)` is a 1D equation in `s`.
fn symmetric_guess(e: &Ellipse) -> Result<f64> {
    let f = |s: f64| law_defect(e, 0.0, s, TAU - s);
    let n = 256;
    let grid: Vec<f64> = (1..n).map(|k| PI * k as f64 / n as f64).collect();
    let (mut lo, mut hi) = grid
        .windows(2)
        .find(|w| {
            let (a, b) = (f(w[0]), f(w[1]));
            a.is_finite() && b.is_finite() && a.signum() != b.signum() && (a - b).abs() < 1.0
        })
        .map(|w| (w[0], w[1]))
        .ok_or_else(|| Error::Solver("no sign change for the symmetric orbit".into()))?;
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iteration on (t1, t2) imposing the law at `P(t1)` and `P(t2)`,
/// with `t0` held fixed.
pub fn shoot_orbit(e: &Ellipse, t0: f64, guess: (f64, f64)) -> Result<ShotOrbit> {
    let residuals = |x: [f64; 2]| {
        [
            law_defect(e, t0, x[0], x[1]),
            law_defect(e, x[0], x[1], t0),
        ]
    };
    let mut x = [guess.0, guess.1];
    let h = 1e-7;
    for _ in 0..60 {
        let r = residuals(x);
        if !(r[0].is_finite() && r[1].is_finite()) {
            return Err(Error::Solver("shooting left the admissible region".into()));
        }
        if r[0].abs().max(r[1].abs()) < 1e-15 {
            break;
        }
        let mut jac = [[0.0; 2]; 2];
        for j in 0..2 {
            let (mut xp, mut xm) = (x, x);
            xp[j] += h;
            xm[j] -= h;
            let (rp, rm) = (residuals(xp), residuals(xm));
            for i in 0..2 {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Solver("singular shooting Jacobian".into()));
        }
        let dx0 = (r[0] * jac[1][1] - r[1] * jac[0][1]) / det;
        let dx1 = (jac[0][0] * r[1] - jac[1][0] * r[0]) / det;
        let step = [dx0, dx1];
        x = [x[0] - step[0], x[1] - step[1]];
        if step[0].abs().max(step[1].abs()) < 1e-16 {
            break;
        }
    }
    let t = [t0, x[0], x[1]];
    let residual = [
        law_defect(e, t[2], t[0], t[1]),
        law_defect(e, t[0], t[1], t[2]),
        law_defect(e, t[1], t[2], t[0]),
    ]
    .into_iter()
    .fold(0.0f64, |m, r| m.max(r.abs()));

    // Line n·x = w through the first side, |n| = 1; Γ_λ is tangent to it iff
    // (a² − λ) n_x² + (b² − λ) n_y² = w².
    let (p, q) = (ellipse_point(e, t[0]), ellipse_point(e, t[1]));
    let d = q - p;
    let len = d.norm();
    let (nx, ny) = (d.y / len, -d.x / len);
    let w = nx * p.x + ny * p.y;
    let lambda = e.a() * e.a() * nx * nx + e.b() * e.b() * ny * ny - w * w;
    Ok(ShotOrbit { t, residual, lambda })
}

/// Caustic shift from the orbit through (a, 0), found by shooting.
pub fn shooting_caustic(e: &Ellipse) -> Result<ShotOrbit> {
    let s = symmetric_guess(e)?;
    shoot_orbit(e, 0.0, (s, TAU - s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_in_circle() {
        let circle = Ellipse::new(1.0, 1.0).unwrap();
        let shot = shooting_caustic(&circle).unwrap();
        assert!((shot.t[1] - TAU / 3.0).abs() < 1e-12);
        assert!((shot.lambda - 0.75).abs() < 1e-12);
        assert!(shot.residual < 1e-12);
    }

    #[test]
    fn off_axis_start() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let base = shooting_caustic(&e).unwrap();
        let shot = shoot_orbit(&e, 0.4, (0.4 + 2.2, 0.4 + 4.0)).unwrap();
        assert!(shot.residual < 1e-12, "{}", shot.residual);
        assert!((shot.lambda - base.lambda).abs() < 1e-11);
    }
}

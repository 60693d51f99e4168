//! Billiard map on the ellipse, the caustic of the triangular family, and
//! the Poncelet triangle through a boundary point.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::conic::{
    chord_from, confocal_ellipse, ellipse_point, ellipse_tangent_dir, Direction, Ellipse,
    RealPoint,
};
use crate::error::{Error, Result};

/// Default bound on |g(λ*)| for [`find_caustic`].
pub const CAUSTIC_TOL: f64 = 1e-12;
/// Default closure tolerance for accepting an orbit.
pub const CLOSURE_TOL: f64 = 1e-9;

const GRID_POINTS: usize = 64;
/// Smallest caustic minor semi-axis (relative to `b`) probed by the bracket scan.
const GRID_MIN_MINOR: f64 = 1e-12;
const MIN_AREA: f64 = 1e-10;
const MIN_SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub t: [f64; 3],
    pub vertices: [RealPoint; 3],
    pub closure_residual: f64,
}

impl Orbit {
    pub fn sides(&self) -> [(RealPoint, RealPoint); 3] {
        let v = &self.vertices;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])]
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        self.sides().map(|(p, q)| p.distance(q))
    }

    pub fn area(&self) -> f64 {
        let [p, q, r] = self.vertices;
        0.5 * (q - p).cross(r - p).abs()
    }

    /// True when `other` has the same vertices up to cyclic order and reversal.
    pub fn same_triangle(&self, other: &Orbit, tol: f64) -> bool {
        let close = |p: RealPoint, q: RealPoint| p.distance(q) <= tol;
        let v = self.vertices;
        let w = other.vertices;
        (0..3).any(|shift| {
            let fwd = (0..3).all(|i| close(v[i], w[(i + shift) % 3]));
            let rev = (0..3).all(|i| close(v[i], w[(3 + shift - i) % 3]));
            fwd || rev
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausticResult {
    pub lambda: f64,
    pub caustic: Ellipse,
    pub bracket: (f64, f64),
    pub residual: f64,
}

/// Mirror `d` in the line spanned by `tangent`.
pub fn reflect_direction(d: Direction, tangent: Direction) -> Direction {
    let k = 2.0 * d.dot(tangent);
    Direction::new(k * tangent.dx() - d.dx(), k * tangent.dy() - d.dy())
        .expect("reflection of a unit vector is a unit vector")
}

/// One bounce: travel along `d` from `P(t)`, reflect at the next impact.
pub fn billiard_step(e: &Ellipse, t: f64, d: Direction) -> Result<(f64, Direction)> {
    let next = chord_from(e, t, d)?;
    Ok((next, reflect_direction(d, ellipse_tangent_dir(e, next))))
}

/// Direction of the tangent from `P(t)` to `caustic` that keeps the
/// caustic on the left, i.e. advances `t` counterclockwise.
fn tangent_chord_direction(e: &Ellipse, caustic: &Ellipse, t: f64) -> Result<Direction> {
    let p = ellipse_point(e, t);
    let (ca, cb) = (caustic.a(), caustic.b());
    // Tangent at Q(s) = (ca cos s, cb sin s) passes through p iff
    //   (p.x/ca) cos s + (p.y/cb) sin s = 1.
    let (u, v) = (p.x / ca, p.y / cb);
    let r = u.hypot(v);
    if !(r > 1.0) {
        return Err(Error::Degenerate(format!(
            "boundary point at t = {t} is not outside the caustic"
        )));
    }
    let phi = v.atan2(u);
    let half = (1.0 / r).acos();
    for s in [phi + half, phi - half] {
        let q = ellipse_point(caustic, s);
        let dir = ellipse_tangent_dir(caustic, s);
        let dir = if dir.as_vector().dot(q - p) >= 0.0 { dir } else { -dir };
        // caustic (and the origin inside it) on the left
        if dir.as_vector().cross(-p) > 0.0 {
            return Ok(dir);
        }
    }
    Err(Error::Degenerate(format!(
        "no counterclockwise tangent from t = {t}"
    )))
}

/// Next boundary parameter along the counterclockwise tangent chord.
pub fn tangent_chord(e: &Ellipse, caustic: &Ellipse, t: f64) -> Result<f64> {
    chord_from(e, t, tangent_chord_direction(e, caustic, t)?)
}

/// Unwrapped angular advance of three tangent chords starting at `t`.
fn triple_advance(e: &Ellipse, caustic: &Ellipse, t: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut cur = t;
    for _ in 0..3 {
        let next = tangent_chord(e, caustic, cur)?;
        total += (next - cur).rem_euclid(TAU);
        cur = next;
    }
    Ok(total)
}

/// g(λ): advance of three tangent chords around Γ_λ from t = 0, minus 2π.
pub fn rotation_defect(e: &Ellipse, lambda: f64) -> Result<f64> {
    let caustic = confocal_ellipse(e, lambda)?;
    Ok(triple_advance(e, &caustic, 0.0)? - TAU)
}

/// Confocal caustic Γ_λ* of the triangular orbits, by bracket scan and
/// bisection on the monotone rotation defect.
pub fn find_caustic(e: &Ellipse, tol: f64) -> Result<CausticResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("caustic tolerance must be positive, got {tol}")));
    }
    let b2 = e.b() * e.b();
    // The caustic minor semi-axis q = sqrt(b² − λ) is scanned geometrically
    // from ~b down to GRID_MIN_MINOR·b; very eccentric tables put λ* within
    // a hair of b².
    let ratio = GRID_MIN_MINOR.powf(1.0 / (GRID_POINTS - 1) as f64);
    let grid = (0..GRID_POINTS).map(|k| {
        let q = e.b() * (1.0 - 1.0 / GRID_POINTS as f64) * ratio.powi(k as i32);
        b2 - q * q
    });

    let mut lo = None;
    let mut bracket = None;
    for lambda in grid {
        if lambda <= 0.0 || lambda >= b2 {
            continue;
        }
        let g = rotation_defect(e, lambda)?;
        if g == 0.0 {
            bracket = Some((lambda, lambda));
            break;
        }
        match lo {
            Some((l, gl)) if gl < 0.0 && g > 0.0 => {
                bracket = Some((l, lambda));
                break;
            }
            _ => lo = Some((lambda, g)),
        }
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        Error::Solver(format!("no sign change of the rotation defect in (0, {b2})"))
    })?;
    let found = (lo, hi);

    let mut g_lo = rotation_defect(e, lo)?;
    let mut g_hi = rotation_defect(e, hi)?;
    while hi - lo > 1e-14 * b2 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = rotation_defect(e, mid)?;
        if g < 0.0 {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    // squeeze down to adjacent floats
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = rotation_defect(e, mid)?;
        if g < 0.0 {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    let (lambda, residual) = if g_lo.abs() <= g_hi.abs() { (lo, g_lo.abs()) } else { (hi, g_hi.abs()) };
    if residual > tol {
        return Err(Error::Solver(format!(
            "rotation defect {residual:e} at λ = {lambda} exceeds tolerance {tol:e}"
        )));
    }
    Ok(CausticResult {
        lambda,
        caustic: confocal_ellipse(e, lambda)?,
        bracket: found,
        residual,
    })
}

/// The triangle inscribed in `e` and circumscribed about `caustic` with a
/// vertex at `P(t)`, traversed counterclockwise.
pub fn poncelet_triangle(e: &Ellipse, caustic: &Ellipse, t: f64) -> Result<Orbit> {
    let t0 = t.rem_euclid(TAU);
    let t1 = tangent_chord(e, caustic, t0)?;
    let t2 = tangent_chord(e, caustic, t1)?;
    let t3 = tangent_chord(e, caustic, t2)?;
    let gap = (t3 - t0).rem_euclid(TAU);
    let orbit = Orbit {
        t: [t0, t1, t2],
        vertices: [t0, t1, t2].map(|s| ellipse_point(e, s)),
        closure_residual: gap.min(TAU - gap),
    };
    check_nondegenerate(e, &orbit)?;
    Ok(orbit)
}

fn check_nondegenerate(e: &Ellipse, o: &Orbit) -> Result<()> {
    let scale = e.a();
    let min_side = o.side_lengths().into_iter().fold(f64::INFINITY, f64::min);
    if !(min_side > MIN_SEPARATION * scale) {
        return Err(Error::Degenerate(format!("repeated vertex (side {min_side:e})")));
    }
    if !(o.area() >= MIN_AREA * scale * scale) {
        return Err(Error::Degenerate(format!("triangle area {:e} too small", o.area())));
    }
    Ok(())
}

/// Largest violation of the equal-angle law over the three vertices.
pub fn reflection_residual(e: &Ellipse, o: &Orbit) -> Result<f64> {
    let v = o.vertices;
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let prev = v[(i + 2) % 3];
        let next = v[(i + 1) % 3];
        let incoming = Direction::between(prev, v[i])
            .map_err(|_| Error::Degenerate("repeated vertex".into()))?;
        let outgoing = Direction::between(v[i], next)
            .map_err(|_| Error::Degenerate("repeated vertex".into()))?;
        if prev.distance(v[i]) <= MIN_SEPARATION * e.a() || next.distance(v[i]) <= MIN_SEPARATION * e.a() {
            return Err(Error::Degenerate("repeated vertex".into()));
        }
        let tangent = ellipse_tangent_dir(e, e.parameter_of(v[i]));
        let diff = incoming.angle_to(tangent) - tangent.angle_to(outgoing);
        let diff = (diff + PI).rem_euclid(TAU) - PI;
        worst = worst.max(diff.abs());
    }
    Ok(worst)
}

/// Distance between each side's line and the parallel tangent line of
/// `caustic` on the same side of the center; zero for exact tangency.
pub fn tangency_defects(caustic: &Ellipse, o: &Orbit) -> [f64; 3] {
    o.sides().map(|(p, q)| {
        let d = q - p;
        let n = RealPoint::new(d.y, -d.x);
        let n = (1.0 / n.norm()) * n;
        let w = n.dot(p);
        let support = (caustic.a() * n.x).hypot(caustic.b() * n.y);
        (support - w.abs()).abs()
    })
}

/// The two orbits through the major-axis vertices (a, 0) and (−a, 0).
pub fn symmetric_orbits(e: &Ellipse, caustic: &Ellipse) -> Result<(Orbit, Orbit)> {
    if e.is_circle() {
        return Err(Error::Circle);
    }
    Ok((poncelet_triangle(e, caustic, 0.0)?, poncelet_triangle(e, caustic, PI)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn angle_close(a: f64, b: f64, tol: f64) -> bool {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d) <= tol
    }

    fn dir_close(d: Direction, x: f64, y: f64) -> bool {
        (d.dx() - x).abs() <= 1e-14 && (d.dy() - y).abs() <= 1e-14
    }

    #[test]
    fn reflections() {
        let r = reflect_direction(Direction::new(1.0, 0.0).unwrap(), Direction::new(0.0, 1.0).unwrap());
        assert!(dir_close(r, -1.0, 0.0));
        let r = reflect_direction(
            Direction::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap(),
            Direction::new(1.0, 0.0).unwrap(),
        );
        assert!(dir_close(r, FRAC_1_SQRT_2, -FRAC_1_SQRT_2));
        let x = Direction::new(1.0, 0.0).unwrap();
        assert!(dir_close(reflect_direction(x, x), 1.0, 0.0));
    }

    #[test]
    fn steps() {
        let circle = Ellipse::new(1.0, 1.0).unwrap();
        let third = TAU / 3.0;
        let d = Direction::between(ellipse_point(&circle, 0.0), ellipse_point(&circle, third)).unwrap();
        let (t, out) = billiard_step(&circle, 0.0, d).unwrap();
        assert!(angle_close(t, third, 1e-14));
        let expect = Direction::between(ellipse_point(&circle, third), ellipse_point(&circle, 2.0 * third)).unwrap();
        assert!(dir_close(out, expect.dx(), expect.dy()));

        for e in [Ellipse::new(2.0, 1.0).unwrap(), circle] {
            let (t, out) = billiard_step(&e, 0.0, Direction::new(-1.0, 0.0).unwrap()).unwrap();
            assert!(angle_close(t, PI, 1e-14));
            assert!(dir_close(out, 1.0, 0.0));
        }
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert!(matches!(
            billiard_step(&e, 0.0, Direction::new(0.0, 1.0).unwrap()),
            Err(Error::Tangency { .. })
        ));
    }

    #[test]
    fn circle_caustic_and_equilateral() {
        let circle = Ellipse::new(1.0, 1.0).unwrap();
        let res = find_caustic(&circle, CAUSTIC_TOL).unwrap();
        assert!((res.lambda - 0.75).abs() <= 1e-12, "{}", res.lambda);
        assert!((res.caustic.a() - 0.5).abs() <= 1e-12);
        let o = poncelet_triangle(&circle, &res.caustic, 0.0).unwrap();
        for (got, want) in o.t.iter().zip([0.0, TAU / 3.0, 2.0 * TAU / 3.0]) {
            assert!(angle_close(*got, want, 1e-11), "{got} vs {want}");
        }
        for len in o.side_lengths() {
            assert!((len - 3f64.sqrt()).abs() <= 1e-12);
        }
    }

    #[test]
    fn caustic_rejects_bad_tolerance() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert!(matches!(find_caustic(&e, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn rotation_defect_is_increasing() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        // λ* ≈ 0.9827 for this table, so the grid has to reach past it
        let vals: Vec<f64> = (1..40)
            .map(|k| rotation_defect(&e, 0.999 * k as f64 / 39.0).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
        assert!(vals[0] < 0.0 && *vals.last().unwrap() > 0.0);
    }

    #[test]
    fn residual_flags_broken_orbit() {
        let circle = Ellipse::new(1.0, 1.0).unwrap();
        let mk = |ts: [f64; 3]| Orbit {
            t: ts,
            vertices: ts.map(|s| ellipse_point(&circle, s)),
            closure_residual: 0.0,
        };
        let third = TAU / 3.0;
        let good = mk([0.0, third, 2.0 * third]);
        assert!(reflection_residual(&circle, &good).unwrap() <= 1e-12);
        let bad = mk([0.0, third + 1e-3, 2.0 * third]);
        assert!(reflection_residual(&circle, &bad).unwrap() > 1e-4);
        let degenerate = mk([0.0, 0.0, third]);
        assert!(matches!(reflection_residual(&circle, &degenerate), Err(Error::Degenerate(_))));
    }

    #[test]
    fn symmetric_orbits_need_an_ellipse() {
        let circle = Ellipse::new(1.0, 1.0).unwrap();
        let res = find_caustic(&circle, CAUSTIC_TOL).unwrap();
        assert_eq!(symmetric_orbits(&circle, &res.caustic), Err(Error::Circle));
    }

    #[test]
    fn same_triangle_up_to_order() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let res = find_caustic(&e, CAUSTIC_TOL).unwrap();
        let o = poncelet_triangle(&e, &res.caustic, 0.3).unwrap();
        let from_second = poncelet_triangle(&e, &res.caustic, o.t[1]).unwrap();
        assert!(o.same_triangle(&from_second, 1e-9));
        let mut reversed = o;
        reversed.vertices.reverse();
        assert!(o.same_triangle(&reversed, 1e-12));
        let other = poncelet_triangle(&e, &res.caustic, 1.0).unwrap();
        assert!(!o.same_triangle(&other, 1e-6));
    }
}

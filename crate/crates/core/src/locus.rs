//! Center loci over the Poncelet family: sampling, algebraic conic fitting,
//! classification, and the derivative checks at the symmetric orbit.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::billiard::{find_caustic, poncelet_triangle, symmetric_orbits, CausticResult, CAUSTIC_TOL, CLOSURE_TOL};
use crate::centers::{circumcircle, triangle_center, CenterKind};
use crate::conic::{Ellipse, RealPoint};
use crate::error::{Error, Result};

/// Relative size of a singular value counted as zero by [`fit_conic`].
const NULL_SINGULAR_REL: f64 = 1e-12;
const PARABOLA_BAND: f64 = 1e-10;
const DEGENERATE_DET: f64 = 1e-12;
/// Sample diameter (relative to `a`) below which a locus counts as a point.
const COLLAPSE_REL: f64 = 1e-9;
pub const MIN_REPORT_SAMPLES: usize = 64;

/// A x² + B xy + C y² + D x + E y + F = 0 with unit-norm coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicCoeffs(pub [f64; 6]);

impl ConicCoeffs {
    /// Scales to unit Euclidean norm, first nonzero of (A, B, C) positive.
    pub fn normalized(coeffs: [f64; 6]) -> Result<Self> {
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Domain("conic coefficients must be finite and nonzero".into()));
        }
        let lead = coeffs.iter().copied().find(|c| *c != 0.0).unwrap_or(1.0);
        let s = lead.signum() / norm;
        Ok(Self(coeffs.map(|c| c * s)))
    }

    pub fn a(&self) -> f64 {
        self.0[0]
    }
    pub fn b(&self) -> f64 {
        self.0[1]
    }
    pub fn c(&self) -> f64 {
        self.0[2]
    }
    pub fn d(&self) -> f64 {
        self.0[3]
    }
    pub fn e(&self) -> f64 {
        self.0[4]
    }
    pub fn f(&self) -> f64 {
        self.0[5]
    }

    pub fn eval(&self, p: RealPoint) -> f64 {
        let [a, b, c, d, e, f] = self.0;
        a * p.x * p.x + b * p.x * p.y + c * p.y * p.y + d * p.x + e * p.y + f
    }

    pub fn discriminant(&self) -> f64 {
        self.b() * self.b() - 4.0 * self.a() * self.c()
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        let [a, b, c, d, e, f] = self.0;
        Matrix3::new(a, b / 2.0, d / 2.0, b / 2.0, c, e / 2.0, d / 2.0, e / 2.0, f)
    }

    /// Real roots of A x² + D x + F = 0, ascending.
    pub fn x_axis_intersections(&self) -> Vec<f64> {
        let (a, d, f) = (self.a(), self.d(), self.f());
        if a == 0.0 {
            return if d != 0.0 { vec![-f / d] } else { Vec::new() };
        }
        let disc = d * d - 4.0 * a * f;
        if disc < 0.0 {
            return Vec::new();
        }
        let q = -0.5 * (d + d.signum() * disc.sqrt());
        let mut roots = if q == 0.0 { vec![0.0, 0.0] } else { vec![q / a, f / q] };
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// Largest |value| over the points.
    pub fn max_residual(&self, points: &[RealPoint]) -> f64 {
        points.iter().map(|p| self.eval(*p).abs()).fold(0.0, f64::max)
    }

    /// True when `other` is the same conic up to scale, to `tol`.
    pub fn same_up_to_scale(&self, other: &ConicCoeffs, tol: f64) -> bool {
        let dot: f64 = self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum();
        let s = dot.signum();
        self.0.iter().zip(&other.0).all(|(x, y)| (x - s * y).abs() <= tol)
    }
}

/// The conic through five rational points, by cofactor expansion of the
/// 6×6 interpolation determinant. Exact; used as a cross-check on
/// [`fit_conic`].
pub fn five_point_conic(points: &[(BigRational, BigRational); 5]) -> Result<[BigRational; 6]> {
    let rows: Vec<[BigRational; 6]> = points
        .iter()
        .map(|(x, y)| [x * x, x * y, y * y, x.clone(), y.clone(), BigRational::one()])
        .collect();
    let coeffs: [BigRational; 6] = std::array::from_fn(|skip| {
        let minor: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| (0..6).filter(|&c| c != skip).map(|c| r[c].clone()).collect())
            .collect();
        let d = rational_det(minor);
        if skip % 2 == 0 { d } else { -d }
    });
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::Ambiguous { null_dim: 2 });
    }
    Ok(coeffs)
}

fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let f = &m[r][col] / &p;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicClass {
    pub kind: ConicKind,
    pub center: Option<RealPoint>,
    pub axis_angle: Option<f64>,
    pub semi_major: Option<f64>,
    pub semi_minor: Option<f64>,
}

impl ConicClass {
    fn bare(kind: ConicKind) -> Self {
        Self {
            kind,
            center: None,
            axis_angle: None,
            semi_major: None,
            semi_minor: None,
        }
    }
}

/// Least-squares algebraic fit: the right singular vector of the design
/// matrix with the smallest singular value.
pub fn fit_conic(points: &[RealPoint]) -> Result<ConicCoeffs> {
    if points.len() < 5 {
        return Err(Error::Arity { needed: 5, got: points.len() });
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("non-finite sample point".into()));
    }
    // Pad to at least 6 rows so the thin SVD exposes the full right null space.
    let rows = points.len().max(6);
    let mut design = DMatrix::<f64>::zeros(rows, 6);
    for (i, p) in points.iter().enumerate() {
        let row = [p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y, 1.0];
        for (j, v) in row.into_iter().enumerate() {
            design[(i, j)] = v;
        }
    }
    let svd = design.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let sigma = &svd.singular_values;
    let largest = sigma.max();
    if largest == 0.0 {
        return Err(Error::Ambiguous { null_dim: 6 });
    }
    let null_dim = sigma.iter().filter(|s| **s <= NULL_SINGULAR_REL * largest).count();
    if null_dim > 1 {
        return Err(Error::Ambiguous { null_dim });
    }
    let (min_idx, _) = sigma
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("six singular values");
    let row = v_t.row(min_idx);
    ConicCoeffs::normalized([row[0], row[1], row[2], row[3], row[4], row[5]])
}

pub fn classify_conic(c: &ConicCoeffs) -> ConicClass {
    let det = c.matrix().determinant();
    if det.abs() <= DEGENERATE_DET {
        return ConicClass::bare(ConicKind::Degenerate);
    }
    let disc = c.discriminant();
    if disc.abs() <= PARABOLA_BAND {
        return ConicClass::bare(ConicKind::Parabola);
    }
    if disc > 0.0 {
        return ConicClass::bare(ConicKind::Hyperbola);
    }
    let [a, b, cc, d, e, f] = c.0;
    // gradient zero: [2A B; B 2C] (x, y) = −(D, E)
    let m = Matrix2::new(2.0 * a, b, b, 2.0 * cc);
    let Some(center) = m.lu().solve(&nalgebra::Vector2::new(-d, -e)) else {
        return ConicClass::bare(ConicKind::Degenerate);
    };
    let center = RealPoint::new(center[0], center[1]);
    let value_at_center = 0.5 * (d * center.x + e * center.y) + f;
    let quad = Matrix2::new(a, b / 2.0, b / 2.0, cc);
    let eig = quad.symmetric_eigen();
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let (s0, s1) = (-value_at_center / l0, -value_at_center / l1);
    if !(s0 > 0.0 && s1 > 0.0) {
        // no real points
        return ConicClass::bare(ConicKind::Degenerate);
    }
    let (r0, r1) = (s0.sqrt(), s1.sqrt());
    let (major, minor, axis) = if r0 >= r1 { (r0, r1, 0) } else { (r1, r0, 1) };
    let v = eig.eigenvectors.column(axis);
    let mut angle = v[1].atan2(v[0]);
    if angle <= -PI / 2.0 {
        angle += PI;
    } else if angle > PI / 2.0 {
        angle -= PI;
    }
    ConicClass {
        kind: ConicKind::Ellipse,
        center: Some(center),
        axis_angle: Some(angle),
        semi_major: Some(major),
        semi_minor: Some(minor),
    }
}

/// A center sample at boundary parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub point: RealPoint,
}

fn center_at(e: &Ellipse, caustic: &Ellipse, kind: CenterKind, t: f64, closure_tol: f64) -> Result<RealPoint> {
    let o = poncelet_triangle(e, caustic, t)?;
    if o.closure_residual > closure_tol {
        return Err(Error::Solver(format!(
            "orbit fails to close (residual {:e})",
            o.closure_residual
        )));
    }
    let [v1, v2, v3] = o.vertices;
    triangle_center(kind, v1, v2, v3)
}

/// Centers of the Poncelet triangles through t_k = 2πk/n, for a known caustic.
pub fn sample_with_caustic(
    e: &Ellipse,
    caustic: &Ellipse,
    kind: CenterKind,
    n: usize,
    closure_tol: f64,
) -> Result<Vec<Sample>> {
    if n < 5 {
        return Err(Error::Arity { needed: 5, got: n });
    }
    (0..n)
        .into_par_iter()
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            center_at(e, caustic, kind, t, closure_tol)
                .map(|point| Sample { t, point })
                .map_err(|err| Error::at(t, err))
        })
        .collect()
}

pub fn sample_locus(e: &Ellipse, kind: CenterKind, n: usize) -> Result<Vec<Sample>> {
    let caustic = find_caustic(e, CAUSTIC_TOL)?;
    sample_with_caustic(e, &caustic.caustic, kind, n, CLOSURE_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusConfig {
    pub min_samples: usize,
    pub caustic_tol: f64,
    pub closure_tol: f64,
}

impl Default for LocusConfig {
    fn default() -> Self {
        Self {
            min_samples: MIN_REPORT_SAMPLES,
            caustic_tol: CAUSTIC_TOL,
            closure_tol: CLOSURE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusReport {
    pub kind: CenterKind,
    pub ellipse: Ellipse,
    pub caustic: CausticResult,
    pub samples: Vec<Sample>,
    /// `None` when the locus collapsed to a point.
    pub fit: Option<ConicCoeffs>,
    pub class: Option<ConicClass>,
    pub max_residual: Option<f64>,
    /// max(|B|, |D|, |E|) of the fit.
    pub symmetry_defect: Option<f64>,
    /// Centers of the two orbits through (±a, 0); `None` for circles.
    pub foci_line_points: Option<[RealPoint; 2]>,
    pub collapsed: bool,
}

impl LocusReport {
    pub fn points(&self) -> Vec<RealPoint> {
        self.samples.iter().map(|s| s.point).collect()
    }
}

fn diameter(points: &[RealPoint]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(p.distance(*q));
        }
    }
    best
}

pub fn locus_report(e: &Ellipse, kind: CenterKind, n: usize) -> Result<LocusReport> {
    locus_report_with(e, kind, n, &LocusConfig::default())
}

pub fn locus_report_with(e: &Ellipse, kind: CenterKind, n: usize, cfg: &LocusConfig) -> Result<LocusReport> {
    if n < cfg.min_samples {
        return Err(Error::Arity { needed: cfg.min_samples, got: n });
    }
    let caustic = find_caustic(e, cfg.caustic_tol)?;
    let samples = sample_with_caustic(e, &caustic.caustic, kind, n, cfg.closure_tol)?;
    let points: Vec<RealPoint> = samples.iter().map(|s| s.point).collect();

    let foci_line_points = if e.is_circle() {
        None
    } else {
        let (left, right) = symmetric_orbits(e, &caustic.caustic)?;
        let c = |o: crate::billiard::Orbit| {
            let [v1, v2, v3] = o.vertices;
            triangle_center(kind, v1, v2, v3)
        };
        Some([c(left)?, c(right)?])
    };

    let collapsed = diameter(&points) <= COLLAPSE_REL * e.a();
    let (fit, class, max_residual, symmetry_defect) = if collapsed {
        (None, None, None, None)
    } else {
        let fit = fit_conic(&points)?;
        let sym = fit.b().abs().max(fit.d().abs()).max(fit.e().abs());
        (Some(fit), Some(classify_conic(&fit)), Some(fit.max_residual(&points)), Some(sym))
    };
    Ok(LocusReport {
        kind,
        ellipse: *e,
        caustic,
        samples,
        fit,
        class,
        max_residual,
        symmetry_defect,
        foci_line_points,
        collapsed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCheck {
    /// Circumradius of the orbit through (a, 0).
    pub r0: f64,
    pub r_prime: f64,
    pub c_prime: RealPoint,
}

fn circum_at(e: &Ellipse, caustic: &Ellipse, t: f64) -> Result<(f64, RealPoint)> {
    let o = poncelet_triangle(e, caustic, t)?;
    let [v1, v2, v3] = o.vertices;
    let c = circumcircle(v1, v2, v3)?;
    Ok((c.radius, c.center))
}

fn central_difference(e: &Ellipse, caustic: &Ellipse, h: f64) -> Result<(f64, RealPoint)> {
    // t = −h is taken as 2π − h so the orbit starts from the same branch
    let (rp, cp) = circum_at(e, caustic, h)?;
    let (rm, cm) = circum_at(e, caustic, TAU - h)?;
    Ok(((rp - rm) / (2.0 * h), (0.5 / h) * (cp - cm)))
}

/// Central differences of the circumradius r(t) and circumcenter c(t) at
/// t = 0, the orbit through the vertex (a, 0).
pub fn derivative_checks(e: &Ellipse, h: f64) -> Result<DerivativeCheck> {
    derivative_checks_with(e, h, false)
}

/// As [`derivative_checks`]; with `richardson` the step-h and step-h/2
/// estimates are combined to cancel the O(h²) term.
pub fn derivative_checks_with(e: &Ellipse, h: f64, richardson: bool) -> Result<DerivativeCheck> {
    if e.is_circle() {
        return Err(Error::Circle);
    }
    if !(h > 0.0 && h < 1e-2) {
        return Err(Error::Domain(format!("step {h} outside (0, 1e-2)")));
    }
    let caustic = find_caustic(e, CAUSTIC_TOL)?.caustic;
    let (r0, _) = circum_at(e, &caustic, 0.0)?;
    let (mut r_prime, mut c_prime) = central_difference(e, &caustic, h)?;
    if richardson {
        let (r_half, c_half) = central_difference(e, &caustic, h / 2.0)?;
        r_prime = (4.0 * r_half - r_prime) / 3.0;
        c_prime = (1.0 / 3.0) * (4.0 * c_half - c_prime);
    }
    Ok(DerivativeCheck { r0, r_prime, c_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn on_circle(k: usize, n: usize) -> RealPoint {
        let t = TAU * k as f64 / n as f64 + 0.1;
        RealPoint::new(t.cos(), t.sin())
    }

    #[test]
    fn fits_unit_circle_from_five_points() {
        let pts: Vec<_> = (0..5).map(|k| on_circle(k, 5)).collect();
        let fit = fit_conic(&pts).unwrap();
        let want = ConicCoeffs::normalized([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(fit.same_up_to_scale(&want, 1e-12), "{fit:?}");
        assert!(fit.max_residual(&pts) <= 1e-12);
    }

    #[test]
    fn fits_axis_ellipse_from_eight_points() {
        let pts: Vec<_> = (0..8)
            .map(|k| {
                let t = TAU * k as f64 / 8.0 + 0.3;
                RealPoint::new(2.0 * t.cos(), t.sin())
            })
            .collect();
        let fit = fit_conic(&pts).unwrap();
        let want = ConicCoeffs::normalized([0.25, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(fit.same_up_to_scale(&want, 1e-12));
        assert!(fit.max_residual(&pts) <= 1e-12);
    }

    #[test]
    fn fit_errors() {
        let pts: Vec<_> = (0..4).map(|k| on_circle(k, 4)).collect();
        assert_eq!(fit_conic(&pts), Err(Error::Arity { needed: 5, got: 4 }));
        let line: Vec<_> = (0..10).map(|k| RealPoint::new(k as f64, 2.0 * k as f64)).collect();
        assert!(matches!(fit_conic(&line), Err(Error::Ambiguous { .. })));
    }

    #[test]
    fn five_point_matches_least_squares() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // rational points on x²/4 + y² = 1 via the tangent-half-angle map
        let pts: [(BigRational, BigRational); 5] = std::array::from_fn(|k| {
            let s = r(k as i64 * 2 - 3, 5);
            let den = BigRational::one() + &s * &s;
            (r(2, 1) * (BigRational::one() - &s * &s) / &den, r(2, 1) * &s / den)
        });
        let exact = five_point_conic(&pts).unwrap();
        let to_f = |q: &BigRational| q.to_f64().unwrap();
        let exact = ConicCoeffs::normalized(exact.each_ref().map(to_f)).unwrap();
        let want = ConicCoeffs::normalized([0.25, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(exact.same_up_to_scale(&want, 1e-15));
        let floats: Vec<RealPoint> = pts.iter().map(|(x, y)| RealPoint::new(to_f(x), to_f(y))).collect();
        assert!(fit_conic(&floats).unwrap().same_up_to_scale(&exact, 1e-12));
    }

    #[test]
    fn five_collinear_points_are_ambiguous() {
        let pts: [(BigRational, BigRational); 5] =
            std::array::from_fn(|k| (BigRational::from_integer((k as i64).into()), BigRational::zero()));
        assert!(matches!(five_point_conic(&pts), Err(Error::Ambiguous { .. })));
    }

    #[test]
    fn classification() {
        let circle = ConicCoeffs::normalized([1.0, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        let class = classify_conic(&circle);
        assert_eq!(class.kind, ConicKind::Ellipse);
        assert!(class.center.unwrap().norm() <= 1e-15);
        assert!((class.semi_major.unwrap() - 1.0).abs() <= 1e-14);
        assert!((class.semi_minor.unwrap() - 1.0).abs() <= 1e-14);

        let hyp = ConicCoeffs::normalized([1.0, 0.0, -1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(classify_conic(&hyp).kind, ConicKind::Hyperbola);
        let par = ConicCoeffs::normalized([1.0, 0.0, 0.0, 0.0, -1.0, 0.0]).unwrap();
        assert_eq!(classify_conic(&par).kind, ConicKind::Parabola);
        let lines = ConicCoeffs::normalized([1.0, 0.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(classify_conic(&lines).kind, ConicKind::Degenerate);
        let imaginary = ConicCoeffs::normalized([1.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(classify_conic(&imaginary).kind, ConicKind::Degenerate);
    }

    #[test]
    fn rotated_shifted_ellipse_geometry() {
        // (x', y') frame rotated by 0.4, center (1, -2), semi-axes 3 and 1
        let (s, c) = 0.4f64.sin_cos();
        let pts: Vec<_> = (0..12)
            .map(|k| {
                let t = TAU * k as f64 / 12.0;
                let (u, v) = (3.0 * t.cos(), t.sin());
                RealPoint::new(1.0 + c * u - s * v, -2.0 + s * u + c * v)
            })
            .collect();
        let class = classify_conic(&fit_conic(&pts).unwrap());
        assert_eq!(class.kind, ConicKind::Ellipse);
        assert!(class.center.unwrap().distance(RealPoint::new(1.0, -2.0)) <= 1e-10);
        assert!((class.axis_angle.unwrap() - 0.4).abs() <= 1e-10);
        assert!((class.semi_major.unwrap() - 3.0).abs() <= 1e-10);
        assert!((class.semi_minor.unwrap() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn x_axis_roots() {
        let e = ConicCoeffs::normalized([0.25, 0.0, 1.0, 0.0, 0.0, -1.0]).unwrap();
        let r = e.x_axis_intersections();
        assert!((r[0] + 2.0).abs() <= 1e-14 && (r[1] - 2.0).abs() <= 1e-14);
    }

    #[test]
    fn centroid_samples_are_interior() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let samples = sample_locus(&e, CenterKind::Centroid, 720).unwrap();
        assert_eq!(samples.len(), 720);
        assert!(samples.iter().all(|s| e.implicit(s.point) < 0.0));
    }

    #[test]
    fn report_needs_enough_samples() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert!(matches!(
            locus_report(&e, CenterKind::Circumcenter, 10),
            Err(Error::Arity { needed: 64, got: 10 })
        ));
        assert!(matches!(sample_locus(&e, CenterKind::Circumcenter, 4), Err(Error::Arity { .. })));
    }

    #[test]
    fn derivative_guards() {
        let circle = Ellipse::new(1.0, 1.0).unwrap();
        assert_eq!(derivative_checks(&circle, 1e-4), Err(Error::Circle));
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert!(matches!(derivative_checks(&e, 0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn richardson_agrees_with_plain() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let coarse = derivative_checks(&e, 1e-3).unwrap();
        let rich = derivative_checks_with(&e, 1e-3, true).unwrap();
        let fine = derivative_checks_with(&e, 1e-4, true).unwrap();
        let err_rich = rich.c_prime.distance(fine.c_prime);
        let err_coarse = coarse.c_prime.distance(fine.c_prime);
        assert!(err_rich < 1e-2 * err_coarse, "{err_rich:e} vs {err_coarse:e}");
    }
}

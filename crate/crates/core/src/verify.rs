//! The end-to-end verification suite: each criterion runs a pipeline at a
//! pinned tolerance and reports pass/fail with a one-line detail.

use std::f64::consts::TAU;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::billiard::{
    find_caustic, poncelet_triangle, reflection_residual, symmetric_orbits, tangency_defects, CAUSTIC_TOL,
};
use crate::centers::{circumcircle, CenterKind};
use crate::conic::{Ellipse, RealPoint};
use crate::cp2::{self, CScalar, ConicMat, HLine, HPoint};
use crate::error::{Error, Result};
use crate::locus::{
    derivative_checks, fit_conic, five_point_conic, locus_report, sample_locus, ConicCoeffs, ConicKind,
};
use crate::shooting::shooting_caustic;

/// Pinned thresholds, one per quantity checked.
pub mod tol {
    pub const FIT_RESIDUAL: f64 = 1e-8;
    pub const SYMMETRY: f64 = 1e-8;
    pub const COLLAPSE: f64 = 1e-9;
    pub const ON_AXIS: f64 = 1e-9;
    pub const DISTINCT: f64 = 1e-6;
    pub const AXIS_MATCH: f64 = 1e-6;
    pub const DERIV_REL: f64 = 1e-6;
    pub const DERIV_MIN: f64 = 1e-6;
    pub const FD_STEP: f64 = 1e-4;
    pub const CLOSURE: f64 = 1e-9;
    pub const REFLECTION: f64 = 1e-9;
    pub const TANGENCY: f64 = 1e-8;
    pub const CAUSTIC_AGREE: f64 = 1e-9;
    pub const HOMOTHETY: f64 = 1e-6;
    pub const CENTER_AT_ORIGIN: f64 = 1e-9;
    pub const FIT_AGREE: f64 = 1e-10;
}

pub const SAMPLES: usize = 720;
pub const TABLES: [(f64, f64); 4] = [(2.0, 1.0), (5.0, 3.0), (10.0, 1.0), (1.05, 1.0)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Criterion {
    fn new(id: u8, name: &str, outcome: Result<(bool, String)>) -> Self {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        Self {
            id,
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

fn fmt_ok(ok: bool) -> &'static str {
    if ok { "ok" } else { "FAIL" }
}

/// Circumcenter loci fit non-degenerate, axis-aligned, origin-centered ellipses.
pub fn circumcenter_locus_is_ellipse() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let mut pass = true;
        let mut parts = Vec::new();
        for (a, b) in TABLES {
            let e = Ellipse::new(a, b)?;
            let r = locus_report(&e, CenterKind::Circumcenter, SAMPLES)?;
            let kind = r.class.map(|c| c.kind);
            let label = kind.map_or("collapsed".to_string(), |k| format!("{k:?}").to_lowercase());
            let res = r.max_residual.unwrap_or(f64::INFINITY);
            let sym = r.symmetry_defect.unwrap_or(f64::INFINITY);
            let ok = kind == Some(ConicKind::Ellipse) && res <= tol::FIT_RESIDUAL && sym <= tol::SYMMETRY;
            pass &= ok;
            parts.push(format!("E({a},{b}): {label} residual {res:.2e} symmetry {sym:.2e} {}", fmt_ok(ok)));
        }
        Ok((pass, parts.join("; ")))
    };
    Criterion::new(1, "circumcenter locus is an ellipse", run())
}

/// On a circle every circumcenter is the center.
pub fn circle_collapses_to_point() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let e = Ellipse::new(1.0, 1.0)?;
        let samples = sample_locus(&e, CenterKind::Circumcenter, SAMPLES)?;
        let worst = samples.iter().map(|s| s.point.norm()).fold(0.0, f64::max);
        let report = locus_report(&e, CenterKind::Circumcenter, SAMPLES)?;
        let ok = worst <= tol::COLLAPSE && report.collapsed;
        Ok((ok, format!("max |c| = {worst:.2e}, collapsed = {}", report.collapsed)))
    };
    Criterion::new(2, "circle locus collapses to the center", run())
}

/// The two symmetric orbits give the locus' two points on the foci line.
pub fn foci_line_intersections() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let e = Ellipse::new(2.0, 1.0)?;
        let caustic = find_caustic(&e, CAUSTIC_TOL)?.caustic;
        let (o1, o2) = symmetric_orbits(&e, &caustic)?;
        let c = |o: crate::billiard::Orbit| circumcircle(o.vertices[0], o.vertices[1], o.vertices[2]).map(|c| c.center);
        let (c1, c2) = (c(o1)?, c(o2)?);
        let off_axis = c1.y.abs().max(c2.y.abs());
        let gap = (c1.x - c2.x).abs();
        let report = locus_report(&e, CenterKind::Circumcenter, SAMPLES)?;
        let fit = report.fit.ok_or_else(|| Error::Solver("no fit".into()))?;
        let roots = fit.x_axis_intersections();
        if roots.len() != 2 {
            return Ok((false, format!("fitted locus meets the x-axis {} times", roots.len())));
        }
        let (lo, hi) = if c1.x <= c2.x { (c1.x, c2.x) } else { (c2.x, c1.x) };
        let mismatch = (roots[0] - lo).abs().max((roots[1] - hi).abs());
        let ok = off_axis <= tol::ON_AXIS && gap >= tol::DISTINCT && mismatch <= tol::AXIS_MATCH;
        Ok((
            ok,
            format!("centers x = {:.12}, {:.12}; |y| {off_axis:.2e}; gap {gap:.3e}; fit mismatch {mismatch:.2e}", c1.x, c2.x),
        ))
    };
    Criterion::new(3, "symmetric orbits meet the foci line at two distinct points", run())
}

/// r'(0) = 0, c'(0) ⊥ foci line, c'(0) ≠ 0.
pub fn symmetric_orbit_derivatives() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let e = Ellipse::new(2.0, 1.0)?;
        let d = derivative_checks(&e, tol::FD_STEP)?;
        let cn = d.c_prime.norm();
        let ok_r = d.r_prime.abs() <= tol::DERIV_REL * d.r0;
        let ok_perp = d.c_prime.x.abs() <= tol::DERIV_REL * cn;
        let ok_nonzero = cn >= tol::DERIV_MIN;
        Ok((
            ok_r && ok_perp && ok_nonzero,
            format!(
                "r(0) = {:.6}, r'(0) = {:.2e}; c'(0) = ({:.2e}, {:.6})",
                d.r0, d.r_prime, d.c_prime.x, d.c_prime.y
            ),
        ))
    };
    Criterion::new(4, "derivative checkpoints at the symmetric orbit", run())
}

/// Closure, reflection law and caustic tangency over the sampled family;
/// bisection λ* against the shooting oracle.
pub fn caustic_and_closure() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let e = Ellipse::new(2.0, 1.0)?;
        let caustic = find_caustic(&e, CAUSTIC_TOL)?;
        let (mut closure, mut reflection, mut tangency) = (0.0f64, 0.0f64, 0.0f64);
        for k in 0..SAMPLES {
            let t = TAU * k as f64 / SAMPLES as f64;
            let o = poncelet_triangle(&e, &caustic.caustic, t)?;
            closure = closure.max(o.closure_residual);
            reflection = reflection.max(reflection_residual(&e, &o)?);
            tangency = tangency_defects(&caustic.caustic, &o).into_iter().fold(tangency, f64::max);
        }
        let shot = shooting_caustic(&e)?;
        let agree = (shot.lambda - caustic.lambda).abs();
        let ok = closure <= tol::CLOSURE
            && reflection <= tol::REFLECTION
            && tangency <= tol::TANGENCY
            && agree <= tol::CAUSTIC_AGREE;
        Ok((
            ok,
            format!(
                "λ* = {:.15} (shooting {:.15}, Δ {agree:.1e}); closure {closure:.1e}, reflection {reflection:.1e}, tangency {tangency:.1e}",
                caustic.lambda, shot.lambda
            ),
        ))
    };
    Criterion::new(5, "caustic tangency and closure", run())
}

/// Centroid locus homothetic to the table; incenter and orthocenter loci are ellipses.
pub fn companion_loci() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let e = Ellipse::new(2.0, 1.0)?;
        let g = locus_report(&e, CenterKind::Centroid, SAMPLES)?;
        let class = g.class.ok_or_else(|| Error::Solver("centroid locus collapsed".into()))?;
        let ratio = match (class.semi_minor, class.semi_major) {
            (Some(minor), Some(major)) => minor / major,
            _ => f64::NAN,
        };
        let center = class.center.map_or(f64::INFINITY, RealPoint::norm);
        let mut ok = class.kind == ConicKind::Ellipse
            && (ratio - 0.5).abs() <= tol::HOMOTHETY
            && center <= tol::CENTER_AT_ORIGIN * e.a();
        let mut parts = vec![format!("centroid ratio {ratio:.9}, center offset {center:.1e}")];
        for kind in [CenterKind::Incenter, CenterKind::Orthocenter] {
            let r = locus_report(&e, kind, SAMPLES)?;
            let res = r.max_residual.unwrap_or(f64::INFINITY);
            let is_ellipse = r.class.map(|c| c.kind) == Some(ConicKind::Ellipse);
            ok &= is_ellipse && res <= tol::FIT_RESIDUAL;
            parts.push(format!("{kind} residual {res:.2e} ellipse {is_ellipse}"));
        }
        Ok((ok, parts.join("; ")))
    };
    Criterion::new(6, "companion loci are ellipses", run())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn iso(sign: i64, k: i64) -> HLine {
    HLine::new(CScalar::one(), CScalar::gaussian(0, sign), CScalar::int(-k)).expect("nonzero")
}

/// Isotropic tangents, foci, confocal invariance and the circle predicate,
/// all decided exactly.
pub fn exact_complex_conics() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let e53 = ConicMat::axis_ellipse(q(25), q(9))?;
        let want_lines = [iso(1, 4), iso(1, -4), iso(-1, 4), iso(-1, -4)];
        let tangents = cp2::isotropic_tangents(&e53)?.all();
        let ok_tangents = cp2::same_line_multiset(&tangents, &want_lines);

        let foci = cp2::foci(&e53)?;
        let want_foci = [
            HPoint::affine(CScalar::int(4), CScalar::zero()),
            HPoint::affine(CScalar::int(-4), CScalar::zero()),
            HPoint::affine(CScalar::zero(), CScalar::gaussian(0, 4)),
            HPoint::affine(CScalar::zero(), CScalar::gaussian(0, -4)),
        ];
        let ok_foci = foci.len() == 4 && want_foci.iter().all(|f| foci.contains(f)) && foci.iter().all(|f| want_foci.contains(f));

        let confocal = ConicMat::axis_ellipse(q(20), q(4))?;
        let ok_confocal = cp2::same_line_multiset(&cp2::isotropic_tangents(&confocal)?.all(), &tangents);

        let ok_circle = cp2::is_circle(&ConicMat::unit_circle())?
            && !cp2::is_circle(&ConicMat::axis_ellipse(q(4), q(1))?)?;

        let ok = ok_tangents && ok_foci && ok_confocal && ok_circle;
        let foci_str: Vec<String> = foci.iter().map(ToString::to_string).collect();
        Ok((
            ok,
            format!(
                "tangents {} foci {} [{}] confocal {} circle {}",
                fmt_ok(ok_tangents),
                fmt_ok(ok_foci),
                foci_str.join(", "),
                fmt_ok(ok_confocal),
                fmt_ok(ok_circle)
            ),
        ))
    };
    Criterion::new(7, "exact isotropic tangents, foci and circles", run())
}

fn random_scalar(rng: &mut ChaCha8Rng, complex: bool) -> CScalar {
    let part = |rng: &mut ChaCha8Rng| BigRational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=9).into());
    let re = part(rng);
    let im = if complex { part(rng) } else { BigRational::zero() };
    CScalar::new(re, im)
}

/// Random non-isotropic lines, half real-rational, half Gaussian-rational.
pub fn random_lines(seed: u64, count: usize) -> Vec<HLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let complex = out.len() % 2 == 1;
        let coords = [(); 3].map(|_| random_scalar(&mut rng, complex));
        let [u, v, w] = coords;
        if let Ok(l) = HLine::new(u, v, w) {
            if !cp2::is_isotropic(&l) {
                out.push(l);
            }
        }
    }
    out
}

/// The complex reflection is an isometric involution fixing its mirror;
/// reflected lines tend to the mirror as it becomes isotropic.
pub fn reflection_involution(seed: u64) -> Criterion {
    let run = || -> Result<(bool, String)> {
        let lines = random_lines(seed, 100);
        let mut failures = 0;
        for l in &lines {
            let r = cp2::reflection_about(l)?;
            let (p1, p2) = l.two_points();
            let ok = r.compose(&r).is_identity()
                && r.apply(&p1) == p1
                && r.apply(&p2) == p2
                && r.preserves_isotropic_form()
                && !r.is_identity();
            if !ok {
                failures += 1;
            }
        }
        let isotropic_rejected = matches!(cp2::reflection_about(&iso(1, 3)), Err(Error::Isotropic));

        let target = HLine::new(CScalar::zero(), CScalar::one(), CScalar::zero())?;
        let limit = cp2::isotropic_limit_line();
        let mut dist = Vec::new();
        for n in [10u64, 100, 1000] {
            let image = cp2::reflect_line(&cp2::near_isotropic_mirror(n)?, &target)?;
            dist.push(cp2::projective_distance_sq(&image, &limit));
        }
        let monotone = dist.windows(2).all(|w| w[1] < w[0]);
        let shown: Vec<String> = dist.iter().map(|d| format!("{:.3e}", d.to_f64().unwrap_or(f64::NAN).sqrt())).collect();
        Ok((
            failures == 0 && isotropic_rejected && monotone,
            format!(
                "{} lines, {failures} failures; isotropic rejected {isotropic_rejected}; limit distances [{}]",
                lines.len(),
                shown.join(", ")
            ),
        ))
    };
    Criterion::new(8, "complex reflection is an isometric involution", run())
}

/// Rational points on x²/a² + y²/b² = 1 via the tangent half-angle map.
pub fn rational_ellipse_points(a: i64, b: i64, params: &[(i64, i64)]) -> Vec<(BigRational, BigRational)> {
    params
        .iter()
        .map(|&(n, d)| {
            let s = BigRational::new(n.into(), d.into());
            let one = BigRational::from_integer(1.into());
            let den = &one + &s * &s;
            (q(a) * (&one - &s * &s) / &den, q(b) * q(2) * &s / den)
        })
        .collect()
}

/// The exact five-point conic and the least-squares fit agree up to scale.
pub fn fit_oracle_equivalence() -> Criterion {
    let run = || -> Result<(bool, String)> {
        let params: Vec<(i64, i64)> = (0..24).map(|k| (k - 11, 7)).collect();
        let mut worst: f64 = 0.0;
        for (a, b) in [(2, 1), (5, 3), (7, 2)] {
            let exact_pts = rational_ellipse_points(a, b, &params);
            let five: [(BigRational, BigRational); 5] = std::array::from_fn(|k| exact_pts[k * 4].clone());
            let exact = five_point_conic(&five)?;
            let exact = ConicCoeffs::normalized(exact.each_ref().map(|c| c.to_f64().unwrap_or(f64::NAN)))?;
            let as_f = |pts: &[(BigRational, BigRational)]| -> Vec<RealPoint> {
                pts.iter()
                    .map(|(x, y)| RealPoint::new(x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN)))
                    .collect()
            };
            for subset in [as_f(&five), as_f(&exact_pts)] {
                let fit = fit_conic(&subset)?;
                let sign = if fit.0.iter().zip(&exact.0).map(|(x, y)| x * y).sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
                let gap = fit.0.iter().zip(&exact.0).map(|(x, y)| (x - sign * y).abs()).fold(0.0, f64::max);
                worst = worst.max(gap);
            }
        }
        Ok((worst <= tol::FIT_AGREE, format!("max coefficient gap {worst:.2e}")))
    };
    Criterion::new(9, "five-point and least-squares fits agree", run())
}

/// Runs every criterion in order.
pub fn run_all(seed: u64) -> Vec<Criterion> {
    vec![
        circumcenter_locus_is_ellipse(),
        circle_collapses_to_point(),
        foci_line_intersections(),
        symmetric_orbit_derivatives(),
        caustic_and_closure(),
        companion_loci(),
        exact_complex_conics(),
        reflection_involution(seed),
        fit_oracle_equivalence(),
    ]
}

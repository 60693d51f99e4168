//! Exact geometry in the complex projective plane over the Gaussian rationals.
//!
//! Points and lines are homogeneous triples; conics are symmetric 3×3
//! matrices. Nothing here rounds: every predicate is decided exactly.

mod scalar;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use scalar::{rational_sqrt, CScalar};

use crate::error::{Error, Result};

type Triple = [CScalar; 3];

fn dot(a: &Triple, b: &Triple) -> CScalar {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Equal up to a nonzero factor iff every 2×2 minor vanishes.
fn proportional(a: &Triple, b: &Triple) -> bool {
    cross(a, b).iter().all(CScalar::is_zero)
}

fn canonical(c: &Triple) -> Triple {
    let lead = c.iter().find(|x| !x.is_zero()).expect("nonzero triple").inv().expect("nonzero");
    c.clone().map(|x| &x * &lead)
}

fn nonzero(c: Triple) -> Result<Triple> {
    if c.iter().all(CScalar::is_zero) {
        Err(Error::Domain("homogeneous coordinates are all zero".into()))
    } else {
        Ok(c)
    }
}

/// Point of CP² in homogeneous coordinates `[x : y : z]`.
#[derive(Debug, Clone)]
pub struct HPoint(Triple);

impl HPoint {
    pub fn new(x: CScalar, y: CScalar, z: CScalar) -> Result<Self> {
        nonzero([x, y, z]).map(Self)
    }

    /// The finite point (x, y).
    pub fn affine(x: CScalar, y: CScalar) -> Self {
        Self([x, y, CScalar::one()])
    }

    pub fn coords(&self) -> &[CScalar; 3] {
        &self.0
    }

    /// First nonzero coordinate scaled to 1.
    pub fn canonical(&self) -> Self {
        Self(canonical(&self.0))
    }

    pub fn is_finite(&self) -> bool {
        !self.0[2].is_zero()
    }

    /// Affine coordinates of a finite point.
    pub fn to_affine(&self) -> Option<(CScalar, CScalar)> {
        let zi = self.0[2].inv()?;
        Some((&self.0[0] * &zi, &self.0[1] * &zi))
    }

    /// Both affine coordinates real.
    pub fn is_real(&self) -> bool {
        self.to_affine().is_some_and(|(x, y)| x.is_real() && y.is_real())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.clone().map(|c| c.conj()))
    }

    /// Line through two distinct points.
    pub fn join(&self, other: &HPoint) -> Result<HLine> {
        nonzero(cross(&self.0, &other.0))
            .map(HLine)
            .map_err(|_| Error::Degenerate("points coincide".into()))
    }
}

impl PartialEq for HPoint {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.0, &other.0)
    }
}

impl Eq for HPoint {}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_affine() {
            Some((x, y)) => write!(f, "({x}, {y})"),
            None => {
                let c = self.canonical().0;
                write!(f, "[{} : {} : {}]", c[0], c[1], c[2])
            }
        }
    }
}

/// Line `u x + v y + w z = 0`.
#[derive(Debug, Clone)]
pub struct HLine(Triple);

impl HLine {
    pub fn new(u: CScalar, v: CScalar, w: CScalar) -> Result<Self> {
        nonzero([u, v, w]).map(Self)
    }

    pub fn infinity() -> Self {
        Self([CScalar::zero(), CScalar::zero(), CScalar::one()])
    }

    pub fn coords(&self) -> &[CScalar; 3] {
        &self.0
    }

    pub fn canonical(&self) -> Self {
        Self(canonical(&self.0))
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        dot(&self.0, &p.0).is_zero()
    }

    /// Intersection with another line.
    pub fn meet(&self, other: &HLine) -> Result<HPoint> {
        nonzero(cross(&self.0, &other.0))
            .map(HPoint)
            .map_err(|_| Error::Degenerate("lines coincide".into()))
    }

    /// Two distinct points on the line.
    pub fn two_points(&self) -> (HPoint, HPoint) {
        let [u, v, w] = &self.0;
        let zero = CScalar::zero();
        // candidates: L × e_k for the coordinate axes; at least two are
        // nonzero and distinct
        let pts: Vec<Triple> = [
            [zero.clone(), -w, v.clone()],
            [w.clone(), zero.clone(), -u],
            [-v, u.clone(), zero],
        ]
        .into_iter()
        .filter(|p| !p.iter().all(CScalar::is_zero))
        .collect();
        let first = pts[0].clone();
        let second = pts
            .iter()
            .find(|p| !proportional(p, &first))
            .cloned()
            .expect("a line carries two distinct axis points");
        (HPoint(first), HPoint(second))
    }
}

impl PartialEq for HLine {
    fn eq(&self, other: &Self) -> bool {
        proportional(&self.0, &other.0)
    }
}

impl Eq for HLine {}

impl fmt::Display for HLine {
    /// Written as `x + i y = k z` style linear equation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical().0;
        let mut terms = Vec::new();
        for (coef, var) in c[..2].iter().zip(["x", "y"]) {
            if coef.is_zero() {
                continue;
            }
            let t = if coef.is_one() {
                var.to_string()
            } else if (-coef).is_one() {
                format!("-{var}")
            } else if coef.re.is_zero() || coef.im.is_zero() {
                format!("{coef}{var}")
            } else {
                format!("({coef}){var}")
            };
            terms.push(t);
        }
        let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
        let rhs = -&c[2];
        if rhs.is_zero() {
            write!(f, "{lhs} = 0")
        } else if rhs.is_one() {
            write!(f, "{lhs} = z")
        } else if rhs.re.is_zero() || rhs.im.is_zero() {
            write!(f, "{lhs} = {rhs}z")
        } else {
            write!(f, "{lhs} = ({rhs})z")
        }
    }
}

/// The cyclic points I = [1 : i : 0] and J = [1 : −i : 0].
pub fn cyclic_points() -> (HPoint, HPoint) {
    (
        HPoint([CScalar::one(), CScalar::i(), CScalar::zero()]),
        HPoint([CScalar::one(), -CScalar::i(), CScalar::zero()]),
    )
}

/// A line is isotropic when it passes through I or J. The infinity line
/// passes through both.
pub fn is_isotropic(l: &HLine) -> bool {
    let (i, j) = cyclic_points();
    l.contains(&i) || l.contains(&j)
}

type Mat3 = [[CScalar; 3]; 3];

fn mat_vec(m: &Mat3, v: &Triple) -> Triple {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

fn transpose(m: &Mat3) -> Mat3 {
    std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].clone()))
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let bt = transpose(b);
    std::array::from_fn(|r| std::array::from_fn(|c| dot(&a[r], &bt[c])))
}

fn identity() -> Mat3 {
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { CScalar::one() } else { CScalar::zero() }))
}

fn determinant(m: &Mat3) -> CScalar {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Adjugate; for a symmetric matrix this is the dual conic up to scale.
fn adjugate(m: &Mat3) -> Mat3 {
    // columns of adj are cross products of the rows
    let cols = [cross(&m[1], &m[2]), cross(&m[2], &m[0]), cross(&m[0], &m[1])];
    transpose(&cols)
}

/// Symmetric 3×3 matrix of a conic `Pᵀ C P = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicMat(Mat3);

impl ConicMat {
    pub fn new(m: [[CScalar; 3]; 3]) -> Result<Self> {
        for r in 0..3 {
            for c in 0..r {
                if m[r][c] != m[c][r] {
                    return Err(Error::Domain("conic matrix must be symmetric".into()));
                }
            }
        }
        if m.iter().flatten().all(CScalar::is_zero) {
            return Err(Error::Domain("conic matrix is zero".into()));
        }
        Ok(Self(m))
    }

    /// A x² + B xy + C y² + D xz + E yz + F z².
    pub fn from_coeffs(a: CScalar, b: CScalar, c: CScalar, d: CScalar, e: CScalar, f: CScalar) -> Result<Self> {
        let half = CScalar::ratio(1, 2);
        let (b, d, e) = (&b * &half, &d * &half, &e * &half);
        Self::new([
            [a, b.clone(), d.clone()],
            [b, c, e.clone()],
            [d, e, f],
        ])
    }

    /// x²/a² + y²/b² = z², given the squared semi-axes.
    pub fn axis_ellipse(a_sq: BigRational, b_sq: BigRational) -> Result<Self> {
        if a_sq.is_zero() || b_sq.is_zero() {
            return Err(Error::Domain("semi-axes must be nonzero".into()));
        }
        let z = CScalar::zero;
        Self::new([
            [CScalar::real(a_sq.recip()), z(), z()],
            [z(), CScalar::real(b_sq.recip()), z()],
            [z(), z(), CScalar::int(-1)],
        ])
    }

    pub fn unit_circle() -> Self {
        Self::axis_ellipse(BigRational::one(), BigRational::one()).expect("valid")
    }

    pub fn entries(&self) -> &[[CScalar; 3]; 3] {
        &self.0
    }

    pub fn determinant(&self) -> CScalar {
        determinant(&self.0)
    }

    pub fn is_regular(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().flatten().all(CScalar::is_real)
    }

    /// Pᵀ C P (bilinear, no conjugation).
    pub fn eval(&self, p: &HPoint) -> CScalar {
        dot(&p.0, &mat_vec(&self.0, &p.0))
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Polar line C·P.
    pub fn polar(&self, p: &HPoint) -> Result<HLine> {
        nonzero(mat_vec(&self.0, &p.0))
            .map(HLine)
            .map_err(|_| Error::Singular)
    }

    /// Lᵀ adj(C) L, zero iff L is tangent to a regular C.
    pub fn dual_eval(&self, l: &HLine) -> CScalar {
        dot(&l.0, &mat_vec(&adjugate(&self.0), &l.0))
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::Singular)
        }
    }
}

/// Tangent line to a regular conic at one of its points.
pub fn conic_tangent_line(c: &ConicMat, p: &HPoint) -> Result<HLine> {
    c.require_regular()?;
    if !c.contains(p) {
        return Err(Error::Incidence);
    }
    c.polar(p)
}

/// Lines through the cyclic points tangent to a conic, roots counted with
/// multiplicity: two through I and two through J.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicTangents {
    pub through_i: [HLine; 2],
    pub through_j: [HLine; 2],
}

impl IsotropicTangents {
    pub fn all(&self) -> Vec<HLine> {
        self.through_i.iter().chain(&self.through_j).cloned().collect()
    }
}

fn format_quadratic(p: &CScalar, q: &CScalar) -> String {
    let term = |c: &CScalar, var: &str| {
        if c.is_zero() {
            String::new()
        } else if c.re.is_zero() || c.im.is_zero() {
            let s = c.to_string();
            if s.starts_with('-') {
                format!(" - {}{var}", &s[1..])
            } else {
                format!(" + {s}{var}")
            }
        } else {
            format!(" + ({c}){var}")
        }
    };
    format!("k^2{}{}", term(p, "k"), term(q, ""))
}

/// Finite tangent lines `x ± i y = k z`, found by solving the quadratic
/// tangency condition in `k` exactly.
pub fn isotropic_tangents(c: &ConicMat) -> Result<IsotropicTangents> {
    c.require_regular()?;
    let m = adjugate(&c.0);
    // infinity line tangent ⇔ leading coefficient vanishes
    let alpha = m[2][2].clone();
    if alpha.is_zero() {
        return Err(Error::Unsupported(
            "the infinity line is tangent to the conic (parabola type)".into(),
        ));
    }
    let solve = |sign: i64| -> Result<[HLine; 2]> {
        // L(k) = l0 + k l1 with l0 = (1, ±i, 0), l1 = (0, 0, −1)
        let s = CScalar::gaussian(0, sign);
        let l0: Triple = [CScalar::one(), s.clone(), CScalar::zero()];
        let l1: Triple = [CScalar::zero(), CScalar::zero(), CScalar::int(-1)];
        let beta = &CScalar::int(2) * &dot(&l0, &mat_vec(&m, &l1));
        let gamma = dot(&l0, &mat_vec(&m, &l0));
        let p = &beta / &alpha;
        let q = &gamma / &alpha;
        // k² + p k + q = 0
        let disc = &(&p * &p) - &(&CScalar::int(4) * &q);
        let root = disc.sqrt().ok_or_else(|| Error::FieldExtension {
            polynomial: format!(
                "{}  (k for lines x {} iy = kz)",
                format_quadratic(&p, &q),
                if sign > 0 { "+" } else { "-" }
            ),
        })?;
        let half = CScalar::ratio(1, 2);
        let k1 = &(&(-&p) + &root) * &half;
        let k2 = &(&(-&p) - &root) * &half;
        let line = |k: CScalar| HLine([l0[0].clone(), l0[1].clone(), -k]);
        Ok([line(k1), line(k2)])
    };
    Ok(IsotropicTangents {
        through_i: solve(1)?,
        through_j: solve(-1)?,
    })
}

/// Intersections of each I-tangent with each J-tangent (four points with
/// multiplicity).
pub fn foci(c: &ConicMat) -> Result<Vec<HPoint>> {
    let t = isotropic_tangents(c)?;
    let mut out = Vec::with_capacity(4);
    for li in &t.through_i {
        for lj in &t.through_j {
            out.push(li.meet(lj)?);
        }
    }
    Ok(out)
}

/// A regular conic is a circle when it passes through both cyclic points.
pub fn is_circle(c: &ConicMat) -> Result<bool> {
    c.require_regular()?;
    let (i, j) = cyclic_points();
    Ok(c.contains(&i) && c.contains(&j))
}

/// Meet of the tangents at I and J.
pub fn circle_center(c: &ConicMat) -> Result<HPoint> {
    if !is_circle(c)? {
        return Err(Error::Domain("conic is not a circle".into()));
    }
    let (i, j) = cyclic_points();
    conic_tangent_line(c, &i)?.meet(&conic_tangent_line(c, &j)?)
}

/// True when both lists hold the same lines with the same multiplicities.
pub fn same_line_multiset(a: &[HLine], b: &[HLine]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|l| {
        match (0..b.len()).find(|&k| !used[k] && b[k] == *l) {
            Some(k) => {
                used[k] = true;
                true
            }
            None => false,
        }
    })
}

/// Projective transformation given by a 3×3 matrix acting on points.
#[derive(Debug, Clone, PartialEq)]
pub struct Projectivity(Mat3);

impl Projectivity {
    pub fn matrix(&self) -> &[[CScalar; 3]; 3] {
        &self.0
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        HPoint(mat_vec(&self.0, &p.0))
    }

    /// Image of a line: L ↦ adj(M)ᵀ L.
    pub fn apply_line(&self, l: &HLine) -> HLine {
        HLine(mat_vec(&transpose(&adjugate(&self.0)), &l.0))
    }

    pub fn compose(&self, other: &Projectivity) -> Projectivity {
        Projectivity(mat_mul(&self.0, &other.0))
    }

    /// Exactly the identity matrix.
    pub fn is_identity(&self) -> bool {
        self.0 == identity()
    }

    /// Acts on directions by the upper-left 2×2 block and fixes the
    /// infinity line.
    pub fn is_affine(&self) -> bool {
        self.0[2][0].is_zero() && self.0[2][1].is_zero() && !self.0[2][2].is_zero()
    }

    /// The linear part M satisfies Mᵀ M = I, i.e. preserves dx² + dy².
    pub fn preserves_isotropic_form(&self) -> bool {
        if !self.is_affine() || !self.0[2][2].is_one() {
            return false;
        }
        let m = &self.0;
        let col = |c: usize| [m[0][c].clone(), m[1][c].clone()];
        let d2 = |u: &[CScalar; 2], v: &[CScalar; 2]| &(&u[0] * &v[0]) + &(&u[1] * &v[1]);
        let (c0, c1) = (col(0), col(1));
        d2(&c0, &c0).is_one() && d2(&c1, &c1).is_one() && d2(&c0, &c1).is_zero()
    }
}

/// The complex-isometric involution fixing the points of a non-isotropic
/// finite line: x ↦ x − 2 (u x + v y + w)/(u² + v²) · (u, v).
pub fn reflection_about(l: &HLine) -> Result<Projectivity> {
    if is_isotropic(l) {
        return Err(Error::Isotropic);
    }
    let [u, v, _] = &l.0;
    let s = &(u * u) + &(v * v);
    // u² + v² = (u + iv)(u − iv) vanishes exactly on isotropic lines
    let k = &CScalar::int(-2) / &s;
    let n = [u.clone(), v.clone(), CScalar::zero()];
    let mut m = identity();
    for (r, nr) in n.iter().enumerate() {
        let scaled = &k * nr;
        for (c, lc) in l.0.iter().enumerate() {
            m[r][c] = &m[r][c] + &(&scaled * lc);
        }
    }
    Ok(Projectivity(m))
}

/// Image of `target` under the reflection about `mirror`.
pub fn reflect_line(mirror: &HLine, target: &HLine) -> Result<HLine> {
    Ok(reflection_about(mirror)?.apply_line(target))
}

/// Squared Fubini–Study chordal distance 1 − |⟨a, b̄⟩|² / (|a|² |b|²),
/// exact; zero iff the lines coincide.
pub fn projective_distance_sq(a: &HLine, b: &HLine) -> BigRational {
    let inner = a.0.iter().zip(&b.0).fold(CScalar::zero(), |acc, (x, y)| &acc + &(x * &y.conj()));
    let na: BigRational = a.0.iter().map(CScalar::norm_sqr).sum();
    let nb: BigRational = b.0.iter().map(CScalar::norm_sqr).sum();
    BigRational::one() - inner.norm_sqr() / (na * nb)
}

/// Mirror through the origin with direction (1, i(1 − 1/n)); tends to the
/// isotropic line through the origin with direction (1, i).
pub fn near_isotropic_mirror(n: u64) -> Result<HLine> {
    let n = i64::try_from(n).map_err(|_| Error::Domain("n too large".into()))?;
    if n < 2 {
        return Err(Error::Domain("n must be at least 2".into()));
    }
    // direction (p, q) ⇒ line q x − p y = 0
    let q = CScalar::new(BigRational::zero(), BigRational::new((n - 1).into(), n.into()));
    HLine::new(q, CScalar::int(-1), CScalar::zero())
}

/// The isotropic line i x − y = 0 through the origin.
pub fn isotropic_limit_line() -> HLine {
    HLine([CScalar::i(), CScalar::int(-1), CScalar::zero()])
}

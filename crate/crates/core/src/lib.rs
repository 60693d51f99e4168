//! Triangular billiard orbits in an ellipse and the loci of their centers.
//!
//! The real side builds the Poncelet family of 3-periodic orbits (one
//! caustic solve, then tangent chords), samples triangle centers over the
//! family, and fits/classifies the resulting curves as conics. The
//! [`cp2`] module works exactly over the Gaussian rationals in the complex
//! projective plane: cyclic points, isotropic tangents, foci, circles and
//! the complex reflection law.

pub mod billiard;
pub mod centers;
pub mod conic;
pub mod cp2;
pub mod error;
pub mod locus;
pub mod shooting;
pub mod verify;

pub use billiard::{
    billiard_step, find_caustic, poncelet_triangle, reflect_direction, reflection_residual,
    symmetric_orbits, tangency_defects, CausticResult, Orbit,
};
pub use centers::{circumcircle, triangle_center, CenterKind, CircleData};
pub use conic::{chord_from, confocal_ellipse, ellipse_point, ellipse_tangent_dir, Direction, Ellipse, RealPoint};
pub use error::{Error, Result};
pub use locus::{
    classify_conic, derivative_checks, fit_conic, locus_report, sample_locus, ConicClass,
    ConicCoeffs, ConicKind, LocusReport,
};

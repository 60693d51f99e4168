//! Versioned JSON schema for locus reports.

use std::collections::BTreeMap;

use poncelet_core::{CenterKind, ConicKind, LocusReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axes {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausticJson {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub kind: ConicKind,
    pub center: Option<[f64; 2]>,
    pub axis_angle: Option<f64>,
    pub semi_major: Option<f64>,
    pub semi_minor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusJson {
    pub schema: u32,
    pub ellipse: Axes,
    pub center_kind: CenterKind,
    pub n: usize,
    pub caustic: CausticJson,
    pub fit: Option<[f64; 6]>,
    pub class: Option<ClassJson>,
    pub max_residual: Option<f64>,
    pub symmetry_defect: Option<f64>,
    pub foci_line_points: Option<[[f64; 2]; 2]>,
    pub collapsed: bool,
    pub tolerances: BTreeMap<String, f64>,
}

impl LocusJson {
    pub fn from_report(r: &LocusReport, tolerances: &BTreeMap<String, f64>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            ellipse: Axes {
                a: r.ellipse.a(),
                b: r.ellipse.b(),
            },
            center_kind: r.kind,
            n: r.samples.len(),
            caustic: CausticJson {
                lambda: r.caustic.lambda,
                a: r.caustic.caustic.a(),
                b: r.caustic.caustic.b(),
            },
            fit: r.fit.map(|f| f.0),
            class: r.class.map(|c| ClassJson {
                kind: c.kind,
                center: c.center.map(|p| [p.x, p.y]),
                axis_angle: c.axis_angle,
                semi_major: c.semi_major,
                semi_minor: c.semi_minor,
            }),
            max_residual: r.max_residual,
            symmetry_defect: r.symmetry_defect,
            foci_line_points: r.foci_line_points.map(|ps| ps.map(|p| [p.x, p.y])),
            collapsed: r.collapsed,
            tolerances: tolerances.clone(),
        }
    }
}

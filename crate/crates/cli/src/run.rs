use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use poncelet_core::cp2::{self, ConicMat};
use poncelet_core::locus::{locus_report_with, LocusConfig};
use poncelet_core::{
    circumcircle, find_caustic, poncelet_triangle, reflection_residual, tangency_defects, verify, CenterKind, Ellipse,
    Error,
};
use serde::Serialize;

use crate::args::{Cli, Command, Cp2Command, ExactTable, TableArgs};
use crate::exact::parse_rational;
use crate::output::{num, render_svg, write_samples_file};
use crate::report::LocusJson;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Io(String),
    Verification(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Verification(names) => write!(f, "verification failed: {}", names.join(", ")),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn table(args: &TableArgs) -> Result<Ellipse> {
    if !(args.a.is_finite() && args.b.is_finite() && args.b > 0.0 && args.a >= args.b) {
        return Err(CliError::Usage(format!("need a >= b > 0, got a = {}, b = {}", args.a, args.b)));
    }
    Ok(Ellipse::new(args.a, args.b)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// `out.json` → `out.centroid.json` when several kinds share one path.
fn per_kind_path(path: &Path, kind: CenterKind, multi: bool) -> PathBuf {
    if !multi {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{kind}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{kind}"),
    };
    path.with_file_name(name)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Caustic { table: t, tol, json } => {
            let e = table(&t)?;
            let tols = tol.resolve();
            let c = find_caustic(&e, tols["caustic"])?;
            writeln!(out, "lambda {}", num(c.lambda))?;
            writeln!(out, "caustic_a {}", num(c.caustic.a()))?;
            writeln!(out, "caustic_b {}", num(c.caustic.b()))?;
            writeln!(out, "residual {}", num(c.residual))?;
            if let Some(path) = json {
                write_json(&path, &c)?;
            }
        }
        Command::Orbit { table: t, t: start, tol, json } => {
            let e = table(&t)?;
            if !start.is_finite() {
                return Err(CliError::Usage("--t must be finite".into()));
            }
            let tols = tol.resolve();
            let c = find_caustic(&e, tols["caustic"])?;
            let o = poncelet_triangle(&e, &c.caustic, start)?;
            for (k, (t, v)) in o.t.iter().zip(o.vertices).enumerate() {
                writeln!(out, "vertex{} t {} x {} y {}", k + 1, num(*t), num(v.x), num(v.y))?;
            }
            let [v1, v2, v3] = o.vertices;
            let circ = circumcircle(v1, v2, v3)?;
            writeln!(out, "closure_residual {}", num(o.closure_residual))?;
            writeln!(out, "reflection_residual {}", num(reflection_residual(&e, &o)?))?;
            let tangency = tangency_defects(&c.caustic, &o).into_iter().fold(0.0, f64::max);
            writeln!(out, "tangency_defect {}", num(tangency))?;
            writeln!(out, "circumcenter {} {}", num(circ.center.x), num(circ.center.y))?;
            writeln!(out, "circumradius {}", num(circ.radius))?;
            if o.closure_residual > tols["closure"] {
                return Err(Error::Solver(format!("orbit closure residual {:e} above tolerance", o.closure_residual)).into());
            }
            if let Some(path) = json {
                write_json(&path, &o)?;
            }
        }
        Command::Locus { table: t, center, n, tol, json, csv, svg } => {
            let e = table(&t)?;
            if n < poncelet_core::locus::MIN_REPORT_SAMPLES {
                return Err(CliError::Usage(format!("--n must be at least {}", poncelet_core::locus::MIN_REPORT_SAMPLES)));
            }
            if center.is_empty() {
                return Err(CliError::Usage("--center needs at least one kind".into()));
            }
            let tols = tol.resolve();
            let cfg = LocusConfig {
                caustic_tol: tols["caustic"],
                closure_tol: tols["closure"],
                ..LocusConfig::default()
            };
            let multi = center.len() > 1;
            for kind in center {
                let report = locus_report_with(&e, kind, n, &cfg)?;
                let doc = LocusJson::from_report(&report, &tols);
                print_summary(out, &doc, &tols)?;
                if let Some(path) = &json {
                    write_json(&per_kind_path(path, kind, multi), &doc)?;
                }
                if let Some(path) = &csv {
                    write_samples_file(&per_kind_path(path, kind, multi), &report.samples)?;
                }
                if let Some(path) = &svg {
                    let triangles = (0..12)
                        .map(|k| poncelet_triangle(&e, &report.caustic.caustic, TAU * k as f64 / 12.0))
                        .collect::<std::result::Result<Vec<_>, _>>()?;
                    let text = render_svg(&e, &report.caustic.caustic, &triangles, &report.points());
                    std::fs::write(per_kind_path(path, kind, multi), text)?;
                }
            }
        }
        Command::Verify { seed, json } => {
            let results = verify::run_all(seed);
            for c in &results {
                writeln!(
                    out,
                    "[{}] {} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.name,
                    c.detail
                )?;
            }
            if let Some(path) = json {
                write_json(&path, &results)?;
            }
            let failed: Vec<String> = results.iter().filter(|c| !c.passed).map(|c| format!("{} {}", c.id, c.name)).collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed));
            }
        }
        Command::Cp2(cmd) => cp2_command(cmd, out)?,
    }
    Ok(())
}

fn print_summary(out: &mut dyn Write, doc: &LocusJson, tols: &BTreeMap<String, f64>) -> Result<()> {
    writeln!(out, "center_kind {}", doc.center_kind)?;
    writeln!(out, "collapsed {}", doc.collapsed)?;
    if let (Some(class), Some(res), Some(sym)) = (&doc.class, doc.max_residual, doc.symmetry_defect) {
        writeln!(out, "kind {}", serde_json::to_value(class.kind)?.as_str().unwrap_or("?"))?;
        writeln!(out, "max_residual {} (tol {})", num(res), num(tols["fit_residual"]))?;
        writeln!(out, "symmetry_defect {} (tol {})", num(sym), num(tols["symmetry"]))?;
        if let (Some(major), Some(minor)) = (class.semi_major, class.semi_minor) {
            writeln!(out, "semi_axes {} {}", num(major), num(minor))?;
        }
    }
    Ok(())
}

fn exact_conic(t: &ExactTable) -> Result<(BigRational, BigRational, ConicMat)> {
    let a = parse_rational(&t.a).map_err(CliError::Usage)?;
    let b = parse_rational(&t.b).map_err(CliError::Usage)?;
    let zero = BigRational::from_integer(0.into());
    if !(b > zero && a >= b) {
        return Err(CliError::Usage(format!("need a >= b > 0, got a = {a}, b = {b}")));
    }
    let (a_sq, b_sq) = (&a * &a, &b * &b);
    let conic = ConicMat::axis_ellipse(a_sq.clone(), b_sq.clone())?;
    Ok((a_sq, b_sq, conic))
}

fn cp2_command(cmd: Cp2Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Cp2Command::Foci(t) => {
            let (_, _, c) = exact_conic(&t)?;
            let mut foci = cp2::foci(&c)?;
            // real foci first, then by descending real/imaginary parts
            foci.sort_by(|p, q| {
                let key = |h: &cp2::HPoint| {
                    h.to_affine().map(|(x, y)| (!h.is_real(), -x.re, -x.im, -y.re, -y.im))
                };
                key(p).cmp(&key(q))
            });
            for f in foci {
                writeln!(out, "{f}")?;
            }
        }
        Cp2Command::Tangents(t) => {
            let (_, _, c) = exact_conic(&t)?;
            for l in cp2::isotropic_tangents(&c)?.all() {
                writeln!(out, "{l}")?;
            }
        }
        Cp2Command::CheckConfocal { table: t, lambda } => {
            let (a_sq, b_sq, c) = exact_conic(&t)?;
            let lambda = parse_rational(&lambda).map_err(CliError::Usage)?;
            let zero = BigRational::from_integer(0.into());
            if !(lambda >= zero && lambda < b_sq) {
                return Err(CliError::Usage(format!("--lambda must lie in [0, b²) = [0, {b_sq})")));
            }
            let shifted = ConicMat::axis_ellipse(&a_sq - &lambda, &b_sq - &lambda)?;
            let t0 = cp2::isotropic_tangents(&c)?.all();
            let t1 = cp2::isotropic_tangents(&shifted)?.all();
            writeln!(out, "base a^2 = {a_sq}, b^2 = {b_sq}")?;
            writeln!(out, "shifted a^2 = {}, b^2 = {}", &a_sq - &lambda, &b_sq - &lambda)?;
            for l in &t1 {
                writeln!(out, "{l}")?;
            }
            let same = cp2::same_line_multiset(&t0, &t1);
            writeln!(out, "same_isotropic_tangents {same}")?;
            if !same {
                return Err(CliError::Verification(vec!["confocal isotropic tangents differ".into()]));
            }
        }
    }
    Ok(())
}

use std::path::Path;
use std::process::{Command, Output};

use poncelet_cli::output::read_samples_csv;
use poncelet_cli::report::LocusJson;
use poncelet_core::{fit_conic, ConicCoeffs, ConicKind};

fn poncelet(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poncelet"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn load(path: &Path) -> LocusJson {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn locus_reports_an_ellipse_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = poncelet(
        &["locus", "--a", "2", "--b", "1", "--center", "circumcenter", "--n", "720", "--json", "out.json", "--csv", "out.csv", "--svg", "out.svg"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = load(&dir.path().join("out.json"));
    assert_eq!(doc.schema, 1);
    assert_eq!(doc.n, 720);
    assert_eq!(doc.class.as_ref().unwrap().kind, ConicKind::Ellipse);
    assert!(doc.max_residual.unwrap() <= 1e-8);
    assert!(!doc.collapsed);

    let raw: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    for key in ["schema", "ellipse", "center_kind", "n", "caustic", "fit", "class", "max_residual", "symmetry_defect", "foci_line_points", "collapsed", "tolerances"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
    assert_eq!(raw["class"]["kind"], "ellipse");
    assert_eq!(raw["center_kind"], "circumcenter");

    let samples = read_samples_csv(std::fs::File::open(dir.path().join("out.csv")).unwrap()).unwrap();
    assert_eq!(samples.len(), 720);
    let points: Vec<_> = samples.iter().map(|s| s.point).collect();
    let refit = fit_conic(&points).unwrap();
    let stored = ConicCoeffs(doc.fit.unwrap());
    assert!(refit.same_up_to_scale(&stored, 1e-12));

    let svg = std::fs::read_to_string(dir.path().join("out.svg")).unwrap();
    assert!(svg.contains("<svg") && svg.contains("version=\"1.1\""));
    // table + caustic + 12 triangles
    assert_eq!(svg.matches("<polygon").count(), 14);
    assert_eq!(svg.matches("<polyline").count(), 1);
}

#[test]
fn circle_locus_is_collapsed() {
    let dir = tempfile::tempdir().unwrap();
    let o = poncelet(&["locus", "--a", "1", "--b", "1", "--center", "circumcenter", "--n", "64", "--json", "c.json"], dir.path());
    assert!(o.status.success());
    let doc = load(&dir.path().join("c.json"));
    assert!(doc.collapsed);
    assert!(doc.fit.is_none());
}

#[test]
fn several_kinds_write_separate_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = poncelet(&["locus", "--a", "2", "--b", "1", "--center", "centroid,incenter", "--n", "64", "--json", "r.json"], dir.path());
    assert!(o.status.success());
    assert!(dir.path().join("r.centroid.json").exists());
    assert!(dir.path().join("r.incenter.json").exists());
}

#[test]
fn cp2_foci_are_exact() {
    let dir = tempfile::tempdir().unwrap();
    let o = poncelet(&["cp2", "foci", "--a", "5", "--b", "3"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(4, 0)\n(-4, 0)\n(0, 4i)\n(0, -4i)\n");

    let o = poncelet(&["cp2", "check-confocal", "--a", "5", "--b", "3", "--lambda", "5"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("same_isotropic_tangents true"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(poncelet(&["locus", "--a", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(poncelet(&["locus", "--a", "1", "--b", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(poncelet(&["locus", "--a", "2", "--b", "1", "--n", "10"], dir.path()).status.code(), Some(2));
    assert_eq!(poncelet(&["orbit", "--a", "2", "--b", "1", "--t", "0", "--tol", "nope=1"], dir.path()).status.code(), Some(2));
    // a² − b² = 3 has no rational square root
    let o = poncelet(&["cp2", "tangents", "--a", "2", "--b", "1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k^2 - 3"));
}

#[test]
fn orbit_and_caustic_print_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = poncelet(&["caustic", "--a", "2", "--b", "1"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let lambda: f64 = text.lines().next().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((lambda - 0.98271).abs() < 1e-4);

    let o = poncelet(&["orbit", "--a", "2", "--b", "1", "--t", "-0.5"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("vertex")).count(), 3);
    assert!(text.contains("closure_residual"));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = poncelet(&["verify", "--json", "a.json"], dir.path());
    let b = poncelet(&["verify", "--json", "b.json"], dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(b.status.code(), Some(0));
    let (ja, jb) = (
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("b.json")).unwrap(),
    );
    assert_eq!(ja, jb);
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
}

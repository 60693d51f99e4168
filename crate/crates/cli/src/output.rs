//! CSV sample files and SVG figures.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use poncelet_core::locus::Sample;
use poncelet_core::{Ellipse, Orbit, RealPoint};

/// 17 significant digits; round-trips every f64.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_samples_csv<W: io::Write>(out: W, samples: &[Sample]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "x", "y"])?;
    for s in samples {
        w.write_record([num(s.t), num(s.point.x), num(s.point.y)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples_csv<R: io::Read>(input: R) -> csv::Result<Vec<Sample>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize::<(f64, f64, f64)>()
        .map(|row| row.map(|(t, x, y)| Sample { t, point: RealPoint::new(x, y) }))
        .collect()
}

pub fn write_samples_file(path: &Path, samples: &[Sample]) -> csv::Result<()> {
    write_samples_csv(std::fs::File::create(path)?, samples)
}

struct Frame {
    min: RealPoint,
    scale: f64,
    height: f64,
}

impl Frame {
    const WIDTH: f64 = 800.0;
    const MARGIN: f64 = 20.0;

    fn fit(points: impl Iterator<Item = RealPoint>) -> Self {
        let (mut lo, mut hi) = (RealPoint::new(f64::INFINITY, f64::INFINITY), RealPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points.filter(|p| p.is_finite()) {
            lo = RealPoint::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = RealPoint::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span_x = (hi.x - lo.x).max(1e-12);
        let span_y = (hi.y - lo.y).max(1e-12);
        let scale = (Self::WIDTH - 2.0 * Self::MARGIN) / span_x.max(span_y);
        Self {
            min: lo,
            scale,
            height: span_y * scale + 2.0 * Self::MARGIN,
        }
    }

    fn width(&self) -> f64 {
        Self::WIDTH
    }

    fn map(&self, p: RealPoint) -> (f64, f64) {
        (
            Self::MARGIN + (p.x - self.min.x) * self.scale,
            self.height - Self::MARGIN - (p.y - self.min.y) * self.scale,
        )
    }

    fn polyline(&self, pts: &[RealPoint], closed: bool, style: &str) -> String {
        let mut d = String::new();
        for p in pts {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{x:.3},{y:.3} ");
        }
        let tag = if closed { "polygon" } else { "polyline" };
        format!("  <{tag} points=\"{}\" {style}/>\n", d.trim_end())
    }
}

fn outline(e: &Ellipse) -> Vec<RealPoint> {
    (0..360).map(|k| e.point(std::f64::consts::TAU * k as f64 / 360.0)).collect()
}

/// Table, caustic, sample triangles and the locus polyline as SVG 1.1.
pub fn render_svg(table: &Ellipse, caustic: &Ellipse, triangles: &[Orbit], locus: &[RealPoint]) -> String {
    let boundary = outline(table);
    let frame = Frame::fit(boundary.iter().chain(locus).copied());
    let mut svg = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        w = frame.width(),
        h = frame.height
    );
    svg += &frame.polyline(&boundary, true, "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
    svg += &frame.polyline(&outline(caustic), true, "fill=\"none\" stroke=\"#2a7ab0\" stroke-width=\"1\"");
    for o in triangles {
        svg += &frame.polyline(&o.vertices, true, "fill=\"none\" stroke=\"#999999\" stroke-width=\"0.6\"");
    }
    if !locus.is_empty() {
        let mut closed = locus.to_vec();
        closed.push(locus[0]);
        svg += &frame.polyline(&closed, false, "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"");
    }
    svg += "</svg>\n";
    svg
}

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use poncelet_core::CenterKind;

#[derive(Debug, Parser)]
#[command(name = "poncelet", version, about = "Triangular billiard orbits in an ellipse and their center loci")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the caustic of the triangular orbits.
    Caustic {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the triangular orbit through the boundary point at angle t.
    Orbit {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sample, fit and classify center loci.
    Locus {
        #[command(flatten)]
        table: TableArgs,
        /// Comma-separated center kinds.
        #[arg(long, value_delimiter = ',', default_value = "circumcenter")]
        center: Vec<CenterKind>,
        #[arg(long, default_value_t = 720)]
        n: usize,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the verification suite; exits 3 if any criterion fails.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact queries in the complex projective plane.
    #[command(subcommand)]
    Cp2(Cp2Command),
}

#[derive(Debug, Subcommand)]
pub enum Cp2Command {
    /// Complex foci of x²/a² + y²/b² = 1.
    Foci(ExactTable),
    /// Isotropic tangent lines of x²/a² + y²/b² = 1.
    Tangents(ExactTable),
    /// Compare isotropic tangents with the confocal ellipse shifted by λ.
    CheckConfocal {
        #[command(flatten)]
        table: ExactTable,
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
}

/// Semi-axes as exact rationals (`5`, `1.5`, `7/2`).
#[derive(Debug, Clone, Args)]
pub struct ExactTable {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TolArgs {
    /// Named tolerance override, `name=value`; repeatable.
    #[arg(long = "tol", value_parser = parse_tol)]
    pub overrides: Vec<(String, f64)>,
}

pub const TOLERANCE_NAMES: [&str; 4] = ["caustic", "closure", "fit_residual", "symmetry"];

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let name = name.trim();
    if !TOLERANCE_NAMES.contains(&name) {
        return Err(format!("unknown tolerance '{name}' (known: {})", TOLERANCE_NAMES.join(", ")));
    }
    let value: f64 = value.trim().parse().map_err(|e| format!("bad value for {name}: {e}"))?;
    if !(value.is_finite() && value > 0.0) {
        return Err(format!("tolerance {name} must be positive"));
    }
    Ok((name.to_string(), value))
}

impl TolArgs {
    /// Defaults overlaid with the command-line overrides.
    pub fn resolve(&self) -> BTreeMap<String, f64> {
        let mut map = BTreeMap::from([
            ("caustic".to_string(), poncelet_core::billiard::CAUSTIC_TOL),
            ("closure".to_string(), poncelet_core::billiard::CLOSURE_TOL),
            ("fit_residual".to_string(), poncelet_core::verify::tol::FIT_RESIDUAL),
            ("symmetry".to_string(), poncelet_core::verify::tol::SYMMETRY),
        ]);
        for (name, value) in &self.overrides {
            map.insert(name.clone(), *value);
        }
        map
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("direction is tangent to the ellipse at t = {t}")]
    Tangency { t: f64 },
    #[error("chord from t = {t} is too short to separate its roots (|s| = {separation:e})")]
    NearTangency { t: f64, separation: f64 },
    #[error("solver error: {0}")]
    Solver(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("operation requires a non-circular ellipse (a > b)")]
    Circle,
    #[error("need at least {needed} points, got {got}")]
    Arity { needed: usize, got: usize },
    #[error("conic fit is ambiguous: {null_dim} near-zero singular directions")]
    Ambiguous { null_dim: usize },
    #[error("at t = {t}: {source}")]
    AtSample {
        t: f64,
        #[source]
        source: Box<Error>,
    },
    #[error("point does not lie on the conic")]
    Incidence,
    #[error("conic matrix is singular")]
    Singular,
    #[error("isotropic tangents need a field extension; minimal polynomial {polynomial}")]
    FieldExtension { polynomial: String },
    #[error("line is isotropic")]
    Isotropic,
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn at(t: f64, source: Error) -> Self {
        Error::AtSample {
            t,
            source: Box::new(source),
        }
    }
}

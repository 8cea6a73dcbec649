use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Solver and validation failures. Every variant carries the module that
/// raised it so callers can report a qualified code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{module}: invalid input: {detail}")]
    InvalidInput { module: &'static str, detail: String },
    #[error("{module}: value out of range: {detail}")]
    OutOfRange { module: &'static str, detail: String },
    #[error("{module}: no convergence: {detail}")]
    NoConvergence { module: &'static str, detail: String },
    #[error("{module}: iteration diverges: {detail}")]
    Divergence { module: &'static str, detail: String },
    #[error("{module}: overflow: {detail}")]
    Overflow { module: &'static str, detail: String },
    #[error("{module}: contour leaves the Airy decay sector: {detail}")]
    SectorViolation { module: &'static str, detail: String },
    #[error("{module}: negative radicand: {detail}")]
    NegativeRadicand { module: &'static str, detail: String },
    #[error("{module}: blended map jumps at the seam: {detail}")]
    SeamDiscontinuity { module: &'static str, detail: String },
    #[error("{module}: degenerate denominator: {detail}")]
    Degenerate { module: &'static str, detail: String },
    #[error("{module}: adaptive quadrature stalled: {detail}")]
    QuadratureStall { module: &'static str, detail: String },
    #[error("{module}: source does not decay: {detail}")]
    Growth { module: &'static str, detail: String },
    #[error("{module}: parameters outside the asymptotic regime: {detail}")]
    InvalidRegime { module: &'static str, detail: String },
    #[error("{module}: root on the wrong branch: {detail}")]
    WrongBranch { module: &'static str, detail: String },
    #[error("{module}: singular factorization: {detail}")]
    Singular { module: &'static str, detail: String },
}

impl Error {
    /// Short code of the form `module.kind`.
    pub fn code(&self) -> String {
        let (module, kind) = match self {
            Error::InvalidInput { module, .. } => (module, "invalid-input"),
            Error::OutOfRange { module, .. } => (module, "out-of-range"),
            Error::NoConvergence { module, .. } => (module, "no-convergence"),
            Error::Divergence { module, .. } => (module, "divergence"),
            Error::Overflow { module, .. } => (module, "overflow"),
            Error::SectorViolation { module, .. } => (module, "sector-violation"),
            Error::NegativeRadicand { module, .. } => (module, "negative-radicand"),
            Error::SeamDiscontinuity { module, .. } => (module, "seam-discontinuity"),
            Error::Degenerate { module, .. } => (module, "degenerate"),
            Error::QuadratureStall { module, .. } => (module, "quadrature-stall"),
            Error::Growth { module, .. } => (module, "growth"),
            Error::InvalidRegime { module, .. } => (module, "invalid-regime"),
            Error::WrongBranch { module, .. } => (module, "wrong-branch"),
            Error::Singular { module, .. } => (module, "factorization-singular"),
        };
        format!("{module}.{kind}")
    }

    /// True for errors caused by bad user input rather than a failed solve.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput { .. } | Error::OutOfRange { .. })
    }
}

macro_rules! err {
    ($kind:ident, $module:expr, $($arg:tt)*) => {
        $crate::error::Error::$kind { module: $module, detail: format!($($arg)*) }
    };
}
pub(crate) use err;

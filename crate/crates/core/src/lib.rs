//! Numerical construction of compressible Tollmien-Schlichting waves in a
//! subsonic boundary layer.
//!
//! The crate is organised bottom-up: base profiles, complex Airy functions,
//! the Langer change of variables, the Rayleigh and Airy mode solvers, wall
//! boundary data, the dispersion relation and an independent collocation
//! eigenvalue solver for the full linearised system.

pub mod airy_bvp;
pub mod airyfn;
pub mod chebyshev;
pub mod context;
pub mod dispersion;
pub mod error;
pub mod grid;
pub mod langer;
pub mod modes;
pub mod profiles;
pub mod quad;
pub mod rayleigh;
pub mod scaled;
pub mod spectral;

pub use num_complex::Complex64 as C64;

pub use airy_bvp::{FastMode, ModifiedAiryPair};
pub use airyfn::{AiryEval, AiryRegime, RotatedAntiderivatives};
pub use context::WaveContext;
pub use dispersion::{DispersionPoint, ModeKind, ScalingFit, Tier};
pub use error::{Error, Result};
pub use grid::{ComplexField, GridSpec};
pub use langer::LangerMap;
pub use modes::{BoundaryKind, ModeBoundary};
pub use profiles::{BlasiusSolution, Profile, ProfileKind};
pub use rayleigh::SlowMode;
pub use scaled::Scaled;
pub use spectral::{CollocationOperator, Spectrum};

/// Imaginary unit.
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub(crate) fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

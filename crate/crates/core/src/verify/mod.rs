//! Quantitative verification: additive and multiplicative tiling, spectral
//! pairs (by Fuglede tiling and by Gram matrix), orthonormality of the
//! wavelet system on the Fourier side, and Parseval defects.
//!
//! Unbounded sets are verified on caller-supplied bounded windows; every
//! report embeds the window and truncation it was computed on.

mod spectral;
mod tiling;
mod wavelet;

pub use spectral::{check_spectral, SpectralReport, SpectralRoute};
pub use tiling::{
    check_additive_tiling, check_additive_tiling_with_reference, check_mult_tiling,
    check_mult_tiling_with_reference, TilingKind, TilingReport, Truncation,
};
pub use wavelet::{check_wavelet_system, parseval_profile, parseval_test, WaveletReport};

use crate::geometry::GeometryError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("gram-matrix route needs truncation K >= 1, got {0}")]
    InvalidTruncation(usize),
    #[error("region has zero area")]
    EmptyRegion,
    #[error("target escapes the covered region (uncovered area {uncovered:e})")]
    TargetEscapes { uncovered: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

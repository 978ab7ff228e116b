//! Candidate wavelet sets: the explicit diagonal–rotation recursion, the
//! rotation–scaling construction, a congruence exchange engine, and the
//! stepwise composition helpers.
//!
//! Everything here lives in the frequency domain. Traces record the family
//! they were built against; the time-domain dilations are its transposes.

mod diag_rot;
mod exchange;
mod rot_scale;
mod stepwise;

pub use diag_rot::{construct_diag_rot, DiagRotVariant};
pub use exchange::dls_exchange;
pub use rot_scale::{construct_rot_scale, rot_scale_inputs, RotScaleInputs};
pub use stepwise::{
    exwave_pipeline, factor_dilation_set, induce_subspace_tile, ExwaveResult, GroupFactor, InducedTile,
};

use crate::dilation::{DilationError, DilationLabel, DilationSpec, Lattice};
use crate::geometry::{GeometryError, Point, Region};
use crate::verify::VerifyError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One piece of the result: `piece = t + P` with `P` a piece of `E`, and
/// `piece ⊆ d(F)` for the family member at `dilation_index`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExchangeStep {
    pub piece: Region,
    pub translation: Point,
    pub dilation_index: usize,
    pub label: DilationLabel,
    pub iteration: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub method: String,
    pub e: Region,
    pub f: Region,
    pub family: DilationSpec,
    pub lattice: Lattice,
    pub steps: Vec<ExchangeStep>,
    pub result: Region,
    /// Part of `E` not yet accounted for by any step.
    pub residual: Region,
    pub residual_area: f64,
    /// Residual area after each iteration.
    pub residual_history: Vec<f64>,
    pub notes: Vec<String>,
}

impl ConstructionTrace {
    /// `|area(result) + residual_area − area(E)|`.
    pub fn conservation_error(&self) -> f64 {
        (self.result.area() + self.residual_area - self.e.area()).abs()
    }

    /// `Σ area(pieces) − area(result)`; zero when steps are disjoint.
    pub fn piece_overlap(&self) -> f64 {
        (self.steps.iter().map(|s| s.piece.area()).sum::<f64>() - self.result.area()).max(0.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exchange stuck at iteration {iteration} (residual area {residual_area:e}): {detail}")]
    StuckExchange {
        iteration: usize,
        residual_area: f64,
        detail: String,
    },
    #[error("no convergence after {iterations} iterations (residual area {residual_area:e})")]
    NonConvergence {
        iterations: usize,
        residual_area: f64,
        residual: Region,
    },
    #[error("hypothesis `{hypothesis}` failed: {detail}")]
    Hypothesis {
        hypothesis: &'static str,
        detail: String,
    },
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error(transparent)]
    Dilation(#[from] DilationError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// `inner ⊆ outer` up to `eps_area` relative to `inner`.
pub(crate) fn contained_in(inner: &Region, outer: &Region) -> bool {
    let (ib, ob) = (inner.bbox(), outer.bbox());
    let slack = 1e-9 * ib.magnitude().max(ob.magnitude()).max(1.0);
    if ib.min.x < ob.min.x - slack
        || ib.min.y < ob.min.y - slack
        || ib.max.x > ob.max.x + slack
        || ib.max.y > ob.max.y + slack
    {
        return false;
    }
    inner.subtract(outer).area() <= crate::tolerance::eps_area() * inner.area().max(1.0)
}

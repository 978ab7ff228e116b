//! Construction and verification of planar wavelet sets for dilation
//! families of the form `𝒜ℬ`, which need not be groups.
//!
//! * [`geometry`]: region algebra on finite unions of convex polygons.
//! * [`dilation`]: dilation families, expansiveness, lattices.
//! * [`construct`]: explicit recursions and the congruence exchange.
//! * [`verify`]: tiling, spectral, orthonormality and Parseval checks.

pub mod construct;
pub mod dilation;
pub mod geometry;
mod matrix;
pub mod tolerance;
pub mod verify;

pub use dilation::{DilationSpec, Dilations, Lattice};
pub use geometry::{AffineMap, ConvexPolygon, Point, Region};
pub use matrix::Matrix2;
pub use tolerance::{set_tolerances, tolerances, Tolerances};

//! Shared fixtures for the benchmarks.

use waveset_core::construct::{construct_diag_rot, DiagRotVariant};
use waveset_core::geometry::annular_sector;
use waveset_core::{DilationSpec, Matrix2, Region};

/// Literal diagonal-rotation wavelet set at depth `j`.
pub fn diag_rot_set(j: usize) -> Region {
    construct_diag_rot(j, DiagRotVariant::Literal)
        .expect("fixed depth is valid")
        .result
}

pub fn diag_rot_family(powers: [i64; 2]) -> Vec<Matrix2> {
    DilationSpec::rotations_then_powers(Matrix2::diag(2.0, 3.0), 4, powers)
        .enumerate()
        .expect("finite family")
        .matrices
}

/// A many-piece region with curved-looking boundary.
pub fn ring(segments: usize) -> Region {
    annular_sector(0.5, 1.0, 0.0, std::f64::consts::TAU, segments).expect("valid sector")
}

/// `[−w, w] × [−h, h]` with the square `[−hole, hole]²` removed.
pub fn punctured(w: f64, h: f64, hole: f64) -> Region {
    Region::rect(-w, -h, w, h)
        .expect("valid rect")
        .subtract(&Region::square(-hole, hole).expect("valid hole"))
}

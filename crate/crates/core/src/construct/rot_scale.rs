use super::{dls_exchange, ConstructError, ConstructionTrace};
use crate::dilation::{DilationSpec, Lattice};
use crate::geometry::{annular_sector, arc_segments, Region};
use std::f64::consts::{PI, TAU};

/// Arc segments per full circle for polygonalized sectors.
pub const ARC_SEGMENTS_PER_CIRCLE: usize = 64;
/// Power window of the scaling family used by the exchange.
pub const ROT_SCALE_POWERS: [i64; 2] = [-16, 16];

/// Inputs of the rotation–scaling construction for `{aⁿ R^k_{2π/m}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotScaleInputs {
    pub e: Region,
    /// Polygonal annular sector `{1 < r ≤ a, 0 ≤ θ ≤ 2π/m}`; for `m = 1` the
    /// square annulus `aE \ E`.
    pub f: Region,
    pub sector_angle: f64,
    /// The full family `{aⁿ R^k_{2π/m}}`.
    pub family: DilationSpec,
    /// The scaling subgroup `{aⁿ·id}` the exchange runs against.
    pub scaling: DilationSpec,
}

pub fn rot_scale_inputs(a: f64, m: u32) -> Result<RotScaleInputs, ConstructError> {
    if !(a.is_finite() && a > 1.0) {
        return Err(ConstructError::Precondition(format!("scale must be a finite a > 1, got {a}")));
    }
    let angle = TAU / m.max(1) as f64;
    let segs = arc_segments(angle, ARC_SEGMENTS_PER_CIRCLE);
    let (e, f) = match m {
        0 => return Err(ConstructError::Precondition("rotation order must be at least 1".into())),
        1 => {
            let e = Region::square(-0.5, 0.5)?;
            let f = Region::square(-0.5 * a, 0.5 * a)?.subtract(&e);
            (e, f)
        }
        2 => (Region::rect(-1.0, 0.0, 1.0, 1.0)?, annular_sector(1.0, a, 0.0, PI, segs)?),
        3 => {
            return Err(ConstructError::Precondition(
                "m = 3 has tan(2π/m) < 0, so [0,1]×[0,tan(2π/m)] is not a region".into(),
            ))
        }
        4 => (Region::square(0.0, 1.0)?, annular_sector(1.0, a, 0.0, angle, segs)?),
        _ => (
            Region::rect(0.0, 0.0, 1.0, angle.tan())?,
            annular_sector(1.0, a, 0.0, angle, segs)?,
        ),
    };
    Ok(RotScaleInputs {
        e,
        f,
        sector_angle: angle,
        family: DilationSpec::rotation_scaling(a, m, ROT_SCALE_POWERS),
        scaling: DilationSpec::rotation_scaling(a, 1, ROT_SCALE_POWERS),
    })
}

/// Exchange of `E` against the bounded sector `F` under `{aⁿ·id}`. A wavelet
/// set for the sector `0 ≤ θ < 2π/m` is one for the whole family, since the
/// rotations `R^k_{2π/m}` tile the plane by copies of the sector.
pub fn construct_rot_scale(a: f64, m: u32, max_iters: usize, tol: f64) -> Result<ConstructionTrace, ConstructError> {
    if !(tol >= 1e-10) {
        return Err(ConstructError::Precondition(format!("tolerance must be at least 1e-10, got {tol}")));
    }
    let inputs = rot_scale_inputs(a, m)?;
    let mut trace = dls_exchange(&inputs.e, &inputs.f, &inputs.scaling, &Lattice::integer(), max_iters, tol)?;
    trace.method = "rot-scale".into();
    trace.notes.push(format!(
        "bounded F: polygonal annular sector 1 < r <= {a} over [0, 2pi/{m}] with {} arc segments per circle",
        ARC_SEGMENTS_PER_CIRCLE
    ));
    if m != 1 && m != 4 && m != 8 {
        trace.notes.push("E is not a fundamental domain of Z^2 for this m; additive tiling is not expected".into());
    }
    Ok(trace)
}

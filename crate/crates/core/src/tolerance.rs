//! Process-wide numerical tolerances.
//!
//! Defaults: `geom = 1e-12`, `area = 1e-12`, `det = 1e-12`, `phase = 1e-8`,
//! `eig = 1e-10`. The cli overrides them once at startup from the job config;
//! library code reads them through [`tolerances`].

use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Vertex merge / collinearity distance.
    pub geom: f64,
    /// Pieces below this area are dropped as measure zero.
    pub area: f64,
    /// Minimum |det| for an invertible map.
    pub det: f64,
    /// Below this |<k, edge>| the edge integral uses its series form.
    pub phase: f64,
    /// Margin above 1 required of eigenvalue moduli for expansiveness.
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geom: 1e-12,
            area: 1e-12,
            det: 1e-12,
            phase: 1e-8,
            eig: 1e-10,
        }
    }
}

static GEOM: AtomicU64 = AtomicU64::new(1e-12f64.to_bits());
static AREA: AtomicU64 = AtomicU64::new(1e-12f64.to_bits());
static DET: AtomicU64 = AtomicU64::new(1e-12f64.to_bits());
static PHASE: AtomicU64 = AtomicU64::new(1e-8f64.to_bits());
static EIG: AtomicU64 = AtomicU64::new(1e-10f64.to_bits());

/// Current tolerance set.
pub fn tolerances() -> Tolerances {
    Tolerances {
        geom: f64::from_bits(GEOM.load(Ordering::Relaxed)),
        area: f64::from_bits(AREA.load(Ordering::Relaxed)),
        det: f64::from_bits(DET.load(Ordering::Relaxed)),
        phase: f64::from_bits(PHASE.load(Ordering::Relaxed)),
        eig: f64::from_bits(EIG.load(Ordering::Relaxed)),
    }
}

/// Replace the process-wide tolerances. Values must be positive and finite.
pub fn set_tolerances(t: Tolerances) -> Result<(), String> {
    for (name, v) in [
        ("geom", t.geom),
        ("area", t.area),
        ("det", t.det),
        ("phase", t.phase),
        ("eig", t.eig),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(format!("tolerance `{name}` must be positive, got {v}"));
        }
    }
    GEOM.store(t.geom.to_bits(), Ordering::Relaxed);
    AREA.store(t.area.to_bits(), Ordering::Relaxed);
    DET.store(t.det.to_bits(), Ordering::Relaxed);
    PHASE.store(t.phase.to_bits(), Ordering::Relaxed);
    EIG.store(t.eig.to_bits(), Ordering::Relaxed);
    Ok(())
}

#[inline]
pub(crate) fn eps_geom() -> f64 {
    f64::from_bits(GEOM.load(Ordering::Relaxed))
}

#[inline]
pub(crate) fn eps_area() -> f64 {
    f64::from_bits(AREA.load(Ordering::Relaxed))
}

#[inline]
pub(crate) fn eps_det() -> f64 {
    f64::from_bits(DET.load(Ordering::Relaxed))
}

#[inline]
pub(crate) fn eps_phase() -> f64 {
    f64::from_bits(PHASE.load(Ordering::Relaxed))
}

#[inline]
pub(crate) fn eps_eig() -> f64 {
    f64::from_bits(EIG.load(Ordering::Relaxed))
}

use super::tiling::{check_additive_tiling, TilingReport};
use super::VerifyError;
use crate::dilation::Lattice;
use crate::geometry::{indicator_fourier, Point, Region};
use crate::matrix::Matrix2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralRoute {
    /// Tiling of `omega` by the dual lattice.
    FugledeTiling,
    /// Gram matrix of the exponentials `e_t`, `t ∈ lattice`.
    GramMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub route: SpectralRoute,
    /// Gram route: `max_{t≠s} |G_ts| / area`. Fuglede route: overlap mass
    /// relative to the window.
    pub max_offdiag: f64,
    /// Gram route: `max_t |G_tt − area| / area`. Fuglede route: excess gap
    /// relative to the window.
    pub diag_deviation: f64,
    /// Gram route: `|area · covolume(lattice) − 1|`; orthogonal exponentials
    /// form a basis only when the area matches the dual covolume.
    pub covolume_deviation: f64,
    pub lattice_truncation: usize,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiling: Option<TilingReport>,
}

/// Exponentials `{e_t : t ∈ lat}` on `omega`, checked either through the
/// Gram matrix over `|i|, |j| ≤ K` or through additive tiling by the dual
/// lattice.
pub fn check_spectral(
    omega: &Region,
    lat: &Lattice,
    route: SpectralRoute,
    truncation_k: usize,
    tol: f64,
) -> Result<SpectralReport, VerifyError> {
    match route {
        SpectralRoute::FugledeTiling => {
            let bb = omega.bbox();
            let window = Region::rect(bb.min.x, bb.min.y, bb.max.x, bb.max.y)?;
            let t = check_additive_tiling(omega, &lat.dual(), &window, tol);
            Ok(SpectralReport {
                route,
                max_offdiag: t.total_overlap / t.window_area,
                diag_deviation: t.excess_gap() / t.window_area,
                covolume_deviation: 0.0,
                lattice_truncation: truncation_k,
                tol,
                pass: t.pass,
                tiling: Some(t),
            })
        }
        SpectralRoute::GramMatrix => gram_check(omega, lat, &Matrix2::IDENTITY, truncation_k, tol),
    }
}

/// Gram check of `{|det d|^{-1/2} e^{2πi⟨t, d^{-1}·⟩} : t ∈ lat}` on `d·omega`.
/// Entries depend only on `s − t`, so one value per difference is evaluated.
pub(crate) fn gram_check(
    omega: &Region,
    lat: &Lattice,
    d: &Matrix2,
    truncation_k: usize,
    tol: f64,
) -> Result<SpectralReport, VerifyError> {
    if truncation_k == 0 {
        return Err(VerifyError::InvalidTruncation(truncation_k));
    }
    let image = if *d == Matrix2::IDENTITY {
        omega.clone()
    } else {
        omega.affine_image(&crate::geometry::AffineMap::linear(*d)?)?
    };
    let det = d.det().abs();
    let freq = d
        .inverse_transpose()
        .ok_or(crate::geometry::GeometryError::SingularMap { det: d.det() })?;
    let area = omega.area();
    if !(area > 0.0) {
        return Err(VerifyError::EmptyRegion);
    }
    let span = 2 * truncation_k as i64;
    let diffs: Vec<(i64, i64)> = (-span..=span)
        .flat_map(|i| (-span..=span).map(move |j| (i, j)))
        // G at −Δ is the conjugate of G at Δ, so one half-plane suffices.
        .filter(|&(i, j)| i > 0 || (i == 0 && j > 0))
        .collect();
    let max_offdiag = diffs
        .par_iter()
        .map(|&(i, j)| {
            let k = freq.apply(lat.point(i, j));
            indicator_fourier(&image, k).norm() / det / area
        })
        .reduce(|| 0.0, f64::max);
    let g0 = indicator_fourier(&image, Point::ORIGIN).re / det;
    let diag_deviation = (g0 - area).abs() / area;
    let covolume_deviation = (area * lat.covolume() - 1.0).abs();
    Ok(SpectralReport {
        route: SpectralRoute::GramMatrix,
        max_offdiag,
        diag_deviation,
        covolume_deviation,
        lattice_truncation: truncation_k,
        tol,
        pass: max_offdiag <= tol && diag_deviation <= tol && covolume_deviation <= tol,
        tiling: None,
    })
}

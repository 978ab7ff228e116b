use super::spectral::{gram_check, SpectralReport};
use super::tiling::{check_mult_tiling, TilingReport};
use super::VerifyError;
use crate::dilation::Lattice;
use crate::geometry::{indicator_fourier, AffineMap, Region};
use crate::matrix::Matrix2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveletReport {
    /// One Gram check per frequency-domain dilation `d`, computed on `d·Ω`.
    pub same_dilation_gram: Vec<SpectralReport>,
    /// `max area(dΩ ∩ d'Ω ∩ window)` over `d ≠ d'`.
    pub cross_dilation_overlap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parseval_error: Option<f64>,
    /// Dilations acting on the Fourier side, as given.
    pub frequency_family: Vec<Matrix2>,
    /// Their transposes: the dilations of the time-domain system.
    pub time_domain_family: Vec<Matrix2>,
    pub tiling: TilingReport,
    pub tol: f64,
    pub pass: bool,
}

/// Orthonormality of `{ψ_{d,t}}` checked on the Fourier side, where
/// `ψ̂_{d,t} = |det d|^{-1/2} e^{2πi⟨t, d^{-1}λ⟩} χ_{dΩ}` and `family` holds
/// the frequency-domain matrices `d`.
pub fn check_wavelet_system(
    omega: &Region,
    family: &[Matrix2],
    lat: &Lattice,
    truncation_k: usize,
    window: &Region,
    tol: f64,
) -> Result<WaveletReport, VerifyError> {
    let grams = family
        .par_iter()
        .map(|d| gram_check(omega, lat, d, truncation_k, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let tiling = check_mult_tiling(omega, family, window, tol);
    let cross = tiling.max_pairwise_overlap;
    let pass = grams.iter().all(|g| g.pass) && cross <= tol;
    Ok(WaveletReport {
        same_dilation_gram: grams,
        cross_dilation_overlap: cross,
        parseval_error: None,
        frequency_family: family.to_vec(),
        time_domain_family: family.iter().map(Matrix2::transpose).collect(),
        tiling,
        tol,
        pass,
    })
}

/// Relative Parseval defect `|Σ|c|² − |target|| / |target|` for
/// `K = 0..=k_max`, where `c_{d,t} = ⟨χ_target, ψ̂_{d,t}⟩` and `t` runs over
/// lattice points with integer coordinates in `[−K, K]²`.
pub fn parseval_profile(
    omega: &Region,
    family: &[Matrix2],
    lat: &Lattice,
    target: &Region,
    k_max: usize,
) -> Result<Vec<f64>, VerifyError> {
    let target_area = target.area();
    if !(target_area > 0.0) {
        return Err(VerifyError::EmptyRegion);
    }
    let tbb = target.bbox();
    let mut parts = Vec::new();
    let mut covered = 0.0;
    for d in family {
        let m = AffineMap::linear(*d)?;
        let image = omega.affine_image(&m)?;
        if !image.bbox().overlaps(&tbb) {
            continue;
        }
        let part = target.intersect(&image);
        if part.is_empty() {
            continue;
        }
        covered += part.area();
        let freq = d.inverse_transpose().expect("validated map");
        parts.push((part, freq, d.det().abs()));
    }
    let uncovered = (target_area - covered).max(0.0);
    if uncovered > 1e-9 * target_area.max(1.0) {
        return Err(VerifyError::TargetEscapes { uncovered });
    }
    let k = k_max as i64;
    let idx: Vec<(i64, i64)> = (-k..=k).flat_map(|i| (-k..=k).map(move |j| (i, j))).collect();
    let energy: Vec<f64> = idx
        .par_iter()
        .map(|&(i, j)| {
            let t = lat.point(i, j);
            parts
                .iter()
                .map(|(part, freq, det)| indicator_fourier(part, freq.apply(t)).norm_sqr() / det)
                .sum()
        })
        .collect();
    // Exponentials have squared norm |Ω| = 1/covolume on a fundamental domain.
    let mut shells = vec![0.0; k_max + 1];
    for (&(i, j), e) in idx.iter().zip(&energy) {
        shells[i.unsigned_abs().max(j.unsigned_abs()) as usize] += e * lat.covolume();
    }
    let mut acc = 0.0;
    Ok(shells
        .iter()
        .map(|s| {
            acc += s;
            (acc - target_area).abs() / target_area
        })
        .collect())
}

/// Parseval defect at a single truncation `K`.
pub fn parseval_test(
    omega: &Region,
    family: &[Matrix2],
    lat: &Lattice,
    target: &Region,
    truncation_k: usize,
) -> Result<f64, VerifyError> {
    Ok(parseval_profile(omega, family, lat, target, truncation_k)?[truncation_k])
}

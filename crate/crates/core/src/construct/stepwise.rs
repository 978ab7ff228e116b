use super::{dls_exchange, ConstructError, ConstructionTrace};
use crate::dilation::{is_direct_product, is_expansive, DilationSpec, FactorOrder, Lattice};
use crate::geometry::{AffineMap, ConvexPolygon, Point, Region};
use crate::matrix::Matrix2;
use crate::tolerance::eps_geom;
use crate::verify::{check_mult_tiling, check_mult_tiling_with_reference, TilingReport};
use serde::{Deserialize, Serialize};

/// `𝓑Ω` normalized to disjoint pieces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InducedTile {
    pub region: Region,
    /// `Σ_b area(bΩ) − area(𝓑Ω)`; zero when `{bΩ}` tiles its union.
    pub overlap_mass: f64,
}

pub fn induce_subspace_tile(omega: &Region, b_list: &[Matrix2]) -> Result<InducedTile, ConstructError> {
    let mut region = Region::empty();
    let mut total = 0.0;
    for b in b_list {
        let img = omega.affine_image(&AffineMap::linear(*b)?)?;
        total += img.area();
        region = region.union(&img);
    }
    Ok(InducedTile {
        overlap_mass: (total - region.area()).max(0.0),
        region,
    })
}

/// Which factor of the family is the group `𝒢` in `𝒟 = 𝒟₁𝒢`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupFactor {
    /// `𝒢 = {aⁿ}` over the power window.
    Powers,
    /// `𝒢 = {R^k_{2π/m}}`.
    Rotations,
}

/// Splits the enumerated family as `{d₁ g}` with `𝒢` acting on the right.
/// Fails unless every product is a member, every member is a product, and
/// the products are pairwise distinct.
pub fn factor_dilation_set(
    spec: &DilationSpec,
    group: GroupFactor,
) -> Result<(Vec<Matrix2>, Vec<Matrix2>), ConstructError> {
    let dils = spec.enumerate()?;
    let [lo, hi] = spec.power_range;
    let powers: Vec<Matrix2> = (lo..=hi)
        .map(|n| spec.expansive_base.pow(n).expect("validated base"))
        .collect();
    let rotations: Vec<Matrix2> = (0..spec.rotation_order).map(|k| spec.rotation(k)).collect();
    let (d1, g): (Vec<Matrix2>, Vec<Matrix2>) = match group {
        GroupFactor::Powers => (
            rotations
                .iter()
                .flat_map(|r| spec.extra_factors.iter().map(move |x| *r * *x))
                .collect(),
            powers,
        ),
        GroupFactor::Rotations => (
            powers
                .iter()
                .flat_map(|p| spec.extra_factors.iter().map(move |x| *p * *x))
                .collect(),
            rotations,
        ),
    };
    if !is_direct_product(&d1, &g) {
        return Err(ConstructError::Factorization(
            "products d1·g are not pairwise distinct (direct-product violation)".into(),
        ));
    }
    let eps = eps_geom();
    for a in &d1 {
        for b in &g {
            let p = *a * *b;
            if !dils.matrices.iter().any(|m| m.approx_eq(&p, eps)) {
                return Err(ConstructError::Factorization(format!(
                    "product {p} is not a member of the family"
                )));
            }
        }
    }
    if dils.len() != d1.len() * g.len() {
        return Err(ConstructError::Factorization("family has repeated members".into()));
    }
    Ok((d1, g))
}

/// Output of [`exwave_pipeline`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExwaveResult {
    pub trace: ConstructionTrace,
    /// `N = ∪_k bᵏE` over the power window.
    pub subspace: InducedTile,
    /// `{bᵏΩ}` on `window ∩ N`.
    pub basis_tiling: TilingReport,
    /// `𝒟ᵀΩ` on the window, truncation measured against `E`.
    pub family_tiling: TilingReport,
}

pub const EXWAVE_MAX_ITERS: usize = 200;

/// Subspace wavelet set from a `𝒟ᵀ`-tile `E`: with `b = aᵀ`, `N = 𝓑E`, and
/// a lattice fundamental domain `E' ⊂ N` touching 0, `Ω` is the exchange of
/// `E'` against `F = E` under `𝓑 = {bᵏ}`.
pub fn exwave_pipeline(
    e: &Region,
    dils: &DilationSpec,
    lat: &Lattice,
    window: &Region,
    tol: f64,
) -> Result<ExwaveResult, ConstructError> {
    let fam = dils.enumerate()?;
    let a = dils.expansive_base;
    if !is_expansive(&a) {
        return Err(ConstructError::Hypothesis {
            hypothesis: "expansive generator",
            detail: format!("eigenvalue moduli {:?} of {a}", a.eigenvalue_moduli()),
        });
    }
    let [lo, hi] = dils.power_range;
    let shifted = dils.with_power_range([lo, hi - 1]).enumerate()?;
    let eps = eps_geom() * a.frobenius_norm().max(1.0);
    if let Some(d) = shifted
        .matrices
        .iter()
        .map(|d| a * *d)
        .find(|p| !fam.matrices.iter().any(|m| m.approx_eq(p, eps)))
    {
        return Err(ConstructError::Hypothesis {
            hypothesis: "closure a·D ⊆ D",
            detail: format!("{d} is not a member of the family"),
        });
    }
    let transposed = fam.transposed().matrices;
    let tiling = check_mult_tiling(e, &transposed, window, tol);
    if !tiling.pass {
        return Err(ConstructError::Hypothesis {
            hypothesis: "D^T E tiles the window",
            detail: format!(
                "total overlap {:e}, excess gap {:e} on window of area {}",
                tiling.total_overlap,
                tiling.excess_gap(),
                tiling.window_area
            ),
        });
    }

    let b = a.transpose();
    let b_powers: Vec<Matrix2> = (lo..=hi).map(|k| b.pow(k).expect("expansive base")).collect();
    let subspace = induce_subspace_tile(e, &b_powers)?;

    let basis = lat.basis;
    let starter = [
        Point::new(0.0, 0.0),
        Point::new(-1.0, 0.0),
        Point::new(-1.0, -1.0),
        Point::new(0.0, -1.0),
        Point::new(-0.5, -0.5),
    ]
    .into_iter()
    .map(|c| {
        let cell = Region::from(ConvexPolygon::rect(c.x, c.y, c.x + 1.0, c.y + 1.0).expect("unit cell"));
        cell.affine_image(&AffineMap::linear(basis).expect("lattice basis is invertible"))
            .expect("lattice basis is invertible")
    })
    .find(|cell| cell.subtract(&subspace.region).area() <= tol * cell.area())
    .ok_or(ConstructError::Hypothesis {
        hypothesis: "starter tile inside N",
        detail: "no lattice cell touching the origin lies in N".into(),
    })?;

    let b_spec = DilationSpec {
        rotation_order: 1,
        expansive_base: b,
        power_range: [lo, hi],
        extra_factors: vec![Matrix2::IDENTITY],
        order: FactorOrder::PowersThenRotations,
    };
    let mut trace = dls_exchange(&starter, e, &b_spec, lat, EXWAVE_MAX_ITERS, tol)?;
    trace.method = "exwave".into();
    trace.notes.push(format!("subspace overlap mass {:e}", subspace.overlap_mass));
    let omega = &trace.result;

    let inner = window.intersect(&subspace.region);
    let basis_tiling = check_mult_tiling(omega, &b_powers, &inner, tol);
    let family_tiling = check_mult_tiling_with_reference(omega, &transposed, window, tol, Some(e));
    Ok(ExwaveResult {
        trace,
        subspace,
        basis_tiling,
        family_tiling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_list_returns_omega() {
        let sq = Region::square(0.0, 1.0).unwrap();
        let t = induce_subspace_tile(&sq, &[Matrix2::IDENTITY]).unwrap();
        assert_eq!(t.region, sq);
        assert_eq!(t.overlap_mass, 0.0);
    }

    #[test]
    fn nested_squares_report_overlap() {
        let sq = Region::square(0.0, 1.0).unwrap();
        let t = induce_subspace_tile(&sq, &[Matrix2::IDENTITY, Matrix2::scalar(2.0)]).unwrap();
        assert!((t.overlap_mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn telescoping_rectangles() {
        let e = Region::square(0.0, 1.0).unwrap();
        let f = Region::rect(0.0, 0.0, 2.0, 3.0).unwrap().subtract(&e);
        let a = Matrix2::diag(2.0, 3.0);
        let list: Vec<Matrix2> = (-3..=3).map(|n| a.pow(n).unwrap()).collect();
        let t = induce_subspace_tile(&f, &list).unwrap();
        assert!(t.overlap_mass <= 1e-9);
        let outer = Region::rect(0.0, 0.0, 16.0, 81.0).unwrap();
        let hole = Region::rect(0.0, 0.0, 0.125, 1.0 / 27.0).unwrap();
        assert!((t.region.area() - (outer.area() - hole.area())).abs() < 1e-9);
    }

    #[test]
    fn factorizations() {
        let ex = DilationSpec::rotations_then_powers(Matrix2::diag(2.0, 3.0), 4, [-3, 3]);
        let (d1, g) = factor_dilation_set(&ex, GroupFactor::Powers).unwrap();
        assert_eq!(d1.len(), 4);
        assert_eq!(g.len(), 7);
        assert!(factor_dilation_set(&ex, GroupFactor::Rotations).is_err());

        let dam = DilationSpec::rotation_scaling(2.0, 8, [-3, 3]);
        let (d1, g) = factor_dilation_set(&dam, GroupFactor::Powers).unwrap();
        assert_eq!((d1.len(), g.len()), (8, 7));
        assert!(factor_dilation_set(&dam, GroupFactor::Rotations).is_ok());

        let mut bad = DilationSpec::rotation_scaling(2.0, 2, [-2, 2]);
        bad.extra_factors = vec![Matrix2::IDENTITY, Matrix2::scalar(-1.0)];
        assert!(matches!(
            factor_dilation_set(&bad, GroupFactor::Powers),
            Err(ConstructError::Factorization(_))
        ));
    }

    #[test]
    fn non_expansive_is_fatal() {
        let spec = DilationSpec::rotations_then_powers(Matrix2::new(1.0, 1.0, 0.0, 1.0), 1, [-2, 2]);
        let sq = Region::square(0.0, 1.0).unwrap();
        match exwave_pipeline(&sq, &spec, &Lattice::integer(), &sq, 1e-3) {
            Err(ConstructError::Hypothesis { hypothesis, .. }) => assert_eq!(hypothesis, "expansive generator"),
            other => panic!("{other:?}"),
        }
    }
}

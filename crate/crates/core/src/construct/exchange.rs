use super::{contained_in, ConstructError, ConstructionTrace, ExchangeStep};
use crate::dilation::{DilationSpec, Dilations, Lattice};
use crate::geometry::{AffineMap, Point, Region};
use crate::tolerance::{eps_area, eps_geom};

/// Congruence exchange between `E` (translation side) and `F` (dilation
/// side), producing `W` that is `lat`-translation congruent to `E` and
/// family-dilation congruent to `F`.
///
/// Two injections are fixed deterministically:
///
/// * `δ`: the member with `δF ⊆ E` of largest `|det|` (lowest index on ties);
/// * `(Δ, t)`: the member of smallest `|det|` (lowest index on ties) and the
///   lattice point, smallest in integer coordinates, with `E + t ⊆ ΔF`.
///
/// With `Φ(x) = δΔ⁻¹(x + t)`, `A₀ = E \ δF` and `C₀ = δ(F \ Δ⁻¹(E + t))`,
/// `E` splits as `⊔_{k<K} (Φᵏ A₀ ⊔ Φᵏ C₀) ⊔ Φᴷ E`. Iteration `k` moves
/// `Φᵏ A₀` by `t` (a piece of `ΔF`) and keeps `Φᵏ C₀` (a piece of `δF`).
/// The residual `Φᴷ E` shrinks geometrically.
pub fn dls_exchange(
    e: &Region,
    f: &Region,
    dils: &DilationSpec,
    lat: &Lattice,
    max_iters: usize,
    tol: f64,
) -> Result<ConstructionTrace, ConstructError> {
    let family = dils.enumerate()?;
    check_preconditions(e, f, tol)?;

    let (delta_i, delta_f) = pick_inner(e, f, &family)?;
    let (big_i, t) = pick_outer(e, f, &family, lat)?;
    let delta = family.matrices[delta_i];
    let big = family.matrices[big_i];
    let big_inv = big.inverse().expect("family members are invertible");

    let phi_lin = delta * big_inv;
    let phi = AffineMap::new(phi_lin, phi_lin.apply(t))?;
    let a0 = e.subtract(&delta_f);
    let b0 = f.subtract(&e.translate(t).affine_image(&AffineMap::linear(big_inv)?)?);
    let c0 = b0.affine_image(&AffineMap::linear(delta)?)?;

    let mut notes = vec![format!(
        "inner dilation {:?}, outer dilation {:?}, translation ({}, {})",
        family.labels[delta_i], family.labels[big_i], t.x, t.y
    )];
    notes.extend(family.warnings.iter().cloned());

    let contraction = phi.det().abs();
    let mut steps = Vec::new();
    let mut residual = e.clone();
    let mut history = Vec::new();
    if contraction >= 1.0 - 1e-12 {
        // E = δF up to measure zero: nothing to exchange.
        if a0.area() > eps_area() || c0.area() > eps_area() {
            return Err(ConstructError::StuckExchange {
                iteration: 0,
                residual_area: e.area(),
                detail: format!("exchange map is not contracting (|det| = {contraction})"),
            });
        }
        steps.push(ExchangeStep {
            piece: e.clone(),
            translation: Point::ORIGIN,
            dilation_index: delta_i,
            label: family.labels[delta_i],
            iteration: 0,
        });
        residual = Region::empty();
        history.push(0.0);
    } else {
        let (mut a_k, mut c_k) = (a0, c0);
        let mut k = 0;
        while residual.area() > tol {
            if k == max_iters {
                return Err(ConstructError::NonConvergence {
                    iterations: k,
                    residual_area: residual.area(),
                    residual,
                });
            }
            for (piece, translation, idx) in [(a_k.translate(t), t, big_i), (c_k.clone(), Point::ORIGIN, delta_i)] {
                if piece.area() > eps_area() {
                    steps.push(ExchangeStep {
                        piece,
                        translation,
                        dilation_index: idx,
                        label: family.labels[idx],
                        iteration: k,
                    });
                }
            }
            residual = residual.affine_image(&phi)?;
            history.push(residual.area());
            a_k = a_k.affine_image(&phi)?;
            c_k = c_k.affine_image(&phi)?;
            k += 1;
        }
    }

    let result = steps.iter().fold(Region::empty(), |acc, s| acc.union(&s.piece));
    let overlap = steps.iter().map(|s| s.piece.area()).sum::<f64>() - result.area();
    if overlap > tol.max(eps_area() * steps.len() as f64) {
        return Err(ConstructError::StuckExchange {
            iteration: history.len(),
            residual_area: residual.area(),
            detail: format!(
                "translated pieces overlap with mass {overlap:e}; F is not a multiplicative tile for the family"
            ),
        });
    }

    Ok(ConstructionTrace {
        method: "dls-exchange".into(),
        e: e.clone(),
        f: f.clone(),
        family: dils.clone(),
        lattice: *lat,
        steps,
        residual_area: residual.area(),
        residual,
        result,
        residual_history: history,
        notes,
    })
}

fn check_preconditions(e: &Region, f: &Region, tol: f64) -> Result<(), ConstructError> {
    let pre = |m: &str| Err(ConstructError::Precondition(m.into()));
    if !(tol > 0.0) {
        return pre("tolerance must be positive");
    }
    if !(e.area() > eps_area()) || !(f.area() > eps_area()) {
        return pre("E and F must have positive area");
    }
    if e.distance_to(Point::ORIGIN) > eps_geom() {
        return pre("the origin must lie in the closure of E");
    }
    if !(f.distance_to(Point::ORIGIN) > eps_geom()) {
        return pre("F must be bounded away from the origin");
    }
    Ok(())
}

fn pick_inner(e: &Region, f: &Region, family: &Dilations) -> Result<(usize, Region), ConstructError> {
    let mut best: Option<(usize, Region)> = None;
    for (i, d) in family.matrices.iter().enumerate() {
        let better = best
            .as_ref()
            .map_or(true, |(b, _)| d.det().abs() > family.matrices[*b].det().abs() * (1.0 + 1e-12));
        if !better {
            continue;
        }
        let img = f.affine_image(&AffineMap::linear(*d)?)?;
        if contained_in(&img, e) {
            best = Some((i, img));
        }
    }
    best.ok_or_else(|| {
        ConstructError::Precondition("no family member maps F into E; E must contain a neighbourhood of 0 in the family's cone".into())
    })
}

fn pick_outer(e: &Region, f: &Region, family: &Dilations, lat: &Lattice) -> Result<(usize, Point), ConstructError> {
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| family.matrices[a].det().abs().total_cmp(&family.matrices[b].det().abs()));
    let eb = e.bbox();
    for i in order {
        let img = f.affine_image(&AffineMap::linear(family.matrices[i])?)?;
        if img.area() < e.area() {
            continue;
        }
        let ib = img.bbox();
        let (lo, hi) = (ib.min - eb.min, ib.max - eb.max);
        if lo.x > hi.x || lo.y > hi.y {
            continue;
        }
        let ([i0, i1], [j0, j1]) = lat.coordinate_box(lo, hi);
        for a in i0..=i1 {
            for b in j0..=j1 {
                let t = lat.point(a, b);
                let slack = 1e-9 * ib.magnitude().max(1.0);
                if t.x < lo.x - slack || t.y < lo.y - slack || t.x > hi.x + slack || t.y > hi.y + slack {
                    continue;
                }
                if contained_in(&e.translate(t), &img) {
                    return Ok((i, t));
                }
            }
        }
    }
    Err(ConstructError::StuckExchange {
        iteration: 0,
        residual_area: e.area(),
        detail: "no family member d and lattice point t with E + t ⊆ d(F) in the enumerated window".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix2;

    fn square_annulus() -> (Region, Region) {
        let e = Region::square(-0.5, 0.5).unwrap();
        let f = Region::square(-1.0, 1.0).unwrap().subtract(&e);
        (e, f)
    }

    #[test]
    fn dyadic_square_annulus_converges() {
        let (e, f) = square_annulus();
        let spec = DilationSpec::rotation_scaling(2.0, 1, [-8, 8]);
        let t = dls_exchange(&e, &f, &spec, &Lattice::integer(), 20, 1e-9).unwrap();
        assert!(t.residual_area <= 1e-9);
        assert!(t.conservation_error() < 1e-9);
        assert!(t.piece_overlap().abs() < 1e-9);
        assert!(t.residual_history.windows(2).all(|w| w[1] <= w[0]));
        let d = spec.enumerate().unwrap();
        for s in &t.steps {
            let df = f.affine_image(&AffineMap::linear(d.matrices[s.dilation_index]).unwrap()).unwrap();
            assert!(contained_in(&s.piece, &df));
            assert!(contained_in(&s.piece.translate(-s.translation), &e));
        }
    }

    #[test]
    fn equal_sets_rejected() {
        let (_, f) = square_annulus();
        let spec = DilationSpec::rotation_scaling(2.0, 1, [-4, 4]);
        assert!(matches!(
            dls_exchange(&f, &f, &spec, &Lattice::integer(), 10, 1e-6),
            Err(ConstructError::Precondition(_))
        ));
    }

    #[test]
    fn too_few_iterations_carry_residual() {
        let (e, f) = square_annulus();
        let spec = DilationSpec::rotation_scaling(2.0, 1, [-8, 8]);
        match dls_exchange(&e, &f, &spec, &Lattice::integer(), 1, 1e-9) {
            Err(ConstructError::NonConvergence { residual, iterations, .. }) => {
                assert_eq!(iterations, 1);
                assert!(residual.area() > 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_rotation_inputs_converge() {
        let e = Region::square(0.0, 1.0).unwrap();
        let f = Region::rect(0.0, 0.0, 2.0, 3.0).unwrap().subtract(&e);
        let spec = DilationSpec::rotations_then_powers(Matrix2::diag(2.0, 3.0), 4, [-12, 12]);
        let t = dls_exchange(&e, &f, &spec, &Lattice::integer(), 40, 1e-9).unwrap();
        assert!(t.conservation_error() < 1e-9);
    }
}

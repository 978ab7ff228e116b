use super::{ConstructError, ConstructionTrace, ExchangeStep};
use crate::dilation::{DilationLabel, DilationSpec, Lattice};
use crate::geometry::{AffineMap, Point, Region};
use crate::matrix::Matrix2;
use serde::{Deserialize, Serialize};

/// Which recursion for the second family of pieces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagRotVariant {
    /// `W_{2,1} = A^{-2}[(0,1)×(1,3)]`, `W_{2,j} = A^{-j-1}[W_{2,j-1} + (0,1)]`.
    #[default]
    Literal,
    /// `W_{2,1} = A^{-2}[(0,2)×(1,3)]`, `W_{2,j} = A^{-j-1}[W_{2,j-1} + (1,0)]`.
    /// Unlike the literal recursion this is a multiplicative tile.
    Repaired,
}

pub const MAX_DEPTH: usize = 40;

fn power_map(a: &Matrix2, n: i64) -> AffineMap {
    AffineMap::linear(a.pow(n).expect("diagonal base is invertible")).expect("diagonal base is invertible")
}

/// Union of `W_{i,j}`, `i = 1, 2`, `j ≤ J`, for `E = [0,1]²`,
/// `A = diag(2,3)` and `𝒟 = {R^k_{π/2} A^n}`:
///
/// * `W_{1,j} = [(A^{-j+1}E \ A^{-j}E) \ W_{2,j-1}] + (1,0)`, `W_{2,0} = ∅`;
/// * `W_{2,j}` as selected by `variant`.
///
/// The residual is `E` minus the pieces pulled back into `E`, i.e.
/// `A^{-J}E \ W_{2,J}`.
pub fn construct_diag_rot(truncation_j: usize, variant: DiagRotVariant) -> Result<ConstructionTrace, ConstructError> {
    if !(1..=MAX_DEPTH).contains(&truncation_j) {
        return Err(ConstructError::Precondition(format!(
            "truncation depth must lie in 1..={MAX_DEPTH}, got {truncation_j}"
        )));
    }
    let a = Matrix2::diag(2.0, 3.0);
    let e = Region::square(0.0, 1.0)?;
    let f = Region::rect(0.0, 0.0, 2.0, 3.0)?.subtract(&e);
    let depth = truncation_j as i64;
    let family = DilationSpec::rotations_then_powers(a, 4, [-depth - 2, depth + 2]);
    let dils = family.enumerate()?;
    let index = |power: i64| {
        let label = DilationLabel {
            power,
            rotation: 0,
            extra: 0,
        };
        (dils.index_of(label).expect("power inside the window"), label)
    };

    let (seed, shift) = match variant {
        DiagRotVariant::Literal => (Region::rect(0.0, 1.0, 1.0, 3.0)?, Point::new(0.0, 1.0)),
        DiagRotVariant::Repaired => (Region::rect(0.0, 1.0, 2.0, 3.0)?, Point::new(1.0, 0.0)),
    };
    let t1 = Point::new(1.0, 0.0);

    let mut steps = Vec::with_capacity(2 * truncation_j);
    let mut result = Region::empty();
    let mut residual = e.clone();
    let mut history = Vec::with_capacity(truncation_j);
    let mut w2_prev = Region::empty();
    for j in 1..=depth {
        let shell = e
            .affine_image(&power_map(&a, -j + 1))?
            .subtract(&e.affine_image(&power_map(&a, -j))?);
        let w1 = shell.subtract(&w2_prev).translate(t1);
        let w2 = if j == 1 {
            seed.affine_image(&power_map(&a, -2))?
        } else {
            w2_prev.translate(shift).affine_image(&power_map(&a, -j - 1))?
        };

        residual = residual.subtract(&w1.translate(-t1)).subtract(&w2);
        result = result.union(&w1).union(&w2);

        let (i1, l1) = index(0);
        let (i2, l2) = index(-j - 1);
        for (piece, translation, dilation_index, label) in [(w1, t1, i1, l1), (w2.clone(), Point::ORIGIN, i2, l2)] {
            if piece.area() > crate::tolerance::eps_area() {
                steps.push(ExchangeStep {
                    piece,
                    translation,
                    dilation_index,
                    label,
                    iteration: j as usize,
                });
            }
        }
        history.push(residual.area());
        w2_prev = w2;
    }

    let mut notes = vec![format!("recursion variant: {variant:?}")];
    if variant == DiagRotVariant::Literal {
        notes.push("literal recursion: A·W_{2,2} meets W_{2,1}; multiplicative tiling is not expected".into());
    }
    Ok(ConstructionTrace {
        method: "diag-rot".into(),
        e,
        f,
        family,
        lattice: Lattice::integer(),
        steps,
        residual_area: residual.area(),
        residual,
        result,
        residual_history: history,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_levels_match_rectangle_areas() {
        let t1 = construct_diag_rot(1, DiagRotVariant::Literal).unwrap();
        assert!((t1.result.area() - 8.0 / 9.0).abs() < 1e-12);
        let t2 = construct_diag_rot(2, DiagRotVariant::Literal).unwrap();
        let grow = t2.result.area() - t1.result.area();
        assert!((grow - (1.0 / 12.0 + 1.0 / 18.0 / 216.0)).abs() < 1e-12);
    }

    #[test]
    fn residual_is_the_tail() {
        for j in [1, 3, 7] {
            let t = construct_diag_rot(j, DiagRotVariant::Literal).unwrap();
            let w2: f64 = (2..=j as i32).map(|i| 6f64.powi(-i - 1)).product::<f64>() / 18.0;
            let tail = 6f64.powi(-(j as i32)) - w2;
            assert!((t.residual_area - tail).abs() < 1e-13, "J={j}");
            assert!(t.conservation_error() < 1e-12);
            assert!(t.residual_history.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn depth_bounds() {
        assert!(construct_diag_rot(0, DiagRotVariant::Literal).is_err());
        assert!(construct_diag_rot(41, DiagRotVariant::Literal).is_err());
    }
}

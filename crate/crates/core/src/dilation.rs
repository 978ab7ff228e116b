//! Dilation families and translation lattices.
//!
//! Families are always described parametrically by a [`DilationSpec`] and
//! enumerated over a finite power window; every statement made about a family
//! (directness, closure under the generator) holds only on that window.

use crate::geometry::{Point, Region};
use crate::matrix::Matrix2;
use crate::tolerance::{eps_det, eps_eig, eps_geom};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DilationError {
    #[error("expansive base is singular (det = {0:e})")]
    SingularBase(f64),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("rotation order must be at least 1")]
    ZeroRotationOrder,
    #[error("power range is empty: [{0}, {1}]")]
    EmptyPowerRange(i64, i64),
    #[error("lattice basis is singular (det = {0:e})")]
    SingularLattice(f64),
}

/// Order of the factors in `a^n R^k X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorOrder {
    /// `R^k · a^n · X`.
    RotationsThenPowers,
    /// `a^n · R^k · X`.
    PowersThenRotations,
}

fn identity_list() -> Vec<Matrix2> {
    vec![Matrix2::IDENTITY]
}

/// Parametric dilation family `{R^k_{2π/m}, a^n, X_e}` truncated to
/// `n ∈ [n_min, n_max]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DilationSpec {
    pub rotation_order: u32,
    pub expansive_base: Matrix2,
    pub power_range: [i64; 2],
    #[serde(default = "identity_list")]
    pub extra_factors: Vec<Matrix2>,
    pub order: FactorOrder,
}

/// Enumeration label of one family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationLabel {
    pub power: i64,
    pub rotation: u32,
    pub extra: usize,
}

/// An enumerated (truncated) family.
#[derive(Clone, Debug, PartialEq)]
pub struct Dilations {
    pub matrices: Vec<Matrix2>,
    pub labels: Vec<DilationLabel>,
    /// Non-fatal findings, e.g. duplicated members.
    pub warnings: Vec<String>,
}

impl Dilations {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Element-wise transposes, same labels.
    pub fn transposed(&self) -> Dilations {
        Dilations {
            matrices: self.matrices.iter().map(Matrix2::transpose).collect(),
            labels: self.labels.clone(),
            warnings: self.warnings.clone(),
        }
    }

    pub fn index_of(&self, label: DilationLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }
}

impl DilationSpec {
    /// `{a^n R^k_{2π/m}}`, the rotation–scaling family.
    pub fn rotation_scaling(a: f64, m: u32, power_range: [i64; 2]) -> Self {
        Self {
            rotation_order: m,
            expansive_base: Matrix2::scalar(a),
            power_range,
            extra_factors: identity_list(),
            order: FactorOrder::PowersThenRotations,
        }
    }

    /// `{R^k_{2π/m} A^n}` for a general base `A`.
    pub fn rotations_then_powers(base: Matrix2, m: u32, power_range: [i64; 2]) -> Self {
        Self {
            rotation_order: m,
            expansive_base: base,
            power_range,
            extra_factors: identity_list(),
            order: FactorOrder::RotationsThenPowers,
        }
    }

    /// Same family with a different power window.
    pub fn with_power_range(&self, power_range: [i64; 2]) -> Self {
        Self {
            power_range,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), DilationError> {
        if self.rotation_order == 0 {
            return Err(DilationError::ZeroRotationOrder);
        }
        let [lo, hi] = self.power_range;
        if lo > hi {
            return Err(DilationError::EmptyPowerRange(lo, hi));
        }
        if !self.expansive_base.is_finite() || self.extra_factors.iter().any(|m| !m.is_finite()) {
            return Err(DilationError::NonFinite);
        }
        let det = self.expansive_base.det();
        if !(det.abs() > eps_det()) {
            return Err(DilationError::SingularBase(det));
        }
        Ok(())
    }

    /// `m · (n_max − n_min + 1) · |extra_factors|`.
    pub fn size(&self) -> usize {
        let [lo, hi] = self.power_range;
        self.rotation_order as usize * (hi - lo + 1).max(0) as usize * self.extra_factors.len()
    }

    pub fn rotation(&self, k: u32) -> Matrix2 {
        Matrix2::rotation_step(k as i64, self.rotation_order)
    }

    /// The member with the given label.
    pub fn member(&self, label: DilationLabel) -> Result<Matrix2, DilationError> {
        let a = self
            .expansive_base
            .pow(label.power)
            .ok_or(DilationError::SingularBase(self.expansive_base.det()))?;
        let r = self.rotation(label.rotation);
        let x = self.extra_factors[label.extra];
        Ok(match self.order {
            FactorOrder::RotationsThenPowers => r * a * x,
            FactorOrder::PowersThenRotations => a * r * x,
        })
    }

    /// Members in lexicographic `(n, k, extra)` order.
    pub fn enumerate(&self) -> Result<Dilations, DilationError> {
        self.validate()?;
        let [lo, hi] = self.power_range;
        let mut matrices = Vec::with_capacity(self.size());
        let mut labels = Vec::with_capacity(self.size());
        for power in lo..=hi {
            for rotation in 0..self.rotation_order {
                for extra in 0..self.extra_factors.len() {
                    let label = DilationLabel {
                        power,
                        rotation,
                        extra,
                    };
                    matrices.push(self.member(label)?);
                    labels.push(label);
                }
            }
        }
        let mut warnings = Vec::new();
        if let Some((i, j)) = first_duplicate(&matrices) {
            warnings.push(format!(
                "direct-product violation: members {:?} and {:?} coincide",
                labels[i], labels[j]
            ));
        }
        Ok(Dilations {
            matrices,
            labels,
            warnings,
        })
    }
}

pub fn enumerate_dilations(spec: &DilationSpec) -> Result<Dilations, DilationError> {
    spec.enumerate()
}

fn first_duplicate(ms: &[Matrix2]) -> Option<(usize, usize)> {
    let eps = eps_geom();
    // Sort by determinant so only near-equal determinants are compared.
    let mut idx: Vec<usize> = (0..ms.len()).collect();
    idx.sort_by(|&a, &b| ms[a].det().total_cmp(&ms[b].det()));
    for (pos, &i) in idx.iter().enumerate() {
        let di = ms[i].det();
        for &j in &idx[pos + 1..] {
            let dj = ms[j].det();
            if (dj - di).abs() > 1e-9 * di.abs().max(dj.abs()).max(1.0) {
                break;
            }
            if ms[i].approx_eq(&ms[j], eps) {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

/// Both eigenvalue moduli exceed `1 + ε_eig`.
pub fn is_expansive(m: &Matrix2) -> bool {
    let [lo, _] = m.eigenvalue_moduli();
    lo > 1.0 + eps_eig()
}

/// All `|a_list|·|b_list|` products are pairwise distinct. This certifies
/// directness of the product only on the given truncation.
pub fn is_direct_product(a_list: &[Matrix2], b_list: &[Matrix2]) -> bool {
    let products: Vec<Matrix2> = a_list
        .iter()
        .flat_map(|a| b_list.iter().map(move |b| *a * *b))
        .collect();
    first_duplicate(&products).is_none()
}

/// Full-rank lattice `basis · ℤ²` (columns of `basis` generate).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lattice {
    pub basis: Matrix2,
}

impl Lattice {
    pub fn new(basis: Matrix2) -> Result<Self, DilationError> {
        if !basis.is_finite() {
            return Err(DilationError::NonFinite);
        }
        let det = basis.det();
        if !(det.abs() > eps_det()) {
            return Err(DilationError::SingularLattice(det));
        }
        Ok(Self { basis })
    }

    pub fn integer() -> Self {
        Self {
            basis: Matrix2::IDENTITY,
        }
    }

    pub fn covolume(&self) -> f64 {
        self.basis.det().abs()
    }

    pub fn point(&self, i: i64, j: i64) -> Point {
        self.basis.apply(Point::new(i as f64, j as f64))
    }

    /// `{t : ⟨t, s⟩ ∈ ℤ ∀ s}`, basis `B^{-T}`.
    pub fn dual(&self) -> Lattice {
        Lattice {
            basis: self
                .basis
                .inverse_transpose()
                .expect("lattice basis validated as invertible"),
        }
    }

    /// Integer coordinate ranges covering the box `[min, max]`.
    pub fn coordinate_box(&self, min: Point, max: Point) -> ([i64; 2], [i64; 2]) {
        let inv = self.basis.inverse().expect("lattice basis validated");
        let corners = [
            min,
            Point::new(max.x, min.y),
            max,
            Point::new(min.x, max.y),
        ];
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for c in corners {
            let q = inv.apply(c);
            lo[0] = lo[0].min(q.x);
            lo[1] = lo[1].min(q.y);
            hi[0] = hi[0].max(q.x);
            hi[1] = hi[1].max(q.y);
        }
        (
            [lo[0].floor() as i64 - 1, hi[0].ceil() as i64 + 1],
            [lo[1].floor() as i64 - 1, hi[1].ceil() as i64 + 1],
        )
    }

    /// Lattice points inside the (closed) window, ordered by integer
    /// coordinates `(i, j)`.
    pub fn points_in(&self, window: &Region) -> Vec<Point> {
        if window.is_empty() {
            return Vec::new();
        }
        let bb = window.bbox();
        let ([i0, i1], [j0, j1]) = self.coordinate_box(bb.min, bb.max);
        let mut out = Vec::new();
        for i in i0..=i1 {
            for j in j0..=j1 {
                let p = self.point(i, j);
                if window.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

pub fn dual_lattice(t: &Lattice) -> Lattice {
    t.dual()
}

pub fn lattice_points(t: &Lattice, window: &Region) -> Vec<Point> {
    t.points_in(window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex32(range: [i64; 2]) -> DilationSpec {
        DilationSpec::rotations_then_powers(Matrix2::diag(2.0, 3.0), 4, range)
    }

    #[test]
    fn expansive_examples() {
        assert!(is_expansive(&Matrix2::scalar(2.0)));
        assert!(is_expansive(&Matrix2::diag(2.0, 3.0)));
        assert!(!is_expansive(&Matrix2::new(2.0, 1.0, 0.0, 0.5)));
        assert!(!is_expansive(&Matrix2::new(1.0, 1.0, 0.0, 1.0)));
        assert!(is_expansive(&(Matrix2::rotation(1.0) * Matrix2::scalar(1.5))));
    }

    #[test]
    fn enumeration_sizes_and_order() {
        let d = DilationSpec::rotation_scaling(2.0, 4, [-1, 1]).enumerate().unwrap();
        assert_eq!(d.len(), 12);
        assert!(d.warnings.is_empty());
        assert_eq!(d.labels[0], DilationLabel { power: -1, rotation: 0, extra: 0 });
        assert_eq!(d.labels[5], DilationLabel { power: 0, rotation: 1, extra: 0 });

        let rots = ex32([0, 0]).enumerate().unwrap();
        assert_eq!(rots.len(), 4);
        for k in 0..4 {
            assert_eq!(rots.matrices[k], Matrix2::rotation_step(k as i64, 4));
        }
    }

    #[test]
    fn transposed_family_has_distinct_members() {
        let d = ex32([-1, 1]).enumerate().unwrap().transposed();
        assert_eq!(d.len(), 12);
        // Brute-force pairwise distances.
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                assert!(d.matrices[i].frobenius_distance(&d.matrices[j]) > 1e-6);
            }
        }
        // (R^k A^n)^T = A^n R^{-k}
        let a = Matrix2::diag(2.0, 3.0);
        let l = d.labels[7];
        let expect = a.pow(l.power).unwrap() * Matrix2::rotation_step(-(l.rotation as i64), 4);
        assert!(d.matrices[7].approx_eq(&expect, 1e-14));
    }

    #[test]
    fn duplicate_members_warn() {
        let mut spec = DilationSpec::rotation_scaling(2.0, 2, [0, 0]);
        spec.extra_factors = vec![Matrix2::IDENTITY, Matrix2::scalar(-1.0)];
        let d = spec.enumerate().unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.warnings.len(), 1);
    }

    #[test]
    fn spec_validation() {
        let mut s = ex32([1, 0]);
        assert_eq!(s.enumerate(), Err(DilationError::EmptyPowerRange(1, 0)));
        s.power_range = [0, 1];
        s.expansive_base = Matrix2::new(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(s.enumerate(), Err(DilationError::SingularBase(_))));
        s.expansive_base = Matrix2::IDENTITY;
        s.rotation_order = 0;
        assert_eq!(s.enumerate(), Err(DilationError::ZeroRotationOrder));
    }

    #[test]
    fn direct_products() {
        let rots: Vec<Matrix2> = (0..4).map(|k| Matrix2::rotation_step(k, 4)).collect();
        let a = Matrix2::diag(2.0, 3.0);
        let pows: Vec<Matrix2> = (-3..=3).map(|n| a.pow(n).unwrap()).collect();
        assert!(is_direct_product(&rots, &pows));
        let pm = [Matrix2::IDENTITY, Matrix2::scalar(-1.0)];
        assert!(!is_direct_product(&pm, &pm));
        let dyadic: Vec<Matrix2> = (-2..=2).map(|n| Matrix2::scalar(2f64.powi(n))).collect();
        assert!(is_direct_product(&dyadic, &rots));
    }

    #[test]
    fn dual_lattices() {
        assert_eq!(Lattice::integer().dual(), Lattice::integer());
        let d = Lattice::new(Matrix2::diag(2.0, 1.0)).unwrap().dual();
        assert_eq!(d.basis, Matrix2::diag(0.5, 1.0));
        let d = Lattice::new(Matrix2::new(1.0, 0.5, 0.0, 1.0)).unwrap().dual();
        assert!(d.basis.approx_eq(&Matrix2::new(1.0, 0.0, -0.5, 1.0), 1e-15));
        assert!(Lattice::new(Matrix2::new(1.0, 1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn lattice_point_windows() {
        let z2 = Lattice::integer();
        assert_eq!(z2.points_in(&Region::square(-1.5, 1.5).unwrap()).len(), 9);
        assert!(z2.points_in(&Region::square(0.2, 0.8).unwrap()).is_empty());
        let l = Lattice::new(Matrix2::diag(2.0, 1.0)).unwrap();
        let pts = l.points_in(&Region::rect(-2.5, -1.5, 2.5, 1.5).unwrap());
        // Brute-force scan over a generous integer box.
        let mut brute = Vec::new();
        for i in -10..=10 {
            for j in -10..=10 {
                let (x, y) = (2.0 * i as f64, j as f64);
                if (-2.5..=2.5).contains(&x) && (-1.5..=1.5).contains(&y) {
                    brute.push(Point::new(x, y));
                }
            }
        }
        assert_eq!(pts, brute);
        assert_eq!(pts.len(), 9);
    }
}

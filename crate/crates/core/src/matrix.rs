//! Real 2×2 matrices, stored row-major.

use crate::geometry::Point;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix2 {
    pub rows: [[f64; 2]; 2],
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            rows: [[a, b], [c, d]],
        }
    }

    pub const fn diag(a: f64, d: f64) -> Self {
        Self::new(a, 0.0, 0.0, d)
    }

    pub const fn scalar(s: f64) -> Self {
        Self::diag(s, s)
    }

    /// Counterclockwise rotation by `theta`. Entries within 1e-15 of 0 or ±1
    /// are snapped so quarter turns map axis-aligned boxes exactly.
    pub fn rotation(theta: f64) -> Self {
        let snap = |v: f64| {
            for target in [-1.0, 0.0, 1.0] {
                if (v - target).abs() < 1e-15 {
                    return target;
                }
            }
            v
        };
        let (s, c) = theta.sin_cos();
        let (s, c) = (snap(s), snap(c));
        Self::new(c, -s, s, c)
    }

    /// `R_{2π/m}^k`, computed from the reduced angle `2πk/m`.
    pub fn rotation_step(k: i64, m: u32) -> Self {
        let m = m.max(1) as i64;
        let k = k.rem_euclid(m);
        Self::rotation(2.0 * PI * k as f64 / m as f64)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.rows[0][0]
    }
    #[inline]
    pub fn b(&self) -> f64 {
        self.rows[0][1]
    }
    #[inline]
    pub fn c(&self) -> f64 {
        self.rows[1][0]
    }
    #[inline]
    pub fn d(&self) -> f64 {
        self.rows[1][1]
    }

    pub fn det(&self) -> f64 {
        self.a() * self.d() - self.b() * self.c()
    }

    pub fn trace(&self) -> f64 {
        self.a() + self.d()
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a(), self.c(), self.b(), self.d())
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|v| v.is_finite())
    }

    /// Inverse, or `None` when `|det| <= eps`.
    pub fn inverse_with(&self, eps: f64) -> Option<Self> {
        let det = self.det();
        if !(det.abs() > eps) {
            return None;
        }
        Some(Self::new(
            self.d() / det,
            -self.b() / det,
            -self.c() / det,
            self.a() / det,
        ))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.inverse_with(crate::tolerance::eps_det())
    }

    /// Inverse transpose `M^{-T}`.
    pub fn inverse_transpose(&self) -> Option<Self> {
        self.inverse().map(|m| m.transpose())
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            e >>= 1;
        }
        Some(acc)
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a() * p.x + self.b() * p.y,
            self.c() * p.x + self.d() * p.y,
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.rows.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let d = self.rows[i][j] - other.rows[i][j];
                s += d * d;
            }
        }
        s.sqrt()
    }

    /// Approximate equality, scaled by the larger of the two norms.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        let scale = self.frobenius_norm().max(other.frobenius_norm()).max(1.0);
        self.frobenius_distance(other) <= eps * scale
    }

    /// Moduli of the two eigenvalues (roots of `λ² − tr·λ + det`), ascending.
    pub fn eigenvalue_moduli(&self) -> [f64; 2] {
        let tr = self.trace();
        let det = self.det();
        let disc = tr * tr - 4.0 * det;
        let mut out = if disc >= 0.0 {
            // Roots of x² + bx + c with b = −tr, c = det, via the stable form.
            let b = -tr;
            let sign = if b >= 0.0 { 1.0 } else { -1.0 };
            let q = -0.5 * (b + sign * disc.sqrt());
            if q == 0.0 {
                [0.0, 0.0]
            } else {
                [q.abs(), (det / q).abs()]
            }
        } else {
            // Complex pair, |λ|² = det.
            let m = det.abs().sqrt();
            [m, m]
        };
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a() * o.a() + self.b() * o.c(),
            self.a() * o.b() + self.b() * o.d(),
            self.c() * o.a() + self.d() * o.c(),
            self.c() * o.b() + self.d() * o.d(),
        )
    }
}

impl Mul<Point> for Matrix2 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        self.apply(p)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a(),
            self.b(),
            self.c(),
            self.d()
        )
    }
}

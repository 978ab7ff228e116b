//! Closed-form Fourier integrals of polygon indicators,
//! `∫_r e^{−2πi⟨k,ξ⟩} dξ`.
//!
//! Each convex piece is re-centred at its centroid. For `|k|·radius ≥ 0.1`
//! the divergence theorem reduces the area integral to one exact integral per
//! edge; below that the power series of the exponential is summed using
//! polygon moments, which avoids the `1/|k|²` cancellation.

use super::polygon::{ConvexPolygon, Point};
use super::region::Region;
use crate::tolerance::eps_phase;
use num_complex::Complex64;
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 0.1;
const SERIES_TERMS: usize = 18;

/// `∫_r e^{−2πi⟨k,ξ⟩} dξ`. Exactly `area(r)` at `k = 0`.
pub fn indicator_fourier(r: &Region, k: Point) -> Complex64 {
    if k.x == 0.0 && k.y == 0.0 {
        return Complex64::new(r.area(), 0.0);
    }
    r.pieces()
        .iter()
        .map(|p| polygon_fourier(p, k))
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// `sin(πβ)/(πβ)`, with its series below the phase tolerance.
fn sinc(beta: f64) -> f64 {
    if beta.abs() < eps_phase() {
        let x = PI * beta;
        1.0 - x * x / 6.0
    } else {
        let x = PI * beta;
        x.sin() / x
    }
}

fn cis(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

pub(crate) fn polygon_fourier(p: &ConvexPolygon, k: Point) -> Complex64 {
    if k.x == 0.0 && k.y == 0.0 {
        return Complex64::new(p.area(), 0.0);
    }
    let c = p.centroid();
    let local: Vec<Point> = p.vertices().iter().map(|v| *v - c).collect();
    let radius = p.max_distance_from(c);
    let kn = k.norm();
    let shift = cis(-2.0 * PI * k.dot(c));
    let body = if kn * radius < SERIES_RADIUS {
        moment_series(&local, k)
    } else {
        edge_sum(&local, k)
    };
    shift * body
}

fn edge_sum(v: &[Point], k: Point) -> Complex64 {
    let n = v.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let e = b - a;
        let flux = k.x * e.y - k.y * e.x;
        if flux == 0.0 {
            continue;
        }
        let mid = a.lerp(b, 0.5);
        acc += cis(-2.0 * PI * k.dot(mid)) * (flux * sinc(k.dot(e)));
    }
    // ∮ f (k·n) ds / (−2πi|k|²)
    acc / Complex64::new(0.0, -2.0 * PI * k.norm_sq())
}

fn moment_series(v: &[Point], k: Point) -> Complex64 {
    let kn = k.norm();
    let dir = k * (1.0 / kn);
    let perp = Point::new(-dir.y, dir.x);
    let uv: Vec<(f64, f64)> = v.iter().map(|p| (p.dot(dir), p.dot(perp))).collect();
    let n = uv.len();
    // moments[m] = ∫ u^m dA via Green: ∮ u^{m+1}/(m+1) dv.
    let mut moments = [0.0f64; SERIES_TERMS];
    for i in 0..n {
        let (ua, va) = uv[i];
        let (ub, vb) = uv[(i + 1) % n];
        let dv = vb - va;
        if dv == 0.0 {
            continue;
        }
        // ∫_0^1 (ua + s(ub−ua))^{q} ds = Σ_{j=0}^{q} ua^j ub^{q−j} / (q+1)
        for (m, slot) in moments.iter_mut().enumerate() {
            let q = m + 1;
            let mut s = 0.0;
            let mut pa = 1.0;
            for j in 0..=q {
                s += pa * ub.powi((q - j) as i32);
                pa *= ua;
            }
            *slot += dv * s / ((q + 1) as f64) / (m as f64 + 1.0);
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut coeff = Complex64::new(1.0, 0.0);
    let step = Complex64::new(0.0, -2.0 * PI * kn);
    for (m, mom) in moments.iter().enumerate() {
        if m > 0 {
            coeff = coeff * step / (m as f64);
        }
        acc += coeff * *mom;
    }
    acc
}

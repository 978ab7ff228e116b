use super::GeometryError;
use crate::matrix::Matrix2;
use crate::tolerance::{eps_area, eps_det, eps_geom};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A point (or vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }
}

impl From<[f64; 2]> for Point {
    fn from(v: [f64; 2]) -> Self {
        Point::new(v[0], v[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub const EMPTY: BBox = BBox {
        min: Point::new(f64::INFINITY, f64::INFINITY),
        max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    };

    pub fn from_points(pts: &[Point]) -> Self {
        pts.iter().fold(Self::EMPTY, |b, p| b.include(*p))
    }

    pub fn include(self, p: Point) -> Self {
        BBox {
            min: Point::new(self.min.x.min(p.x), self.min.y.min(p.y)),
            max: Point::new(self.max.x.max(p.x), self.max.y.max(p.y)),
        }
    }

    pub fn union(self, o: BBox) -> Self {
        BBox {
            min: Point::new(self.min.x.min(o.min.x), self.min.y.min(o.min.y)),
            max: Point::new(self.max.x.max(o.max.x), self.max.y.max(o.max.y)),
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.min.x <= self.max.x && self.min.y <= self.max.y)
    }

    /// True when the open interiors can meet (touching boxes do not overlap).
    #[inline]
    pub fn overlaps(&self, o: &BBox) -> bool {
        self.min.x < o.max.x && o.min.x < self.max.x && self.min.y < o.max.y && o.min.y < self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diameter(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.width().hypot(self.height())
        }
    }

    /// Largest absolute coordinate, used to scale vertex tolerances.
    pub fn magnitude(&self) -> f64 {
        self.min
            .x
            .abs()
            .max(self.min.y.abs())
            .max(self.max.x.abs())
            .max(self.max.y.abs())
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            self.min,
            Point::new(self.max.x, self.min.y),
            self.max,
            Point::new(self.min.x, self.max.y),
        ]
    }
}

/// Invertible affine map `x ↦ linear·x + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: Matrix2,
    pub shift: Point,
}

impl AffineMap {
    pub fn new(linear: Matrix2, shift: Point) -> Result<Self, GeometryError> {
        if !linear.is_finite() || !shift.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if !(linear.det().abs() > eps_det()) {
            return Err(GeometryError::SingularMap { det: linear.det() });
        }
        Ok(Self { linear, shift })
    }

    pub fn linear(m: Matrix2) -> Result<Self, GeometryError> {
        Self::new(m, Point::ORIGIN)
    }

    pub fn translation(t: Point) -> Self {
        Self {
            linear: Matrix2::IDENTITY,
            shift: t,
        }
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        self.linear.apply(p) + self.shift
    }

    pub fn det(&self) -> f64 {
        self.linear.det()
    }

    pub fn inverse(&self) -> Result<Self, GeometryError> {
        let inv = self
            .linear
            .inverse()
            .ok_or(GeometryError::SingularMap { det: self.det() })?;
        Ok(Self {
            linear: inv,
            shift: -inv.apply(self.shift),
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: self.linear * other.linear,
            shift: self.linear.apply(other.shift) + self.shift,
        }
    }
}

/// Convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    bbox: BBox,
    area: f64,
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        s += v[i].cross(v[(i + 1) % n]);
    }
    0.5 * s
}

/// Merge near-duplicate vertices and drop (near-)collinear ones.
fn simplify(mut v: Vec<Point>, tol: f64) -> Vec<Point> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut changed = false;
        let mut out: Vec<Point> = Vec::with_capacity(n);
        for p in v.iter().copied() {
            if let Some(last) = out.last() {
                if (p - *last).norm() <= tol {
                    changed = true;
                    continue;
                }
            }
            out.push(p);
        }
        while out.len() > 1 && (out[0] - *out.last().unwrap()).norm() <= tol {
            out.pop();
            changed = true;
        }
        let n = out.len();
        if n < 3 {
            return out;
        }
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let prev = out[(i + n - 1) % n];
            let cur = out[i];
            let next = out[(i + 1) % n];
            let base = next - prev;
            let len = base.norm();
            let dist = if len > 0.0 {
                (cur - prev).cross(base) / len
            } else {
                0.0
            };
            // Drop collinear vertices and inward spikes left by clipping.
            if dist.abs() <= tol || dist < 0.0 {
                changed = true;
                continue;
            }
            keep.push(cur);
        }
        v = keep;
        if !changed {
            return v;
        }
    }
}

impl ConvexPolygon {
    /// Validated constructor. Accepts either orientation and returns the
    /// counterclockwise polygon.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        let mut v = vertices;
        if signed_area(&v) < 0.0 {
            v.reverse();
        }
        let bbox = BBox::from_points(&v);
        let tol = eps_geom() * bbox.magnitude().max(1.0);
        // Convexity check before simplification so reflex vertices are reported.
        let n = v.len();
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            let e = b - a;
            let len = e.norm();
            if len > tol && e.cross(c - b) / len < -tol {
                return Err(GeometryError::NotConvex);
            }
        }
        let v = simplify(v, tol);
        if v.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        let area = signed_area(&v);
        if !(area > eps_area()) {
            return Err(GeometryError::Degenerate);
        }
        Ok(Self {
            bbox: BBox::from_points(&v),
            vertices: v,
            area,
        })
    }

    /// Build from the output of a clip; `None` when the result is a sliver.
    pub(crate) fn from_raw(v: Vec<Point>) -> Option<Self> {
        if v.len() < 3 {
            return None;
        }
        let bbox = BBox::from_points(&v);
        let tol = eps_geom() * bbox.magnitude().max(1.0);
        let mut v = simplify(v, tol);
        if v.len() < 3 {
            return None;
        }
        let mut area = signed_area(&v);
        if area < 0.0 {
            v.reverse();
            area = -area;
        }
        if !(area > eps_area()) {
            return None;
        }
        Some(Self {
            bbox: BBox::from_points(&v),
            vertices: v,
            area,
        })
    }

    /// Axis-aligned rectangle `[x0,x1]×[y0,y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self, GeometryError> {
        Self::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).norm())
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        let o = self.vertices[0];
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        let s = 6.0 * self.area;
        Point::new(o.x + cx / s, o.y + cy / s)
    }

    /// Edges as `(start, end)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn tol(&self) -> f64 {
        eps_geom() * self.bbox.magnitude().max(1.0)
    }

    /// Closed membership with a scaled tolerance.
    pub fn contains(&self, p: Point) -> bool {
        let tol = self.tol();
        if p.x < self.bbox.min.x - tol
            || p.x > self.bbox.max.x + tol
            || p.y < self.bbox.min.y - tol
            || p.y > self.bbox.max.y + tol
        {
            return false;
        }
        self.edges().all(|(a, b)| {
            let e = b - a;
            e.cross(p - a) >= -tol * e.norm()
        })
    }

    /// Part of the polygon on the left of the directed line `a → b`
    /// (or the right when `keep_left` is false).
    pub fn clip_line(&self, a: Point, b: Point, keep_left: bool) -> Option<Self> {
        let e = b - a;
        let len = e.norm();
        if len == 0.0 {
            return Some(self.clone());
        }
        let tol = self.tol().max(eps_geom() * a.norm().max(b.norm()));
        let sign = if keep_left { 1.0 } else { -1.0 };
        let s: Vec<f64> = self
            .vertices
            .iter()
            .map(|p| sign * e.cross(*p - a) / len)
            .collect();
        if s.iter().all(|&v| v >= -tol) {
            return Some(self.clone());
        }
        if s.iter().all(|&v| v <= tol) {
            return None;
        }
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (self.vertices[i], self.vertices[j]);
            let (sp, sq) = (s[i], s[j]);
            if sp >= -tol {
                out.push(p);
            }
            if (sp > tol && sq < -tol) || (sp < -tol && sq > tol) {
                out.push(p.lerp(q, sp / (sp - sq)));
            }
        }
        Self::from_raw(out)
    }

    pub fn intersect(&self, other: &ConvexPolygon) -> Option<Self> {
        if !self.bbox.overlaps(&other.bbox) {
            return None;
        }
        let mut cur = self.clone();
        for (a, b) in other.edges() {
            cur = cur.clip_line(a, b, true)?;
        }
        Some(cur)
    }

    /// `self \ other` as convex pieces, obtained by clipping against the
    /// complements of `other`'s edge half-planes in edge order.
    pub fn difference(&self, other: &ConvexPolygon) -> Vec<Self> {
        if !self.bbox.overlaps(&other.bbox) || self.intersect(other).is_none() {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut remaining = self.clone();
        for (a, b) in other.edges() {
            if let Some(outside) = remaining.clip_line(a, b, false) {
                out.push(outside);
            }
            match remaining.clip_line(a, b, true) {
                Some(r) => remaining = r,
                None => break,
            }
        }
        out
    }

    /// Image under an affine map; orientation is restored when `det < 0`.
    pub fn map(&self, m: &AffineMap) -> Option<Self> {
        let mut v: Vec<Point> = self.vertices.iter().map(|p| m.apply(*p)).collect();
        if m.det() < 0.0 {
            v.reverse();
        }
        let bbox = BBox::from_points(&v);
        let area = self.area * m.det().abs();
        if !(area > eps_area()) || v.iter().any(|p| !p.is_finite()) {
            return None;
        }
        Some(Self {
            vertices: v,
            bbox,
            area,
        })
    }

    pub fn translate(&self, t: Point) -> Self {
        let v: Vec<Point> = self.vertices.iter().map(|p| *p + t).collect();
        Self {
            bbox: BBox::from_points(&v),
            vertices: v,
            area: self.area,
        }
    }

    /// Horizontal chord `[x_lo, x_hi]` at height `y`, if the line meets the polygon.
    pub fn chord_at(&self, y: f64) -> Option<(f64, f64)> {
        if y < self.bbox.min.y || y > self.bbox.max.y {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (p, q) in self.edges() {
            let (y0, y1) = (p.y.min(q.y), p.y.max(q.y));
            if y < y0 || y > y1 {
                continue;
            }
            let x = if q.y == p.y {
                lo = lo.min(p.x.min(q.x));
                hi = hi.max(p.x.max(q.x));
                continue;
            } else {
                p.x + (q.x - p.x) * (y - p.y) / (q.y - p.y)
            };
            lo = lo.min(x);
            hi = hi.max(x);
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Largest distance from `p` to a vertex.
    pub fn max_distance_from(&self, p: Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| (*v - p).norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean distance from `p` to the (closed) polygon.
    pub fn distance_to(&self, p: Point) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                let t = ((p - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
                (a.lerp(b, t) - p).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

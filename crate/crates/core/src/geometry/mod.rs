//! Planar region algebra: convex polygons, finite unions of them, affine
//! images, boolean operations, Fourier integrals of indicators, and two
//! independent area oracles.

mod fourier;
mod oracle;
mod polygon;
mod region;

pub use fourier::indicator_fourier;
pub use oracle::{monte_carlo_area, raster_area, MC_CHUNK};
pub use polygon::{AffineMap, BBox, ConvexPolygon, Point};
pub use region::Region;
pub(crate) use region::subtract_all;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon is degenerate (area below tolerance)")]
    Degenerate,
    #[error("invalid map: singular linear part (det = {det:e})")]
    SingularMap { det: f64 },
    #[error("region pieces {first} and {second} overlap with area {area:e}")]
    OverlappingPieces {
        first: usize,
        second: usize,
        area: f64,
    },
}

pub fn affine_image(r: &Region, m: &AffineMap) -> Result<Region, GeometryError> {
    r.affine_image(m)
}

pub fn region_union(a: &Region, b: &Region) -> Region {
    a.union(b)
}

pub fn region_intersect(a: &Region, b: &Region) -> Region {
    a.intersect(b)
}

pub fn region_subtract(a: &Region, b: &Region) -> Region {
    a.subtract(b)
}

pub fn area(r: &Region) -> f64 {
    r.area()
}

/// Polygonal approximation of the annular sector
/// `{ r_in < |ξ| ≤ r_out, θ0 ≤ arg ξ ≤ θ1 }`, split into `segments`
/// convex quadrilaterals. Inner and outer vertices share angles, so the
/// outer boundary is exactly `r_out / r_in` times the inner one.
pub fn annular_sector(
    r_in: f64,
    r_out: f64,
    theta0: f64,
    theta1: f64,
    segments: usize,
) -> Result<Region, GeometryError> {
    let segments = segments.max(1);
    let ray = |r: f64, t: f64| {
        let (s, c) = t.sin_cos();
        Point::new(r * c, r * s)
    };
    let mut pieces = Vec::with_capacity(segments);
    for i in 0..segments {
        let t0 = theta0 + (theta1 - theta0) * i as f64 / segments as f64;
        let t1 = theta0 + (theta1 - theta0) * (i + 1) as f64 / segments as f64;
        pieces.push(ConvexPolygon::new(vec![
            ray(r_in, t0),
            ray(r_out, t0),
            ray(r_out, t1),
            ray(r_in, t1),
        ])?);
    }
    Ok(Region::from_disjoint(pieces))
}

/// Wedge `{ θ0 ≤ arg ξ ≤ θ1, |ξ| ≤ radius }` as a polygon with straight rays
/// and a polygonal outer arc (`θ1 − θ0 < π`).
pub fn wedge(radius: f64, theta0: f64, theta1: f64, segments: usize) -> Result<Region, GeometryError> {
    let segments = segments.max(1);
    let mut v = vec![Point::ORIGIN];
    for i in 0..=segments {
        let t = theta0 + (theta1 - theta0) * i as f64 / segments as f64;
        let (s, c) = t.sin_cos();
        v.push(Point::new(radius * c, radius * s));
    }
    Ok(ConvexPolygon::new(v)?.into())
}

/// Arc segments used for an angle when a full circle gets `per_circle`.
pub fn arc_segments(angle: f64, per_circle: usize) -> usize {
    ((angle / std::f64::consts::TAU) * per_circle as f64).round().max(1.0) as usize
}

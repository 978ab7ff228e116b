use super::polygon::{AffineMap, BBox, ConvexPolygon, Point};
use super::GeometryError;
use crate::tolerance::eps_area;
use serde::{Deserialize, Serialize};

/// Finite union of interior-disjoint convex polygons.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Point>>", into = "Vec<Vec<Point>>")]
pub struct Region {
    pieces: Vec<ConvexPolygon>,
}

impl TryFrom<Vec<Vec<Point>>> for Region {
    type Error = GeometryError;

    fn try_from(lit: Vec<Vec<Point>>) -> Result<Self, Self::Error> {
        let polys = lit
            .into_iter()
            .map(ConvexPolygon::new)
            .collect::<Result<Vec<_>, _>>()?;
        Region::new(polys)
    }
}

impl From<Region> for Vec<Vec<Point>> {
    fn from(r: Region) -> Self {
        r.pieces.iter().map(|p| p.vertices().to_vec()).collect()
    }
}

impl From<ConvexPolygon> for Region {
    fn from(p: ConvexPolygon) -> Self {
        Region { pieces: vec![p] }
    }
}

impl Region {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checked constructor: pieces must be pairwise interior-disjoint.
    pub fn new(pieces: Vec<ConvexPolygon>) -> Result<Self, GeometryError> {
        let tol = eps_area();
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                if let Some(x) = pieces[i].intersect(&pieces[j]) {
                    if x.area() > tol {
                        return Err(GeometryError::OverlappingPieces {
                            first: i,
                            second: j,
                            area: x.area(),
                        });
                    }
                }
            }
        }
        Ok(Region { pieces })
    }

    /// Union of possibly overlapping polygons, made disjoint by subtraction.
    pub fn from_overlapping(polys: impl IntoIterator<Item = ConvexPolygon>) -> Self {
        polys
            .into_iter()
            .fold(Region::empty(), |acc, p| acc.union(&Region::from(p)))
    }

    /// Pieces the caller guarantees are disjoint.
    pub(crate) fn from_disjoint(pieces: Vec<ConvexPolygon>) -> Self {
        Region { pieces }
    }

    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self, GeometryError> {
        Ok(ConvexPolygon::rect(x0, y0, x1, y1)?.into())
    }

    /// `[lo, hi]²`.
    pub fn square(lo: f64, hi: f64) -> Result<Self, GeometryError> {
        Self::rect(lo, lo, hi, hi)
    }

    pub fn pieces(&self) -> &[ConvexPolygon] {
        &self.pieces
    }

    pub fn into_pieces(self) -> Vec<ConvexPolygon> {
        self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Lebesgue measure: the sum of piece areas.
    pub fn area(&self) -> f64 {
        self.pieces.iter().map(ConvexPolygon::area).sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.pieces.iter().map(ConvexPolygon::perimeter).sum()
    }

    pub fn bbox(&self) -> BBox {
        self.pieces
            .iter()
            .fold(BBox::EMPTY, |b, p| b.union(p.bbox()))
    }

    pub fn diameter(&self) -> f64 {
        self.bbox().diameter()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.pieces.iter().any(|q| q.contains(p))
    }

    /// Distance from `p` to the closed region (`∞` when empty).
    pub fn distance_to(&self, p: Point) -> f64 {
        self.pieces
            .iter()
            .map(|q| q.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Exact image under an invertible affine map.
    pub fn affine_image(&self, m: &AffineMap) -> Result<Region, GeometryError> {
        // Re-validate so hand-built maps cannot bypass the determinant check.
        let m = AffineMap::new(m.linear, m.shift)?;
        Ok(Region {
            pieces: self.pieces.iter().filter_map(|p| p.map(&m)).collect(),
        })
    }

    pub fn translate(&self, t: Point) -> Region {
        Region {
            pieces: self.pieces.iter().map(|p| p.translate(t)).collect(),
        }
    }

    pub fn intersect(&self, other: &Region) -> Region {
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                if let Some(x) = p.intersect(q) {
                    out.push(x);
                }
            }
        }
        Region { pieces: out }
    }

    /// Intersection with a single convex polygon.
    pub fn clip(&self, window: &ConvexPolygon) -> Region {
        Region {
            pieces: self
                .pieces
                .iter()
                .filter_map(|p| p.intersect(window))
                .collect(),
        }
    }

    pub fn intersect_area(&self, other: &Region) -> f64 {
        let mut s = 0.0;
        for p in &self.pieces {
            for q in &other.pieces {
                if let Some(x) = p.intersect(q) {
                    s += x.area();
                }
            }
        }
        s
    }

    /// `self \ other`, pieces convex.
    pub fn subtract(&self, other: &Region) -> Region {
        let mut out = Vec::new();
        for p in &self.pieces {
            out.extend(subtract_all(p, other.pieces.iter()));
        }
        Region { pieces: out }
    }

    /// `self ∪ other`, computed as `self ⊔ (other \ self)`.
    pub fn union(&self, other: &Region) -> Region {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.subtract(self).pieces);
        Region { pieces }
    }

    /// Append pieces known to be disjoint from `self`.
    pub fn extend_disjoint(&mut self, other: Region) {
        self.pieces.extend(other.pieces);
    }

    /// Area of the symmetric difference.
    pub fn symmetric_difference_area(&self, other: &Region) -> f64 {
        self.subtract(other).area() + other.subtract(self).area()
    }
}

/// `p` minus every polygon in `others`, with bounding-box pruning.
pub(crate) fn subtract_all<'a>(
    p: &ConvexPolygon,
    others: impl Iterator<Item = &'a ConvexPolygon>,
) -> Vec<ConvexPolygon> {
    let mut frags = vec![p.clone()];
    let pb = p.bbox();
    for q in others {
        let qb = q.bbox();
        if !pb.overlaps(&qb) {
            continue;
        }
        let mut next = Vec::with_capacity(frags.len() + 2);
        for f in frags {
            if f.bbox().overlaps(&qb) {
                next.extend(f.difference(q));
            } else {
                next.push(f);
            }
        }
        frags = next;
        if frags.is_empty() {
            break;
        }
    }
    frags
}

use crate::dilation::Lattice;
use crate::geometry::{subtract_all, AffineMap, BBox, ConvexPolygon, Point, Region};
use crate::matrix::Matrix2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TilingKind {
    Additive,
    Multiplicative,
}

/// Which copies were summed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub description: String,
    /// Copies meeting the window.
    pub copies: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingReport {
    pub kind: TilingKind,
    /// Largest overlap between two copies inside the window.
    pub max_pairwise_overlap: f64,
    /// Sum of pairwise overlaps inside the window.
    pub total_overlap: f64,
    /// `area(window) − area(window ∩ ∪ copies)`.
    pub gap_area: f64,
    /// Gap that the exact reference tile also leaves under the same
    /// truncation; excluded before comparing against the tolerance.
    pub truncation_gap: f64,
    pub window: Region,
    pub window_area: f64,
    pub truncation: Truncation,
    /// Relative tolerance: masses are compared with `tol · window_area`.
    pub tol: f64,
    pub pass: bool,
}

impl TilingReport {
    /// Gap not explained by truncation.
    pub fn excess_gap(&self) -> f64 {
        (self.gap_area - self.truncation_gap).max(0.0)
    }

    fn finish(mut self) -> Self {
        let bound = self.tol * self.window_area;
        self.pass = self.total_overlap <= bound && self.excess_gap() <= bound;
        self
    }
}

struct Masses {
    max_pairwise: f64,
    total: f64,
    gap: f64,
    copies: usize,
}

/// Clip each copy to the window and measure overlaps and the uncovered part.
fn measure(copies: &[Region], window: &Region) -> Masses {
    let wbb = window.bbox();
    let clipped: Vec<Region> = copies
        .par_iter()
        .map(|c| {
            if !c.bbox().overlaps(&wbb) {
                return Region::empty();
            }
            let pieces: Vec<ConvexPolygon> = c
                .pieces()
                .iter()
                .filter(|p| p.bbox().overlaps(&wbb))
                .flat_map(|p| window.pieces().iter().filter_map(move |w| p.intersect(w)))
                .collect();
            Region::from_disjoint(pieces)
        })
        .collect();

    let mut flat: Vec<(usize, &ConvexPolygon)> = Vec::new();
    let mut used = 0;
    for (ci, c) in clipped.iter().enumerate() {
        if !c.is_empty() {
            used += 1;
        }
        flat.extend(c.pieces().iter().map(|p| (ci, p)));
    }

    // Sweep over x to find candidate pairs from different copies.
    let mut order: Vec<usize> = (0..flat.len()).collect();
    order.sort_by(|&a, &b| {
        flat[a]
            .1
            .bbox()
            .min
            .x
            .total_cmp(&flat[b].1.bbox().min.x)
            .then(a.cmp(&b))
    });
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let bi = flat[i].1.bbox();
        for &j in &order[pos + 1..] {
            let bj = flat[j].1.bbox();
            if bj.min.x >= bi.max.x {
                break;
            }
            if flat[i].0 != flat[j].0 && bi.overlaps(&bj) {
                pairs.push((i.min(j), i.max(j)));
            }
        }
    }
    pairs.sort_unstable();
    let areas: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| flat[i].1.intersect(flat[j].1).map_or(0.0, |x| x.area()))
        .collect();
    let mut per_copy: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut total = 0.0;
    for (&(i, j), &a) in pairs.iter().zip(&areas) {
        if a > 0.0 {
            let key = (flat[i].0.min(flat[j].0), flat[i].0.max(flat[j].0));
            *per_copy.entry(key).or_default() += a;
            total += a;
        }
    }
    let max_pairwise = per_copy.values().copied().fold(0.0, f64::max);

    let gap = uncovered_area(window, flat.iter().map(|(_, p)| *p).collect());
    Masses {
        max_pairwise,
        total,
        gap,
        copies: used,
    }
}

/// `area(window \ ∪ pieces)`, evaluated cell by cell on a uniform grid so
/// each subtraction only sees nearby pieces.
pub(crate) fn uncovered_area(window: &Region, pieces: Vec<&ConvexPolygon>) -> f64 {
    let wbb = window.bbox();
    if wbb.is_empty() {
        return 0.0;
    }
    let g = ((pieces.len() as f64 / 4.0).sqrt().ceil() as usize).clamp(1, 64);
    let (cw, ch) = (wbb.width() / g as f64, wbb.height() / g as f64);
    let cell_index = |x: f64, lo: f64, step: f64| -> usize {
        (((x - lo) / step).floor().max(0.0) as usize).min(g - 1)
    };
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); g * g];
    for (pi, p) in pieces.iter().enumerate() {
        let b = p.bbox();
        let (i0, i1) = (cell_index(b.min.x, wbb.min.x, cw), cell_index(b.max.x, wbb.min.x, cw));
        let (j0, j1) = (cell_index(b.min.y, wbb.min.y, ch), cell_index(b.max.y, wbb.min.y, ch));
        for i in i0..=i1 {
            for j in j0..=j1 {
                buckets[j * g + i].push(pi);
            }
        }
    }
    let areas: Vec<f64> = (0..g * g)
        .into_par_iter()
        .map(|c| {
            let (i, j) = (c % g, c / g);
            let x0 = wbb.min.x + i as f64 * cw;
            let y0 = wbb.min.y + j as f64 * ch;
            let x1 = if i + 1 == g { wbb.max.x } else { x0 + cw };
            let y1 = if j + 1 == g { wbb.max.y } else { y0 + ch };
            let Ok(cell) = ConvexPolygon::rect(x0, y0, x1, y1) else {
                return 0.0;
            };
            let local: Vec<&ConvexPolygon> = buckets[c].iter().map(|&k| pieces[k]).collect();
            window
                .pieces()
                .iter()
                .filter_map(|w| w.intersect(&cell))
                .map(|part| {
                    subtract_all(&part, local.iter().copied())
                        .iter()
                        .map(ConvexPolygon::area)
                        .sum::<f64>()
                })
                .sum()
        })
        .collect();
    areas.iter().sum()
}

fn reach_box(omega: &BBox, window: &BBox) -> (Point, Point) {
    (
        Point::new(window.min.x - omega.max.x, window.min.y - omega.max.y),
        Point::new(window.max.x - omega.min.x, window.max.y - omega.min.y),
    )
}

fn translates(omega: &Region, lat: &Lattice, window: &Region) -> (Vec<Region>, String) {
    let (lo, hi) = reach_box(&omega.bbox(), &window.bbox());
    let ([i0, i1], [j0, j1]) = lat.coordinate_box(lo, hi);
    let mut copies = Vec::new();
    for i in i0..=i1 {
        for j in j0..=j1 {
            let t = lat.point(i, j);
            if t.x >= lo.x && t.x <= hi.x && t.y >= lo.y && t.y <= hi.y {
                copies.push(omega.translate(t));
            }
        }
    }
    let desc = format!("lattice coordinates i in [{i0}, {i1}], j in [{j0}, {j1}]");
    (copies, desc)
}

fn images(omega: &Region, family: &[Matrix2]) -> Vec<Region> {
    family
        .iter()
        .filter_map(|d| AffineMap::linear(*d).ok())
        .map(|m| omega.affine_image(&m).expect("validated map"))
        .collect()
}

/// Translates `omega + t`, `t ∈ lat`, restricted to `window`.
pub fn check_additive_tiling(omega: &Region, lat: &Lattice, window: &Region, tol: f64) -> TilingReport {
    check_additive_tiling_with_reference(omega, lat, window, tol, None)
}

/// As [`check_additive_tiling`], excluding the gap an exact reference tile
/// leaves in the same window.
pub fn check_additive_tiling_with_reference(
    omega: &Region,
    lat: &Lattice,
    window: &Region,
    tol: f64,
    reference: Option<&Region>,
) -> TilingReport {
    let (copies, desc) = translates(omega, lat, window);
    let m = measure(&copies, window);
    let truncation_gap = reference.map_or(0.0, |r| {
        let (rc, _) = translates(r, lat, window);
        measure(&rc, window).gap
    });
    TilingReport {
        kind: TilingKind::Additive,
        max_pairwise_overlap: m.max_pairwise,
        total_overlap: m.total,
        gap_area: m.gap,
        truncation_gap,
        window_area: window.area(),
        window: window.clone(),
        truncation: Truncation {
            description: desc,
            copies: m.copies,
        },
        tol,
        pass: false,
    }
    .finish()
}

/// Images `d·omega`, `d ∈ family`, restricted to `window`. The window should
/// exclude a neighbourhood of any accumulation point of the family.
pub fn check_mult_tiling(omega: &Region, family: &[Matrix2], window: &Region, tol: f64) -> TilingReport {
    check_mult_tiling_with_reference(omega, family, window, tol, None)
}

/// As [`check_mult_tiling`], excluding the gap that `reference` (an exact
/// tile for the untruncated family) leaves under the same truncation.
pub fn check_mult_tiling_with_reference(
    omega: &Region,
    family: &[Matrix2],
    window: &Region,
    tol: f64,
    reference: Option<&Region>,
) -> TilingReport {
    let copies = images(omega, family);
    let m = measure(&copies, window);
    let truncation_gap = reference.map_or(0.0, |r| measure(&images(r, family), window).gap);
    TilingReport {
        kind: TilingKind::Multiplicative,
        max_pairwise_overlap: m.max_pairwise,
        total_overlap: m.total,
        gap_area: m.gap,
        truncation_gap,
        window_area: window.area(),
        window: window.clone(),
        truncation: Truncation {
            description: format!("{} family members", family.len()),
            copies: m.copies,
        },
        tol,
        pass: false,
    }
    .finish()
}

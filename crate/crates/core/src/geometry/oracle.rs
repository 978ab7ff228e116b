//! Independent area oracles: scanline rasterization and Monte Carlo.
//!
//! Neither oracle uses polygon clipping, so both can cross-check the exact
//! region algebra.

use super::polygon::Point;
use super::region::Region;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples drawn per Monte Carlo stream.
pub const MC_CHUNK: usize = 1 << 16;

fn chords(r: &Region, y: f64, out: &mut Vec<(f64, f64)>) {
    out.clear();
    out.extend(r.pieces().iter().filter_map(|p| p.chord_at(y)));
}

/// Area of `r ∩ window` by counting cell centres of a `resolution × resolution`
/// grid over the window's bounding box.
///
/// Error is at most `perimeter(r) · diameter(window) / resolution`.
pub fn raster_area(r: &Region, window: &Region, resolution: usize) -> f64 {
    assert!(resolution >= 64, "raster resolution must be at least 64");
    if window.is_empty() || r.is_empty() {
        return 0.0;
    }
    let bb = window.bbox();
    let hx = bb.width() / resolution as f64;
    let hy = bb.height() / resolution as f64;
    if !(hx > 0.0 && hy > 0.0) {
        return 0.0;
    }
    // Number of centres x0 + (j + 1/2)h, 0 ≤ j < res, lying in [lo, hi).
    let count = |lo: f64, hi: f64| -> usize {
        let first = ((lo - bb.min.x) / hx - 0.5).ceil().max(0.0);
        let end = ((hi - bb.min.x) / hx - 0.5).ceil().min(resolution as f64);
        if end > first {
            (end - first) as usize
        } else {
            0
        }
    };
    let hits: usize = (0..resolution)
        .into_par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(rc, wc), i| {
                let y = bb.min.y + (i as f64 + 0.5) * hy;
                chords(r, y, rc);
                if rc.is_empty() {
                    return 0;
                }
                chords(window, y, wc);
                let mut n = 0;
                for &(a0, a1) in rc.iter() {
                    for &(b0, b1) in wc.iter() {
                        n += count(a0.max(b0), a1.min(b1));
                    }
                }
                n
            },
        )
        .sum();
    hits as f64 * hx * hy
}

/// Monte Carlo estimate of `area(r ∩ window)` with its standard error.
///
/// Points are drawn uniformly from the window's bounding box. Sample `i`
/// belongs to stream `i / MC_CHUNK` of a ChaCha8 generator seeded with
/// `seed`, so the result does not depend on the thread count.
pub fn monte_carlo_area(r: &Region, window: &Region, samples: usize, seed: u64) -> (f64, f64) {
    if r.is_empty() || window.is_empty() || samples == 0 {
        return (0.0, 0.0);
    }
    let bb = window.bbox();
    let box_area = bb.width() * bb.height();
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let n = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut h = 0u64;
            for _ in 0..n {
                let p = Point::new(
                    rng.gen_range(bb.min.x..bb.max.x),
                    rng.gen_range(bb.min.y..bb.max.y),
                );
                if r.contains(p) && window.contains(p) {
                    h += 1;
                }
            }
            h
        })
        .sum();
    let n = samples as f64;
    let p = hits as f64 / n;
    (box_area * p, box_area * (p * (1.0 - p) / n).sqrt())
}

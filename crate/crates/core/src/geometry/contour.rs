//! Raster-to-polygon extraction: marching squares at the 0.5 iso-level over
//! a binary grid, keeping the largest connected component.

use std::collections::HashMap;

use super::polygon::{Point, Polygon};
use super::raster::{connected_components, BitMask};
use crate::error::{Error, Result};

/// Extract the outer contour of the largest 8-connected component as a
/// polygon.
///
/// Samples sit at pixel centers with an implicit zero ring outside the
/// canvas; the 0.5 iso-contour therefore passes through the midpoints between
/// foreground and background centers, cutting corners diagonally. The
/// enclosed area stays within a one-pixel perimeter band of the component's
/// pixel count.
pub fn mask_to_polygon(m: &BitMask) -> Result<Polygon> {
    let comps = connected_components(m);
    let largest = comps.first().ok_or(Error::NoForeground)?;
    trace_outer_contour(largest)
}

// Edge midpoints of a marching-squares cell whose corners are the samples at
// pixel centers (cx+0.5, cy+0.5) .. (cx+1.5, cy+1.5). Coordinates are
// multiples of 0.5, stored doubled as integer keys for exact stitching.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key(i64, i64);

fn trace_outer_contour(m: &BitMask) -> Result<Polygon> {
    let (w, h) = (m.width() as i64, m.height() as i64);
    let sample = |x: i64, y: i64| -> bool {
        x >= 0 && y >= 0 && x < w && y < h && m.get(x as usize, y as usize)
    };

    // Directed boundary segments with foreground on the left (y down).
    let mut next: HashMap<Key, Key> = HashMap::new();
    for cy in -1..h {
        for cx in -1..w {
            let tl = sample(cx, cy);
            let tr = sample(cx + 1, cy);
            let bl = sample(cx, cy + 1);
            let br = sample(cx + 1, cy + 1);
            // midpoints, doubled: T/B/L/R of the cell
            let t = Key(2 * cx + 2, 2 * cy + 1);
            let b = Key(2 * cx + 2, 2 * cy + 3);
            let l = Key(2 * cx + 1, 2 * cy + 2);
            let r = Key(2 * cx + 3, 2 * cy + 2);
            let segs: &[(Key, Key)] = match (tl, tr, bl, br) {
                (false, false, false, false) | (true, true, true, true) => &[],
                (true, false, false, false) => &[(l, t)],
                (false, true, false, false) => &[(t, r)],
                (true, true, false, false) => &[(l, r)],
                (false, false, true, false) => &[(b, l)],
                (true, false, true, false) => &[(b, t)],
                // diagonal foreground pairs stay 8-connected: cut both
                // background corners instead of splitting the diagonal
                (false, true, true, false) => &[(t, l), (b, r)],
                (true, false, false, true) => &[(r, t), (l, b)],
                (true, true, true, false) => &[(b, r)],
                (false, false, false, true) => &[(r, b)],
                (false, true, false, true) => &[(t, b)],
                (true, true, false, true) => &[(l, b)],
                (false, false, true, true) => &[(r, l)],
                (true, false, true, true) => &[(r, t)],
                (false, true, true, true) => &[(t, l)],
            };
            for &(from, to) in segs {
                next.insert(from, to);
            }
        }
    }

    // Stitch directed segments into closed loops; keep the loop with the
    // largest enclosed area as the outer boundary.
    let mut starts: Vec<Key> = next.keys().copied().collect();
    starts.sort_by_key(|k| (k.1, k.0));
    let mut visited: std::collections::HashSet<Key> = std::collections::HashSet::new();
    let mut best: Option<(f64, Vec<Point>)> = None;
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        let mut loop_pts: Vec<Point> = Vec::new();
        let mut cur = start;
        loop {
            visited.insert(cur);
            loop_pts.push(Point::new(cur.0 as f64 / 2.0, cur.1 as f64 / 2.0));
            cur = *next
                .get(&cur)
                .expect("marching squares yields closed loops");
            if cur == start {
                break;
            }
        }
        simplify_collinear(&mut loop_pts);
        if loop_pts.len() < 3 {
            continue;
        }
        let area = shoelace_abs(&loop_pts);
        if best.as_ref().map_or(true, |(a, _)| area > *a) {
            best = Some((area, loop_pts));
        }
    }
    let (_, pts) = best.ok_or(Error::NoForeground)?;
    Polygon::new(pts)
}

fn shoelace_abs(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    (acc / 2.0).abs()
}

fn simplify_collinear(pts: &mut Vec<Point>) {
    if pts.len() < 3 {
        return;
    }
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    let n = pts.len();
    for i in 0..n {
        let prev = pts[(i + n - 1) % n];
        let cur = pts[i];
        let next = pts[(i + 1) % n];
        let cross = (cur.x - prev.x) * (next.y - prev.y) - (cur.y - prev.y) * (next.x - prev.x);
        if cross.abs() > 1e-9 {
            out.push(cur);
        }
    }
    *pts = out;
}

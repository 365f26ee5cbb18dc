//! Binary rasters, polygon scan conversion, connected components, and mask
//! pasting.

use super::polygon::{AABox, Polygon};
use crate::error::{Error, Result};

/// Row-major binary grid at image resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMask {
    width: usize,
    height: usize,
    bits: Vec<u8>,
}

impl BitMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![0; width * height],
        }
    }

    pub fn from_bits(width: usize, height: usize, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != width * height {
            return Err(Error::InvalidMask(format!(
                "bit count {} != {}x{}",
                bits.len(),
                width,
                height
            )));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidMask("values must be 0 or 1".into()));
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x] != 0
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.bits[y * self.width + x] = v as u8;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Number of pixel-boundary edges adjacent to background or the canvas
    /// border; a discrete perimeter.
    pub fn perimeter(&self) -> usize {
        let mut per = 0;
        for y in 0..self.height {
            for x in 0..self.width {
                if !self.get(x, y) {
                    continue;
                }
                if x == 0 || !self.get(x - 1, y) {
                    per += 1;
                }
                if x + 1 == self.width || !self.get(x + 1, y) {
                    per += 1;
                }
                if y == 0 || !self.get(x, y - 1) {
                    per += 1;
                }
                if y + 1 == self.height || !self.get(x, y + 1) {
                    per += 1;
                }
            }
        }
        per
    }
}

/// Fixed N×N grid of values in [0, 1]; probabilities or binary targets.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskGrid {
    side: usize,
    values: Vec<f64>,
}

impl MaskGrid {
    pub fn new(side: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != side * side {
            return Err(Error::InvalidMask(format!(
                "grid length {} != {side}²",
                values.len()
            )));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidMask("grid values must lie in [0,1]".into()));
        }
        Ok(Self { side, values })
    }

    pub fn filled(side: usize, value: f64) -> Self {
        Self::new(side, vec![value; side * side]).expect("constant grid is valid")
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.values[row * self.side + col]
    }
}

/// Scan-convert a polygon onto a `width × height` canvas.
///
/// A bit is set iff the pixel center `(i+0.5, j+0.5)` lies inside the polygon
/// under the even-odd rule; geometry outside the canvas is ignored.
pub fn rasterize(p: &Polygon, width: usize, height: usize) -> BitMask {
    let mut mask = BitMask::new(width, height);
    rasterize_into(p, &mut mask);
    mask
}

pub(crate) fn rasterize_into(p: &Polygon, mask: &mut BitMask) {
    let (width, height) = (mask.width, mask.height);
    let bbox = p.bounding_box();
    let j_lo = bbox.y_min.floor().max(0.0) as usize;
    let j_hi = (bbox.y_max.ceil() as i64).min(height as i64).max(0) as usize;
    let mut crossings: Vec<f64> = Vec::with_capacity(p.vertices().len());
    for j in j_lo..j_hi {
        let y = j as f64 + 0.5;
        crossings.clear();
        for (a, b) in p.edges() {
            if (a.y <= y && y < b.y) || (b.y <= y && y < a.y) {
                crossings.push(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
        crossings.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // even-odd fill: pixel centers in [x0, x1) per crossing pair
        for pair in crossings.chunks_exact(2) {
            let i0 = (pair[0] - 0.5).ceil().max(0.0) as usize;
            let i1 = ((pair[1] - 0.5).ceil() as i64).min(width as i64).max(0) as usize;
            for i in i0..i1 {
                mask.bits[j * width + i] = 1;
            }
        }
    }
}

/// 8-connected components of a mask, each on the same canvas, ordered by
/// decreasing pixel count with ties broken by the smallest row-major index of
/// the first pixel.
pub fn connected_components(m: &BitMask) -> Vec<BitMask> {
    let (w, h) = (m.width, m.height);
    let mut visited = vec![false; w * h];
    let mut comps: Vec<(usize, usize, BitMask)> = Vec::new(); // (count, first_idx, mask)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..w * h {
        if m.bits[start] == 0 || visited[start] {
            continue;
        }
        let mut comp = BitMask::new(w, h);
        let mut count = 0usize;
        visited[start] = true;
        stack.push((start % w, start / w));
        while let Some((x, y)) = stack.pop() {
            comp.bits[y * w + x] = 1;
            count += 1;
            let x0 = x.saturating_sub(1);
            let y0 = y.saturating_sub(1);
            for ny in y0..=(y + 1).min(h - 1) {
                for nx in x0..=(x + 1).min(w - 1) {
                    let idx = ny * w + nx;
                    if m.bits[idx] != 0 && !visited[idx] {
                        visited[idx] = true;
                        stack.push((nx, ny));
                    }
                }
            }
        }
        comps.push((count, start, comp));
    }
    comps.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    comps.into_iter().map(|(_, _, c)| c).collect()
}

/// Bilinearly resample an N×N probability grid into a box region on the
/// canvas and binarize at `threshold`; pixels outside the box stay clear and
/// box regions outside the canvas are clipped.
pub fn paste_mask(
    grid: &MaskGrid,
    bbox: &AABox,
    image_size: (usize, usize),
    threshold: f64,
) -> BitMask {
    let (w, h) = image_size;
    let mut mask = BitMask::new(w, h);
    let (bw, bh) = (bbox.width(), bbox.height());
    if bw <= 0.0 || bh <= 0.0 {
        return mask;
    }
    let n = grid.side() as f64;
    let j0 = bbox.y_min.floor().max(0.0) as usize;
    let j1 = (bbox.y_max.ceil() as i64).min(h as i64).max(0) as usize;
    let i0 = bbox.x_min.floor().max(0.0) as usize;
    let i1 = (bbox.x_max.ceil() as i64).min(w as i64).max(0) as usize;
    let side = grid.side() as i64;
    for j in j0..j1 {
        let py = j as f64 + 0.5;
        if py < bbox.y_min || py >= bbox.y_max {
            continue;
        }
        let v = (py - bbox.y_min) / bh * n - 0.5;
        let v0 = v.floor();
        let ty = v - v0;
        let r0 = (v0 as i64).clamp(0, side - 1) as usize;
        let r1 = (v0 as i64 + 1).clamp(0, side - 1) as usize;
        for i in i0..i1 {
            let px = i as f64 + 0.5;
            if px < bbox.x_min || px >= bbox.x_max {
                continue;
            }
            let u = (px - bbox.x_min) / bw * n - 0.5;
            let u0 = u.floor();
            let tx = u - u0;
            let c0 = (u0 as i64).clamp(0, side - 1) as usize;
            let c1 = (u0 as i64 + 1).clamp(0, side - 1) as usize;
            let top = grid.get(c0, r0) * (1.0 - tx) + grid.get(c1, r0) * tx;
            let bot = grid.get(c0, r1) * (1.0 - tx) + grid.get(c1, r1) * tx;
            let value = top * (1.0 - ty) + bot * ty;
            if value >= threshold {
                mask.bits[j * w + i] = 1;
            }
        }
    }
    mask
}

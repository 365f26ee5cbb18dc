//! Intersection-over-union for boxes (closed form) and polygons (shared-grid
//! rasterization).

use super::polygon::{AABox, Polygon};
use super::raster::{rasterize_into, BitMask};

/// Default sampling density for rasterized polygon IoU, in samples per pixel.
pub const DEFAULT_IOU_RESOLUTION: f64 = 4.0;

/// Largest sample grid edge used by [`polygon_iou`]; the effective resolution
/// is reduced for huge joint boxes.
const MAX_GRID_SIDE: usize = 2048;

/// Exact closed-form IoU of two axis-aligned boxes. Zero-area boxes give 0,
/// including the identical zero-area pair.
pub fn box_iou(a: &AABox, b: &AABox) -> f64 {
    let ia = a.intersection_area(b);
    let union = a.area() + b.area() - ia;
    if union <= 0.0 {
        return 0.0;
    }
    ia / union
}

/// IoU of two polygons, computed by rasterizing both onto a shared grid over
/// their joint bounding box at `resolution` samples per pixel (capped so the
/// grid never exceeds 2048×2048). Symmetric in its arguments; concave
/// polygons are handled by the even-odd fill. A degenerate joint bounding box
/// yields 0.
pub fn polygon_iou(a: &Polygon, b: &Polygon, resolution: f64) -> f64 {
    let ba = a.bounding_box();
    let bb = b.bounding_box();
    let x_min = ba.x_min.min(bb.x_min);
    let y_min = ba.y_min.min(bb.y_min);
    let x_max = ba.x_max.max(bb.x_max);
    let y_max = ba.y_max.max(bb.y_max);
    let (w, h) = (x_max - x_min, y_max - y_min);
    if w <= 0.0 || h <= 0.0 {
        return 0.0;
    }
    let res = resolution
        .min(MAX_GRID_SIDE as f64 / w)
        .min(MAX_GRID_SIDE as f64 / h);
    let sx = ((w * res).ceil() as usize).max(1);
    let sy = ((h * res).ceil() as usize).max(1);

    let to_grid = |p: &Polygon| p.translated(-x_min, -y_min).scaled(res);
    let mut ma = BitMask::new(sx, sy);
    let mut mb = BitMask::new(sx, sy);
    rasterize_into(&to_grid(a), &mut ma);
    rasterize_into(&to_grid(b), &mut mb);

    let mut inter = 0usize;
    let mut union = 0usize;
    for (&pa, &pb) in ma.bits().iter().zip(mb.bits()) {
        inter += (pa & pb) as usize;
        union += (pa | pb) as usize;
    }
    if union == 0 {
        return 0.0;
    }
    inter as f64 / union as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polygon;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square(x0: f64, y0: f64, x1: f64, y1: f64) -> Polygon {
        Polygon::from_coords(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)]).unwrap()
    }

    #[test]
    fn box_iou_identity_and_disjoint() {
        let a = AABox::new(0.0, 0.0, 2.0, 2.0).unwrap();
        let b = AABox::new(5.0, 5.0, 6.0, 6.0).unwrap();
        assert_eq!(box_iou(&a, &a), 1.0);
        assert_eq!(box_iou(&a, &b), 0.0);
    }

    #[test]
    fn box_iou_one_seventh_exact() {
        let a = AABox::new(0.0, 0.0, 2.0, 2.0).unwrap();
        let b = AABox::new(1.0, 1.0, 3.0, 3.0).unwrap();
        assert!((box_iou(&a, &b) - 1.0 / 7.0).abs() < 1e-15);
        assert_eq!(box_iou(&a, &b), box_iou(&b, &a));
    }

    #[test]
    fn box_iou_zero_area_is_zero() {
        let z = AABox::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let a = AABox::new(0.0, 0.0, 2.0, 2.0).unwrap();
        assert_eq!(box_iou(&z, &a), 0.0);
        assert_eq!(box_iou(&z, &z), 0.0);
    }

    // Fine-grid pixel counting oracle for box IoU.
    #[test]
    fn box_iou_matches_pixel_count_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let res = 8.0;
        for _ in 0..100 {
            let (x0, y0) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            let a = AABox::new(x0, y0, x0 + rng.gen_range(1.0..8.0), y0 + rng.gen_range(1.0..8.0))
                .unwrap();
            let (x1, y1) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            let b = AABox::new(x1, y1, x1 + rng.gen_range(1.0..8.0), y1 + rng.gen_range(1.0..8.0))
                .unwrap();
            let exact = box_iou(&a, &b);
            let mut inter = 0usize;
            let mut union = 0usize;
            for gy in 0..(20.0 * res) as usize {
                for gx in 0..(20.0 * res) as usize {
                    let px = (gx as f64 + 0.5) / res;
                    let py = (gy as f64 + 0.5) / res;
                    let ina =
                        px >= a.x_min && px < a.x_max && py >= a.y_min && py < a.y_max;
                    let inb =
                        px >= b.x_min && px < b.x_max && py >= b.y_min && py < b.y_max;
                    inter += (ina && inb) as usize;
                    union += (ina || inb) as usize;
                }
            }
            let counted = if union == 0 {
                0.0
            } else {
                inter as f64 / union as f64
            };
            assert!(
                (exact - counted).abs() <= 1.0 / res,
                "exact {exact} counted {counted}"
            );
        }
    }

    #[test]
    fn polygon_iou_identity() {
        let p = square(0.0, 0.0, 5.0, 5.0);
        assert_eq!(polygon_iou(&p, &p, DEFAULT_IOU_RESOLUTION), 1.0);
    }

    #[test]
    fn polygon_iou_disjoint() {
        let a = square(0.0, 0.0, 1.0, 1.0);
        let b = square(5.0, 5.0, 6.0, 6.0);
        assert_eq!(polygon_iou(&a, &b, DEFAULT_IOU_RESOLUTION), 0.0);
    }

    #[test]
    fn polygon_iou_one_seventh() {
        let a = square(0.0, 0.0, 2.0, 2.0);
        let b = square(1.0, 1.0, 3.0, 3.0);
        let got = polygon_iou(&a, &b, DEFAULT_IOU_RESOLUTION);
        assert!((got - 1.0 / 7.0).abs() < 0.02, "got {got}");
        assert_eq!(got, polygon_iou(&b, &a, DEFAULT_IOU_RESOLUTION));
    }

    #[test]
    fn polygon_iou_agrees_with_box_iou() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (x0, y0) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            let a = AABox::new(x0, y0, x0 + rng.gen_range(2.0..9.0), y0 + rng.gen_range(2.0..9.0))
                .unwrap();
            let (x1, y1) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            let b = AABox::new(x1, y1, x1 + rng.gen_range(2.0..9.0), y1 + rng.gen_range(2.0..9.0))
                .unwrap();
            let exact = box_iou(&a, &b);
            let sampled = polygon_iou(
                &Polygon::from_box(&a),
                &Polygon::from_box(&b),
                DEFAULT_IOU_RESOLUTION,
            );
            assert!(
                (exact - sampled).abs() <= 2.0 / DEFAULT_IOU_RESOLUTION,
                "exact {exact} sampled {sampled}"
            );
        }
    }
}

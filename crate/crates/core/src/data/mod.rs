//! Dataset ingestion (ICDAR-style polygon annotations), synthetic
//! dense-stripe scene generation, whole-dataset rotation, and proposal
//! jittering.

mod annotations;
mod pgm;
mod synth;

pub use annotations::{load_annotations, save_annotations, serialize_instances, IGNORE_TOKEN};
pub use pgm::{read_pgm, write_pgm};
pub use synth::{derive_seed, gen_dense_scene, SynthConfig};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{AABox, Point, Polygon, RotationTransform};

/// One annotated text instance: a polygon plus the ignore flag carried by
/// `###`-terminated annotation lines. Ignore instances never count as false
/// negatives and matches to them are discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct TextInstance {
    pub polygon: Polygon,
    pub ignore: bool,
}

/// An image record: id, canvas size, instances, and (for synthetic scenes or
/// PGM-backed datasets) a grayscale pixel grid in [0, 1], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageRecord {
    pub id: String,
    pub size: (u32, u32),
    pub instances: Vec<TextInstance>,
    pub pixels: Option<Vec<f64>>,
}

impl ImageRecord {
    /// Grayscale value with zero fill outside the canvas, bilinear at a
    /// continuous position given in pixel coordinates.
    pub fn sample_bilinear(&self, x: f64, y: f64) -> f64 {
        let Some(pixels) = &self.pixels else {
            return 0.0;
        };
        let (w, h) = (self.size.0 as i64, self.size.1 as i64);
        let u = x - 0.5;
        let v = y - 0.5;
        let u0 = u.floor();
        let v0 = v.floor();
        let (tx, ty) = (u - u0, v - v0);
        let fetch = |ix: i64, iy: i64| -> f64 {
            if ix < 0 || iy < 0 || ix >= w || iy >= h {
                0.0
            } else {
                pixels[(iy * w + ix) as usize]
            }
        };
        let (ix, iy) = (u0 as i64, v0 as i64);
        let top = fetch(ix, iy) * (1.0 - tx) + fetch(ix + 1, iy) * tx;
        let bot = fetch(ix, iy + 1) * (1.0 - tx) + fetch(ix + 1, iy + 1) * tx;
        top * (1.0 - ty) + bot * ty
    }
}

/// Rotate every record: polygons via the shared rotation transform, pixels by
/// inverse-mapped bilinear resampling with zero fill, canvas expanded to the
/// rotated extent. Instance count is preserved.
pub fn rotate_dataset(records: &[ImageRecord], angle_deg: f64) -> Vec<ImageRecord> {
    records.iter().map(|r| rotate_record(r, angle_deg)).collect()
}

fn rotate_record(rec: &ImageRecord, angle_deg: f64) -> ImageRecord {
    let t = RotationTransform::new(angle_deg, rec.size);
    let (nw, nh) = t.new_size();
    let instances = rec
        .instances
        .iter()
        .map(|inst| {
            let vs = inst.polygon.vertices().iter().map(|&v| t.apply(v)).collect();
            TextInstance {
                polygon: Polygon::new(vs).expect("rigid motion preserves polygon validity"),
                ignore: inst.ignore,
            }
        })
        .collect();
    let pixels = rec.pixels.as_ref().map(|_| {
        let mut out = vec![0.0; nw as usize * nh as usize];
        for j in 0..nh as usize {
            for i in 0..nw as usize {
                let src = t.invert(Point::new(i as f64 + 0.5, j as f64 + 0.5));
                out[j * nw as usize + i] = rec.sample_bilinear(src.x, src.y);
            }
        }
        out
    });
    ImageRecord {
        id: rec.id.clone(),
        size: (nw, nh),
        instances,
        pixels,
    }
}

/// Jittered proposals: each ground-truth box is replicated `n_per_gt` times
/// with its center shifted by `U(-shift, +shift) · box size` per axis and its
/// size scaled by `exp(U(-scale, +scale))` per axis, then clipped to the
/// canvas. Deterministic per seed; noise 0 reproduces the boxes exactly.
pub fn jitter_proposals(
    gts: &[AABox],
    scale_noise: f64,
    shift_noise: f64,
    n_per_gt: usize,
    seed: u64,
    image_size: (u32, u32),
) -> Vec<(AABox, usize)> {
    assert!(scale_noise >= 0.0 && shift_noise >= 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (image_size.0 as f64, image_size.1 as f64);
    let mut out = Vec::with_capacity(gts.len() * n_per_gt);
    for (gi, gt) in gts.iter().enumerate() {
        for _ in 0..n_per_gt {
            let (cx, cy) = gt.center();
            let (bw, bh) = (gt.width(), gt.height());
            let (dx, dy, sx, sy) = if scale_noise == 0.0 && shift_noise == 0.0 {
                (0.0, 0.0, 1.0, 1.0)
            } else {
                (
                    rng.gen_range(-shift_noise..=shift_noise) * bw,
                    rng.gen_range(-shift_noise..=shift_noise) * bh,
                    rng.gen_range(-scale_noise..=scale_noise).exp(),
                    rng.gen_range(-scale_noise..=scale_noise).exp(),
                )
            };
            let (ncx, ncy) = (cx + dx, cy + dy);
            let (hw, hh) = (bw * sx / 2.0, bh * sy / 2.0);
            let bx = AABox::new(ncx - hw, ncy - hh, ncx + hw, ncy + hh)
                .expect("jittered box extents stay ordered");
            let bx = bx.clipped_to(w, h).unwrap_or(*gt);
            out.push((bx, gi));
        }
    }
    out
}

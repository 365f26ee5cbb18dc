//! Greedy polygonal non-maximum suppression.

use super::iou::{polygon_iou, DEFAULT_IOU_RESOLUTION};
use super::polygon::Polygon;
use crate::error::{Error, Result};

/// A scored polygon detection.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Detection {
    pub polygon: Polygon,
    pub score: f64,
}

impl Detection {
    pub fn new(polygon: Polygon, score: f64) -> Result<Self> {
        if !score.is_finite() || !(0.0..=1.0).contains(&score) {
            return Err(Error::InvalidConfig(format!(
                "detection score must lie in [0,1], got {score}"
            )));
        }
        Ok(Self { polygon, score })
    }
}

/// Greedy NMS: visit detections by descending score (ties keep the lower
/// original index first) and keep one iff its polygon IoU with every
/// already-kept detection stays below `iou_threshold`. Returns the kept
/// indices in original order.
pub fn polygon_nms(dets: &[Detection], iou_threshold: f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dets.len()).collect();
    order.sort_by(|&a, &b| {
        dets[b]
            .score
            .partial_cmp(&dets[a].score)
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let suppressed = kept.iter().any(|&k| {
            polygon_iou(&dets[i].polygon, &dets[k].polygon, DEFAULT_IOU_RESOLUTION)
                >= iou_threshold
        });
        if !suppressed {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square(x0: f64, y0: f64, side: f64) -> Polygon {
        Polygon::from_coords(&[
            (x0, y0),
            (x0 + side, y0),
            (x0 + side, y0 + side),
            (x0, y0 + side),
        ])
        .unwrap()
    }

    #[test]
    fn duplicate_suppression_keeps_higher_score() {
        let dets = vec![
            Detection::new(square(0.0, 0.0, 4.0), 0.8).unwrap(),
            Detection::new(square(0.0, 0.0, 4.0), 0.9).unwrap(),
        ];
        assert_eq!(polygon_nms(&dets, 0.5), vec![1]);
    }

    #[test]
    fn disjoint_detections_both_kept() {
        let dets = vec![
            Detection::new(square(0.0, 0.0, 3.0), 0.7).unwrap(),
            Detection::new(square(10.0, 10.0, 3.0), 0.6).unwrap(),
        ];
        assert_eq!(polygon_nms(&dets, 0.5), vec![0, 1]);
    }

    #[test]
    fn empty_input_empty_output() {
        assert!(polygon_nms(&[], 0.5).is_empty());
    }

    #[test]
    fn score_tie_breaks_to_lower_index() {
        let dets = vec![
            Detection::new(square(0.0, 0.0, 4.0), 0.5).unwrap(),
            Detection::new(square(0.5, 0.5, 4.0), 0.5).unwrap(),
        ];
        assert_eq!(polygon_nms(&dets, 0.5), vec![0]);
    }

    // Exhaustive greedy oracle over the full pairwise IoU table.
    fn nms_oracle(dets: &[Detection], thr: f64) -> Vec<usize> {
        let n = dets.len();
        let mut iou = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                iou[i][j] = polygon_iou(&dets[i].polygon, &dets[j].polygon, 4.0);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| dets[b].score.partial_cmp(&dets[a].score).unwrap().then(a.cmp(&b)));
        let mut kept: Vec<usize> = Vec::new();
        for &i in &order {
            if kept.iter().all(|&k| iou[i][k] < thr) {
                kept.push(i);
            }
        }
        kept.sort_unstable();
        kept
    }

    #[test]
    fn jittered_copies_match_bruteforce_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let bases = [(0.0, 0.0), (12.0, 0.0), (0.0, 12.0)];
            let mut dets = Vec::new();
            for _ in 0..10 {
                let (bx, by) = bases[rng.gen_range(0..3)];
                let dx = rng.gen_range(-1.0..1.0);
                let dy = rng.gen_range(-1.0..1.0);
                dets.push(
                    Detection::new(square(bx + dx, by + dy, 6.0), rng.gen_range(0.1..1.0))
                        .unwrap(),
                );
            }
            let kept = polygon_nms(&dets, 0.5);
            assert_eq!(kept, nms_oracle(&dets, 0.5));

            // antichain: kept pairs below threshold; suppressed overlap a
            // kept detection of greater or equal score
            for (a, &i) in kept.iter().enumerate() {
                for &j in &kept[a + 1..] {
                    assert!(polygon_iou(&dets[i].polygon, &dets[j].polygon, 4.0) < 0.5);
                }
            }
            for s in 0..dets.len() {
                if kept.contains(&s) {
                    continue;
                }
                assert!(kept.iter().any(|&k| {
                    polygon_iou(&dets[s].polygon, &dets[k].polygon, 4.0) >= 0.5
                        && dets[k].score >= dets[s].score
                }));
            }
        }
    }
}

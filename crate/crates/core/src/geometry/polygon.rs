//! Points, polygons, axis-aligned boxes, and rigid rotation with canvas
//! expansion.

use crate::error::{Error, Result};

/// A 2D point in continuous image coordinates (pixels, y down).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Panics on non-finite coordinates; NaN points poison every downstream
    /// predicate, so they are rejected at the door.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite(),
            "point coordinates must be finite, got ({x}, {y})"
        );
        Self { x, y }
    }
}

/// A simple polygon given as an ordered vertex list, implicitly closed.
///
/// Construction normalizes the winding so the shoelace signed area is
/// positive and drops consecutive duplicate vertices. Degenerate inputs
/// (fewer than 3 distinct vertices, zero area) are rejected.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let mut vs: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if let Some(last) = vs.last() {
                if (last.x - p.x).abs() < 1e-12 && (last.y - p.y).abs() < 1e-12 {
                    continue;
                }
            }
            vs.push(p);
        }
        // implicit closure: a repeated final vertex is redundant
        while vs.len() > 1 {
            let first = vs[0];
            let last = *vs.last().unwrap();
            if (first.x - last.x).abs() < 1e-12 && (first.y - last.y).abs() < 1e-12 {
                vs.pop();
            } else {
                break;
            }
        }
        if vs.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 distinct vertices, got {}",
                vs.len()
            )));
        }
        let signed = shoelace_signed(&vs);
        if signed.abs() < 1e-12 {
            return Err(Error::InvalidPolygon("zero signed area".into()));
        }
        if signed < 0.0 {
            vs.reverse();
        }
        Ok(Self { vertices: vs })
    }

    /// Convenience constructor from (x, y) pairs.
    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    /// Axis-aligned rectangle as a polygon.
    pub fn from_box(b: &AABox) -> Self {
        Self::new(vec![
            Point::new(b.x_min, b.y_min),
            Point::new(b.x_max, b.y_min),
            Point::new(b.x_max, b.y_max),
            Point::new(b.x_min, b.y_max),
        ])
        .expect("a valid box forms a valid polygon")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Iterate edges as (start, end) pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Tight axis-aligned bounding box.
    pub fn bounding_box(&self) -> AABox {
        let mut x_min = f64::INFINITY;
        let mut y_min = f64::INFINITY;
        let mut x_max = f64::NEG_INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        for p in &self.vertices {
            x_min = x_min.min(p.x);
            y_min = y_min.min(p.y);
            x_max = x_max.max(p.x);
            y_max = y_max.max(p.y);
        }
        AABox::new(x_min, y_min, x_max, y_max).expect("finite vertices give a valid box")
    }

    /// Translate by (dx, dy).
    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
        }
    }

    /// Scale about the origin by a positive factor.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.x * factor, p.y * factor))
                .collect(),
        }
    }
}

fn shoelace_signed(vs: &[Point]) -> f64 {
    let n = vs.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = vs[i];
        let b = vs[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    acc / 2.0
}

/// Absolute shoelace area of a polygon, in pixels².
pub fn polygon_area(p: &Polygon) -> f64 {
    shoelace_signed(p.vertices()).abs()
}

/// Axis-aligned box, `x_min ≤ x_max` and `y_min ≤ y_max`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AABox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl AABox {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        if !(x_min.is_finite() && y_min.is_finite() && x_max.is_finite() && y_max.is_finite()) {
            return Err(Error::InvalidBox("non-finite coordinate".into()));
        }
        if x_min > x_max || y_min > y_max {
            return Err(Error::InvalidBox(format!(
                "unordered extents ({x_min},{y_min},{x_max},{y_max})"
            )));
        }
        Ok(Self {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> (f64, f64) {
        (
            (self.x_min + self.x_max) / 2.0,
            (self.y_min + self.y_max) / 2.0,
        )
    }

    /// Intersection area with another box (0 when disjoint).
    pub fn intersection_area(&self, other: &AABox) -> f64 {
        let w = (self.x_max.min(other.x_max) - self.x_min.max(other.x_min)).max(0.0);
        let h = (self.y_max.min(other.y_max) - self.y_min.max(other.y_min)).max(0.0);
        w * h
    }

    /// Grow the box by `d` pixels on every side.
    pub fn dilated(&self, d: f64) -> AABox {
        AABox {
            x_min: self.x_min - d,
            y_min: self.y_min - d,
            x_max: self.x_max + d,
            y_max: self.y_max + d,
        }
    }

    /// Clip to the canvas `[0,w] × [0,h]`; `None` when fully outside.
    pub fn clipped_to(&self, w: f64, h: f64) -> Option<AABox> {
        let x_min = self.x_min.max(0.0);
        let y_min = self.y_min.max(0.0);
        let x_max = self.x_max.min(w);
        let y_max = self.y_max.min(h);
        if x_min >= x_max || y_min >= y_max {
            return None;
        }
        Some(AABox {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }
}

/// Rigid rotation of canvas content by `angle` degrees counter-clockwise as
/// displayed (y axis points down), about the old canvas center, with the
/// canvas expanded to the rotated image's tight extent.
#[derive(Debug, Clone, Copy)]
pub struct RotationTransform {
    cos: f64,
    sin: f64,
    old_center: (f64, f64),
    new_center: (f64, f64),
    new_size: (u32, u32),
}

impl RotationTransform {
    pub fn new(angle_deg: f64, old_size: (u32, u32)) -> Self {
        let (w, h) = (old_size.0 as f64, old_size.1 as f64);
        let rad = angle_deg.to_radians();
        let (sin, cos) = rad.sin_cos();
        let new_w = (w * cos.abs() + h * sin.abs()).round().max(1.0);
        let new_h = (w * sin.abs() + h * cos.abs()).round().max(1.0);
        Self {
            cos,
            sin,
            old_center: (w / 2.0, h / 2.0),
            new_center: (new_w / 2.0, new_h / 2.0),
            new_size: (new_w as u32, new_h as u32),
        }
    }

    pub fn new_size(&self) -> (u32, u32) {
        self.new_size
    }

    /// Map a point from old-canvas to new-canvas coordinates.
    pub fn apply(&self, p: Point) -> Point {
        let dx = p.x - self.old_center.0;
        let dy = p.y - self.old_center.1;
        Point::new(
            self.cos * dx + self.sin * dy + self.new_center.0,
            -self.sin * dx + self.cos * dy + self.new_center.1,
        )
    }

    /// Map a point from new-canvas back to old-canvas coordinates.
    pub fn invert(&self, p: Point) -> Point {
        let dx = p.x - self.new_center.0;
        let dy = p.y - self.new_center.1;
        Point::new(
            self.cos * dx - self.sin * dy + self.old_center.0,
            self.sin * dx + self.cos * dy + self.old_center.1,
        )
    }
}

/// Rotate a polygon with canvas expansion; returns the rotated polygon and
/// the new canvas size.
pub fn rotate_polygon(p: &Polygon, angle_deg: f64, old_size: (u32, u32)) -> (Polygon, (u32, u32)) {
    let t = RotationTransform::new(angle_deg, old_size);
    let vs = p.vertices().iter().map(|&v| t.apply(v)).collect();
    let rotated = Polygon::new(vs).expect("rigid motion preserves polygon validity");
    (rotated, t.new_size())
}

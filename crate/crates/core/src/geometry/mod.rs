//! Pure geometric kernels: polygon math, rasterization, raster-to-polygon
//! extraction, IoU, polygonal NMS, and mask pasting.
//!
//! Everything here is a pure function of its inputs; no shared mutable state.

mod contour;
mod iou;
mod nms;
mod polygon;
mod raster;

pub use contour::mask_to_polygon;
pub use iou::{box_iou, polygon_iou, DEFAULT_IOU_RESOLUTION};
pub use nms::{polygon_nms, Detection};
pub use polygon::{polygon_area, rotate_polygon, AABox, Point, Polygon, RotationTransform};
pub use raster::{connected_components, paste_mask, rasterize, BitMask, MaskGrid};

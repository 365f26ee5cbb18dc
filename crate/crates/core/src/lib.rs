//! Desk-scale laboratory for dense scene-text instance segmentation.
//!
//! The crate bundles the pieces needed to study mask-head behaviour on dense
//! text at laptop scale: pure geometry kernels (rasterization, polygon IoU,
//! connected components, contour extraction, polygonal NMS), a synthetic
//! dense-stripe scene generator with ICDAR-style annotation I/O, anchor
//! generation with both standard IoU-threshold and loss-ranked adaptive label
//! assignment, N×N mask-target generation under pixel-aligned and
//! instance-aware regimes, a micro mask head with four decoder variants and
//! explicit reverse-mode gradients, and an IoU-matched detection evaluation
//! harness with rotation sweeps.

pub mod assignment;
pub mod bench;
pub mod data;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod mask_head;
pub mod mask_targets;
pub mod report;

pub use error::{Error, Result};

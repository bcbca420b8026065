//! Volume, surface area and mean width of intersections of balls and of a
//! few related convex solids, with independent numerical cross-checks.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod hyperlens;
pub mod numerics;
pub mod skeleton;

pub use error::{Error, Result};
pub use geometry::{BallSet, Canonical, Direction, Measures, Point3, Sphere};

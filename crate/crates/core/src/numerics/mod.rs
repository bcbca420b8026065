//! Independent numerical checks: Monte Carlo estimators, the support
//! function, adaptive quadrature and a boundary-integral volume.

pub mod bodies;
pub mod mc;
pub mod quadrature;
pub mod support;

pub use mc::{mc_mean_width, mc_surface_area, mc_surface_area_radial, mc_volume, Estimate, McConfig};
pub use quadrature::{double_integral, Quantity, QuadratureSolid};
pub use support::support_function;

use crate::error::Result;
use crate::geometry::BallSet;
use crate::skeleton::Skeleton;

/// Volume from the divergence theorem over the face patches of the
/// skeleton. See [`Skeleton::volume`].
pub fn divergence_volume(set: &BallSet) -> Result<f64> {
    Ok(Skeleton::build(set)?.volume(set))
}

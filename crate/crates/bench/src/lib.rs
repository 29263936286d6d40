//! Shared fixtures for the benchmarks.

use polariton_core::spectrum::uniform_grid;
use polariton_core::ModelParams;

/// The default scenario on a reduced quasi-momentum grid.
pub fn scenario(zone_points: usize) -> ModelParams {
    ModelParams {
        zone_points,
        ..Default::default()
    }
}

/// Drive ratios spanning the normal phase.
pub fn drive_grid(points: usize) -> Vec<f64> {
    uniform_grid(0.0, 0.99, points)
}

//! Phonon band structure over the half Brillouin zone and the broadened
//! two-phonon densities that decide where the polariton can decay.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bogoliubov::{bogoliubov_frequency, phonon_matrix, symplectic_diagonalize};
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Plane-wave momentum carried by band `m` (sorted by energy) at `q` in (0, 1/2].
///
/// The Bogoliubov frequency grows with `|p|`, so the bands are `q`, `q - 1`, `q + 1`.
pub fn band_momentum(q: f64, band: usize) -> f64 {
    const SHIFT: [f64; 3] = [0.0, -1.0, 1.0];
    q + SHIFT[band]
}

fn transfers_one_recoil(dp: f64) -> bool {
    ((dp.abs()) - 1.0).abs() < 1e-9
}

/// Phonon `m` at `q` plus phonon `n` at `-q` carries the momentum of the `cos(kx)` mode.
pub fn beliaev_channel_allowed(m: usize, n: usize) -> bool {
    let q = 0.25;
    transfers_one_recoil(band_momentum(q, m) - band_momentum(q, n))
}

/// Scattering phonon `m` into phonon `n` at the same `q` absorbs one recoil momentum.
pub fn landau_channel_allowed(m: usize, n: usize) -> bool {
    let q = 0.25;
    n > m && transfers_one_recoil(band_momentum(q, n) - band_momentum(q, m))
}

/// Normalized Lorentzian of half-width `epsilon`.
pub fn lorentzian(x: f64, epsilon: f64) -> f64 {
    epsilon / PI / (x * x + epsilon * epsilon)
}

/// Uniform grid on (0, 1/2] with trapezoidal weights times a `q^2` density of
/// states, normalized to sum to one. The implicit `q = 0` node has zero weight.
#[derive(Debug, Clone)]
pub struct ZoneGrid {
    pub q: Vec<f64>,
    pub weights: Vec<f64>,
}

impl ZoneGrid {
    pub fn new(points: usize) -> Self {
        let h = 0.5 / points as f64;
        let q: Vec<f64> = (1..=points).map(|j| j as f64 * h).collect();
        let mut weights: Vec<f64> = q
            .iter()
            .enumerate()
            .map(|(j, &qj)| {
                let trap = if j + 1 == points { 0.5 } else { 1.0 };
                trap * qj * qj
            })
            .collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Self { q, weights }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

/// Three phonon bands on the half zone.
#[derive(Debug, Clone)]
pub struct BandStructure {
    pub q: Vec<f64>,
    /// Ascending frequencies per grid point.
    pub bands: Vec<[f64; 3]>,
    pub gn: f64,
}

/// Diagonalizes `G(q)` on every grid point of the half zone.
pub fn band_structure(p: &ModelParams) -> Result<BandStructure> {
    let grid = ZoneGrid::new(p.zone_points);
    let bands = grid
        .q
        .par_iter()
        .map(|&q| {
            let modes = symplectic_diagonalize(&phonon_matrix(q, p.gn))?.require_stable()?;
            Ok([
                modes.frequencies[0],
                modes.frequencies[1],
                modes.frequencies[2],
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BandStructure {
        q: grid.q,
        bands,
        gn: p.gn,
    })
}

/// Frequency at which the second and third bands touch (`q -> 0`): `omega_B(k)`.
pub fn band_touch_frequency(p: &ModelParams) -> f64 {
    bogoliubov_frequency(1.0, p.gn)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Sum frequencies of pairs at `(q, -q)`.
    Beliaev,
    /// Difference frequencies of pairs at `(q, q)`.
    Landau,
}

/// Broadened two-phonon density on a frequency grid.
#[derive(Debug, Clone)]
pub struct PairDensity {
    pub kind: PairKind,
    pub omega: Vec<f64>,
    pub density: Vec<f64>,
    pub epsilon: f64,
}

impl PairDensity {
    /// Grid frequency and value of the maximum.
    pub fn argmax(&self) -> (f64, f64) {
        self.omega
            .iter()
            .zip(&self.density)
            .fold((f64::NAN, f64::NEG_INFINITY), |best, (&w, &d)| {
                if d > best.1 {
                    (w, d)
                } else {
                    best
                }
            })
    }
}

/// Pair energies `(weight, energy)` of every momentum-allowed channel.
pub fn pair_energies(bands: &BandStructure, weights: &[f64], kind: PairKind) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (w, b) in weights.iter().zip(&bands.bands) {
        for m in 0..3 {
            for n in 0..3 {
                match kind {
                    PairKind::Beliaev if beliaev_channel_allowed(m, n) => {
                        out.push((*w, b[m] + b[n]))
                    }
                    PairKind::Landau if landau_channel_allowed(m, n) => {
                        out.push((*w, b[n] - b[m]))
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Two-phonon density `sum_channels int w(q) delta_eps(omega - E(q)) dq`.
pub fn pair_density(p: &ModelParams, kind: PairKind, omega: &[f64]) -> Result<PairDensity> {
    if p.epsilon <= 0.0 {
        return Err(Error::InvalidParameter {
            rule: "epsilon",
            reason: "epsilon must be positive".into(),
        });
    }
    let bands = band_structure(p)?;
    let grid = ZoneGrid::new(p.zone_points);
    let pairs = pair_energies(&bands, &grid.weights, kind);
    let density = omega
        .par_iter()
        .map(|&w| {
            pairs
                .iter()
                .map(|&(weight, e)| weight * lorentzian(w - e, p.epsilon))
                .sum()
        })
        .collect();
    Ok(PairDensity {
        kind,
        omega: omega.to_vec(),
        density,
        epsilon: p.epsilon,
    })
}

/// `n` uniform points on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

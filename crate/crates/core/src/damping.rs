//! Golden-rule damping of the soft polariton.
//!
//! The phonon bath (band frequencies, occupations and phonon-leg contractions
//! of the cubic vertex) does not depend on the drive, so [`DampingSolver`]
//! builds it once and each drive value only costs one 8x8 diagonalization and
//! a contraction of the polariton leg per grid point.
//!
//! Rates sum over the `length / 2` Bloch sectors of the half zone, replaced by
//! the normalized weights of [`ZoneGrid`]:
//!
//! ```text
//! gamma_B = 2 pi (length/2) sum_q w(q) sum_{m,n} |M_B[m][n]|^2 delta_eps(w_s - w_m - w_n) (1 + n_m + n_n)
//! gamma_L = 2 pi (length/2) sum_q w(q) sum_{m<n} (|M_L+|^2 + |M_L-|^2) delta_eps(w_s + w_m - w_n) (n_m - n_n)
//! ```

use rayon::prelude::*;

use crate::bogoliubov::{build_polariton_matrix, phonon_matrix, symplectic_diagonalize, ModeSet};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectrum::{beliaev_channel_allowed, landau_channel_allowed, lorentzian, ZoneGrid};
use crate::vertices::{
    build_cubic_tensor, contract_phonon_legs, contract_polariton_leg, identify_soft_mode,
    soft_leg, PhononLegs, POLARITON_DIM,
};
use crate::C64;

/// Bose-Einstein occupation `1 / (exp(omega / t) - 1)`, zero at `t = 0`.
pub fn thermal_occupation(omega: f64, t: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::NonPositiveFrequency(omega));
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega / t).exp_m1())
}

/// One point of a drive sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingPoint {
    pub eta_over_etac: f64,
    pub omega_soft: f64,
    pub gamma_landau: f64,
    pub gamma_beliaev: f64,
    pub temperature: f64,
    pub epsilon: f64,
    /// False when the point failed (instability or soft-mode identification);
    /// the numeric fields are then NaN.
    pub stable: bool,
}

type Partial = [[[C64; 3]; 3]; POLARITON_DIM];

/// Drive-independent data of one quasi-momentum.
#[derive(Debug, Clone)]
struct BathPoint {
    weight: f64,
    freq: [f64; 3],
    occ: [f64; 3],
    /// `[beliaev, landau_plus, landau_minus]` with the phonon legs contracted.
    contact: [Partial; 3],
    drive: [Partial; 3],
}

fn bath_point(q: f64, weight: f64, p: &ModelParams) -> Result<BathPoint> {
    let phonons = symplectic_diagonalize(&phonon_matrix(q, p.gn))?.require_stable()?;
    let t = build_cubic_tensor(q, p)?;
    let legs = PhononLegs::new(&phonons.transform);
    let pairs = [
        (&legs.create_plus, &legs.create_minus),
        (&legs.create_plus, &legs.destroy_plus),
        (&legs.destroy_minus, &legs.create_minus),
    ];
    let freq = [
        phonons.frequencies[0],
        phonons.frequencies[1],
        phonons.frequencies[2],
    ];
    let occ = [
        thermal_occupation(freq[0], p.temperature)?,
        thermal_occupation(freq[1], p.temperature)?,
        thermal_occupation(freq[2], p.temperature)?,
    ];
    Ok(BathPoint {
        weight,
        freq,
        occ,
        contact: pairs.map(|(l, r)| contract_phonon_legs(&t.contact, l, r)),
        drive: pairs.map(|(l, r)| contract_phonon_legs(&t.drive_unit, l, r)),
    })
}

/// Landau and Beliaev rates for one parameter set at arbitrary drive.
///
/// `eta` in the stored parameters is ignored; the drive enters through the
/// ratio passed to [`DampingSolver::point`].
#[derive(Debug, Clone)]
pub struct DampingSolver {
    params: ModelParams,
    bath: Vec<BathPoint>,
}

impl DampingSolver {
    pub fn new(p: &ModelParams) -> Result<Self> {
        let params = p.clone().validate()?;
        let grid = ZoneGrid::new(params.zone_points);
        let bath = grid
            .q
            .par_iter()
            .zip(grid.weights.par_iter())
            .map(|(&q, &w)| bath_point(q, w, &params))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { params, bath })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Soft polariton mode set and index at drive `ratio * eta_c`.
    pub fn polariton(&self, ratio: f64) -> Result<(ModeSet, usize)> {
        let p = self.params.with_drive_ratio(ratio);
        let pol = symplectic_diagonalize(&build_polariton_matrix(&p))?;
        let soft = identify_soft_mode(&pol)?;
        Ok((pol, soft))
    }

    /// Rates at drive `ratio * eta_c`.
    pub fn point(&self, ratio: f64) -> Result<DampingPoint> {
        let (pol, soft) = self.polariton(ratio)?;
        let omega = pol.frequencies[soft];
        let leg = soft_leg(&pol, soft);
        let p = &self.params;
        let lambda = if p.drive_vertex {
            p.with_drive_ratio(ratio).photon_coupling()
        } else {
            0.0
        };
        let scale = 1.0 / p.n_c;
        let eps = p.epsilon;

        let mut beliaev = 0.0;
        let mut landau = 0.0;
        for b in &self.bath {
            let amp = |channel: usize| {
                let c = contract_polariton_leg(&b.contact[channel], &leg);
                let d = contract_polariton_leg(&b.drive[channel], &leg);
                let mut out = [[0.0; 3]; 3];
                for m in 0..3 {
                    for n in 0..3 {
                        out[m][n] = (c[m][n] + d[m][n] * lambda).norm_sqr() * scale;
                    }
                }
                out
            };
            let mb = amp(0);
            let mut sum_b = 0.0;
            for m in 0..3 {
                for n in 0..3 {
                    if beliaev_channel_allowed(m, n) {
                        let detuning = omega - b.freq[m] - b.freq[n];
                        sum_b += mb[m][n]
                            * lorentzian(detuning, eps)
                            * (1.0 + b.occ[m] + b.occ[n]);
                    }
                }
            }
            beliaev += b.weight * sum_b;

            if p.temperature > 0.0 {
                let (lp, lm) = (amp(1), amp(2));
                let mut sum_l = 0.0;
                for m in 0..3 {
                    for n in 0..3 {
                        if landau_channel_allowed(m, n) {
                            let detuning = omega + b.freq[m] - b.freq[n];
                            // lp is indexed (created, destroyed)
                            let c = (lp[n][m] + lm[m][n])
                                * lorentzian(detuning, eps)
                                * (b.occ[m] - b.occ[n]);
                            sum_l += c.max(0.0);
                        }
                    }
                }
                landau += b.weight * sum_l;
            }
        }
        let prefactor = 2.0 * std::f64::consts::PI * p.length / 2.0;
        Ok(DampingPoint {
            eta_over_etac: ratio,
            omega_soft: omega,
            gamma_landau: prefactor * landau,
            gamma_beliaev: prefactor * beliaev,
            temperature: p.temperature,
            epsilon: p.epsilon,
            stable: true,
        })
    }

    fn failed(&self, ratio: f64) -> DampingPoint {
        DampingPoint {
            eta_over_etac: ratio,
            omega_soft: f64::NAN,
            gamma_landau: f64::NAN,
            gamma_beliaev: f64::NAN,
            temperature: self.params.temperature,
            epsilon: self.params.epsilon,
            stable: false,
        }
    }

    /// Evaluates every ratio in parallel; results keep the grid order.
    ///
    /// Points whose polariton sector is unstable or has no identifiable soft
    /// mode are returned with `stable = false` instead of aborting.
    pub fn sweep(&self, ratios: &[f64]) -> Result<Vec<DampingPoint>> {
        if let Some(&bad) = ratios.iter().find(|r| !(**r >= 0.0 && **r < 1.0)) {
            return Err(Error::EtaGrid(bad));
        }
        Ok(ratios
            .par_iter()
            .map(|&r| match self.point(r) {
                Ok(pt) => pt,
                Err(_) => self.failed(r),
            })
            .collect())
    }
}

/// Beliaev rate at the drive stored in `p`.
pub fn beliaev_rate(p: &ModelParams) -> Result<f64> {
    Ok(DampingSolver::new(p)?.point(p.drive_ratio())?.gamma_beliaev)
}

/// Landau rate at the drive stored in `p`.
pub fn landau_rate(p: &ModelParams) -> Result<f64> {
    Ok(DampingSolver::new(p)?.point(p.drive_ratio())?.gamma_landau)
}

/// Sweeps the drive over `ratios` (values of `eta / eta_c` in `[0, 1)`).
pub fn sweep_eta(p: &ModelParams, ratios: &[f64]) -> Result<Vec<DampingPoint>> {
    DampingSolver::new(p)?.sweep(ratios)
}

/// Soft polariton frequency at the drive stored in `p`.
pub fn soft_mode_frequency(p: &ModelParams) -> Result<f64> {
    let pol = symplectic_diagonalize(&build_polariton_matrix(p))?;
    let soft = identify_soft_mode(&pol)?;
    Ok(pol.frequencies[soft])
}

/// Drive at which the soft polariton frequency reaches zero, found by
/// bisection on the stability of the polariton sector.
///
/// Returns the collective drive `eta` (not the ratio), to relative precision `rel_tol`.
pub fn locate_threshold(p: &ModelParams, rel_tol: f64) -> Result<f64> {
    let p = p.clone().validate()?;
    let below = |eta: f64| {
        let q = ModelParams { eta, ..p.clone() };
        soft_mode_frequency(&q).is_ok()
    };
    let mut lo = 0.0;
    let mut hi = p.critical_coupling().max(1e-12);
    while below(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::NonConvergence { dim: 8 });
        }
    }
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

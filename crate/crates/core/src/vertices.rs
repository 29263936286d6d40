//! Cubic couplings between one polariton-sector leg and two phonon legs.
//!
//! The cubic Hamiltonian of the Bloch-sector pair `(q, -q)`, `q > 0`, is
//!
//! ```text
//! H3 = 1/sqrt(N_c) * sum_{mu, alpha, beta} T[mu][alpha][beta] v_mu w_alpha(q)^dag w_beta(q)
//! ```
//!
//! with `v` the polariton vector and `w(q)` the phonon vector of
//! [`crate::bogoliubov`]. Two sources contribute: the contact interaction with
//! one condensate leg (coefficient `gn`) and the fluctuation part of the
//! cavity drive `eta (a + a^dag) int Psi^dag cos(kx) Psi`.
//!
//! Terms with all legs in the `q = 0` sector couple no continuum and are not
//! built; three-phonon terms are summarized by the linewidth `epsilon`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::bogoliubov::{phonon_bloch_rotation, polariton_bloch_rotation, ModeSet, BAND_OFFSETS};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::{CMatrix, C64};

/// Polariton-sector legs: 8 slots of the polariton vector.
pub const POLARITON_DIM: usize = 8;
/// Phonon-sector legs: 6 slots of the phonon vector.
pub const PHONON_DIM: usize = 6;

/// Dense `8 x 6 x 6` array.
pub type Tensor3 = [[[C64; PHONON_DIM]; PHONON_DIM]; POLARITON_DIM];

const ZERO: C64 = C64::new(0.0, 0.0);

fn zero_tensor() -> Tensor3 {
    [[[ZERO; PHONON_DIM]; PHONON_DIM]; POLARITON_DIM]
}

/// Bare plane-wave operator of the truncated model.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Photon { dagger: bool },
    /// Atomic plane wave of momentum `offset + sector * q`.
    Atom {
        sector: i8,
        offset: i8,
        dagger: bool,
    },
}

/// Atomic modes of the three sectors, as `(sector, offset)`.
fn atomic_modes() -> Vec<(i8, i8)> {
    let mut out = Vec::with_capacity(9);
    for sector in [0i8, 1, -1] {
        for n in BAND_OFFSETS {
            // the -q sector lists its plane waves as partners of the +q ones
            let offset = if sector == -1 { -n } else { n };
            out.push((sector, offset as i8));
        }
    }
    out
}

/// Slot of a `q = 0` sector operator in the plane-wave polariton vector.
fn polariton_slot(op: Op) -> Option<usize> {
    match op {
        Op::Photon { dagger } => Some(dagger as usize),
        Op::Atom {
            sector: 0,
            offset,
            dagger,
        } => {
            let idx = BAND_OFFSETS.iter().position(|&n| n as i8 == offset)?;
            Some(2 * (idx + 1) + dagger as usize)
        }
        _ => None,
    }
}

enum PhononSlot {
    /// Appears as `w_alpha^dag`.
    Left(usize),
    /// Appears as `w_beta`.
    Right(usize),
}

fn phonon_slot(op: Op) -> Option<PhononSlot> {
    let Op::Atom {
        sector,
        offset,
        dagger,
    } = op
    else {
        return None;
    };
    match sector {
        1 => {
            let j = BAND_OFFSETS.iter().position(|&n| n as i8 == offset)?;
            Some(if dagger {
                PhononSlot::Left(2 * j)
            } else {
                PhononSlot::Right(2 * j)
            })
        }
        -1 => {
            let j = BAND_OFFSETS.iter().position(|&n| -n as i8 == offset)?;
            Some(if dagger {
                PhononSlot::Right(2 * j + 1)
            } else {
                PhononSlot::Left(2 * j + 1)
            })
        }
        _ => None,
    }
}

/// Adds `coefficient * o1 o2 o3` if it has exactly one polariton leg and two phonon legs.
fn accumulate(tensor: &mut Tensor3, coefficient: C64, ops: [Op; 3]) -> bool {
    let pol: Vec<usize> = ops.iter().filter_map(|&o| polariton_slot(o)).collect();
    if pol.len() != 1 {
        return false;
    }
    let mut left = None;
    let mut right = None;
    for &o in &ops {
        match phonon_slot(o) {
            Some(PhononSlot::Left(i)) => {
                assert!(left.replace(i).is_none(), "two creation-type phonon legs");
            }
            Some(PhononSlot::Right(j)) => {
                assert!(right.replace(j).is_none(), "two annihilation-type phonon legs");
            }
            None => {}
        }
    }
    match (left, right) {
        (Some(i), Some(j)) => {
            tensor[pol[0]][i][j] += coefficient;
            true
        }
        _ => false,
    }
}

fn conserves(p1: (i8, i8), p2: (i8, i8), p3: (i8, i8)) -> bool {
    p1.0 + p2.0 == p3.0 && p1.1 + p2.1 == p3.1
}

/// Contact vertex in the plane-wave basis, without the `1/sqrt(N_c)` prefactor.
///
/// `(g sqrt(N_c) / L) sum_{p1 + p2 = p3} (a^dag_{p1} a^dag_{p2} a_{p3} + h.c.)`.
fn contact_plane_wave(gn: f64) -> Tensor3 {
    let mut t = zero_tensor();
    let modes = atomic_modes();
    let c = C64::from(gn);
    let atom = |(sector, offset): (i8, i8), dagger| Op::Atom {
        sector,
        offset,
        dagger,
    };
    for &p1 in &modes {
        for &p2 in &modes {
            for &p3 in &modes {
                if !conserves(p1, p2, p3) {
                    continue;
                }
                accumulate(&mut t, c, [atom(p1, true), atom(p2, true), atom(p3, false)]);
                accumulate(&mut t, c, [atom(p3, true), atom(p2, false), atom(p1, false)]);
            }
        }
    }
    t
}

/// Drive vertex in the plane-wave basis for unit photon coupling.
///
/// `(1/sqrt2) (a + a^dag) sum_p (a^dag_{p+1} a_p + a^dag_p a_{p+1})` over phonon modes.
fn drive_plane_wave() -> Tensor3 {
    let mut t = zero_tensor();
    let c = C64::from(FRAC_1_SQRT_2);
    let phonons: Vec<(i8, i8)> = atomic_modes().into_iter().filter(|m| m.0 != 0).collect();
    for &(s, n) in &phonons {
        for &(s2, n2) in &phonons {
            if s2 != s || n2 != n + 1 {
                continue;
            }
            for dagger in [false, true] {
                let photon = Op::Photon { dagger };
                let up = |d| Op::Atom {
                    sector: s,
                    offset: n2,
                    dagger: d,
                };
                let down = |d| Op::Atom {
                    sector: s,
                    offset: n,
                    dagger: d,
                };
                accumulate(&mut t, c, [photon, up(true), down(false)]);
                accumulate(&mut t, c, [photon, down(true), up(false)]);
            }
        }
    }
    t
}

/// Rotates all three legs: `T'[k][i][j] = sum T[mu][a][b] conj(R0[k][mu]) R[i][a] conj(R[j][b])`.
fn rotate(t: &Tensor3, r0: &CMatrix, r: &CMatrix) -> Tensor3 {
    let mut first = zero_tensor();
    for k in 0..POLARITON_DIM {
        for mu in 0..POLARITON_DIM {
            let c = r0[(k, mu)].conj();
            if c == ZERO {
                continue;
            }
            for a in 0..PHONON_DIM {
                for b in 0..PHONON_DIM {
                    first[k][a][b] += c * t[mu][a][b];
                }
            }
        }
    }
    let mut second = zero_tensor();
    for k in 0..POLARITON_DIM {
        for i in 0..PHONON_DIM {
            for a in 0..PHONON_DIM {
                let c = r[(i, a)];
                if c == ZERO {
                    continue;
                }
                for b in 0..PHONON_DIM {
                    second[k][i][b] += c * first[k][a][b];
                }
            }
        }
    }
    let mut out = zero_tensor();
    for k in 0..POLARITON_DIM {
        for i in 0..PHONON_DIM {
            for j in 0..PHONON_DIM {
                out[k][i][j] = (0..PHONON_DIM)
                    .map(|b| second[k][i][b] * r[(j, b)].conj())
                    .sum();
            }
        }
    }
    out
}

/// Cubic coupling of the sector pair `(q, -q)`.
#[derive(Debug, Clone)]
pub struct VertexTensor {
    pub q: f64,
    /// Contact part, Bloch basis.
    pub contact: Tensor3,
    /// Drive part for unit photon coupling, Bloch basis.
    pub drive_unit: Tensor3,
    /// Photon coupling multiplying `drive_unit` (zero when the drive vertex is disabled).
    pub drive_coupling: f64,
    /// `1 / sqrt(N_c)`.
    pub prefactor: f64,
    contact_pw: Tensor3,
    drive_pw: Tensor3,
}

/// Builds the cubic tensor for `q` in (0, 1/2].
///
/// The coefficients do not depend on `q` (momentum conservation fixes the
/// sparsity pattern); `q` only labels the sector.
pub fn build_cubic_tensor(q: f64, p: &ModelParams) -> Result<VertexTensor> {
    if !(q > 0.0 && q <= 0.5) {
        return Err(Error::QuasiMomentumOutOfRange { q });
    }
    let contact_pw = contact_plane_wave(p.gn);
    let drive_pw = drive_plane_wave();
    let r0 = polariton_bloch_rotation();
    let r = phonon_bloch_rotation();
    Ok(VertexTensor {
        q,
        contact: rotate(&contact_pw, &r0, &r),
        drive_unit: rotate(&drive_pw, &r0, &r),
        drive_coupling: if p.drive_vertex {
            p.photon_coupling()
        } else {
            0.0
        },
        prefactor: 1.0 / p.n_c.sqrt(),
        contact_pw,
        drive_pw,
    })
}

impl VertexTensor {
    /// Combined Bloch-basis amplitude, without the `1/sqrt(N_c)` prefactor.
    pub fn entry(&self, mu: usize, alpha: usize, beta: usize) -> C64 {
        self.contact[mu][alpha][beta] + self.drive_unit[mu][alpha][beta] * self.drive_coupling
    }

    /// Combined plane-wave-basis amplitude, without the prefactor.
    pub fn plane_wave_entry(&self, mu: usize, alpha: usize, beta: usize) -> C64 {
        self.contact_pw[mu][alpha][beta] + self.drive_pw[mu][alpha][beta] * self.drive_coupling
    }

    /// Largest violation of `T[mu~][beta][alpha] = conj(T[mu][alpha][beta])`,
    /// where `mu~` is the Hermitian partner slot of `mu`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..POLARITON_DIM {
            for a in 0..PHONON_DIM {
                for b in 0..PHONON_DIM {
                    let d = self.entry(mu ^ 1, b, a) - self.entry(mu, a, b).conj();
                    worst = worst.max(d.norm());
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..POLARITON_DIM {
            for a in 0..PHONON_DIM {
                for b in 0..PHONON_DIM {
                    worst = worst.max(self.entry(mu, a, b).norm());
                }
            }
        }
        worst
    }
}

/// Decay matrix elements of the soft polariton at one `q`, including `1/sqrt(N_c)`.
#[derive(Debug, Clone)]
pub struct DecayAmplitudes {
    pub q: f64,
    /// `beliaev[m][n]`: polariton -> phonon `m` at `q` + phonon `n` at `-q`.
    pub beliaev: [[C64; 3]; 3],
    /// `landau_plus[m][n]`: polariton + phonon `m` at `q` -> phonon `n` at `q`.
    pub landau_plus: [[C64; 3]; 3],
    /// Same at `-q`.
    pub landau_minus: [[C64; 3]; 3],
}

/// Weight of the photon and `c0` components in column `col`.
pub fn photon_c0_weight(u: &CMatrix, col: usize) -> f64 {
    [0usize, 1, 4, 5].iter().map(|&r| u[(r, col)].norm_sqr()).sum()
}

/// Index of the soft polariton: the lowest mode with photon or `c0` character.
///
/// Fails if that mode is a zero mode.
pub fn identify_soft_mode(pol: &ModeSet) -> Result<usize> {
    if !pol.stable {
        return Err(Error::DynamicalInstability {
            growth_rate: pol.growth_rate,
        });
    }
    let weights: Vec<f64> = (0..pol.modes())
        .map(|n| photon_c0_weight(&pol.transform, pol.mode_column(n)))
        .collect();
    let mut best: Option<usize> = None;
    for n in 0..pol.modes() {
        if weights[n] < 1e-6 {
            continue;
        }
        best = match best {
            None => Some(n),
            Some(b) => {
                let (wb, wn) = (pol.frequencies[b], pol.frequencies[n]);
                let tie = (wn - wb).abs() <= 1e-8 * wb.max(1.0);
                if tie && weights[n] > weights[b] {
                    Some(n)
                } else {
                    Some(b)
                }
            }
        };
    }
    let soft = best.ok_or_else(|| {
        Error::SoftModeIdentification("no mode with photon or c0 weight".into())
    })?;
    if pol.is_zero_mode(soft) || pol.frequencies[soft] <= 0.0 {
        return Err(Error::SoftModeIdentification(
            "soft mode coincides with a zero mode".into(),
        ));
    }
    Ok(soft)
}

/// Polariton leg coefficients of the annihilation operator of mode `soft`.
pub fn soft_leg(pol: &ModeSet, soft: usize) -> [C64; POLARITON_DIM] {
    let col = pol.mode_column(soft);
    std::array::from_fn(|k| pol.transform[(k, col)])
}

/// Partially contracted vertex `K[k][m][n] = sum_{i,j} T[k][i][j] L[i][m] R[j][n]`.
pub fn contract_phonon_legs(
    t: &Tensor3,
    left: &[[C64; 3]; PHONON_DIM],
    right: &[[C64; 3]; PHONON_DIM],
) -> [[[C64; 3]; 3]; POLARITON_DIM] {
    let mut out = [[[ZERO; 3]; 3]; POLARITON_DIM];
    for k in 0..POLARITON_DIM {
        let mut half = [[ZERO; 3]; PHONON_DIM];
        for i in 0..PHONON_DIM {
            for j in 0..PHONON_DIM {
                let tij = t[k][i][j];
                if tij == ZERO {
                    continue;
                }
                for n in 0..3 {
                    half[i][n] += tij * right[j][n];
                }
            }
        }
        for m in 0..3 {
            for n in 0..3 {
                out[k][m][n] = (0..PHONON_DIM).map(|i| left[i][m] * half[i][n]).sum();
            }
        }
    }
    out
}

/// Phonon-leg factors of the three decay channels of one sector.
pub struct PhononLegs {
    /// `conj(U[i][2m])`: creates phonon `m` at `q` (left slot).
    pub create_plus: [[C64; 3]; PHONON_DIM],
    /// `U[j][2n+1]`: creates phonon `n` at `-q` (right slot).
    pub create_minus: [[C64; 3]; PHONON_DIM],
    /// `U[j][2m]`: annihilates phonon `m` at `q` (right slot).
    pub destroy_plus: [[C64; 3]; PHONON_DIM],
    /// `conj(U[i][2m+1])`: annihilates phonon `m` at `-q` (left slot).
    pub destroy_minus: [[C64; 3]; PHONON_DIM],
}

impl PhononLegs {
    pub fn new(u: &CMatrix) -> Self {
        Self {
            create_plus: std::array::from_fn(|i| std::array::from_fn(|m| u[(i, 2 * m)].conj())),
            create_minus: std::array::from_fn(|j| std::array::from_fn(|n| u[(j, 2 * n + 1)])),
            destroy_plus: std::array::from_fn(|j| std::array::from_fn(|m| u[(j, 2 * m)])),
            destroy_minus: std::array::from_fn(|i| {
                std::array::from_fn(|m| u[(i, 2 * m + 1)].conj())
            }),
        }
    }
}

/// Contracts the polariton leg of a partially contracted vertex.
pub fn contract_polariton_leg(
    k: &[[[C64; 3]; 3]; POLARITON_DIM],
    leg: &[C64; POLARITON_DIM],
) -> [[C64; 3]; 3] {
    let mut out = [[ZERO; 3]; 3];
    for (kk, l) in k.iter().zip(leg) {
        if *l == ZERO {
            continue;
        }
        for m in 0..3 {
            for n in 0..3 {
                out[m][n] += kk[m][n] * l;
            }
        }
    }
    out
}

fn transpose3(m: [[C64; 3]; 3]) -> [[C64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

fn combined_bloch(t: &VertexTensor) -> Tensor3 {
    std::array::from_fn(|k| std::array::from_fn(|i| std::array::from_fn(|j| t.entry(k, i, j))))
}

/// Decay amplitudes of the soft polariton for one `q`.
///
/// `phonons` is the mode set of `G(q)`; its partner columns describe the
/// phonons at `-q`.
pub fn to_decay_amplitudes(
    t: &VertexTensor,
    pol: &ModeSet,
    phonons: &ModeSet,
) -> Result<DecayAmplitudes> {
    let soft = identify_soft_mode(pol)?;
    if !phonons.stable {
        return Err(Error::DynamicalInstability {
            growth_rate: phonons.growth_rate,
        });
    }
    let leg = soft_leg(pol, soft);
    let legs = PhononLegs::new(&phonons.transform);
    let tensor = combined_bloch(t);
    let scale = C64::from(t.prefactor);
    let amp = |left, right| {
        let k = contract_phonon_legs(&tensor, left, right);
        contract_polariton_leg(&k, &leg).map(|row| row.map(|z| z * scale))
    };
    Ok(DecayAmplitudes {
        q: t.q,
        beliaev: amp(&legs.create_plus, &legs.create_minus),
        // K[m][n] here has m = created band, n = destroyed band
        landau_plus: transpose3(amp(&legs.create_plus, &legs.destroy_plus)),
        landau_minus: amp(&legs.destroy_minus, &legs.create_minus),
    })
}

/// Same amplitudes, contracted in the plane-wave basis after rotating the
/// quasi-particle vectors back; used as a cross-check of the Bloch route.
pub fn to_decay_amplitudes_plane_wave(
    t: &VertexTensor,
    pol: &ModeSet,
    phonons: &ModeSet,
) -> Result<DecayAmplitudes> {
    let soft = identify_soft_mode(pol)?;
    let u_pol = polariton_bloch_rotation().adjoint() * &pol.transform;
    let u_ph = phonon_bloch_rotation().adjoint() * &phonons.transform;
    let col = pol.mode_column(soft);
    let scale = t.prefactor;
    let mut beliaev = [[ZERO; 3]; 3];
    let mut landau_plus = [[ZERO; 3]; 3];
    let mut landau_minus = [[ZERO; 3]; 3];
    for mu in 0..POLARITON_DIM {
        let s = u_pol[(mu, col)];
        for a in 0..PHONON_DIM {
            for b in 0..PHONON_DIM {
                let e = t.plane_wave_entry(mu, a, b) * s * scale;
                if e == ZERO {
                    continue;
                }
                for m in 0..3 {
                    for n in 0..3 {
                        beliaev[m][n] += e * u_ph[(a, 2 * m)].conj() * u_ph[(b, 2 * n + 1)];
                        landau_plus[m][n] += e * u_ph[(a, 2 * n)].conj() * u_ph[(b, 2 * m)];
                        landau_minus[m][n] +=
                            e * u_ph[(a, 2 * m + 1)].conj() * u_ph[(b, 2 * n + 1)];
                    }
                }
            }
        }
    }
    Ok(DecayAmplitudes {
        q: t.q,
        beliaev,
        landau_plus,
        landau_minus,
    })
}

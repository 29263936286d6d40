//! Quadratic (Bogoliubov) dynamics of the polariton and phonon sectors.
//!
//! A quadratic form is stored as its dynamical matrix `D` acting on an
//! interleaved doubled vector `(o_1, p_1^dag, o_2, p_2^dag, ...)`, so that
//! `i d/dt v = D v`. The Bogoliubov metric is `sigma = diag(+1, -1, +1, ...)`
//! and `sigma * D` is Hermitian.
//!
//! Polariton sector ordering (bare Bloch basis):
//! `(a, a^dag, b0, b0^dag, c0, c0^dag, s0, s0^dag)`.
//! Phonon sector ordering for quasi-momentum `q`:
//! `(b_q, b_{-q}^dag, c_q, c_{-q}^dag, s_q, s_{-q}^dag)`.
//!
//! Bloch modes are built from plane waves as
//! `c_q = (a_{q+1} + a_{q-1}) / sqrt2` and `s_q = i (a_{q+1} - a_{q-1}) / sqrt2`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Cholesky, Schur, SymmetricEigen};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::{CMatrix, C64};

/// Plane-wave momentum offsets of the three Bloch bands, in units of `k`.
pub const BAND_OFFSETS: [f64; 3] = [0.0, 1.0, -1.0];

/// Imaginary part beyond which a frequency counts as complex.
pub const INSTABILITY_TOL: f64 = 1e-9;
/// Absolute tolerance for matching `+omega` with `-omega`.
pub const PAIRING_TOL: f64 = 1e-9;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Free-particle energy of momentum `p` (units of `k`).
pub fn kinetic(p: f64) -> f64 {
    p * p
}

/// Homogeneous Bogoliubov frequency `sqrt(e_p (e_p + 2 gn))`.
pub fn bogoliubov_frequency(p: f64, gn: f64) -> f64 {
    let e = kinetic(p);
    (e * (e + 2.0 * gn)).sqrt()
}

/// Dynamical matrix of the plane-wave pair `(a_p, a_{-p}^dag)` of a homogeneous condensate.
pub fn plane_wave_bogoliubov_block(p: f64, gn: f64) -> [[C64; 2]; 2] {
    let diag = kinetic(p) + gn;
    [
        [C64::new(diag, 0.0), C64::new(gn, 0.0)],
        [C64::new(-gn, 0.0), C64::new(-diag, 0.0)],
    ]
}

#[inline]
fn metric(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A quadratic bosonic form represented by its dynamical matrix.
///
/// Forms built from a kinetic and an interaction part keep both, so that
/// `A - |B|` of an isolated mode is free of cancellation at small momenta.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    matrix: CMatrix,
    parts: Option<(CMatrix, CMatrix)>,
}

impl QuadraticForm {
    pub fn new(matrix: CMatrix) -> Self {
        assert!(
            matrix.is_square() && matrix.nrows().is_multiple_of(2),
            "dynamical matrix must be square with even dimension"
        );
        Self {
            matrix,
            parts: None,
        }
    }

    /// Sum of a kinetic form (no anomalous terms) and an interaction form.
    pub fn from_parts(kinetic: &QuadraticForm, interaction: &QuadraticForm) -> Self {
        let mut form = Self::new(&kinetic.matrix + &interaction.matrix);
        form.parts = Some((kinetic.matrix.clone(), interaction.matrix.clone()));
        form
    }

    /// Assembles the dynamical matrix from the Hamiltonian
    /// `sum A_ij o_i^dag o_j + sum A'_ij p_i^dag p_j + sum (B_ij o_i^dag p_j^dag + h.c.)`.
    ///
    /// For a self-paired sector (`p_i = o_i`) pass `a_partner = a` and a
    /// symmetric `b`; the Hamiltonian is then read with a factor 1/2 on the
    /// anomalous term.
    pub fn from_blocks(a: &CMatrix, a_partner: &CMatrix, b: &CMatrix) -> Self {
        let m = a.nrows();
        let mut d = CMatrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                d[(2 * i, 2 * j)] = a[(i, j)];
                d[(2 * i, 2 * j + 1)] = b[(i, j)];
                d[(2 * i + 1, 2 * j)] = -b[(j, i)].conj();
                d[(2 * i + 1, 2 * j + 1)] = -a_partner[(j, i)];
            }
        }
        Self::new(d)
    }

    /// Number of modes `M` (the matrix is `2M x 2M`).
    pub fn modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `sigma * D`, the Bogoliubov-de Gennes Hamiltonian matrix.
    pub fn hamiltonian(&self) -> CMatrix {
        let mut h = self.matrix.clone();
        for (i, mut row) in h.row_iter_mut().enumerate() {
            row *= C64::from(metric(i));
        }
        h
    }

    /// Largest deviation of `sigma * D` from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let h = self.hamiltonian();
        (&h - h.adjoint()).camax()
    }

    /// `tau conj(D) tau`, where `tau` swaps each annihilation slot with its creation partner.
    pub fn particle_hole_image(&self) -> CMatrix {
        let n = self.matrix.nrows();
        let swap = |i: usize| i ^ 1;
        CMatrix::from_fn(n, n, |i, j| self.matrix[(swap(i), swap(j))].conj())
    }

    /// Applies a basis change `v' = T v` that maps annihilation slots onto annihilation slots.
    pub fn rotated(&self, t: &CMatrix) -> Self {
        let mut form = Self::new(t * &self.matrix * t.adjoint());
        form.parts = self
            .parts
            .as_ref()
            .map(|(k, i)| (t * k * t.adjoint(), t * i * t.adjoint()));
        form
    }

    /// `A - |B|` of mode `m`, accurate when `m` is uncoupled from all others.
    fn single_mode_gap(&self, m: usize) -> f64 {
        let r = 2 * m;
        match &self.parts {
            Some((k, i)) => k[(r, r)].re + (i[(r, r)].re - i[(r, r + 1)].norm()),
            None => self.matrix[(r, r)].re - self.matrix[(r, r + 1)].norm(),
        }
    }
}

/// Quasi-particles of one sector.
///
/// `transform` maps quasi-particle operators to bare operators,
/// `v = U Gamma`, with `Gamma = (gamma_1, gamma~_1^dag, gamma_2, ...)`:
/// column `2n` is the positive-frequency mode `n` and column `2n + 1` its
/// negative-frequency partner.
#[derive(Debug, Clone)]
pub struct ModeSet {
    /// Mode frequencies, ascending.
    pub frequencies: Vec<f64>,
    pub transform: CMatrix,
    pub stable: bool,
    /// Largest imaginary part found (zero when stable).
    pub growth_rate: f64,
    /// Indices of zero-frequency (Goldstone-like) modes, whose columns are not normal modes.
    pub zero_modes: Vec<usize>,
}

impl ModeSet {
    pub fn modes(&self) -> usize {
        self.frequencies.len()
    }

    /// Column of `transform` holding the positive-frequency mode `n`.
    pub fn mode_column(&self, n: usize) -> usize {
        2 * n
    }

    /// Column holding the partner of mode `n`.
    pub fn partner_column(&self, n: usize) -> usize {
        2 * n + 1
    }

    pub fn is_zero_mode(&self, n: usize) -> bool {
        self.zero_modes.contains(&n)
    }

    /// Largest deviation of `U^dag sigma U` from `sigma`.
    pub fn symplectic_defect(&self) -> f64 {
        let u = &self.transform;
        let mut su = u.clone();
        for (i, mut row) in su.row_iter_mut().enumerate() {
            row *= C64::from(metric(i));
        }
        let mut g = u.adjoint() * su;
        for i in 0..g.nrows() {
            g[(i, i)] -= C64::from(metric(i));
        }
        g.camax()
    }

    /// Converts an unstable result into an error.
    pub fn require_stable(self) -> Result<Self> {
        if self.stable {
            Ok(self)
        } else {
            Err(Error::DynamicalInstability {
                growth_rate: self.growth_rate,
            })
        }
    }
}

/// Plane-wave to Bloch rotation of a phonon sector (independent of `q`).
///
/// Maps `(a_q, a_{-q}^dag, a_{q+1}, a_{-q-1}^dag, a_{q-1}, a_{-q+1}^dag)` onto
/// `(b_q, b_{-q}^dag, c_q, c_{-q}^dag, s_q, s_{-q}^dag)`.
pub fn phonon_bloch_rotation() -> CMatrix {
    let r = FRAC_1_SQRT_2;
    let mut t = CMatrix::zeros(6, 6);
    t[(0, 0)] = C64::new(1.0, 0.0);
    t[(1, 1)] = C64::new(1.0, 0.0);
    t[(2, 2)] = C64::new(r, 0.0);
    t[(2, 4)] = C64::new(r, 0.0);
    t[(3, 3)] = C64::new(r, 0.0);
    t[(3, 5)] = C64::new(r, 0.0);
    t[(4, 2)] = C64::new(0.0, r);
    t[(4, 4)] = C64::new(0.0, -r);
    t[(5, 3)] = C64::new(0.0, r);
    t[(5, 5)] = C64::new(0.0, -r);
    t
}

/// Plane-wave to Bloch rotation of the polariton sector.
///
/// Maps `(a, a^dag, a_0, a_0^dag, a_1, a_1^dag, a_{-1}, a_{-1}^dag)` onto
/// `(a, a^dag, b0, b0^dag, c0, c0^dag, s0, s0^dag)`.
pub fn polariton_bloch_rotation() -> CMatrix {
    let r = FRAC_1_SQRT_2;
    let mut t = CMatrix::zeros(8, 8);
    for i in 0..4 {
        t[(i, i)] = C64::new(1.0, 0.0);
    }
    t[(4, 4)] = C64::new(r, 0.0);
    t[(4, 6)] = C64::new(r, 0.0);
    t[(5, 5)] = C64::new(r, 0.0);
    t[(5, 7)] = C64::new(r, 0.0);
    t[(6, 4)] = C64::new(0.0, r);
    t[(6, 6)] = C64::new(0.0, -r);
    t[(7, 5)] = C64::new(0.0, -r);
    t[(7, 7)] = C64::new(0.0, r);
    t
}

fn real_diag(values: &[f64]) -> CMatrix {
    CMatrix::from_fn(values.len(), values.len(), |i, j| {
        if i == j {
            C64::from(values[i])
        } else {
            ZERO
        }
    })
}

/// Phonon-sector form in the plane-wave basis for any `|q| <= 1/2`.
pub fn phonon_matrix_plane_wave(q: f64, gn: f64) -> QuadraticForm {
    let energies: Vec<f64> = BAND_OFFSETS.iter().map(|n| kinetic(q + n)).collect();
    let free = real_diag(&energies);
    let contact = real_diag(&[gn; 3]);
    QuadraticForm::from_parts(
        &QuadraticForm::from_blocks(&free, &free, &CMatrix::zeros(3, 3)),
        &QuadraticForm::from_blocks(&contact, &contact, &contact),
    )
}

/// Phonon-sector form `G(q)` in the Bloch basis, without range checks.
pub fn phonon_matrix(q: f64, gn: f64) -> QuadraticForm {
    phonon_matrix_plane_wave(q, gn).rotated(&phonon_bloch_rotation())
}

/// Phonon-sector form `G(q)` for `q` in the half zone `(0, 1/2]`.
pub fn build_phonon_matrix(q: f64, p: &ModelParams) -> Result<QuadraticForm> {
    if !(q > 0.0 && q <= 0.5) {
        return Err(Error::QuasiMomentumOutOfRange { q });
    }
    Ok(phonon_matrix(q, p.gn))
}

/// Polariton form in the plane-wave basis `(a, a_0, a_1, a_{-1})`.
pub fn polariton_matrix_plane_wave(p: &ModelParams) -> QuadraticForm {
    let gn = p.gn;
    let photon = -p.effective_detuning();
    let drive = C64::from(p.photon_coupling() * FRAC_1_SQRT_2);

    let free = real_diag(&[0.0, kinetic(0.0), kinetic(1.0), kinetic(1.0)]);
    let mut a = real_diag(&[photon, gn, gn, gn]);
    let mut b = CMatrix::zeros(4, 4);
    b[(1, 1)] = C64::from(gn);
    b[(2, 3)] = C64::from(gn);
    b[(3, 2)] = C64::from(gn);
    for atom in [2, 3] {
        a[(0, atom)] = drive;
        a[(atom, 0)] = drive;
        b[(0, atom)] = drive;
        b[(atom, 0)] = drive;
    }
    QuadraticForm::from_parts(
        &QuadraticForm::from_blocks(&free, &free, &CMatrix::zeros(4, 4)),
        &QuadraticForm::from_blocks(&a, &a, &b),
    )
}

/// Polariton form `F` in the Bloch basis.
pub fn build_polariton_matrix(p: &ModelParams) -> QuadraticForm {
    polariton_matrix_plane_wave(p).rotated(&polariton_bloch_rotation())
}

/// Groups modes into blocks that are not coupled by the form.
fn mode_blocks(d: &CMatrix) -> Vec<Vec<usize>> {
    let m = d.nrows() / 2;
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            if d[(i, j)] != ZERO {
                let (a, b) = (find(&mut parent, i / 2), find(&mut parent, j / 2));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        let root = find(&mut parent, i);
        match blocks.iter_mut().find(|b| find(&mut parent, b[0]) == root) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    blocks
}

struct BlockModes {
    /// (frequency, positive column, partner column) in block-local coordinates.
    modes: Vec<(f64, nalgebra::DVector<C64>, nalgebra::DVector<C64>, bool)>,
    stable: bool,
    growth_rate: f64,
}

fn identity_column(dim: usize, k: usize) -> nalgebra::DVector<C64> {
    let mut v = nalgebra::DVector::zeros(dim);
    v[k] = C64::from(1.0);
    v
}

fn schur_eigenvalues(d: &CMatrix) -> Result<Vec<C64>> {
    let schur = Schur::try_new(d.clone(), 1e-14, 10_000)
        .ok_or(Error::NonConvergence { dim: d.nrows() })?;
    schur
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .ok_or(Error::NonConvergence { dim: d.nrows() })
}

/// Non-normal-mode fallback: keeps the bare basis and reports the spectrum only.
fn bare_block(d: &CMatrix, eigenvalues: &[C64], zero_tol: f64) -> BlockModes {
    let dim = d.nrows();
    let growth_rate = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let mut re: Vec<f64> = eigenvalues.iter().map(|z| z.re).collect();
    re.sort_by(|a, b| a.total_cmp(b));
    let modes = re[dim / 2..]
        .iter()
        .enumerate()
        .map(|(k, &w)| {
            let w = w.max(0.0);
            (
                w,
                identity_column(dim, 2 * k),
                identity_column(dim, 2 * k + 1),
                w <= zero_tol,
            )
        })
        .collect();
    BlockModes {
        modes,
        stable: growth_rate <= INSTABILITY_TOL,
        growth_rate,
    }
}

fn diagonalize_block(d: &CMatrix, gap: f64) -> Result<BlockModes> {
    let dim = d.nrows();
    let b = dim / 2;
    let form = QuadraticForm::new(d.clone());
    let mut h = form.hamiltonian();
    // symmetrize away rounding so the Hermitian routines see an exact Hermitian matrix
    h = (&h + h.adjoint()) * C64::from(0.5);
    let scale = h.camax().max(1.0);
    let tol = 1e-12 * scale;

    let h_eig = SymmetricEigen::new(h.clone());
    let h_min = h_eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);

    if b == 1 && d[(0, 0)].re == -d[(1, 1)].re {
        // single mode: omega^2 = (A - |B|)(A + |B|)
        let a = d[(0, 0)].re;
        let anomalous = d[(0, 1)];
        let w2 = gap * (a + anomalous.norm());
        let w2_tol = 1e-12 * (a * a).max(1.0);
        if w2 < -w2_tol {
            let growth = (-w2).sqrt();
            return Ok(BlockModes {
                modes: vec![(0.0, identity_column(2, 0), identity_column(2, 1), true)],
                stable: growth <= INSTABILITY_TOL,
                growth_rate: growth,
            });
        }
        if w2 <= w2_tol {
            return Ok(BlockModes {
                modes: vec![(0.0, identity_column(2, 0), identity_column(2, 1), true)],
                stable: true,
                growth_rate: 0.0,
            });
        }
        if a > 0.0 {
            let w = w2.sqrt();
            let u = ((a + w) / (2.0 * w)).sqrt();
            let v = if anomalous == ZERO {
                ZERO
            } else {
                C64::from((w - a) * u) / anomalous
            };
            let x = nalgebra::DVector::from_vec(vec![C64::from(u), v]);
            let y = nalgebra::DVector::from_vec(vec![v.conj(), C64::from(u)]);
            return Ok(BlockModes {
                modes: vec![(w, x, y, false)],
                stable: true,
                growth_rate: 0.0,
            });
        }
    }

    if h_min > tol {
        if let Some(chol) = Cholesky::new(h.clone()) {
            return colpa(d, &chol);
        }
    }

    let eigenvalues = schur_eigenvalues(d)?;
    let block = bare_block(d, &eigenvalues, 1e-6);
    if !block.stable || h_min >= -tol {
        return Ok(block);
    }
    Err(Error::IndefiniteForm)
}

/// Colpa's construction for a positive-definite `sigma * D = K^dag K`.
fn colpa(d: &CMatrix, chol: &Cholesky<C64, nalgebra::Dyn>) -> Result<BlockModes> {
    let dim = d.nrows();
    let l = chol.l();
    let k = l.adjoint();
    let mut k_sigma = k.clone();
    for (j, mut col) in k_sigma.column_iter_mut().enumerate() {
        col *= C64::from(metric(j));
    }
    let w = &k_sigma * k.adjoint();
    let w = (&w + w.adjoint()) * C64::from(0.5);
    let eig = SymmetricEigen::new(w);

    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(idx).into_owned() * C64::from(lambda.abs().sqrt());
        let x = k
            .solve_upper_triangular(&v)
            .ok_or(Error::NonConvergence { dim })?;
        if lambda > 0.0 {
            positive.push((lambda, x));
        } else {
            negative.push((-lambda, x));
        }
    }
    if positive.len() != negative.len() {
        let value = positive
            .iter()
            .chain(negative.iter())
            .map(|(w, _)| *w)
            .fold(0.0, f64::max);
        return Err(Error::UnpairedEigenvalue { value });
    }
    positive.sort_by(|a, b| a.0.total_cmp(&b.0));
    negative.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut modes = Vec::with_capacity(positive.len());
    for ((wp, xp), (wn, xn)) in positive.into_iter().zip(negative) {
        if (wp - wn).abs() > PAIRING_TOL {
            return Err(Error::UnpairedEigenvalue { value: wp });
        }
        modes.push((wp, xp, xn, false));
    }
    Ok(BlockModes {
        modes,
        stable: true,
        growth_rate: 0.0,
    })
}

/// Symplectic (Bogoliubov) diagonalization of a quadratic form.
///
/// Uncoupled blocks are diagonalized separately. Zero modes are reported with
/// zero frequency and the bare basis as their (non-normal-mode) columns.
/// Complex frequencies give `stable == false` rather than an error.
pub fn symplectic_diagonalize(form: &QuadraticForm) -> Result<ModeSet> {
    let d = form.matrix();
    let scale = d.camax().max(1.0);
    let deviation = form.hermiticity_defect();
    if deviation > 1e-10 * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let dim = d.nrows();

    struct Mode {
        frequency: f64,
        column: nalgebra::DVector<C64>,
        partner: nalgebra::DVector<C64>,
        zero: bool,
    }

    let mut modes: Vec<Mode> = Vec::with_capacity(dim / 2);
    let mut stable = true;
    let mut growth_rate: f64 = 0.0;

    for block in mode_blocks(d) {
        let rows: Vec<usize> = block.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let sub = CMatrix::from_fn(rows.len(), rows.len(), |i, j| d[(rows[i], rows[j])]);
        let gap = form.single_mode_gap(block[0]);
        let result = diagonalize_block(&sub, gap)?;
        stable &= result.stable;
        growth_rate = growth_rate.max(result.growth_rate);
        for (frequency, x, y, zero) in result.modes {
            let embed = |v: &nalgebra::DVector<C64>| {
                let mut out = nalgebra::DVector::zeros(dim);
                for (local, &global) in rows.iter().enumerate() {
                    out[global] = v[local];
                }
                out
            };
            modes.push(Mode {
                frequency,
                column: embed(&x),
                partner: embed(&y),
                zero,
            });
        }
    }

    modes.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    let mut transform = CMatrix::zeros(dim, dim);
    let mut zero_modes = Vec::new();
    for (n, mode) in modes.iter().enumerate() {
        transform.set_column(2 * n, &mode.column);
        transform.set_column(2 * n + 1, &mode.partner);
        if mode.zero {
            zero_modes.push(n);
        }
    }

    Ok(ModeSet {
        frequencies: modes.iter().map(|m| m.frequency).collect(),
        transform,
        stable,
        growth_rate,
        zero_modes,
    })
}

/// All eigenvalues of the dynamical matrix, via a complex Schur decomposition.
pub fn dynamical_eigenvalues(form: &QuadraticForm) -> Result<Vec<C64>> {
    schur_eigenvalues(form.matrix())
}

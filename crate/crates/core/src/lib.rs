//! Bogoliubov spectrum and photon-tunable Landau/Beliaev damping of the soft
//! polariton mode of a laser-driven Bose-Einstein condensate in a
//! single-mode optical cavity.
//!
//! Units: recoil frequency, cavity wavenumber and hbar are all one.
//!
//! The crate is organised bottom-up:
//! - [`params`]: validated model parameters and the critical drive,
//! - [`bogoliubov`]: quadratic forms of the polariton and phonon sectors and
//!   their symplectic diagonalization,
//! - [`spectrum`]: band structure and two-phonon densities of states,
//! - [`vertices`]: cubic polariton-phonon-phonon couplings,
//! - [`damping`]: golden-rule Landau and Beliaev rates and drive sweeps.

pub mod bogoliubov;
pub mod damping;
pub mod error;
pub mod params;
pub mod spectrum;
pub mod vertices;

pub use nalgebra::Complex;

/// Complex scalar used throughout.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;

pub use bogoliubov::{symplectic_diagonalize, ModeSet, QuadraticForm};
pub use damping::{sweep_eta, DampingPoint, DampingSolver};
pub use error::{Error, Result};
pub use params::ModelParams;
pub use spectrum::{band_structure, pair_density, BandStructure, PairDensity, PairKind};
pub use vertices::{DecayAmplitudes, VertexTensor};

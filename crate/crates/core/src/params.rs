//! Physical parameters of the driven cavity-BEC model.
//!
//! Everything is expressed in recoil units: the recoil frequency, the cavity
//! wavenumber and the reduced Planck constant are all set to one, so a plane
//! wave of momentum `p` has kinetic energy `p * p`.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default number of quasi-momentum points on the half zone.
pub const DEFAULT_ZONE_POINTS: usize = 4096;

/// All physical inputs of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Cavity-pump detuning (negative in the normal phase).
    pub delta_c: f64,
    /// Dispersive shift per photon.
    pub u0: f64,
    /// Collective drive amplitude; `eta / critical_coupling` is the control parameter.
    pub eta: f64,
    /// Interaction energy `N_c g / L`.
    pub gn: f64,
    /// Condensate atom number.
    pub n_c: f64,
    /// Cavity length in wavelengths, `k L / 2 pi`. Also the number of Bloch sectors.
    pub length: f64,
    /// `k_B T` in recoil units.
    pub temperature: f64,
    /// Phenomenological phonon linewidth used for the Lorentzian broadening.
    pub epsilon: f64,
    /// Quasi-momentum grid points on (0, 1/2].
    pub zone_points: usize,
    /// Include the drive-induced polariton-phonon-phonon vertex.
    pub drive_vertex: bool,
}

impl Default for ModelParams {
    /// Parameter set of the damping-versus-drive scenario: N_c = 1e4,
    /// kL/2pi = 1000, gn = 0.1, detuning -1000, epsilon = 0.1, T = 0.01.
    fn default() -> Self {
        Self {
            delta_c: -1000.0,
            u0: 0.0,
            eta: 0.0,
            gn: 0.1,
            n_c: 1.0e4,
            length: 1000.0,
            temperature: 0.01,
            epsilon: 0.1,
            zone_points: DEFAULT_ZONE_POINTS,
            drive_vertex: true,
        }
    }
}

/// Keys accepted by the parameter file, in serialization order.
pub const KEYS: [&str; 10] = [
    "delta_c",
    "u0",
    "eta",
    "gn",
    "n_c",
    "length",
    "temperature",
    "epsilon",
    "zone_points",
    "drive_vertex",
];

fn invalid(rule: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        rule,
        reason: reason.into(),
    }
}

impl ModelParams {
    /// Effective detuning including the dispersive shift of the condensate.
    pub fn effective_detuning(&self) -> f64 {
        self.delta_c - self.u0 * self.n_c / 2.0
    }

    /// Checks every invariant and returns the record unchanged.
    pub fn validate(self) -> Result<Self> {
        let finite = [
            ("delta_c", self.delta_c),
            ("u0", self.u0),
            ("eta", self.eta),
            ("gn", self.gn),
            ("n_c", self.n_c),
            ("length", self.length),
            ("temperature", self.temperature),
            ("epsilon", self.epsilon),
        ];
        if let Some((name, _)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(invalid("non-finite", format!("{name} must be finite")));
        }
        if self.gn < 0.0 {
            return Err(invalid("negative-interaction", "gn must be nonnegative"));
        }
        if self.n_c < 1.0 {
            return Err(invalid("atom-number", "n_c must be at least 1"));
        }
        if self.length < 1.0 {
            return Err(invalid("length", "length must be at least 1"));
        }
        if self.epsilon <= 0.0 {
            return Err(invalid("epsilon", "epsilon must be positive"));
        }
        if self.temperature < 0.0 {
            return Err(invalid("temperature", "temperature must be nonnegative"));
        }
        if self.eta < 0.0 {
            return Err(invalid("eta", "eta must be nonnegative"));
        }
        if self.zone_points < 16 {
            return Err(invalid("zone-points", "zone_points must be at least 16"));
        }
        if self.effective_detuning() >= 0.0 {
            return Err(invalid(
                "nonnegative-detuning",
                "no normal-phase threshold exists",
            ));
        }
        Ok(self)
    }

    /// Drive strength at which the soft polariton frequency vanishes.
    pub fn critical_coupling(&self) -> f64 {
        (-self.effective_detuning()).sqrt()
    }

    /// `eta / eta_c`.
    pub fn drive_ratio(&self) -> f64 {
        self.eta / self.critical_coupling()
    }

    /// Copy of `self` with the drive set to `ratio * eta_c`.
    pub fn with_drive_ratio(&self, ratio: f64) -> Self {
        Self {
            eta: ratio * self.critical_coupling(),
            ..self.clone()
        }
    }

    /// Linear photon/c0 coupling in front of `(a + a^dag)(c0 + c0^dag)`.
    ///
    /// Normalized so that the lowest polariton frequency vanishes exactly at
    /// `eta = critical_coupling()` for any interaction strength.
    pub fn photon_coupling(&self) -> f64 {
        0.5 * self.eta * (1.0 + 2.0 * self.gn).sqrt()
    }

    /// Per-atom drive amplitude implied by the collective coupling.
    pub fn single_atom_drive(&self) -> f64 {
        self.photon_coupling() * (2.0 / self.n_c).sqrt()
    }

    /// Sets one field from its textual `key=value` form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        let real = || {
            value
                .parse::<f64>()
                .map_err(|e| format!("`{key}`: cannot parse `{value}` as a number: {e}"))
        };
        match key.trim() {
            "delta_c" => self.delta_c = real()?,
            "u0" => self.u0 = real()?,
            "eta" => self.eta = real()?,
            "gn" => self.gn = real()?,
            "n_c" => self.n_c = real()?,
            "length" => self.length = real()?,
            "temperature" => self.temperature = real()?,
            "epsilon" => self.epsilon = real()?,
            "zone_points" => {
                self.zone_points = value
                    .parse()
                    .map_err(|e| format!("`zone_points`: cannot parse `{value}`: {e}"))?
            }
            "drive_vertex" => {
                self.drive_vertex = value
                    .parse()
                    .map_err(|e| format!("`drive_vertex`: cannot parse `{value}`: {e}"))?
            }
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// Parses a flat `key=value` file on top of the defaults.
    ///
    /// Blank lines and lines starting with `#` are ignored. Unknown and
    /// repeated keys are errors. The result is not validated.
    pub fn parse_overrides(base: Self, text: &str) -> Result<Self> {
        let mut out = base;
        let mut seen = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| Error::ParamFile {
                line: idx + 1,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let key = key.trim();
            if seen.contains(&key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            out.set(key, value).map_err(err)?;
            seen.push(key);
        }
        Ok(out)
    }

    /// Renders every field as `key=value` lines, in the order of [`KEYS`].
    pub fn to_kv_string(&self) -> String {
        let mut s = String::new();
        for key in KEYS {
            let _ = writeln!(s, "{key}={}", self.value_string(key));
        }
        s
    }

    fn value_string(&self, key: &str) -> String {
        match key {
            "delta_c" => format!("{:?}", self.delta_c),
            "u0" => format!("{:?}", self.u0),
            "eta" => format!("{:?}", self.eta),
            "gn" => format!("{:?}", self.gn),
            "n_c" => format!("{:?}", self.n_c),
            "length" => format!("{:?}", self.length),
            "temperature" => format!("{:?}", self.temperature),
            "epsilon" => format!("{:?}", self.epsilon),
            "zone_points" => self.zone_points.to_string(),
            "drive_vertex" => self.drive_vertex.to_string(),
            _ => unreachable!("unknown key {key}"),
        }
    }
}

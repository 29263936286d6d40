//! CSV tables and run manifests.

use std::fmt::Write as _;

use polariton_core::{BandStructure, DampingPoint, ModelParams, PairDensity};

/// Numbers go out with 12 significant digits.
pub fn number(x: f64) -> String {
    format!("{x:.11e}")
}

/// A header plus rows of numbers, rendered as comma-separated text.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let line: Vec<String> = row.iter().map(|&x| number(x)).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }
}

pub const SWEEP_COLUMNS: &[&str] = &["eta_over_etac", "omega_soft", "gamma_landau", "gamma_beliaev"];
pub const BAND_COLUMNS: &[&str] = &["q", "omega1", "omega2", "omega3"];
pub const PAIR_COLUMNS: &[&str] = &["omega", "d_beliaev", "d_landau"];
pub const POINT_COLUMNS: &[&str] = &[
    "eta_over_etac",
    "omega_soft",
    "gamma_landau",
    "gamma_beliaev",
    "temperature",
    "epsilon",
];

pub fn sweep_table(points: &[DampingPoint]) -> Table {
    Table {
        columns: SWEEP_COLUMNS,
        rows: points
            .iter()
            .map(|p| vec![p.eta_over_etac, p.omega_soft, p.gamma_landau, p.gamma_beliaev])
            .collect(),
    }
}

pub fn band_table(bands: &BandStructure) -> Table {
    Table {
        columns: BAND_COLUMNS,
        rows: bands
            .q
            .iter()
            .zip(&bands.bands)
            .map(|(&q, b)| vec![q, b[0], b[1], b[2]])
            .collect(),
    }
}

pub fn pair_table(beliaev: &PairDensity, landau: &PairDensity) -> Table {
    Table {
        columns: PAIR_COLUMNS,
        rows: beliaev
            .omega
            .iter()
            .zip(&beliaev.density)
            .zip(&landau.density)
            .map(|((&w, &b), &l)| vec![w, b, l])
            .collect(),
    }
}

pub fn point_table(p: &DampingPoint) -> Table {
    Table {
        columns: POINT_COLUMNS,
        rows: vec![vec![
            p.eta_over_etac,
            p.omega_soft,
            p.gamma_landau,
            p.gamma_beliaev,
            p.temperature,
            p.epsilon,
        ]],
    }
}

/// Flat `key=value` record of one run.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: &'static str,
    pub params: ModelParams,
    /// Grid settings in output order.
    pub grids: Vec<(&'static str, String)>,
    pub csv: String,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command={}", self.command);
        let _ = writeln!(s, "version={}", env!("CARGO_PKG_VERSION"));
        s.push_str(&self.params.to_kv_string());
        for (k, v) in &self.grids {
            let _ = writeln!(s, "{k}={v}");
        }
        let _ = writeln!(s, "csv={}", self.csv);
        let _ = writeln!(s, "duration_seconds={:.3}", self.duration_seconds);
        s
    }
}

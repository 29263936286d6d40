//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the report is always printed. Criteria
//! listed in `KNOWN_FAILURES` are reported as FAIL but do not fail the run;
//! any other failure, or a known failure that starts passing, exits nonzero.

use std::process::ExitCode;

use polariton_core::bogoliubov::{
    bogoliubov_frequency, build_polariton_matrix, dynamical_eigenvalues, phonon_matrix,
    symplectic_diagonalize,
};
use polariton_core::damping::{locate_threshold, DampingPoint, DampingSolver};
use polariton_core::spectrum::{band_structure, pair_density, uniform_grid, PairKind};
use polariton_core::vertices::{build_cubic_tensor, to_decay_amplitudes};
use polariton_core::ModelParams;

const KNOWN_FAILURES: [&str; 3] = ["beliaev-resonance", "peak-pair-density", "temperature-laws"];

const ETA_POINTS: usize = 200;
const ETA_MAX: f64 = 0.99;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { name, pass, detail }
}

fn eta_grid() -> Vec<f64> {
    uniform_grid(0.0, ETA_MAX, ETA_POINTS)
}

fn eta_step() -> f64 {
    ETA_MAX / (ETA_POINTS - 1) as f64
}

fn sweep(p: &ModelParams) -> Vec<DampingPoint> {
    DampingSolver::new(p).unwrap().sweep(&eta_grid()).unwrap()
}

fn peak(points: &[DampingPoint]) -> DampingPoint {
    *points
        .iter()
        .max_by(|a, b| a.gamma_beliaev.total_cmp(&b.gamma_beliaev))
        .unwrap()
}

fn local_maxima(points: &[DampingPoint]) -> usize {
    points
        .windows(3)
        .filter(|w| w[1].gamma_beliaev > w[0].gamma_beliaev && w[1].gamma_beliaev > w[2].gamma_beliaev)
        .count()
}

/// Drive ratio at which the soft frequency equals `omega`, by linear interpolation.
fn ratio_at_frequency(points: &[DampingPoint], omega: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let (a, b) = (w[0], w[1]);
        if (a.omega_soft - omega) * (b.omega_soft - omega) <= 0.0 {
            let t = (a.omega_soft - omega) / (a.omega_soft - b.omega_soft);
            Some(a.eta_over_etac + t * (b.eta_over_etac - a.eta_over_etac))
        } else {
            None
        }
    })
}

fn threshold_formula() -> Outcome {
    let interacting = ModelParams::default();
    let eta = locate_threshold(&interacting, 1e-10).unwrap();
    let dev = (eta / interacting.critical_coupling() - 1.0).abs();
    let dicke = ModelParams {
        gn: 0.0,
        ..Default::default()
    };
    let eta0 = locate_threshold(&dicke, 1e-10).unwrap();
    let dev0 = (eta0 / dicke.critical_coupling() - 1.0).abs();
    outcome(
        "threshold-formula",
        dev < 0.1 && dev0 < 1e-3,
        format!("relative deviation {dev:.2e} at gn=0.1, {dev0:.2e} at gn=0"),
    )
}

fn soft_mode_endpoints(base: &[DampingPoint]) -> Outcome {
    let w0 = base[0].omega_soft;
    let expected = 1.2f64.sqrt();
    let rel = (w0 / expected - 1.0).abs();
    let monotone = base.windows(2).all(|w| w[1].omega_soft <= w[0].omega_soft);
    let last = base.last().unwrap();
    outcome(
        "soft-mode-endpoints",
        rel < 1e-6 && monotone && base.iter().all(|p| p.stable),
        format!(
            "omega_soft(0) = {w0:.10} (rel {rel:.1e}), non-increasing: {monotone}, omega_soft({:.2}) = {:.4}",
            last.eta_over_etac, last.omega_soft
        ),
    )
}

fn band_oracle() -> Outcome {
    let p = ModelParams::default();
    let bs = band_structure(&p).unwrap();
    let mut worst: f64 = 0.0;
    for (q, b) in bs.q.iter().zip(&bs.bands) {
        let mut want = [
            bogoliubov_frequency(*q, p.gn),
            bogoliubov_frequency(q - 1.0, p.gn),
            bogoliubov_frequency(q + 1.0, p.gn),
        ];
        want.sort_by(f64::total_cmp);
        for (x, y) in b.iter().zip(want) {
            worst = worst.max((x - y).abs() / y);
        }
    }
    let first = bs.bands[0];
    let gap = first[2] - first[1];
    let touch = gap <= 4.1 * bs.q[0] && (first[1] - bogoliubov_frequency(1.0, p.gn)).abs() < 1e-3;
    outcome(
        "band-oracle",
        worst < 1e-10 && touch,
        format!(
            "{} points, worst relative error {worst:.1e}; bands 2/3 gap {gap:.2e} at q = {:.1e}",
            bs.q.len(),
            bs.q[0]
        ),
    )
}

fn beliaev_resonance(base: &[DampingPoint]) -> Outcome {
    let pk = peak(base);
    let maxima = local_maxima(base);
    let solver = DampingSolver::new(&ModelParams::default()).unwrap();
    let late = solver.point(0.95).unwrap().gamma_beliaev;
    let fall = late / pk.gamma_beliaev;
    let located = (pk.eta_over_etac - 0.8).abs() <= 0.1;
    outcome(
        "beliaev-resonance",
        located && maxima == 1 && fall < 0.2,
        format!(
            "peak at eta/eta_c = {:.4} ({} local maximum), gamma_B(0.95)/peak = {fall:.3} (needs < 0.2)",
            pk.eta_over_etac, maxima
        ),
    )
}

fn peak_pair_density(base: &[DampingPoint]) -> Outcome {
    let p = ModelParams::default();
    let pk = peak(base);
    let omega = uniform_grid(0.0, 1.2, 1201);
    let d = pair_density(&p, PairKind::Beliaev, &omega).unwrap();
    let (w_star, _) = d.argmax();
    let target = ratio_at_frequency(base, w_star).unwrap();
    let dist = (pk.eta_over_etac - target).abs();
    outcome(
        "peak-pair-density",
        dist <= eta_step(),
        format!(
            "rate peak at eta/eta_c = {:.4} (omega_soft {:.4}); D_B argmax {w_star:.4} maps to {target:.4}; distance {:.2} grid steps",
            pk.eta_over_etac,
            pk.omega_soft,
            dist / eta_step()
        ),
    )
}

fn epsilon_study(base: &[DampingPoint]) -> Outcome {
    let mut peaks = Vec::new();
    for eps in [0.05, 0.1, 0.2] {
        let pk = if eps == 0.1 {
            peak(base)
        } else {
            peak(&sweep(&ModelParams {
                epsilon: eps,
                ..Default::default()
            }))
        };
        peaks.push((eps, pk));
    }
    let decreasing = peaks.windows(2).all(|w| w[1].1.gamma_beliaev < w[0].1.gamma_beliaev);
    let omegas: Vec<f64> = peaks.iter().map(|(_, p)| p.omega_soft).collect();
    let spread = omegas.iter().cloned().fold(f64::MIN, f64::max)
        - omegas.iter().cloned().fold(f64::MAX, f64::min);
    let detail = peaks
        .iter()
        .map(|(e, p)| format!("eps {e}: {:.4e} at {:.4}", p.gamma_beliaev, p.eta_over_etac))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(
        "epsilon-study",
        decreasing && spread < 0.05,
        format!("{detail}; peak omega spread {spread:.4} (< 0.05)"),
    )
}

fn temperature_laws() -> Outcome {
    let cold = sweep(&ModelParams {
        temperature: 0.0,
        ..Default::default()
    });
    let zero = cold.iter().all(|p| p.gamma_landau == 0.0);
    let mut ratios = Vec::new();
    for t in [0.01, 0.05, 0.1] {
        let pts = sweep(&ModelParams {
            temperature: t,
            ..Default::default()
        });
        let l = pts.iter().map(|p| p.gamma_landau).fold(0.0, f64::max);
        let b = pts.iter().map(|p| p.gamma_beliaev).fold(0.0, f64::max);
        ratios.push((t, l / b));
    }
    let suppressed = ratios.iter().all(|(_, r)| *r <= 1e-2);
    let hot: Vec<f64> = [0.2, 0.5, 1.0]
        .iter()
        .map(|&t| {
            DampingSolver::new(&ModelParams {
                temperature: t,
                ..Default::default()
            })
            .unwrap()
            .point(0.95)
            .unwrap()
            .gamma_landau
        })
        .collect();
    let rising = hot.windows(2).all(|w| w[1] > w[0]);
    let shown = ratios
        .iter()
        .map(|(t, r)| format!("T={t}: {r:.2e}"))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(
        "temperature-laws",
        zero && suppressed && rising,
        format!(
            "gamma_L = 0 at T=0: {zero}; max gamma_L / max gamma_B {shown} (needs <= 1e-2); gamma_L(0.95) over T=0.2/0.5/1: {:.3e} {:.3e} {:.3e}",
            hot[0], hot[1], hot[2]
        ),
    )
}

fn scaling_law() -> Outcome {
    let single = DampingSolver::new(&ModelParams::default()).unwrap();
    let double = DampingSolver::new(&ModelParams {
        n_c: 2.0e4,
        ..Default::default()
    })
    .unwrap();
    let mut worst: f64 = 0.0;
    for r in [0.3, 0.786, 0.95] {
        let (a, b) = (single.point(r).unwrap(), double.point(r).unwrap());
        worst = worst.max((b.gamma_beliaev / a.gamma_beliaev / 0.5 - 1.0).abs());
        worst = worst.max((b.gamma_landau / a.gamma_landau / 0.5 - 1.0).abs());
    }
    outcome(
        "scaling-law",
        worst < 0.01,
        format!("worst relative deviation from 1/2 ratio: {worst:.1e}"),
    )
}

fn structural_invariants(base: &[DampingPoint]) -> Outcome {
    let p = ModelParams::default();
    let mut symplectic: f64 = 0.0;
    let mut pairing: f64 = 0.0;
    let mut forms = Vec::new();
    for r in [0.0, 0.3, 0.786, 0.95, 0.99] {
        forms.push(build_polariton_matrix(&p.with_drive_ratio(r)));
    }
    for q in [1e-3, 0.1, 0.25, 0.4, 0.5] {
        forms.push(phonon_matrix(q, p.gn));
    }
    for f in &forms {
        symplectic = symplectic.max(symplectic_diagonalize(f).unwrap().symplectic_defect());
        let ev = dynamical_eigenvalues(f).unwrap();
        for l in &ev {
            let partner = ev.iter().map(|m| (m + l).norm()).fold(f64::MAX, f64::min);
            pairing = pairing.max(partner / l.norm().max(1.0));
        }
    }

    let d0 = build_polariton_matrix(&p).matrix().clone();
    let mut coupling: f64 = 0.0;
    for i in 0..2 {
        for j in 2..8 {
            coupling = coupling.max(d0[(i, j)].norm()).max(d0[(j, i)].norm());
        }
    }

    let free = ModelParams {
        gn: 0.0,
        ..Default::default()
    };
    let t = build_cubic_tensor(0.3, &free).unwrap();
    let pol = symplectic_diagonalize(&build_polariton_matrix(&free)).unwrap();
    let ph = symplectic_diagonalize(&phonon_matrix(0.3, 0.0)).unwrap();
    let amps = to_decay_amplitudes(&t, &pol, &ph).unwrap();
    let vertex = [amps.beliaev, amps.landau_plus, amps.landau_minus]
        .iter()
        .flat_map(|m| m.iter().flatten())
        .map(|z| z.norm())
        .fold(t.max_abs(), f64::max);

    let again = sweep(&p);
    let identical = again.len() == base.len()
        && again.iter().zip(base).all(|(a, b)| {
            [
                (a.eta_over_etac, b.eta_over_etac),
                (a.omega_soft, b.omega_soft),
                (a.gamma_landau, b.gamma_landau),
                (a.gamma_beliaev, b.gamma_beliaev),
            ]
            .iter()
            .all(|(x, y)| x.to_bits() == y.to_bits())
        });

    outcome(
        "structural-invariants",
        symplectic < 1e-10 && pairing < 1e-9 && coupling == 0.0 && vertex == 0.0 && identical,
        format!(
            "U^dag sigma U defect {symplectic:.1e}, +-omega pairing {pairing:.1e}, photon-atom coupling at eta=0 {coupling:.1e}, vertex at g=eta=0 {vertex:.1e}, repeated sweep bit-identical: {identical}"
        ),
    )
}

fn main() -> ExitCode {
    let base = sweep(&ModelParams::default());
    let outcomes = [
        threshold_formula(),
        soft_mode_endpoints(&base),
        band_oracle(),
        beliaev_resonance(&base),
        peak_pair_density(&base),
        epsilon_study(&base),
        temperature_laws(),
        scaling_law(),
        structural_invariants(&base),
    ];
    let mut unexpected = 0;
    for (i, o) in outcomes.iter().enumerate() {
        let known = KNOWN_FAILURES.contains(&o.name);
        let note = match (o.pass, known) {
            (false, true) => " [known failure]",
            (true, true) => " [known failure now passes]",
            _ => "",
        };
        if o.pass == known {
            unexpected += 1;
        }
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} [{}] {}: {}{note}", i + 1, o.name, o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if unexpected > 0 {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

use proptest::prelude::*;

use polariton_core::bogoliubov::{
    bogoliubov_frequency, build_polariton_matrix, dynamical_eigenvalues, phonon_matrix,
    symplectic_diagonalize,
};
use polariton_core::damping::thermal_occupation;
use polariton_core::vertices::build_cubic_tensor;
use polariton_core::ModelParams;

fn params(gn: f64, delta_c: f64, ratio: f64) -> ModelParams {
    ModelParams {
        gn,
        delta_c,
        ..Default::default()
    }
    .with_drive_ratio(ratio)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phonon_bands_fold_homogeneous_spectrum(q in 1e-3f64..=0.5, gn in 0.0f64..2.0) {
        let modes = symplectic_diagonalize(&phonon_matrix(q, gn)).unwrap();
        let mut want = [
            bogoliubov_frequency(q, gn),
            bogoliubov_frequency(q - 1.0, gn),
            bogoliubov_frequency(q + 1.0, gn),
        ];
        want.sort_by(f64::total_cmp);
        for (got, want) in modes.frequencies.iter().zip(want) {
            prop_assert!((got - want).abs() <= 1e-10 * want);
        }
        prop_assert!(modes.symplectic_defect() < 1e-10);
    }

    #[test]
    fn polariton_modes_are_symplectic_and_paired(
        gn in 0.0f64..1.0,
        delta_c in -2000.0f64..-0.5,
        ratio in 0.0f64..0.99,
    ) {
        let form = build_polariton_matrix(&params(gn, delta_c, ratio));
        let modes = symplectic_diagonalize(&form).unwrap();
        prop_assert!(modes.stable);
        prop_assert!(modes.symplectic_defect() < 1e-10);
        let ev = dynamical_eigenvalues(&form).unwrap();
        for l in &ev {
            let partner = ev.iter().map(|m| (m + l).norm()).fold(f64::MAX, f64::min);
            prop_assert!(partner <= 1e-9 * l.norm().max(1.0));
        }
    }

    #[test]
    fn soft_mode_vanishes_only_at_threshold(
        gn in 0.0f64..1.0,
        delta_c in -2000.0f64..-0.5,
    ) {
        let below = symplectic_diagonalize(&build_polariton_matrix(&params(gn, delta_c, 0.999))).unwrap();
        prop_assert!(below.stable);
        let above = symplectic_diagonalize(&build_polariton_matrix(&params(gn, delta_c, 1.001))).unwrap();
        prop_assert!(!above.stable);
    }

    #[test]
    fn cubic_tensor_hermitian_and_linear(
        q in 1e-3f64..=0.5,
        gn in 0.0f64..1.0,
        ratio in 0.0f64..0.99,
    ) {
        let p = params(gn, -1000.0, ratio);
        let t = build_cubic_tensor(q, &p).unwrap();
        prop_assert!(t.hermiticity_defect() <= 1e-13 * t.max_abs().max(1.0));

        let contact_only = ModelParams { drive_vertex: false, ..p.clone() };
        let doubled = ModelParams { gn: 2.0 * gn, drive_vertex: false, ..p.clone() };
        let a = build_cubic_tensor(q, &contact_only).unwrap();
        let b = build_cubic_tensor(q, &doubled).unwrap();
        for mu in 0..8 {
            for i in 0..6 {
                for j in 0..6 {
                    let d = b.entry(mu, i, j) - a.entry(mu, i, j) * 2.0;
                    prop_assert!(d.norm() < 1e-13);
                }
            }
        }
        let drive_twice = ModelParams { eta: 2.0 * p.eta, ..p.clone() };
        let c = build_cubic_tensor(q, &drive_twice).unwrap();
        prop_assert!((c.drive_coupling - 2.0 * t.drive_coupling).abs() <= 1e-13 * c.drive_coupling.max(1.0));
    }

    #[test]
    fn occupation_monotone(omega in 1e-3f64..5.0, t in 1e-3f64..2.0, dt in 1e-3f64..1.0) {
        let lo = thermal_occupation(omega, t).unwrap();
        let hi = thermal_occupation(omega, t + dt).unwrap();
        prop_assert!(lo >= 0.0 && hi > lo);
    }
}

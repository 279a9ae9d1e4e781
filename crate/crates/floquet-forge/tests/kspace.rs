use std::f64::consts::PI;

use floquet_forge::fock::Spin;
use floquet_forge::kspace::*;
use floquet_forge::Error;
use proptest::prelude::*;

const UP: Spin = Spin::Up;

fn standard(n: usize) -> BandGrid {
    BandGrid::square(n, n, CosineBands::STANDARD, 1.6, 0.8).unwrap()
}

fn free(n: usize) -> BandGrid {
    BandGrid::square(n, n, CosineBands::STANDARD, 0.0, 0.0).unwrap()
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn bare_detuning_values() {
    let flat = BandGrid::square(5, 5, CosineBands::flat(2.0), 0.0, 0.0).unwrap();
    assert!(bare_detuning(&flat, 0.7)
        .iter()
        .all(|&d| (d - 1.3).abs() < 1e-15));
    let g = standard(16);
    let d = bare_detuning(&g, 1.0);
    assert!((d[g.gamma()] - (2.9 - 1.0)).abs() < 1e-12);
    let min = d.iter().cloned().fold(f64::INFINITY, f64::min);
    assert_eq!(min, d[g.gamma()]);
}

#[test]
fn screening_limits() {
    let g = free(12);
    assert_eq!(
        screened_detuning(&g, 2.5, UP).unwrap(),
        bare_detuning(&g, 2.5)
    );
    let bs = bs_detuning(&g, 2.5, UP).unwrap();
    assert!(
        max_dev(
            &bs,
            &bare_detuning(&g, 2.5)
                .iter()
                .map(|d| d + 5.0)
                .collect::<Vec<_>>()
        ) < 1e-12
    );
    let flat = BandGrid::square(8, 8, CosineBands::flat(3.7), 1.6, 0.8).unwrap();
    for d in screened_detuning(&flat, 2.5, UP).unwrap() {
        assert!((d - (3.7 - 2.5 - 1.6 + 0.8)).abs() < 1e-13);
    }
}

#[test]
fn detuning_vanishes_for_all_momenta_near_the_exciton() {
    let g = standard(64);
    let wx = exciton_frequency(&g, UP).unwrap();
    let d = screened_detuning(&g, wx - 1e-3, UP).unwrap();
    let d4 = screened_detuning(&g, wx - 1e-4, UP).unwrap();
    assert!(d.iter().all(|&x| x > 0.0 && x < 1e-2));
    // linear vanishing at every momentum
    for (a, b) in d.iter().zip(&d4) {
        assert!((a / b - 10.0).abs() < 0.05, "{}", a / b);
    }
    let d0 = bare_detuning(&g, wx - 1e-3);
    assert!(d0.iter().cloned().fold(0.0, f64::max) > 0.9);
}

#[test]
fn exciton_resonance_of_the_standard_parameters() {
    let t = std::time::Instant::now();
    let wx = exciton_frequency(&standard(64), UP).unwrap();
    assert!(t.elapsed().as_secs_f64() < 1.0);
    assert!((wx - 2.71).abs() <= 0.02, "{wx}");
    let w128 = exciton_frequency(&standard(128), UP).unwrap();
    assert!((w128 - wx).abs() <= 1e-3);
    let d = screened_detuning(&standard(64), wx, UP).unwrap();
    assert!(d.iter().all(|x| x.abs() <= 1e-6 * 0.8));
}

#[test]
fn flat_band_exciton_and_binding_energy() {
    let flat = BandGrid::square(6, 6, CosineBands::flat(3.7), 1.6, 0.8).unwrap();
    assert!((exciton_frequency(&flat, UP).unwrap() - (3.7 - 1.6 + 0.8)).abs() < 1e-9);
    let mut last = f64::INFINITY;
    for scale in [1.0, 0.3, 0.1, 0.01] {
        let b = CosineBands {
            t1: 0.05 * scale,
            t2: -0.15 * scale,
            ..CosineBands::STANDARD
        };
        let g = BandGrid::square(32, 32, b, 1.6, 0.8).unwrap();
        let binding = band_edge(&g, UP) - exciton_frequency(&g, UP).unwrap();
        let dev = (binding - 0.8).abs();
        assert!(dev < last);
        last = dev;
    }
    // within the bandwidth 8 |t2 - t1| of the narrowest bands
    assert!(last < 8.0 * 0.2 * 0.01, "{last}");
}

#[test]
fn no_exciton_without_attraction() {
    let g = standard(8).with_interactions(1.6, 0.0);
    assert!(matches!(exciton_frequency(&g, UP), Err(Error::NoExciton)));
    let g = standard(8).with_interactions(1.6, -0.3);
    assert!(matches!(exciton_frequency(&g, UP), Err(Error::NoExciton)));
}

#[test]
fn band_resonance_is_an_error() {
    let g = free(8);
    let w = g.eps21(g.gamma());
    assert!(matches!(
        screened_detuning(&g, w, UP),
        Err(Error::BandResonance { k: 0, .. })
    ));
    assert!(matches!(
        t_matrix(&g, w, UP),
        Err(Error::BandResonance { .. })
    ));
}

#[test]
fn screened_detuning_flips_sign_once_across_the_exciton() {
    let g = standard(32);
    let wx = exciton_frequency(&g, UP).unwrap();
    let edge = band_edge(&g, UP);
    let ws: Vec<f64> = (0..400)
        .map(|i| wx - 0.5 + (edge - wx + 0.5 - 1e-4) * i as f64 / 399.0)
        .collect();
    let signs: Vec<bool> = ws
        .iter()
        .map(|&w| screened_detuning(&g, w, UP).unwrap()[0] > 0.0)
        .collect();
    let flips: Vec<usize> = (1..signs.len())
        .filter(|&i| signs[i] != signs[i - 1])
        .collect();
    assert_eq!(flips.len(), 1);
    assert!(ws[flips[0] - 1] < wx && wx <= ws[flips[0]]);
}

#[test]
fn t_matrix_limits() {
    let g = standard(16);
    assert_eq!(
        t_matrix(&g.clone().with_interactions(1.6, 0.0), 2.0, UP).unwrap(),
        1.0
    );
    let wx = exciton_frequency(&g, UP).unwrap();
    let mut last = 0.0;
    for d in [0.5, 0.1, 1e-2, 1e-3, 1e-5] {
        let t = t_matrix(&g, wx - d, UP).unwrap();
        assert!(t > last);
        last = t;
    }
    assert!(last > 1e3);
}

#[test]
fn floquet_band_limits() {
    let g = standard(32);
    let fb = floquet_band(&g, 2.5, 0.0, UP).unwrap();
    assert_eq!(fb.eps, g.eps1);
    assert!((fb.t_eff - 0.05).abs() < 1e-12);
}

#[test]
fn unscreened_van_hove_onset_and_screened_resistance() {
    let f = free(64);
    let w0 = f.eps21(f.gamma()) - 0.03;
    assert!(floquet_band(&f, w0, 0.014, UP).unwrap().t_eff > 0.0);
    assert!(floquet_band(&f, w0, 0.016, UP).unwrap().t_eff < 0.0);
    let s = standard(64);
    let ws = exciton_frequency(&s, UP).unwrap() - 0.03;
    for g in [0.01, 0.016, 0.02] {
        let ts = floquet_band(&s, ws, g, UP).unwrap().t_eff;
        let t0 = floquet_band(&f, w0, g, UP).unwrap().t_eff;
        assert!(ts > t0 && ts > 0.0, "g={g}: {ts} vs {t0}");
    }
}

#[test]
fn stark_bs_ratio_against_two_level_atom() {
    let f = free(16);
    let w = 2.0;
    let r = stark_bs_ratio(&f, w, UP).unwrap();
    let d0 = bare_detuning(&f, w)[0];
    assert!((r.ratio[0] - (d0 + 2.0 * w) / d0).abs() < 1e-12);
    assert!((r.ratio[0] - r.tla).abs() < 1e-12);

    let g = standard(64);
    let wx = exciton_frequency(&g, UP).unwrap();
    let r = stark_bs_ratio(&g, wx - 0.03, UP).unwrap();
    assert!((r.tla - (2.0 * wx - 0.03) / 0.03).abs() < 1e-9);
    assert!(r.ratio[g.gamma()] > r.tla);
    assert!(r.ratio[g.nearest(0.0, PI)] < r.tla);
    assert!(r.ratio[g.nearest(PI, PI)] < r.tla);
}

#[test]
fn cavity_interaction_limits() {
    let f = free(16);
    let cav = CavitySpec {
        g: 0.05,
        gc0: 0.1,
        delta_c: 0.25,
    };
    let (k, kp, w) = (3, 40, 2.6);
    let d0 = bare_detuning(&f, w);
    let want = -(0.05f64 * 0.1).powi(2) / (256.0 * 0.25 * d0[kp] * d0[k]);
    let got = cavity_forward_interaction(&f, &cav, w, k, kp, UP, Spin::Down).unwrap();
    assert!((got - want).abs() < 1e-15 * want.abs());
    assert!(got < 0.0);
    assert_eq!(
        cavity_forward_interaction(&f, &CavitySpec { gc0: 0.0, ..cav }, w, k, kp, UP, UP).unwrap(),
        0.0
    );
    assert!(cavity_forward_interaction(
        &f,
        &CavitySpec {
            delta_c: 0.0,
            ..cav
        },
        w,
        k,
        kp,
        UP,
        UP
    )
    .is_err());
}

fn enhancement(u12: f64, detuning: f64) -> f64 {
    let cav = CavitySpec {
        g: 0.05,
        gc0: 0.1,
        delta_c: 0.25,
    };
    let g = standard(64)
        .with_interactions(1.6, u12)
        .with_fermi_hole(PI / 30.0)
        .unwrap();
    let f = free(64).with_fermi_hole(PI / 30.0).unwrap();
    let ws = exciton_frequency(&g, UP).unwrap() - detuning;
    let w0 = f.eps21(f.gamma()) - detuning;
    let k = g.gamma();
    cavity_forward_interaction(&g, &cav, ws, k, k, UP, UP).unwrap()
        / cavity_forward_interaction(&f, &cav, w0, k, k, UP, UP).unwrap()
}

#[test]
fn excitonic_enhancement_of_the_cavity_interaction() {
    let best = (45..=55)
        .map(|i| enhancement(i as f64 * 0.01, 0.05))
        .fold(0.0, f64::max);
    assert!(best > 10.0, "{best}");
    assert!(enhancement(0.5, 0.05) > enhancement(0.2, 0.05));
    assert!(enhancement(0.5, 0.05) > enhancement(0.9, 0.05));
    let sweep: Vec<f64> = [0.05, 0.1, 0.2, 0.3, 0.5]
        .iter()
        .map(|&d| enhancement(0.8, d))
        .collect();
    assert!(sweep.windows(2).all(|w| w[1] < w[0]), "{sweep:?}");
    assert!(sweep[4] > 1.0);
}

#[test]
fn pomeranchuk_criterion() {
    let cav = CavitySpec {
        g: 0.05,
        gc0: 0.1,
        delta_c: 0.25,
    };
    let (_, p) = pomeranchuk_at_detuning(&standard(64), &cav, 0.14, PI / 30.0, UP).unwrap();
    assert!(p.triggered, "{p:?}");
    assert!((p.t_bare - 0.05).abs() < 1e-12);
    let (_, q) = pomeranchuk_at_detuning(
        &standard(64),
        &CavitySpec { gc0: 0.0, ..cav },
        0.14,
        PI / 30.0,
        UP,
    )
    .unwrap();
    assert_eq!((q.lhs, q.eta), (0.0, 0.0));
    assert_eq!(q.rhs, q.t_eff);
    assert!(q.t_eff > 0.0 && !q.triggered);
    assert!(pomeranchuk_check(&standard(16), &cav, 2.5, 1.0, UP).is_err());
}

#[test]
fn pomeranchuk_eta_converges_with_the_grid() {
    let cav = CavitySpec {
        g: 0.05,
        gc0: 0.1,
        delta_c: 0.25,
    };
    let eta = |n: usize| {
        let g = standard(n).with_fermi_hole(PI / 30.0).unwrap();
        let w = exciton_frequency(&g, UP).unwrap() - 0.14;
        pomeranchuk_eta(&g, &cav, w, UP).unwrap()
    };
    let (a, b) = (eta(64), eta(128));
    assert!((a - b).abs() <= 0.01 * b, "{a} {b}");
}

#[test]
fn saturated_occupations_ignore_the_fermi_hole() {
    let g = standard(32).with_fermi_hole(0.3).unwrap();
    let sat = g.clone().with_screening(ScreeningOccupation::Saturated);
    let full = standard(32);
    assert_eq!(
        exciton_frequency(&sat, UP).unwrap(),
        exciton_frequency(&full, UP).unwrap()
    );
    assert!(exciton_frequency(&g, UP).unwrap() > exciton_frequency(&full, UP).unwrap());
}

#[test]
fn fields_are_even_in_momentum() {
    let g = standard(24).with_fermi_hole(0.5).unwrap();
    let w = exciton_frequency(&g, UP).unwrap() - 0.07;
    let fields = [
        screened_detuning(&g, w, UP).unwrap(),
        bs_detuning(&g, w, UP).unwrap(),
        floquet_band(&g, w, 0.03, UP).unwrap().eps,
        stark_bs_ratio(&g, w, UP).unwrap().ratio,
    ];
    for f in &fields {
        for i in 0..g.len() {
            assert!((f[i] - f[g.neg(i)]).abs() <= 1e-12 * f[i].abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn screening_identity(k in 0usize..256, w in 0.5f64..2.6, u11 in 0.0f64..2.0, u12 in 0.05f64..1.0) {
        let g = BandGrid::square(16, 16, CosineBands::STANDARD, u11, u12).unwrap();
        let a = hartree_detuning(&g, w, 0.0, UP);
        match (screened_detuning(&g, w, UP), t_matrix(&g, w, UP)) {
            (Ok(d), Ok(t)) => prop_assert!((d[k] * t - a[k]).abs() <= 1e-12 * a[k].abs().max(1.0)),
            _ => prop_assume!(false),
        }
    }

    #[test]
    fn filling_matches_occupations(kf in 0.05f64..2.0, n in 4usize..40) {
        let g = BandGrid::square(n, n, CosineBands::STANDARD, 1.0, 0.5).unwrap().with_fermi_hole(kf).unwrap();
        let occ = g.occupation(UP);
        let nu = occ.iter().sum::<f64>() / occ.len() as f64;
        prop_assert!((g.filling(UP) - nu).abs() < 1e-12);
        prop_assert!((g.filling(Spin::Down) - nu).abs() < 1e-12);
    }
}

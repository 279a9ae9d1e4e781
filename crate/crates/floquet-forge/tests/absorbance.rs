use floquet_forge::dynamics::absorbance_ed;
use floquet_forge::fock::{Spin, TwoBandChainParams};
use floquet_forge::kspace::{band_edge, exciton_frequency, BandGrid, CosineBands};
use floquet_forge::Error;

fn chain(l: usize, t1: f64, t2: f64, u11: f64, u12: f64, periodic: bool) -> TwoBandChainParams {
    TwoBandChainParams {
        l,
        eps21: 3.7,
        t1,
        t2,
        u11,
        u12,
        g: 0.0,
        omega: 0.0,
        periodic,
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Lowest dipole-active ED excitation of the periodic chain and the k-space
/// resonance on the matching ring, `(ed, kspace)`.
fn ring_pair(t1: f64, t2: f64, u11: f64, u12: f64) -> (f64, f64) {
    let p = chain(3, t1, t2, u11, u12, true);
    let ed = absorbance_ed(&p, &[0.0], 0.01)
        .unwrap()
        .lowest_resonance(1e-6)
        .unwrap();
    let bands = CosineBands {
        eps1: 0.0,
        eps2: 3.7,
        t1,
        t2,
    };
    let g = BandGrid::chain(3, bands, u11, u12).unwrap();
    let ks = if u12 > 0.0 {
        exciton_frequency(&g, Spin::Up).unwrap()
    } else {
        band_edge(&g, Spin::Up)
    };
    (ed, ks)
}

#[test]
fn flat_band_peak_is_the_onsite_exciton() {
    let gamma = 0.02;
    for (u11, u12) in [(1.6, 0.8), (0.5, 1.2), (0.0, 0.3)] {
        let p = chain(4, 0.0, 0.0, u11, u12, false);
        let s = absorbance_ed(&p, &grid(1.0, 6.0, 2001), gamma).unwrap();
        let want = 3.7 - u11 + u12;
        // one degenerate level carries all the weight
        assert!(
            s.resonances.iter().all(|r| (r.0 - want).abs() < 1e-10),
            "{:?}",
            s.resonances
        );
        assert!((s.peak().unwrap() - want).abs() < gamma);
    }
}

#[test]
fn noninteracting_peak_at_the_direct_gap() {
    for periodic in [false, true] {
        let p = chain(5, 0.05, -0.15, 0.0, 0.0, periodic);
        let s = absorbance_ed(&p, &grid(2.5, 5.0, 11), 0.01).unwrap();
        let gap = p.vertical_gaps().into_iter().fold(f64::INFINITY, f64::min);
        assert!((s.lowest_resonance(1e-6).unwrap() - gap).abs() < 1e-10);
    }
}

#[test]
fn spectrum_is_normalised_lorentzians() {
    let p = chain(3, 0.05, -0.15, 1.6, 0.8, false);
    let s = absorbance_ed(&p, &grid(-20.0, 30.0, 50001), 0.05).unwrap();
    let dw = s.omega[1] - s.omega[0];
    let area: f64 = s.alpha.iter().sum::<f64>() * dw;
    let weight: f64 = s.resonances.iter().map(|r| r.1).sum();
    // sum rule: the dipole acting on the full band creates 2L pair states
    assert!((weight - 6.0).abs() < 1e-10, "{weight}");
    assert!((area - weight).abs() < 0.02 * weight, "{area}");
    assert!(s.alpha.iter().all(|&a| a >= 0.0));
}

#[test]
fn ring_matches_the_wannier_root() {
    let gamma = 0.01;
    let (ed0, ks0) = ring_pair(0.05, -0.15, 1.6, 0.0);
    let offset = ed0 - ks0;
    assert!(offset.abs() < 1e-10, "Hartree offset {offset}");
    for u12 in [0.2, 0.8, 1.5] {
        let (ed, ks) = ring_pair(0.05, -0.15, 1.6, u12);
        assert!(
            (ed - (ks + offset)).abs() < gamma,
            "u12={u12}: {ed} vs {ks}"
        );
        assert!((ed - ks).abs() < 1e-9, "u12={u12}: {ed} vs {ks}");
    }
}

#[test]
fn rejects_nonpositive_broadening() {
    let p = chain(3, 0.05, -0.15, 1.6, 0.8, false);
    for g in [0.0, -0.1, f64::NAN] {
        assert!(matches!(
            absorbance_ed(&p, &[3.0], g),
            Err(Error::Domain(_))
        ));
    }
}

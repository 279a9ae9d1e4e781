use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::Spin;

use super::grid::{pairwise_sum, BandGrid};

/// `|A_k|` below this counts as a band resonance.
pub const BAND_RESONANCE_TOL: f64 = 1e-10;

/// Laser-bandgap detuning `eps_{k,2} - eps_{k,1} - omega`.
pub fn bare_detuning(grid: &BandGrid, omega: f64) -> Vec<f64> {
    (0..grid.len())
        .into_par_iter()
        .map(|i| grid.eps21(i) - omega)
        .collect()
}

/// Hartree shift `-U11 nu_{sbar} + U12 (nu_up + nu_dn)`.
pub fn hartree_shift(grid: &BandGrid, s: Spin) -> f64 {
    -grid.u11 * grid.screening_filling(s.flip())
        + grid.u12 * (grid.screening_filling(Spin::Up) + grid.screening_filling(Spin::Down))
}

/// `A_k`: bare detuning plus `shift` and the Hartree terms.
pub fn hartree_detuning(grid: &BandGrid, omega: f64, shift: f64, s: Spin) -> Vec<f64> {
    let h = hartree_shift(grid, s);
    (0..grid.len())
        .into_par_iter()
        .map(|i| grid.eps21(i) - omega + shift + h)
        .collect()
}

/// `(U12/N) sum_k n(k,s) / A_k`, failing on an occupied band resonance.
pub fn ladder_sum(grid: &BandGrid, a: &[f64], s: Spin) -> Result<f64> {
    let mut terms = Vec::with_capacity(a.len());
    for (i, &ak) in a.iter().enumerate() {
        let n = grid.screening_occ(s, i);
        if n == 0.0 {
            continue;
        }
        if ak.abs() < BAND_RESONANCE_TOL {
            return Err(Error::BandResonance { k: i, value: ak });
        }
        terms.push(n / ak);
    }
    Ok(grid.u12 * pairwise_sum(&terms) / grid.len() as f64)
}

fn screened(grid: &BandGrid, omega: f64, shift: f64, s: Spin) -> Result<Vec<f64>> {
    let a = hartree_detuning(grid, omega, shift, s);
    let f = 1.0 - ladder_sum(grid, &a, s)?;
    Ok(a.into_iter().map(|x| x * f).collect())
}

/// Excitonically screened detuning `Delta_{k,s} = A_k - (U12/N) sum_k' n A_k / A_k'`.
pub fn screened_detuning(grid: &BandGrid, omega: f64, s: Spin) -> Result<Vec<f64>> {
    screened(grid, omega, 0.0, s)
}

/// Counter-rotating partner of [`screened_detuning`]: `Delta^0 -> Delta^0 + 2 omega`.
pub fn bs_detuning(grid: &BandGrid, omega: f64, s: Spin) -> Result<Vec<f64>> {
    screened(grid, omega, 2.0 * omega, s)
}

/// Electron-hole t-matrix `T = (1 - (U12/N) sum_k n / A_k)^-1`.
pub fn t_matrix(grid: &BandGrid, omega: f64, s: Spin) -> Result<f64> {
    let a = hartree_detuning(grid, omega, 0.0, s);
    let d = 1.0 - ladder_sum(grid, &a, s)?;
    if d.abs() < 1e-12 {
        return Err(Error::ResonantDenominator {
            detail: format!("t-matrix pole at omega = {omega} (exciton resonance)"),
            pairs: Vec::new(),
        });
    }
    Ok(1.0 / d)
}

/// Lowest frequency at which an occupied `A_k` vanishes.
pub fn band_edge(grid: &BandGrid, s: Spin) -> f64 {
    let h = hartree_shift(grid, s);
    (0..grid.len())
        .filter(|&i| grid.screening_occ(s, i) > 0.0)
        .map(|i| grid.eps21(i) + h)
        .fold(f64::INFINITY, f64::min)
}

/// Exciton resonance: the root of `(U12/N) sum_k n / A_k(omega) = 1` below the
/// band edge, by bisection down to the floating-point resolution.
pub fn exciton_frequency(grid: &BandGrid, s: Spin) -> Result<f64> {
    let edge = band_edge(grid, s);
    if !edge.is_finite() || grid.u12 <= 0.0 {
        return Err(Error::NoExciton);
    }
    let f = |w: f64| -> Result<f64> {
        Ok(ladder_sum(grid, &hartree_detuning(grid, w, 0.0, s), s)? - 1.0)
    };
    let (mut lo, mut hi) = (0.0f64, edge - 1e-9);
    if hi <= lo || f(lo)? > 0.0 || f(hi)? < 0.0 {
        return Err(Error::NoExciton);
    }
    // to machine resolution: weakly bound roots sit exponentially close to the edge
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = 0.5 * (lo + hi);
    let d = screened_detuning(grid, w, s)?;
    let worst = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if worst > 1e-6 * grid.u12 {
        return Err(Error::Numeric(format!(
            "screened detuning does not vanish at the root: {worst:e}"
        )));
    }
    Ok(w)
}

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::Spin;

use super::grid::{pairwise_sum, BandGrid};
use super::screening::{band_edge, bs_detuning, exciton_frequency, screened_detuning};

/// Floquet-renormalised lower band and its effective hopping at Gamma.
#[derive(Debug, Clone)]
pub struct FloquetBand {
    pub eps: Vec<f64>,
    pub t_eff: f64,
}

/// `t` of a field `f ~ const + 2 t (cos kx + cos ky)` near Gamma.
///
/// Uses the stencil `[f(h) + f(-h) - 2 f(0)] / (4 (cos h - 1))` with one grid
/// step `h`, which returns `t` exactly for a cosine band, averaged over the
/// available directions.
pub fn effective_hopping(grid: &BandGrid, field: &[f64]) -> Result<f64> {
    if field.len() != grid.len() {
        return Err(Error::domain("field does not match the grid"));
    }
    let mut acc = Vec::new();
    for (n, step) in [(grid.nx, grid.index(1, 0)), (grid.ny, grid.index(0, 1))] {
        if n < 3 {
            continue;
        }
        let h = 2.0 * PI / n as f64;
        let lap = field[step] + field[grid.neg(step)] - 2.0 * field[0];
        acc.push(lap / (4.0 * (h.cos() - 1.0)));
    }
    if acc.is_empty() {
        return Err(Error::domain("grid too coarse for a curvature at Gamma"));
    }
    Ok(acc.iter().sum::<f64>() / acc.len() as f64)
}

/// `eps~_k = eps_{k,1} - g^2/Delta_{k,s} - g^2/Delta^BS_{k,s}`.
pub fn floquet_band(grid: &BandGrid, omega: f64, g: f64, s: Spin) -> Result<FloquetBand> {
    let d = screened_detuning(grid, omega, s)?;
    let dbs = bs_detuning(grid, omega, s)?;
    if let Some(i) = d.iter().chain(&dbs).position(|x| x.abs() < 1e-12) {
        return Err(Error::BandResonance {
            k: i % grid.len(),
            value: 0.0,
        });
    }
    let g2 = g * g;
    let eps: Vec<f64> = (0..grid.len())
        .map(|i| grid.eps1[i] - g2 / d[i] - g2 / dbs[i])
        .collect();
    let t_eff = effective_hopping(grid, &eps)?;
    Ok(FloquetBand { eps, t_eff })
}

/// Stark to Bloch-Siegert ratio per momentum with its two-level comparator.
#[derive(Debug, Clone)]
pub struct StarkBsRatio {
    /// `Delta^BS_{k,s} / Delta_{k,s}`; the drive strength cancels.
    pub ratio: Vec<f64>,
    /// Exciton resonance, or the band edge when `U12 = 0`.
    pub omega_ex: f64,
    /// `(omega_ex + omega) / (omega_ex - omega)`: magnitudes of the TLA Stark
    /// and BS shifts, positive below the resonance like `ratio`.
    pub tla: f64,
}

pub fn stark_bs_ratio(grid: &BandGrid, omega: f64, s: Spin) -> Result<StarkBsRatio> {
    let d = screened_detuning(grid, omega, s)?;
    let dbs = bs_detuning(grid, omega, s)?;
    let omega_ex = if grid.u12 == 0.0 {
        band_edge(grid, s)
    } else {
        exciton_frequency(grid, s)?
    };
    if (omega_ex - omega).abs() < 1e-12 {
        return Err(Error::resonance("laser on the exciton resonance"));
    }
    Ok(StarkBsRatio {
        ratio: d.iter().zip(&dbs).map(|(a, b)| b / a).collect(),
        omega_ex,
        tla: (omega_ex + omega) / (omega_ex - omega),
    })
}

/// Drive and cavity couplings in the units of the band grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavitySpec {
    pub g: f64,
    /// Zero-momentum electron-cavity coupling `sqrt(N) g_{c,R}`.
    pub gc0: f64,
    /// Laser-cavity detuning.
    pub delta_c: f64,
}

impl CavitySpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_c.abs() > 0.0) {
            return Err(Error::domain("cavity detuning must be nonzero"));
        }
        Ok(())
    }
}

/// `-|g gc0|^2 / (N Delta_c Delta_{k',s'} Delta_{k,s})`.
pub fn cavity_forward_interaction(
    grid: &BandGrid,
    cav: &CavitySpec,
    omega: f64,
    k: usize,
    kp: usize,
    s: Spin,
    sp: Spin,
) -> Result<f64> {
    cav.validate()?;
    if k >= grid.len() || kp >= grid.len() {
        return Err(Error::domain("momentum index outside the grid"));
    }
    let d = screened_detuning(grid, omega, s)?;
    let dp = if sp == s {
        d.clone()
    } else {
        screened_detuning(grid, omega, sp)?
    };
    let den = grid.len() as f64 * cav.delta_c * dp[kp] * d[k];
    if den.abs() < 1e-300 {
        return Err(Error::resonance("screened detuning vanishes"));
    }
    Ok(-(cav.g * cav.gc0).powi(2) / den)
}

/// Cavity self-energy factor `eta = (1/pi^2)(gc0^2/Delta_c) int_k 1/Delta_{k,s}`
/// with `int_k = (2 pi)^2 / N sum_k`.
pub fn pomeranchuk_eta(grid: &BandGrid, cav: &CavitySpec, omega: f64, s: Spin) -> Result<f64> {
    cav.validate()?;
    let d = screened_detuning(grid, omega, s)?;
    if d.iter().any(|x| x.abs() < 1e-300) {
        return Err(Error::resonance("screened detuning vanishes"));
    }
    let inv: Vec<f64> = d.iter().map(|x| 1.0 / x).collect();
    let mean = pairwise_sum(&inv) / grid.len() as f64;
    Ok(4.0 * cav.gc0 * cav.gc0 / cav.delta_c * mean)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PomeranchukCheck {
    /// `(1/pi) |g gc0|^2 / (Delta_c Delta_Gamma^2)`.
    pub lhs: f64,
    /// `t~ - eta (t1 - t~)`.
    pub rhs: f64,
    pub eta: f64,
    /// Floquet-renormalised hopping at Gamma without the cavity.
    pub t_eff: f64,
    /// Bare lower-band hopping from the same stencil.
    pub t_bare: f64,
    pub triggered: bool,
}

/// s-wave Pomeranchuk criterion for a Fermi circle of radius `kf` at Gamma.
pub fn pomeranchuk_check(
    grid: &BandGrid,
    cav: &CavitySpec,
    omega: f64,
    kf: f64,
    s: Spin,
) -> Result<PomeranchukCheck> {
    if kf > PI / 4.0 {
        return Err(Error::domain(
            "the criterion assumes a tiny Fermi circle (kf <= pi/4)",
        ));
    }
    let grid = grid.clone().with_fermi_hole(kf)?;
    let d = screened_detuning(&grid, omega, s)?;
    let dg = d[grid.gamma()];
    let lhs = (cav.g * cav.gc0).powi(2) / (PI * cav.delta_c * dg * dg);
    let eta = pomeranchuk_eta(&grid, cav, omega, s)?;
    let t_eff = floquet_band(&grid, omega, cav.g, s)?.t_eff;
    let t_bare = effective_hopping(&grid, &grid.eps1)?;
    let rhs = t_eff - eta * (t_bare - t_eff);
    Ok(PomeranchukCheck {
        lhs,
        rhs,
        eta,
        t_eff,
        t_bare,
        triggered: lhs > rhs,
    })
}

/// [`pomeranchuk_check`] at laser-exciton detuning `delta_ex`, measured from
/// the exciton resonance of the hole-doped grid.
pub fn pomeranchuk_at_detuning(
    grid: &BandGrid,
    cav: &CavitySpec,
    delta_ex: f64,
    kf: f64,
    s: Spin,
) -> Result<(f64, PomeranchukCheck)> {
    let doped = grid.clone().with_fermi_hole(kf)?;
    let omega = exciton_frequency(&doped, s)? - delta_ex;
    Ok((omega, pomeranchuk_check(grid, cav, omega, kf, s)?))
}

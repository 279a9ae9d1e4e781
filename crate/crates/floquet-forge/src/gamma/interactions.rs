use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::Spin;
use crate::kspace::{pairwise_sum, BandGrid, CavitySpec};

use super::matrix::{gamma_matrix, gamma_mf, GammaMatrix, SINGULAR_TOL};
use super::profile::InteractionProfile;

/// `omega + eps_{k,1} - eps_{k,2}`, the interband resolvent denominator.
fn resolvent(grid: &BandGrid, omega: f64, k: usize) -> Result<f64> {
    let d = omega + grid.eps1[k] - grid.eps2[k];
    if d.abs() < SINGULAR_TOL {
        return Err(Error::BandResonance { k, value: d });
    }
    Ok(d)
}

impl GammaMatrix {
    /// `Gamma^-1 b` for a complex right-hand side, by LU.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(self.solve_many(&[b])?.pop().unwrap_or_default())
    }

    /// [`GammaMatrix::solve`] for several right-hand sides sharing one factorisation.
    pub fn solve_many(&self, bs: &[&[Complex64]]) -> Result<Vec<Vec<Complex64>>> {
        let n = self.dim();
        if bs.iter().any(|b| b.len() != n) {
            return Err(Error::domain("right-hand side does not match the grid"));
        }
        let rhs = DMatrix::from_fn(n, 2 * bs.len(), |i, c| {
            if c % 2 == 0 {
                bs[c / 2][i].re
            } else {
                bs[c / 2][i].im
            }
        });
        let x = self
            .entries
            .clone()
            .lu()
            .solve(&rhs)
            .filter(|x| x.iter().all(|v| v.is_finite()))
            .ok_or_else(|| {
                Error::resonance(format!(
                    "Gamma(k={}, q={}) singular at omega = {}",
                    self.k, self.q, self.omega
                ))
            })?;
        let scale = self.entries.amax().max(1.0);
        if x.amax() * SINGULAR_TOL * scale > rhs.amax().max(f64::MIN_POSITIVE) {
            return Err(Error::resonance(format!(
                "Gamma(k={}, q={}) nearly singular at omega = {}",
                self.k, self.q, self.omega
            )));
        }
        Ok((0..bs.len())
            .map(|c| {
                (0..n)
                    .map(|i| Complex64::new(x[(i, 2 * c)], x[(i, 2 * c + 1)]))
                    .collect()
            })
            .collect())
    }
}

/// Source of the scattering strength split as `(J_{k'}/R_{k'}, -J_k/R_k)`,
/// each times `V_{k'-k} / N`.
fn scattering_source_parts(
    grid: &BandGrid,
    prof: &InteractionProfile,
    omega: f64,
    k: usize,
    s: Spin,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = grid.len() as f64;
    let jk = prof.j(k, s) / resolvent(grid, omega, k)?;
    let mut direct = Vec::with_capacity(grid.len());
    let mut counter = Vec::with_capacity(grid.len());
    for kp in 0..grid.len() {
        let v = prof.vq(grid.sub(kp, k)) / n;
        direct.push(prof.j(kp, s) / resolvent(grid, omega, kp)? * v);
        counter.push(-jk * v);
    }
    Ok((direct, counter))
}

fn scattering_source(
    grid: &BandGrid,
    prof: &InteractionProfile,
    omega: f64,
    k: usize,
    s: Spin,
) -> Result<Vec<Complex64>> {
    let (d, c) = scattering_source_parts(grid, prof, omega, k, s)?;
    Ok(d.into_iter().zip(c).map(|(a, b)| a + b).collect())
}

/// `V^{ss'}_{k,k1,q}` for every `k1`. The strength does not depend on `s'`.
pub fn scattering_row(
    grid: &BandGrid,
    prof: &InteractionProfile,
    g: f64,
    omega: f64,
    k: usize,
    q: usize,
    s: Spin,
) -> Result<Vec<Complex64>> {
    let gm = gamma_matrix(grid, prof, k, q, omega)?;
    let src = scattering_source(grid, prof, omega, k, s)?;
    // Gamma is symmetric, so sum_k' c_k' [Gamma^-1]_{k',k1} = (Gamma^-1 c)_k1
    Ok(gm.solve(&src)?.into_iter().map(|x| x * g * g).collect())
}

#[allow(clippy::too_many_arguments)]
pub fn scattering_strength(
    grid: &BandGrid,
    prof: &InteractionProfile,
    g: f64,
    omega: f64,
    k: usize,
    k1: usize,
    q: usize,
    s: Spin,
) -> Result<Complex64> {
    if k1 >= grid.len() {
        return Err(Error::domain("momentum index outside the grid"));
    }
    Ok(scattering_row(grid, prof, g, omega, k, q, s)?[k1])
}

/// Hermitised weight `(V_{k,k1,q} J*_{k1} + J_k V*_{k1,k,q}) / 2` of the
/// cavity-independent interaction.
#[allow(clippy::too_many_arguments)]
pub fn interaction_weight(
    grid: &BandGrid,
    prof: &InteractionProfile,
    g: f64,
    omega: f64,
    k: usize,
    k1: usize,
    q: usize,
    s: Spin,
) -> Result<Complex64> {
    let a = scattering_strength(grid, prof, g, omega, k, k1, q, s)?;
    let b = scattering_strength(grid, prof, g, omega, k1, k, q, s)?;
    Ok(0.5 * (a * prof.j(k1, s).conj() + prof.j(k, s) * b.conj()))
}

/// Screened denominators `1/Delta_kf = sum_k J_k [Gamma_MF^-1]_{k,kf}` over `kf`.
pub fn mf_screened_denominator(
    grid: &BandGrid,
    prof: &InteractionProfile,
    omega: f64,
    s: Spin,
) -> Result<Vec<Complex64>> {
    let inv = gamma_mf(grid, prof, omega)?.solve(prof.couplings(s))?;
    inv.into_iter()
        .enumerate()
        .map(|(kf, x)| {
            if x.norm() < 1e-300 {
                Err(Error::Numeric(format!(
                    "screened denominator diverges at kf index {kf}"
                )))
            } else {
                Ok(1.0 / x)
            }
        })
        .collect()
}

/// Global-range cavity-mediated interaction `U^{ss'}_{kf,kf'}`.
#[allow(clippy::too_many_arguments)]
pub fn cavity_global_interaction(
    grid: &BandGrid,
    prof: &InteractionProfile,
    cav: &CavitySpec,
    omega: f64,
    kf: usize,
    kfp: usize,
    s: Spin,
    sp: Spin,
) -> Result<f64> {
    cav.validate()?;
    if kf >= grid.len() || kfp >= grid.len() {
        return Err(Error::domain("momentum index outside the grid"));
    }
    let inv = gamma_mf(grid, prof, omega)?.inverse()?;
    let jf = prof.j(kfp, sp).conj();
    let a: Vec<f64> = (0..grid.len())
        .map(|k| inv[(k, kf)] * (prof.j(k, s) * jf).re)
        .collect();
    let col: Vec<f64> = (0..grid.len()).map(|k| inv[(k, kfp)]).collect();
    let pre = (cav.g * cav.gc0).powi(2) / (grid.len() as f64 * cav.delta_c);
    Ok(-pre * pairwise_sum(&a) * pairwise_sum(&col))
}

/// K-point shifts from the driven lower band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombMix {
    /// `sum_k Re[V_{k,k,K-k} J*_k]`.
    pub sigma: f64,
    /// The part of `sigma` from the `J_{k'}` term of the scattering source,
    /// the only one sensitive to the relative phases of `J`.
    pub direct: f64,
    /// Uncorrelated AC Stark shift `g^2 |J_K|^2 / (omega + eps_{K,12})`.
    pub stark: f64,
}

pub fn uncorrelated_stark_shift(
    grid: &BandGrid,
    prof: &InteractionProfile,
    g: f64,
    omega: f64,
    k: usize,
    s: Spin,
) -> Result<f64> {
    Ok(g * g * prof.j(k, s).norm_sqr() / resolvent(grid, omega, k)?)
}

/// Coulomb-mixing self-energy at the valley point `kv`, where the profile must
/// not couple to light.
pub fn coulomb_mix_selfenergy(
    grid: &BandGrid,
    prof: &InteractionProfile,
    g: f64,
    omega: f64,
    kv: usize,
    s: Spin,
) -> Result<CoulombMix> {
    prof.check(grid)?;
    if kv >= grid.len() {
        return Err(Error::domain("momentum index outside the grid"));
    }
    if prof.j(kv, s).norm() > 1e-12 {
        return Err(Error::domain(
            "the profile couples to light at the valley point",
        ));
    }
    let terms: Vec<(f64, f64)> = (0..grid.len())
        .into_par_iter()
        .map(|k| -> Result<(f64, f64)> {
            let jk = prof.j(k, s);
            if jk.norm() == 0.0 {
                return Ok((0.0, 0.0));
            }
            let gm = gamma_matrix(grid, prof, k, grid.sub(kv, k), omega)?;
            let (d, c) = scattering_source_parts(grid, prof, omega, k, s)?;
            let x = gm.solve_many(&[&d, &c])?;
            let (vd, vc) = (x[0][k] * g * g, x[1][k] * g * g);
            Ok(((vd * jk.conj()).re, (vc * jk.conj()).re))
        })
        .collect::<Result<_>>()?;
    let direct: Vec<f64> = terms.iter().map(|t| t.0).collect();
    let total: Vec<f64> = terms.iter().map(|t| t.0 + t.1).collect();
    Ok(CoulombMix {
        sigma: pairwise_sum(&total),
        direct: pairwise_sum(&direct),
        stark: uncorrelated_stark_shift(grid, prof, g, omega, kv, s)?,
    })
}

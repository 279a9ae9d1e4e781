use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{build_two_band_chain, two_band_pair_basis, TwoBandChainParams};

#[derive(Debug, Clone)]
pub struct AbsorbanceSpectrum {
    pub omega: Vec<f64>,
    pub alpha: Vec<f64>,
    /// Dipole-active excitation energies and their weights, ascending.
    pub resonances: Vec<(f64, f64)>,
}

impl AbsorbanceSpectrum {
    /// Lowest excitation carrying at least `rel` of the largest weight.
    pub fn lowest_resonance(&self, rel: f64) -> Option<f64> {
        let wmax = self.resonances.iter().map(|r| r.1).fold(0.0, f64::max);
        self.resonances
            .iter()
            .find(|r| r.1 >= rel * wmax)
            .map(|r| r.0)
    }

    /// Grid point of the largest `alpha`.
    pub fn peak(&self) -> Option<f64> {
        let i = (0..self.alpha.len()).max_by(|&a, &b| self.alpha[a].total_cmp(&self.alpha[b]))?;
        Some(self.omega[i])
    }
}

/// `alpha(omega) = -(1/pi) Im <G| d (omega + E_G - H + i gamma)^-1 d |G>` by a
/// Lehmann sum over the full-lower-band plus one-pair sector.
pub fn absorbance_ed(
    p: &TwoBandChainParams,
    omega_grid: &[f64],
    gamma: f64,
) -> Result<AbsorbanceSpectrum> {
    if !(gamma > 0.0) {
        return Err(Error::domain("broadening must be positive"));
    }
    let b = Arc::new(two_band_pair_basis(p)?);
    let ops = build_two_band_chain(p, &b)?;
    let lower: Vec<usize> = (0..p.l).collect();
    let g_idx = b
        .index(b.pattern(&lower, &lower))
        .ok_or_else(|| Error::domain("full lower band missing"))?;
    let mut g = vec![Complex64::new(0.0, 0.0); b.dim()];
    g[g_idx] = Complex64::new(1.0, 0.0);
    let hg = ops.h0.apply(&g);
    let e_g = hg[g_idx].re;
    let leak: f64 = hg
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != g_idx)
        .map(|(_, x)| x.norm())
        .fold(0.0, f64::max);
    if leak > 1e-12 {
        return Err(Error::Numeric(format!(
            "full lower band is not an eigenstate (leak {leak:e})"
        )));
    }
    let dg = ops.dipole.apply(&g);
    let eig = ops.h0.to_dense().symmetric_eigen();
    let mut resonances: Vec<(f64, f64)> = (0..b.dim())
        .map(|n| {
            let v = eig.eigenvectors.column(n);
            let amp: Complex64 = v.iter().zip(&dg).map(|(a, x)| a.conj() * x).sum();
            (eig.eigenvalues[n] - e_g, amp.norm_sqr())
        })
        .filter(|r| r.1 > 1e-12)
        .collect();
    resonances.sort_by(|a, b| a.0.total_cmp(&b.0));
    let alpha = omega_grid
        .iter()
        .map(|&w| {
            resonances
                .iter()
                .map(|&(e, wt)| {
                    wt * gamma / std::f64::consts::PI / ((w - e).powi(2) + gamma * gamma)
                })
                .sum()
        })
        .collect();
    Ok(AbsorbanceSpectrum {
        omega: omega_grid.to_vec(),
        alpha,
        resonances,
    })
}

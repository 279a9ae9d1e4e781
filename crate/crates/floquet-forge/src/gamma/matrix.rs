use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::kspace::{pairwise_sum, BandGrid};

use super::profile::InteractionProfile;

/// Relative size of the smallest eigenvalue of a Gamma matrix below which it
/// counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Pair-propagator inverse over the grid at fixed `(k, q, omega)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix {
    pub k: usize,
    pub q: usize,
    pub omega: f64,
    pub entries: DMatrix<f64>,
}

/// `sum_{q != 0} V_q / N` with exactly `N - 1` terms.
pub fn exchange_sum(grid: &BandGrid, prof: &InteractionProfile) -> f64 {
    let v: Vec<f64> = (1..grid.len()).map(|q| prof.vq(q)).collect();
    pairwise_sum(&v) / grid.len() as f64
}

/// Bare pair energies `omega + eps_{k,1} - eps_{k+q,1} + eps_{q+p,1} - eps_{p,2}`.
pub fn bare_pair_energies(grid: &BandGrid, k: usize, q: usize, omega: f64) -> Vec<f64> {
    let kq = grid.add(k, q);
    (0..grid.len())
        .map(|p| omega + grid.eps1[k] - grid.eps1[kq] + grid.eps1[grid.add(q, p)] - grid.eps2[p])
        .collect()
}

/// RPA kernel after the mean-field decoupling:
/// `eta_{k,k'} = delta_{kk'} sum_{q != 0} V_q / N - (1 - delta_{kk'}) V_{k-k'} / N`.
pub fn rpa_kernel(grid: &BandGrid, prof: &InteractionProfile) -> Result<DMatrix<f64>> {
    prof.check(grid)?;
    let n = grid.len();
    let x = exchange_sum(grid, prof);
    Ok(DMatrix::from_fn(n, n, |a, b| {
        if a == b {
            x
        } else {
            -prof.vq(grid.sub(a, b)) / n as f64
        }
    }))
}

pub fn gamma_matrix(
    grid: &BandGrid,
    prof: &InteractionProfile,
    k: usize,
    q: usize,
    omega: f64,
) -> Result<GammaMatrix> {
    prof.check(grid)?;
    let n = grid.len();
    if k >= n || q >= n {
        return Err(Error::domain("momentum index outside the grid"));
    }
    let diag = bare_pair_energies(grid, k, q, omega);
    let x = exchange_sum(grid, prof);
    let entries = DMatrix::from_fn(n, n, |a, b| {
        if a == b {
            diag[a] - x
        } else {
            prof.vq(grid.sub(a, b)) / n as f64
        }
    });
    Ok(GammaMatrix {
        k,
        q,
        omega,
        entries,
    })
}

/// The momentum-independent `q = 0` matrix.
pub fn gamma_mf(grid: &BandGrid, prof: &InteractionProfile, omega: f64) -> Result<GammaMatrix> {
    gamma_matrix(grid, prof, 0, 0, omega)
}

/// One eigen-resonance `E_j` with its eigenvector `phi_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResonance {
    pub energy: f64,
    pub vector: DVector<f64>,
}

impl GammaMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// The same family member at another frequency: `omega` enters only
    /// through the identity.
    pub fn at(&self, omega: f64) -> GammaMatrix {
        let mut entries = self.entries.clone();
        for i in 0..self.dim() {
            entries[(i, i)] += omega - self.omega;
        }
        GammaMatrix {
            entries,
            omega,
            ..*self
        }
    }

    pub fn asymmetry(&self) -> f64 {
        (&self.entries - self.entries.transpose()).amax()
    }

    fn eigen(&self) -> SymmetricEigen<f64, nalgebra::Dyn> {
        self.entries.clone().symmetric_eigen()
    }

    /// Inverse by spectral decomposition, failing within [`SINGULAR_TOL`] of an
    /// eigen-resonance.
    pub fn inverse(&self) -> Result<DMatrix<f64>> {
        let eig = self.eigen();
        let scale = eig.eigenvalues.amax().max(1.0);
        if let Some(j) = (0..self.dim()).find(|&j| eig.eigenvalues[j].abs() < SINGULAR_TOL * scale)
        {
            return Err(Error::resonance(format!(
                "Gamma(k={}, q={}) singular at omega = {}: eigen-resonance E = {}",
                self.k,
                self.q,
                self.omega,
                self.omega - eig.eigenvalues[j]
            )));
        }
        let inv: DVector<f64> = eig.eigenvalues.map(|l| 1.0 / l);
        Ok(&eig.eigenvectors * DMatrix::from_diagonal(&inv) * eig.eigenvectors.transpose())
    }
}

/// Eigen-resonances of `Gamma = sum_j (omega - E_j) phi_j phi_j^T`, ascending.
pub fn eigen_sign_analysis(gm: &GammaMatrix) -> Vec<EigenResonance> {
    let eig = gm.eigen();
    let mut out: Vec<EigenResonance> = (0..gm.dim())
        .map(|j| EigenResonance {
            energy: gm.omega - eig.eigenvalues[j],
            vector: eig.eigenvectors.column(j).into_owned(),
        })
        .collect();
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    out
}

/// Single-pole fit `[Gamma^-1]_{p,p'} ~ c / (omega - E_j)` on both sides of `E_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleFit {
    pub energy: f64,
    /// Fitted residue `c`.
    pub residue: f64,
    /// `phi_j(p) phi_j(p')`.
    pub predicted: f64,
    /// Largest relative deviation of the samples from `c / (omega - E_j)`.
    pub fit_error: f64,
}

/// Fits the element `(p, pp)` at offsets up to `window` around the `j`-th
/// eigen-resonance. The window should exclude the neighbouring resonances.
pub fn pole_fit(gm: &GammaMatrix, j: usize, p: usize, pp: usize, window: f64) -> Result<PoleFit> {
    let res = eigen_sign_analysis(gm);
    let r = res
        .get(j)
        .ok_or_else(|| Error::domain("no such eigen-resonance"))?;
    if !(window > 0.0) {
        return Err(Error::domain("window must be positive"));
    }
    let offsets: Vec<f64> = [1.0, 0.5, 0.25, -0.25, -0.5, -1.0]
        .iter()
        .map(|f| f * window)
        .collect();
    let mut samples = Vec::with_capacity(offsets.len());
    for &d in &offsets {
        let inv = gm.at(r.energy + d).inverse()?;
        samples.push((d, inv[(p, pp)]));
    }
    let residue = samples.iter().map(|(d, x)| d * x).sum::<f64>() / samples.len() as f64;
    let fit_error = samples
        .iter()
        .map(|(d, x)| ((x - residue / d) / x).abs())
        .fold(0.0, f64::max);
    Ok(PoleFit {
        energy: r.energy,
        residue,
        predicted: r.vector[p] * r.vector[pp],
        fit_error,
    })
}

/// Largest eigenvalue modulus of a general real matrix. Uses a bounded Schur
/// iteration with a Gelfand estimate `|A^m|^(1/m)` as fallback.
fn spectral_radius(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if let Some(schur) = nalgebra::Schur::try_new(a.clone(), f64::EPSILON, 200 * n.max(1)) {
        return schur
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
    }
    // repeated squaring with renormalisation, m = 2^40
    let mut m = a.clone();
    let mut log_scale = 0.0;
    for j in 0..40 {
        let nrm = m.norm();
        if nrm == 0.0 {
            return 0.0;
        }
        m /= nrm;
        log_scale += nrm.ln() / 2f64.powi(j);
        m = &m * &m;
    }
    (log_scale + m.norm().ln() / 2f64.powi(40)).exp()
}

/// Truncated ladder `sum_{n < n_terms} (G eta)^n G` against `Gamma^-1`.
#[derive(Debug, Clone)]
pub struct SeriesComparison {
    pub series_sum: DMatrix<f64>,
    pub inverse: DMatrix<f64>,
    pub max_dev: f64,
    /// Spectral radius of `G eta`; the series converges only below 1.
    pub spectral_radius: f64,
    pub convergent: bool,
}

pub fn series_vs_inverse(
    grid: &BandGrid,
    prof: &InteractionProfile,
    k: usize,
    q: usize,
    omega: f64,
    n_terms: usize,
) -> Result<SeriesComparison> {
    let gm = gamma_matrix(grid, prof, k, q, omega)?;
    let inverse = gm.inverse()?;
    let bare = bare_pair_energies(grid, k, q, omega);
    if let Some(p) = bare.iter().position(|e| e.abs() < SINGULAR_TOL) {
        return Err(Error::resonance(format!(
            "bare pair energy vanishes at p index {p}"
        )));
    }
    let g = DMatrix::from_diagonal(&DVector::from_iterator(
        bare.len(),
        bare.iter().map(|e| 1.0 / e),
    ));
    let ge = &g * rpa_kernel(grid, prof)?;
    let spectral_radius = spectral_radius(&ge);
    let mut term = g.clone();
    let mut series_sum = DMatrix::zeros(g.nrows(), g.ncols());
    for _ in 0..n_terms {
        series_sum += &term;
        term = &ge * term;
    }
    let max_dev = (&series_sum - &inverse).amax();
    Ok(SeriesComparison {
        series_sum,
        inverse,
        max_dev,
        spectral_radius,
        convergent: spectral_radius < 1.0,
    })
}

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{SectorBasis, SparseOperator};
use crate::sylvester::HarmonicSeries;

use super::krylov::{expm_apply, DEFAULT_MAX_KRYLOV};

/// Per-step Krylov tolerance relative to the state norm.
pub const STEP_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
    pub generator_tag: String,
}

impl Trajectory {
    /// Largest `| |psi(t)| - 1 |` along the trajectory.
    pub fn norm_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Product CDW state with doublons on the odd sites `1, 3, 5, ...`.
pub fn cdw_state(b: &Arc<SectorBasis>) -> Result<Vec<Complex64>> {
    let l = b.n_orb();
    let n = l.div_ceil(2);
    if b.n_up() != n || b.n_down() != n {
        return Err(Error::domain(format!(
            "CDW on {l} sites needs {n} electrons per spin"
        )));
    }
    let sites: Vec<usize> = (0..l).step_by(2).collect();
    let idx = b
        .index(b.pattern(&sites, &sites))
        .ok_or_else(|| Error::domain("CDW pattern excluded by the basis restriction"))?;
    let mut psi = vec![Complex64::new(0.0, 0.0); b.dim()];
    psi[idx] = Complex64::new(1.0, 0.0);
    Ok(psi)
}

fn grid(t_final: f64, dt: f64, sample_every: f64) -> Result<(usize, usize)> {
    if !(dt > 0.0) || !(t_final >= 0.0) || !(sample_every > 0.0) {
        return Err(Error::domain(
            "time grid needs dt > 0, t_final >= 0, sample interval > 0",
        ));
    }
    let steps = (t_final / dt).round() as usize;
    let stride = (sample_every / dt).round() as usize;
    if stride == 0 || ((steps as f64) * dt - t_final).abs() > 1e-9 * t_final.max(1.0) {
        return Err(Error::domain("t_final must be a multiple of dt"));
    }
    if ((stride as f64) * dt - sample_every).abs() > 1e-9 * sample_every || steps % stride != 0 {
        return Err(Error::domain(
            "sample interval must be a multiple of dt dividing t_final",
        ));
    }
    Ok((steps, stride))
}

/// Midpoint-exponential propagation of `H(t)`, sampled every `sample_every`.
pub fn evolve_exact(
    series: &HarmonicSeries,
    psi0: &[Complex64],
    t_final: f64,
    dt: f64,
    sample_every: f64,
) -> Result<Trajectory> {
    let w = series.omega();
    if dt > 2.0 * std::f64::consts::PI / (20.0 * w) * (1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "dt = {dt} exceeds 2 pi / (20 omega)"
        )));
    }
    let (steps, stride) = grid(t_final, dt, sample_every)?;
    let n = psi0.len();
    let mut psi = psi0.to_vec();
    let mut times = vec![0.0];
    let mut states = vec![psi.clone()];
    let mut scratch = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..steps {
        let tm = (k as f64 + 0.5) * dt;
        let scratch_cell = std::cell::RefCell::new(&mut scratch);
        let apply = |x: &[Complex64], y: &mut [Complex64]| {
            series.apply_at(tm, x, y, &mut scratch_cell.borrow_mut());
        };
        psi = expm_apply(apply, &psi, dt, STEP_TOL, DEFAULT_MAX_KRYLOV)
            .map_err(|e| Error::Numeric(format!("step {k} at t = {tm}: {e}")))?;
        if (k + 1) % stride == 0 {
            times.push((k + 1) as f64 * dt);
            states.push(psi.clone());
        }
    }
    Ok(Trajectory {
        times,
        states,
        generator_tag: "exact".into(),
    })
}

/// `exp(-i H t) psi0` at each of the increasing `times`.
pub fn evolve_static(
    h: &SparseOperator,
    psi0: &[Complex64],
    times: &[f64],
    tag: &str,
) -> Result<Trajectory> {
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("times must be strictly increasing"));
    }
    let mut states = Vec::with_capacity(times.len());
    let mut psi = psi0.to_vec();
    let mut last = 0.0;
    for &t in times {
        psi = expm_apply(
            |x, y| h.matvec(x, y),
            &psi,
            t - last,
            STEP_TOL,
            DEFAULT_MAX_KRYLOV,
        )?;
        last = t;
        states.push(psi.clone());
    }
    Ok(Trajectory {
        times: times.to_vec(),
        states,
        generator_tag: tag.into(),
    })
}

/// `L(t) = |<psi0|psi(t)>|^2`.
pub fn return_rate(traj: &Trajectory, psi0: &[Complex64]) -> Vec<f64> {
    traj.states
        .iter()
        .map(|s| {
            psi0.iter()
                .zip(s)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
                .norm_sqr()
                .min(1.0)
        })
        .collect()
}

fn trapezoid(times: &[f64], f: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(f.windows(2))
        .map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1]))
        .sum()
}

/// Normalised root-mean-square deviation `sqrt(<(L - L_ex)^2>) / <L_ex>` with
/// time averages by the trapezoidal rule.
pub fn nrmse(times: &[f64], approx: &[f64], exact: &[f64]) -> Result<f64> {
    if times.len() != approx.len() || times.len() != exact.len() || times.len() < 2 {
        return Err(Error::domain(
            "nrmse needs a common grid of at least two points",
        ));
    }
    let span = times[times.len() - 1] - times[0];
    let sq: Vec<f64> = approx
        .iter()
        .zip(exact)
        .map(|(a, e)| (a - e) * (a - e))
        .collect();
    let mean_ex = trapezoid(times, exact) / span;
    if mean_ex == 0.0 {
        return Err(Error::domain("exact return rate averages to zero"));
    }
    Ok((trapezoid(times, &sq) / span).sqrt() / mean_ex)
}

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Result;
use crate::fock::{build_sector_basis, HubbardParams};
use crate::fswt::{floquet_h2, hfe_h};
use crate::sylvester::hubbard_series;

use super::evolve::{cdw_state, evolve_exact, evolve_static, nrmse, return_rate};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnRateSetup {
    pub params: HubbardParams,
    pub t_final: f64,
    pub dt: f64,
    /// Sampling interval of `L(t)`.
    pub sample: f64,
}

impl ReturnRateSetup {
    /// `t_f = 60/J`, `dt = 10^-3/J`, samples every `0.1/J`.
    pub fn standard(params: HubbardParams) -> Self {
        ReturnRateSetup {
            params,
            t_final: 60.0 / params.j,
            dt: 1e-3 / params.j,
            sample: 0.1 / params.j,
        }
    }
}

/// Exact return rate of the CDW quench against the stroboscopic predictions
/// of the FSWT (with `J^2` terms), HFE and bare Hamiltonians.
#[derive(Debug, Clone)]
pub struct ReturnRateBench {
    pub setup: ReturnRateSetup,
    pub times: Vec<f64>,
    pub exact: Vec<f64>,
    pub fswt: Vec<f64>,
    pub hfe: Vec<f64>,
    pub bare: Vec<f64>,
    pub nrmse_fswt: f64,
    pub nrmse_hfe: f64,
    pub nrmse_bare: f64,
    pub norm_drift: f64,
}

pub fn return_rate_benchmark(setup: &ReturnRateSetup) -> Result<ReturnRateBench> {
    let p = setup.params;
    p.validate()?;
    let n = p.l.div_ceil(2);
    let b = Arc::new(build_sector_basis(p.l, n, n)?);
    let psi0 = cdw_state(&b)?;
    let series = hubbard_series(&p, &b)?;
    let exact_traj = evolve_exact(&series, &psi0, setup.t_final, setup.dt, setup.sample)?;
    let times = exact_traj.times.clone();
    let exact = return_rate(&exact_traj, &psi0);
    let stro = |h: &crate::fock::SparseOperator, tag: &str| -> Result<Vec<f64>> {
        let mut l = vec![1.0];
        let tr = evolve_static(h, &psi0, &times[1..], tag)?;
        l.extend(return_rate(&tr, &psi0));
        Ok(l)
    };
    let fswt = stro(&floquet_h2(&p, &b, true)?, "fswt")?;
    let hfe = stro(&hfe_h(&p, &b, 2)?, "hfe")?;
    let bare = stro(series.static_part().unwrap(), "bare")?;
    Ok(ReturnRateBench {
        setup: *setup,
        nrmse_fswt: nrmse(&times, &fswt, &exact)?,
        nrmse_hfe: nrmse(&times, &hfe, &exact)?,
        nrmse_bare: nrmse(&times, &bare, &exact)?,
        norm_drift: exact_traj.norm_drift(),
        times,
        exact,
        fswt,
        hfe,
        bare,
    })
}

/// Independent benchmarks in parallel, in input order.
pub fn return_rate_sweep(setups: &[ReturnRateSetup]) -> Vec<Result<ReturnRateBench>> {
    setups.par_iter().map(return_rate_benchmark).collect()
}

/// `max_t |L_dt(t) - L_{dt/2}(t)|` of the exact propagation.
pub fn dt_halving_deviation(setup: &ReturnRateSetup) -> Result<f64> {
    let p = setup.params;
    let n = p.l.div_ceil(2);
    let b = Arc::new(build_sector_basis(p.l, n, n)?);
    let psi0 = cdw_state(&b)?;
    let series = hubbard_series(&p, &b)?;
    let (a, c) = rayon::join(
        || evolve_exact(&series, &psi0, setup.t_final, setup.dt, setup.sample),
        || evolve_exact(&series, &psi0, setup.t_final, setup.dt / 2.0, setup.sample),
    );
    let (la, lc) = (return_rate(&a?, &psi0), return_rate(&c?, &psi0));
    Ok(la
        .iter()
        .zip(&lc)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

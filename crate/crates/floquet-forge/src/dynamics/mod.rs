//! Exact and stroboscopic time propagation, the return-rate benchmark and the
//! exact-diagonalisation absorbance oracle.

mod absorbance;
mod bench;
mod evolve;
mod krylov;

pub use absorbance::{absorbance_ed, AbsorbanceSpectrum};
pub use bench::{
    dt_halving_deviation, return_rate_benchmark, return_rate_sweep, ReturnRateBench,
    ReturnRateSetup,
};
pub use evolve::{
    cdw_state, evolve_exact, evolve_static, nrmse, return_rate, Trajectory, STEP_TOL,
};
pub use krylov::{expm_apply, DEFAULT_MAX_KRYLOV};

//! Finite-momentum pair propagators of the driven two-band semiconductor with
//! a general interaction `V_q` and momentum-dependent light coupling `J`.
//!
//! Frequencies enter through the interband resolvent `omega + eps_1 - eps_2`,
//! so the screened denominators here carry the opposite sign to the
//! detunings of [`crate::kspace`].

mod interactions;
mod matrix;
mod profile;

pub use interactions::{
    cavity_global_interaction, coulomb_mix_selfenergy, interaction_weight, mf_screened_denominator,
    scattering_row, scattering_strength, uncorrelated_stark_shift, CoulombMix,
};
pub use matrix::{
    bare_pair_energies, eigen_sign_analysis, exchange_sum, gamma_matrix, gamma_mf, pole_fit,
    rpa_kernel, series_vs_inverse, EigenResonance, GammaMatrix, PoleFit, SeriesComparison,
    SINGULAR_TOL,
};
pub use profile::InteractionProfile;

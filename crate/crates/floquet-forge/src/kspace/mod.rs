//! Brillouin-zone calculator for the driven two-band semiconductor: screened
//! detunings, the exciton resonance, the Floquet band and cavity-mediated
//! interactions.
//!
//! Energies are in the units of the band tables (eV for the shipped
//! parameters). Detunings are positive below resonance.

mod floquet;
mod grid;
mod screening;

pub use floquet::{
    cavity_forward_interaction, effective_hopping, floquet_band, pomeranchuk_at_detuning,
    pomeranchuk_check, pomeranchuk_eta, stark_bs_ratio, CavitySpec, FloquetBand, PomeranchukCheck,
    StarkBsRatio,
};
pub use grid::{pairwise_sum, BandGrid, CosineBands, ScreeningOccupation};
pub use screening::{
    band_edge, bare_detuning, bs_detuning, exciton_frequency, hartree_detuning, hartree_shift,
    ladder_sum, screened_detuning, t_matrix, BAND_RESONANCE_TOL,
};

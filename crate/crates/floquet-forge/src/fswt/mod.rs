//! Effective Floquet Hamiltonians: FSWT at orders `g^2` and `g^4`, the
//! high-frequency-expansion comparators, the strong-driving frame and the
//! large-`U` spin projection.

mod bessel;
mod chain;
mod strong;

pub use bessel::{bessel_j, bessel_j_orders, truncation_weight};
pub use chain::{
    dense_floquet_h2, floquet_h2, floquet_h2_terms, floquet_h4, floquet_h4_terms, floquet_h_order2,
    hfe_h, hfe_h_terms, j2_terms, spin_exchange, van_vleck,
};
pub use strong::{
    strong_drive_f1_terms, strong_drive_floquet, strong_drive_harmonics, StrongDriveModel,
    StrongDriveSeries,
};

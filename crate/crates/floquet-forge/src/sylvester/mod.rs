//! Operator-valued Sylvester equations `S + [f, H0] - j*omega*f = 0`, solved
//! densely in the eigenbasis of `H0`, by the Green-function rule for quadratic
//! `H0`, element-wise for diagonal `H0`, and analytically in hopping order
//! for the driven Hubbard chain.

mod coeffs;
mod dense;
mod green;
pub(crate) mod hubbard;
mod series;

pub use coeffs::{HopExpansionCoeffs, OccPoly};
pub use dense::{
    solve_dense, solve_diagonal, solve_hop_expansion, sum_ops, sylvester_residual, SylvesterSolver,
};
pub use green::green_rule_solve;
pub use hubbard::{
    f3_terms, hubbard_micromotion, hubbard_series, kinetic_terms, occ_poly_terms, solve_order2,
    y0_terms, y1_terms, y2_terms, z1_terms, RESONANCE_TOL,
};
pub use series::{HarmonicSeries, MicroMotion};

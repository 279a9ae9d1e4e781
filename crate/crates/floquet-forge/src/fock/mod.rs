//! Fermionic Fock-space engine: sector bases, term lists, sparse operators
//! and the chain model builders.

mod basis;
mod models;
mod sparse;
mod term;

pub use basis::{binomial, build_sector_basis, Restriction, SectorBasis, Spin};
pub use models::{
    bond_hopping, build_hubbard_operators, build_two_band_chain, double_occupancy, drive_terms,
    number_terms, sz_terms, two_band_pair_basis, two_band_terms, HubbardOperators, HubbardParams,
    TwoBandChainParams, TwoBandOperators,
};
pub use sparse::SparseOperator;
pub use term::{hop, occupation_poly, Op, OpKind, Term, TermList};

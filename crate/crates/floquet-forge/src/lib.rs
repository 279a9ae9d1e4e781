//! Floquet Schrieffer-Wolff transforms for driven lattice models.
//!
//! The crate is organised around the computational pipeline:
//!
//! * [`fock`] enumerates fixed-particle-number Fock sectors and materialises
//!   second-quantised term lists into sparse matrices.
//! * [`sylvester`] solves the operator Sylvester equations
//!   `S + [f, H0] - j*omega*f = 0` that define the micro-motion.
//! * [`fswt`] assembles effective Floquet Hamiltonians from micro-motions and
//!   the high-frequency-expansion comparators.
//! * [`dynamics`] propagates driven and static Hamiltonians exactly and
//!   computes the return-rate benchmark and the absorbance oracle.
//! * [`kspace`] and [`gamma`] evaluate screened Floquet-induced interactions
//!   of the driven two-band semiconductor on a Brillouin-zone grid.
//!
//! ```
//! use std::sync::Arc;
//! use floquet_forge::fock::{build_sector_basis, build_hubbard_operators, HubbardParams};
//!
//! let basis = Arc::new(build_sector_basis(2, 1, 1).unwrap());
//! let p = HubbardParams::new(2, 1.0, 4.0, 0.0, 10.0).unwrap();
//! let ops = build_hubbard_operators(&p, &basis).unwrap();
//! let mut e = ops.h.add(&ops.u_op).eigenvalues();
//! e.sort_by(f64::total_cmp);
//! assert!((e[0] - (2.0 - 8f64.sqrt())).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is how NaN gets rejected along with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod fock;
pub mod fswt;
pub mod gamma;
pub mod kspace;
pub mod sylvester;

#[cfg(any(doc, doctest))]
pub mod guide;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

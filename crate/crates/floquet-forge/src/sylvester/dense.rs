use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, ResonantPair, Result};
use crate::fock::SparseOperator;

/// Entries of the source below this fraction of its largest entry are not
/// checked for resonance.
const SOURCE_FLOOR: f64 = 1e-12;

/// Dense eigenbasis of a Hermitian `H0`, reusable across sources and shifts.
pub struct SylvesterSolver {
    basis: std::sync::Arc<crate::fock::SectorBasis>,
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl SylvesterSolver {
    pub fn new(h0: &SparseOperator) -> Result<Self> {
        if !h0.is_hermitian(1e-12) {
            return Err(Error::domain("H0 must be Hermitian"));
        }
        let eig = h0.to_dense().symmetric_eigen();
        Ok(SylvesterSolver {
            basis: h0.basis().clone(),
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn energies(&self) -> &[f64] {
        self.energies.as_slice()
    }

    /// Solve `S + [f, H0] - shift f = 0`; element-wise in the eigenbasis
    /// `f_ll' = S_ll' / (shift - (E_l' - E_l))`.
    pub fn solve(&self, source: &SparseOperator, shift: f64, tol: f64) -> Result<SparseOperator> {
        let v = &self.vectors;
        let s = v.adjoint() * source.to_dense() * v;
        let n = s.nrows();
        let scale = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut f = DMatrix::zeros(n, n);
        let mut bad = Vec::new();
        for l in 0..n {
            for lp in 0..n {
                let den = shift - (self.energies[lp] - self.energies[l]);
                let x = s[(l, lp)];
                if den.abs() < tol {
                    if x.norm() > SOURCE_FLOOR * scale {
                        bad.push(ResonantPair {
                            row: l,
                            col: lp,
                            denominator: den,
                        });
                    }
                    continue;
                }
                f[(l, lp)] = x / den;
            }
        }
        if !bad.is_empty() {
            return Err(Error::ResonantDenominator {
                detail: format!("shift {shift} matches a level spacing of H0"),
                pairs: bad,
            });
        }
        let out = v * f * v.adjoint();
        Ok(SparseOperator::from_dense(self.basis.clone(), &out, 1e-15))
    }
}

/// Dense eigenbasis solution of `source + [f, H0] - shift f = 0`.
pub fn solve_dense(
    h0: &SparseOperator,
    source: &SparseOperator,
    shift: f64,
    tol: f64,
) -> Result<SparseOperator> {
    SylvesterSolver::new(h0)?.solve(source, shift, tol)
}

/// Exact solution for an `H0` diagonal in the occupation basis:
/// `f_ab = S_ab / (shift - d_b + d_a)`.
pub fn solve_diagonal(
    diag: &[f64],
    source: &SparseOperator,
    shift: f64,
    tol: f64,
) -> Result<SparseOperator> {
    let scale = source.max_abs();
    let mut bad = Vec::new();
    let mut triplets = Vec::with_capacity(source.nnz());
    for (r, c, x) in source.entries() {
        let den = shift - diag[c] + diag[r];
        if den.abs() < tol {
            if x.norm() > SOURCE_FLOOR * scale {
                bad.push(ResonantPair {
                    row: r,
                    col: c,
                    denominator: den,
                });
            }
            continue;
        }
        triplets.push((r as u32, c as u32, x / den));
    }
    if !bad.is_empty() {
        return Err(Error::ResonantDenominator {
            detail: format!("shift {shift} matches a diagonal energy difference"),
            pairs: bad,
        });
    }
    Ok(SparseOperator::from_triplets(
        source.basis().clone(),
        triplets,
    ))
}

/// `|| source + [f, H0] - shift f ||_F`.
pub fn sylvester_residual(
    f: &SparseOperator,
    h0: &SparseOperator,
    source: &SparseOperator,
    shift: f64,
) -> f64 {
    source
        .add(&f.commutator(h0))
        .axpby(1.0, f, -shift)
        .frobenius_norm()
}

/// Hopping-order expansion of the solution of
/// `S + [f, h + D] - shift f = 0` with `D` diagonal: `f = sum_m y_m`, where
/// `y_0` solves `S + [y_0, D] - shift y_0 = 0` and
/// `y_{m+1}` solves `[y_m, h] + [y_{m+1}, D] - shift y_{m+1} = 0`.
pub fn solve_hop_expansion(
    h: &SparseOperator,
    diag: &[f64],
    source: &SparseOperator,
    shift: f64,
    max_order: usize,
    tol: f64,
) -> Result<Vec<SparseOperator>> {
    let mut out = vec![solve_diagonal(diag, source, shift, tol)?];
    for _ in 0..max_order {
        let next = out.last().unwrap().commutator(h);
        out.push(solve_diagonal(diag, &next, shift, tol)?);
    }
    Ok(out)
}

/// Sum of operators (all on the same basis).
pub fn sum_ops(ops: &[SparseOperator]) -> SparseOperator {
    let mut acc = ops[0].clone();
    for op in &ops[1..] {
        acc = acc.add(op);
    }
    acc
}

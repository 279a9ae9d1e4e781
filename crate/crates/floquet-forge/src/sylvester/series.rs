use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::SparseOperator;

/// Fourier components `H^(n)_j` of a driven Hamiltonian
/// `H(t) = sum_{n,j} H^(n)_j e^{i j omega t}`.
#[derive(Debug, Clone)]
pub struct HarmonicSeries {
    omega: f64,
    terms: BTreeMap<(u32, i32), SparseOperator>,
}

impl HarmonicSeries {
    pub fn new(omega: f64) -> Self {
        HarmonicSeries {
            omega,
            terms: BTreeMap::new(),
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn insert(&mut self, order: u32, j: i32, op: SparseOperator) -> Result<()> {
        if order == 0 && j != 0 {
            return Err(Error::domain("order-0 component must be static"));
        }
        self.terms.insert((order, j), op);
        Ok(())
    }

    pub fn get(&self, order: u32, j: i32) -> Option<&SparseOperator> {
        self.terms.get(&(order, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, &SparseOperator)> {
        self.terms.iter().map(|(&(n, j), op)| (n, j, op))
    }

    pub fn static_part(&self) -> Option<&SparseOperator> {
        self.get(0, 0)
    }

    /// Largest `|j|` present.
    pub fn max_harmonic(&self) -> i32 {
        self.terms.keys().map(|&(_, j)| j.abs()).max().unwrap_or(0)
    }

    /// Largest deviation `max |H_{-j} - H_j^dagger|` over stored pairs.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (&(n, j), op) in &self.terms {
            let partner = match self.terms.get(&(n, -j)) {
                Some(p) => p.adjoint(),
                None => SparseOperator::zero(op.basis().clone()),
            };
            worst = worst.max(op.max_abs_diff(&partner));
        }
        worst
    }

    /// `y = H(t) x`, summing every order and harmonic.
    pub fn apply_at(
        &self,
        t: f64,
        x: &[Complex64],
        y: &mut [Complex64],
        scratch: &mut [Complex64],
    ) {
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (&(_, j), op) in &self.terms {
            let phase = Complex64::from_polar(1.0, j as f64 * self.omega * t);
            op.matvec(x, scratch);
            for (a, b) in y.iter_mut().zip(scratch.iter()) {
                *a += phase * b;
            }
        }
    }

    /// `H(t)` as a single sparse matrix.
    pub fn at_time(&self, t: f64) -> Option<SparseOperator> {
        let mut it = self.terms.iter();
        let (&(_, j0), first) = it.next()?;
        let mut acc = first.scale(Complex64::from_polar(1.0, j0 as f64 * self.omega * t));
        for (&(_, j), op) in it {
            acc = acc.axpby(
                1.0,
                op,
                Complex64::from_polar(1.0, j as f64 * self.omega * t),
            );
        }
        Some(acc)
    }
}

/// Micro-motion components `f^(n)_j`, stored in anti-Hermitian pairs.
#[derive(Debug, Clone)]
pub struct MicroMotion {
    omega: f64,
    terms: BTreeMap<(u32, i32), SparseOperator>,
}

impl MicroMotion {
    pub fn new(omega: f64) -> Self {
        MicroMotion {
            omega,
            terms: BTreeMap::new(),
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Store `f` at `(order, j)` and `-f^dagger` at `(order, -j)`.
    pub fn insert_pair(&mut self, order: u32, j: i32, f: SparseOperator) -> Result<()> {
        if order == 0 || j == 0 {
            return Err(Error::domain("micro-motion has no order-0 or static part"));
        }
        let partner = f.adjoint().scale(-1.0);
        self.terms.insert((order, j), f);
        self.terms.insert((order, -j), partner);
        Ok(())
    }

    pub fn get(&self, order: u32, j: i32) -> Option<&SparseOperator> {
        self.terms.get(&(order, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, &SparseOperator)> {
        self.terms.iter().map(|(&(n, j), op)| (n, j, op))
    }

    /// Largest deviation `max |f_{-j} + f_j^dagger|`.
    pub fn anti_hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (&(n, j), op) in &self.terms {
            let d = match self.terms.get(&(n, -j)) {
                Some(p) => op.add(&p.adjoint()).max_abs(),
                None => op.max_abs(),
            };
            worst = worst.max(d);
        }
        worst
    }
}

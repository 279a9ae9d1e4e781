use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{double_occupancy, hop, Op, SectorBasis, SparseOperator, Spin, TermList};
use crate::sylvester::hubbard::RESONANCE_TOL;
use crate::sylvester::{solve_diagonal, HarmonicSeries, MicroMotion};

use super::bessel::{bessel_j_orders, truncation_weight};
use super::chain::floquet_h_order2;

/// Hubbard lattice driven by `g sum_j (phi_j e^{i omega t} + c.c.) n_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrongDriveModel {
    pub j: f64,
    pub u: f64,
    pub g: f64,
    pub omega: f64,
    /// On-site energies.
    pub eps: Vec<f64>,
    /// Drive profile per site.
    pub phi: Vec<Complex64>,
    /// Undirected bonds `(a, b, r_ab)`.
    pub bonds: Vec<(usize, usize, f64)>,
}

impl StrongDriveModel {
    /// Open chain with the linear profile `phi_j = j`.
    pub fn linear_chain(l: usize, j: f64, u: f64, g: f64, omega: f64) -> Self {
        StrongDriveModel {
            j,
            u,
            g,
            omega,
            eps: vec![0.0; l],
            phi: (1..=l).map(|x| Complex64::new(x as f64, 0.0)).collect(),
            bonds: (0..l.saturating_sub(1)).map(|a| (a, a + 1, 1.0)).collect(),
        }
    }

    pub fn sites(&self) -> usize {
        self.phi.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.sites();
        if n == 0 || self.eps.len() != n {
            return Err(Error::domain(
                "profile and on-site energies must cover every site",
            ));
        }
        if !(self.omega > 0.0) {
            return Err(Error::domain("omega must be positive"));
        }
        if self
            .bonds
            .iter()
            .any(|&(a, b, _)| a >= n || b >= n || a == b)
        {
            return Err(Error::domain("bond outside the lattice"));
        }
        Ok(())
    }

    /// `(A, B)` for the directed hop `a <- b`.
    pub fn bond_phase(&self, a: usize, b: usize) -> (f64, f64) {
        let d = self.phi[a] - self.phi[b];
        (2.0 * self.g / self.omega * d.norm(), d.arg())
    }

    /// `alpha^[j]_{a,b} = e^{i j B} J_j(A) r`.
    pub fn alpha(&self, a: usize, b: usize, r: f64, j: i32) -> Complex64 {
        let (amp, arg) = self.bond_phase(a, b);
        let jn = bessel_j_orders(amp, j.unsigned_abs() as usize)[j.unsigned_abs() as usize];
        let jn = if j < 0 && j % 2 != 0 { -jn } else { jn };
        Complex64::from_polar(1.0, j as f64 * arg) * jn * r
    }

    fn onsite_terms(&self) -> TermList {
        let mut t = double_occupancy(self.sites()).scaled(self.u);
        for (a, &e) in self.eps.iter().enumerate() {
            for s in Spin::BOTH {
                t.push(e, vec![Op::n(a, s)]);
            }
        }
        t
    }

    /// Rotating-frame harmonic `H^(1)_j`.
    pub fn harmonic_terms(&self, j: i32) -> TermList {
        let mut t = TermList::new();
        for &(a, b, r) in &self.bonds {
            for (x, y) in [(a, b), (b, a)] {
                let al = self.alpha(x, y, r, j);
                if al == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for s in Spin::BOTH {
                    t.push(-self.j * al, hop(x, y, s));
                }
            }
        }
        t
    }

    /// Lab-frame series: static hopping plus interactions at order 0, the
    /// drive at order 1.
    pub fn lab_series(&self, b: &Arc<SectorBasis>) -> Result<HarmonicSeries> {
        self.validate()?;
        let mut h0 = self.onsite_terms();
        for &(a, c, r) in &self.bonds {
            for s in Spin::BOTH {
                h0.push(-self.j * r, hop(a, c, s));
                h0.push(-self.j * r, hop(c, a, s));
            }
        }
        let mut drive = TermList::new();
        for (a, &ph) in self.phi.iter().enumerate() {
            for s in Spin::BOTH {
                drive.push(self.g * ph, vec![Op::n(a, s)]);
            }
        }
        let mut series = HarmonicSeries::new(self.omega);
        series.insert(0, 0, h0.materialize(b))?;
        series.insert(1, 1, drive.materialize(b))?;
        series.insert(1, -1, drive.adjoint().materialize(b))?;
        Ok(series)
    }

    /// Diagonal of the frame transform `U^r_t`, mapping lab states to the
    /// rotating frame.
    pub fn frame_phases(&self, b: &SectorBasis, t: f64) -> Vec<Complex64> {
        let rot = Complex64::from_polar(1.0, self.omega * t);
        let theta: Vec<f64> = self
            .phi
            .iter()
            .map(|&ph| 2.0 * self.g / self.omega * (ph * rot).im)
            .collect();
        (0..b.dim())
            .map(|i| {
                let mut ang = 0.0;
                for (a, th) in theta.iter().enumerate() {
                    for s in Spin::BOTH {
                        if b.occupied(b.state(i), a, s) {
                            ang += th;
                        }
                    }
                }
                Complex64::from_polar(1.0, ang)
            })
            .collect()
    }
}

/// Rotating-frame series with the weight dropped by the truncation.
#[derive(Debug, Clone)]
pub struct StrongDriveSeries {
    pub series: HarmonicSeries,
    pub jmax: usize,
    /// `max over bonds of sum_{|j| > jmax} J_j(A)^2`.
    pub truncation: f64,
}

pub fn strong_drive_harmonics(
    m: &StrongDriveModel,
    b: &Arc<SectorBasis>,
    jmax: usize,
) -> Result<StrongDriveSeries> {
    m.validate()?;
    if jmax < 1 {
        return Err(Error::domain("jmax must be at least 1"));
    }
    if b.n_orb() != m.sites() {
        return Err(Error::domain("basis does not match the lattice"));
    }
    let mut series = HarmonicSeries::new(m.omega);
    series.insert(0, 0, m.onsite_terms().materialize(b))?;
    for j in -(jmax as i32)..=jmax as i32 {
        series.insert(1, j, m.harmonic_terms(j).materialize(b))?;
    }
    let truncation = m
        .bonds
        .iter()
        .map(|&(a, c, _)| truncation_weight(m.bond_phase(a, c).0, jmax))
        .fold(0.0, f64::max);
    Ok(StrongDriveSeries {
        series,
        jmax,
        truncation,
    })
}

/// Closed-form `f^(1)_j` in the rotating frame.
pub fn strong_drive_f1_terms(m: &StrongDriveModel, j: i32) -> Result<TermList> {
    let mut t = TermList::new();
    for &(a, c, r) in &m.bonds {
        for (x, y) in [(a, c), (c, a)] {
            let wji = j as f64 * m.omega + m.eps[x] - m.eps[y];
            for w in [wji, wji + m.u, wji - m.u] {
                if w.abs() < RESONANCE_TOL * m.omega {
                    return Err(Error::resonance(format!("harmonic {j} on bond ({x},{y})")));
                }
            }
            let beta = -m.u / (wji + m.u);
            let gamma = m.u / (wji - m.u);
            let delta = -beta - gamma;
            let pre = -m.j * m.alpha(x, y, r, j) / wji;
            for s in Spin::BOTH {
                let sb = s.flip();
                let theta = TermList::from_iter([
                    crate::fock::Term::new(1.0, vec![]),
                    crate::fock::Term::new(beta, vec![Op::n(x, sb)]),
                    crate::fock::Term::new(gamma, vec![Op::n(y, sb)]),
                    crate::fock::Term::new(delta, vec![Op::n(x, sb), Op::n(y, sb)]),
                ]);
                t.extend(TermList::single(pre, hop(x, y, s)).mul(&theta));
            }
        }
    }
    Ok(t)
}

/// Rotating-frame Floquet Hamiltonian to second order in `J`, with the
/// micro-motion of every harmonic solved on the diagonal `H^(0)`.
pub fn strong_drive_floquet(sd: &StrongDriveSeries) -> Result<SparseOperator> {
    let h0 = sd
        .series
        .static_part()
        .ok_or_else(|| Error::domain("series has no static part"))?;
    let diag = h0
        .as_real_diagonal()
        .ok_or_else(|| Error::domain("rotating-frame H^(0) must be diagonal"))?;
    let w = sd.series.omega();
    let mut mm = MicroMotion::new(w);
    for j in 1..=sd.jmax as i32 {
        let hj = sd.series.get(1, j).unwrap();
        let f = solve_diagonal(&diag, hj, j as f64 * w, RESONANCE_TOL * w)?;
        mm.insert_pair(1, j, f)?;
    }
    floquet_h_order2(&sd.series, &mm)
}

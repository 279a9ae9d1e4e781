use std::sync::Arc;

use crate::error::{Error, Result};

use super::basis::{Restriction, SectorBasis, Spin};
use super::sparse::SparseOperator;
use super::term::{hop, Op, TermList};

/// Driven one-band Hubbard chain with open boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HubbardParams {
    pub l: usize,
    pub j: f64,
    pub u: f64,
    pub mu: f64,
    pub g: f64,
    pub omega: f64,
}

impl HubbardParams {
    /// Parameters with `mu = 0`.
    pub fn new(l: usize, j: f64, u: f64, g: f64, omega: f64) -> Result<Self> {
        let p = HubbardParams {
            l,
            j,
            u,
            mu: 0.0,
            g,
            omega,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=16).contains(&self.l) {
            return Err(Error::domain(format!(
                "chain length {} outside 2..=16",
                self.l
            )));
        }
        if !(self.omega > 0.0) {
            return Err(Error::domain("omega must be positive"));
        }
        if ![self.j, self.u, self.mu, self.g]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::domain("non-finite chain parameter"));
        }
        Ok(())
    }

    pub fn with_j(self, j: f64) -> Self {
        HubbardParams { j, ..self }
    }

    pub fn with_u(self, u: f64) -> Self {
        HubbardParams { u, ..self }
    }

    pub fn with_g(self, g: f64) -> Self {
        HubbardParams { g, ..self }
    }

    pub fn with_omega(self, omega: f64) -> Self {
        HubbardParams { omega, ..self }
    }
}

/// `K = sum_s sum_j (c†_{j,s} c_{j+1,s} + h.c.)` on an open chain.
pub fn bond_hopping(l: usize) -> TermList {
    let mut t = TermList::new();
    for s in Spin::BOTH {
        for j in 0..l - 1 {
            t.push(1.0, hop(j, j + 1, s));
            t.push(1.0, hop(j + 1, j, s));
        }
    }
    t
}

/// `sum_j n_{j,up} n_{j,dn}`.
pub fn double_occupancy(l: usize) -> TermList {
    (0..l)
        .map(|j| super::term::Term::new(1.0, vec![Op::n(j, Spin::Up), Op::n(j, Spin::Down)]))
        .collect()
}

pub fn number_terms(n_orb: usize) -> TermList {
    let mut t = TermList::new();
    for s in Spin::BOTH {
        for j in 0..n_orb {
            t.push(1.0, vec![Op::n(j, s)]);
        }
    }
    t
}

/// `(N_up - N_dn) / 2`.
pub fn sz_terms(n_orb: usize) -> TermList {
    let mut t = TermList::new();
    for j in 0..n_orb {
        t.push(0.5, vec![Op::n(j, Spin::Up)]);
        t.push(-0.5, vec![Op::n(j, Spin::Down)]);
    }
    t
}

/// `g * sum_s sum_j j n_{j,s}` with 1-based site labels.
pub fn drive_terms(l: usize, g: f64) -> TermList {
    let mut t = TermList::new();
    if g == 0.0 {
        return t;
    }
    for s in Spin::BOTH {
        for j in 0..l {
            t.push(g * (j + 1) as f64, vec![Op::n(j, s)]);
        }
    }
    t
}

#[derive(Debug, Clone)]
pub struct HubbardOperators {
    /// Kinetic term `-J K`.
    pub h: SparseOperator,
    /// `U sum_j n_up n_dn`.
    pub u_op: SparseOperator,
    pub n_op: SparseOperator,
    /// `g sum_j j n_j`.
    pub drive: SparseOperator,
}

impl HubbardOperators {
    /// `h + U_op - mu N`.
    pub fn h0(&self, mu: f64) -> SparseOperator {
        self.h.add(&self.u_op).axpby(1.0, &self.n_op, -mu)
    }
}

fn check_basis(l: usize, b: &SectorBasis) -> Result<()> {
    if b.n_orb() != l {
        return Err(Error::domain(format!(
            "basis has {} orbitals, chain has {l} sites",
            b.n_orb()
        )));
    }
    Ok(())
}

pub fn build_hubbard_operators(
    p: &HubbardParams,
    b: &Arc<SectorBasis>,
) -> Result<HubbardOperators> {
    p.validate()?;
    check_basis(p.l, b)?;
    Ok(HubbardOperators {
        h: bond_hopping(p.l).scaled(-p.j).materialize(b),
        u_op: double_occupancy(p.l).scaled(p.u).materialize(b),
        n_op: number_terms(p.l).materialize(b),
        drive: drive_terms(p.l, p.g).materialize(b),
    })
}

/// Two-band chain: lower band orbitals `0..L`, upper band `L..2L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBandChainParams {
    pub l: usize,
    pub eps21: f64,
    pub t1: f64,
    pub t2: f64,
    pub u11: f64,
    pub u12: f64,
    pub g: f64,
    pub omega: f64,
    /// Ring closure. Only used to match a finite momentum grid in oracles.
    pub periodic: bool,
}

impl TwoBandChainParams {
    pub fn validate(&self) -> Result<()> {
        if !(2..=16).contains(&self.l) {
            return Err(Error::domain(format!(
                "chain length {} outside 2..=16",
                self.l
            )));
        }
        if self.periodic && self.l < 3 {
            return Err(Error::domain("periodic two-band chain needs L >= 3"));
        }
        if !(self.eps21 > 0.0) {
            return Err(Error::domain("eps21 must be positive"));
        }
        Ok(())
    }

    pub fn orbital(&self, band: usize, site: usize) -> usize {
        band * self.l + site
    }

    fn bonds(&self) -> Vec<(usize, usize)> {
        let mut b: Vec<(usize, usize)> = (0..self.l - 1).map(|j| (j, j + 1)).collect();
        if self.periodic {
            b.push((self.l - 1, 0));
        }
        b
    }

    /// Dipole-active (vertical) pair energies of the non-interacting chain.
    pub fn vertical_gaps(&self) -> Vec<f64> {
        let t21 = self.t2 - self.t1;
        (0..self.l)
            .map(|m| {
                let c = if self.periodic {
                    (2.0 * std::f64::consts::PI * m as f64 / self.l as f64).cos()
                } else {
                    (std::f64::consts::PI * (m + 1) as f64 / (self.l + 1) as f64).cos()
                };
                self.eps21 + 2.0 * t21 * c
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct TwoBandOperators {
    pub h0: SparseOperator,
    pub dipole: SparseOperator,
}

pub fn two_band_terms(p: &TwoBandChainParams) -> (TermList, TermList) {
    let mut h = TermList::new();
    for s in Spin::BOTH {
        for (band, t, eps) in [(0, p.t1, 0.0), (1, p.t2, p.eps21)] {
            for j in 0..p.l {
                h.push(eps, vec![Op::n(p.orbital(band, j), s)]);
            }
            for (a, b) in p.bonds() {
                let (oa, ob) = (p.orbital(band, a), p.orbital(band, b));
                h.push(t, hop(oa, ob, s));
                h.push(t, hop(ob, oa, s));
            }
        }
    }
    for j in 0..p.l {
        let lo = p.orbital(0, j);
        let hi = p.orbital(1, j);
        h.push(p.u11, vec![Op::n(lo, Spin::Up), Op::n(lo, Spin::Down)]);
        for s in Spin::BOTH {
            for s2 in Spin::BOTH {
                h.push(p.u12, vec![Op::n(lo, s), Op::n(hi, s2)]);
            }
        }
    }
    let mut d = TermList::new();
    for s in Spin::BOTH {
        for j in 0..p.l {
            d.push(1.0, hop(p.orbital(1, j), p.orbital(0, j), s));
            d.push(1.0, hop(p.orbital(0, j), p.orbital(1, j), s));
        }
    }
    (h, d)
}

/// Sector with a full lower band plus at most one interband pair.
pub fn two_band_pair_basis(p: &TwoBandChainParams) -> Result<SectorBasis> {
    p.validate()?;
    let lower = (1u64 << p.l) - 1;
    let mask = lower | (lower << (2 * p.l));
    SectorBasis::new(
        2 * p.l,
        p.l,
        p.l,
        Restriction::MinOccupied {
            mask,
            min: 2 * p.l as u32 - 1,
        },
    )
}

pub fn build_two_band_chain(
    p: &TwoBandChainParams,
    b: &Arc<SectorBasis>,
) -> Result<TwoBandOperators> {
    p.validate()?;
    if b.n_orb() != 2 * p.l || b.n_up() != p.l || b.n_down() != p.l {
        return Err(Error::domain(
            "two-band chain needs 2L orbitals and L electrons per spin (full lower band)",
        ));
    }
    let (h, d) = two_band_terms(p);
    Ok(TwoBandOperators {
        h0: h.materialize(b),
        dipole: d.materialize(b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::build_sector_basis;

    #[test]
    fn dimer_spectrum() {
        let b = Arc::new(build_sector_basis(2, 1, 1).unwrap());
        let p = HubbardParams::new(2, 1.0, 4.0, 0.0, 10.0).unwrap();
        let ops = build_hubbard_operators(&p, &b).unwrap();
        let mut e = ops.h0(0.0).eigenvalues();
        e.sort_by(f64::total_cmp);
        let want = [2.0 - 8f64.sqrt(), 0.0, 4.0, 2.0 + 8f64.sqrt()];
        for (a, w) in e.iter().zip(want) {
            assert!((a - w).abs() < 1e-12, "{e:?}");
        }
        // triplet partners live in the polarised sectors
        for (nu, nd) in [(2, 0), (0, 2)] {
            let b = Arc::new(build_sector_basis(2, nu, nd).unwrap());
            let e = build_hubbard_operators(&p, &b)
                .unwrap()
                .h0(0.0)
                .eigenvalues();
            assert_eq!(e, vec![0.0]);
        }
    }

    #[test]
    fn trivial_limits() {
        let b = Arc::new(build_sector_basis(4, 2, 2).unwrap());
        let p = HubbardParams::new(4, 0.0, 2.0, 0.0, 5.0).unwrap();
        let ops = build_hubbard_operators(&p, &b).unwrap();
        assert_eq!(ops.h.nnz(), 0);
        assert_eq!(ops.drive.nnz(), 0);
        assert!(ops.u_op.hermitian() && ops.n_op.hermitian());
    }

    #[test]
    fn two_band_requires_full_lower_band() {
        let p = TwoBandChainParams {
            l: 3,
            eps21: 3.7,
            t1: 0.05,
            t2: -0.15,
            u11: 1.6,
            u12: 0.8,
            g: 0.0,
            omega: 1.0,
            periodic: false,
        };
        let b = Arc::new(build_sector_basis(6, 2, 3).unwrap());
        assert!(build_two_band_chain(&p, &b).is_err());
        let b = Arc::new(two_band_pair_basis(&p).unwrap());
        assert_eq!(b.dim(), 1 + 2 * 3 * 3);
        let ops = build_two_band_chain(&p, &b).unwrap();
        assert!(ops.h0.hermitian() && ops.dipole.hermitian());
    }
}

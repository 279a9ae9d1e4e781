use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::Spin;

/// Nearest-neighbour bands `eps_b + 2 t_b (cos kx + cos ky)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineBands {
    pub eps1: f64,
    pub eps2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl CosineBands {
    /// Tetracene-like parameters in eV: `eps21 = 3.7`, `t1 = 0.05`, `t2 = -0.15`.
    pub const STANDARD: CosineBands = CosineBands {
        eps1: 0.0,
        eps2: 3.7,
        t1: 0.05,
        t2: -0.15,
    };

    pub fn flat(eps21: f64) -> Self {
        CosineBands {
            eps1: 0.0,
            eps2: eps21,
            t1: 0.0,
            t2: 0.0,
        }
    }

    pub fn eps21(&self) -> f64 {
        self.eps2 - self.eps1
    }

    pub fn t21(&self) -> f64 {
        self.t2 - self.t1
    }
}

/// How `<n_{k,s}>` enters the Hartree and ladder sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScreeningOccupation {
    /// The grid occupations, including any Fermi hole.
    #[default]
    Grid,
    /// `<n_{k,s}> = 1` inside every screening sum, as for a full band.
    Saturated,
}

/// Two-band model on an `nx x ny` Brillouin-zone grid, `k_i = 2 pi i / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandGrid {
    pub nx: usize,
    pub ny: usize,
    pub eps1: Vec<f64>,
    pub eps2: Vec<f64>,
    pub u11: f64,
    pub u12: f64,
    occ: [Vec<f64>; 2],
    pub kf: Option<f64>,
    pub screening: ScreeningOccupation,
}

fn wrap(k: f64) -> f64 {
    let x = k.rem_euclid(2.0 * PI);
    if x > PI {
        x - 2.0 * PI
    } else {
        x
    }
}

impl BandGrid {
    /// Square lattice with a full lower band.
    pub fn square(nx: usize, ny: usize, bands: CosineBands, u11: f64, u12: f64) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::domain("grid sizes must be positive"));
        }
        let n = nx * ny;
        let mut eps1 = Vec::with_capacity(n);
        let mut eps2 = Vec::with_capacity(n);
        for iy in 0..ny {
            for ix in 0..nx {
                let c = (2.0 * PI * ix as f64 / nx as f64).cos()
                    + if ny > 1 {
                        (2.0 * PI * iy as f64 / ny as f64).cos()
                    } else {
                        0.0
                    };
                eps1.push(bands.eps1 + 2.0 * bands.t1 * c);
                eps2.push(bands.eps2 + 2.0 * bands.t2 * c);
            }
        }
        Self::from_tables(nx, ny, eps1, eps2, u11, u12, [vec![1.0; n], vec![1.0; n]])
    }

    /// Ring of `n` sites: the `ny = 1` reduction with a single cosine.
    pub fn chain(n: usize, bands: CosineBands, u11: f64, u12: f64) -> Result<Self> {
        Self::square(n, 1, bands, u11, u12)
    }

    /// User-supplied band and occupation tables in row-major `(iy, ix)` order.
    pub fn from_tables(
        nx: usize,
        ny: usize,
        eps1: Vec<f64>,
        eps2: Vec<f64>,
        u11: f64,
        u12: f64,
        occ: [Vec<f64>; 2],
    ) -> Result<Self> {
        let n = nx * ny;
        if n == 0 || eps1.len() != n || eps2.len() != n || occ.iter().any(|o| o.len() != n) {
            return Err(Error::domain(format!(
                "tables must have nx*ny = {n} entries"
            )));
        }
        if let Some(i) = (0..n).find(|&i| !(eps2[i] > eps1[i])) {
            return Err(Error::domain(format!(
                "upper band not above lower band at k index {i}"
            )));
        }
        if occ.iter().flatten().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::domain("occupations must lie in [0, 1]"));
        }
        if !u11.is_finite() || !u12.is_finite() {
            return Err(Error::domain("interactions must be finite"));
        }
        Ok(BandGrid {
            nx,
            ny,
            eps1,
            eps2,
            u11,
            u12,
            occ,
            kf: None,
            screening: ScreeningOccupation::Grid,
        })
    }

    /// Empties the lower band inside `|k| < kf` around Gamma for both spins.
    pub fn with_fermi_hole(mut self, kf: f64) -> Result<Self> {
        if !(kf > 0.0 && kf < PI) {
            return Err(Error::domain("Fermi radius must lie in (0, pi)"));
        }
        for i in 0..self.len() {
            let (kx, ky) = self.k(i);
            let inside = wrap(kx).hypot(wrap(ky)) < kf;
            for o in &mut self.occ {
                o[i] = if inside { 0.0 } else { 1.0 };
            }
        }
        self.kf = Some(kf);
        Ok(self)
    }

    pub fn with_screening(mut self, screening: ScreeningOccupation) -> Self {
        self.screening = screening;
        self
    }

    pub fn with_interactions(mut self, u11: f64, u12: f64) -> Self {
        self.u11 = u11;
        self.u12 = u12;
        self
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        (iy % self.ny) * self.nx + ix % self.nx
    }

    pub fn k(&self, i: usize) -> (f64, f64) {
        let (ix, iy) = (i % self.nx, i / self.nx);
        (
            2.0 * PI * ix as f64 / self.nx as f64,
            2.0 * PI * iy as f64 / self.ny as f64,
        )
    }

    /// Grid point nearest to `(kx, ky)`.
    pub fn nearest(&self, kx: f64, ky: f64) -> usize {
        let f = |k: f64, n: usize| {
            ((k.rem_euclid(2.0 * PI) / (2.0 * PI) * n as f64).round() as usize) % n
        };
        self.index(f(kx, self.nx), f(ky, self.ny))
    }

    pub fn gamma(&self) -> usize {
        0
    }

    /// Index of `-k`.
    pub fn neg(&self, i: usize) -> usize {
        let (ix, iy) = (i % self.nx, i / self.nx);
        self.index((self.nx - ix) % self.nx, (self.ny - iy) % self.ny)
    }

    /// Momentum addition modulo the reciprocal lattice.
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.index(a % self.nx + b % self.nx, a / self.nx + b / self.nx)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn eps21(&self, i: usize) -> f64 {
        self.eps2[i] - self.eps1[i]
    }

    pub fn occupation(&self, s: Spin) -> &[f64] {
        &self.occ[s.index()]
    }

    /// `nu_s = (1/N) sum_k <n_{k,s}>` of the grid occupations.
    pub fn filling(&self, s: Spin) -> f64 {
        pairwise_sum(self.occupation(s)) / self.len() as f64
    }

    pub(crate) fn screening_occ(&self, s: Spin, i: usize) -> f64 {
        match self.screening {
            ScreeningOccupation::Grid => self.occ[s.index()][i],
            ScreeningOccupation::Saturated => 1.0,
        }
    }

    pub(crate) fn screening_filling(&self, s: Spin) -> f64 {
        match self.screening {
            ScreeningOccupation::Grid => self.filling(s),
            ScreeningOccupation::Saturated => 1.0,
        }
    }
}

/// Fixed-order pairwise summation.
pub fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 32 {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn momentum_arithmetic_wraps() {
        let g = BandGrid::square(8, 4, CosineBands::STANDARD, 0.0, 0.0).unwrap();
        for a in 0..g.len() {
            assert_eq!(g.add(a, g.neg(a)), 0);
            assert_eq!(g.neg(g.neg(a)), a);
            let (kx, ky) = g.k(a);
            assert_eq!(g.nearest(kx, ky), a);
        }
        assert_eq!(g.nearest(PI, PI), g.index(4, 2));
    }

    #[test]
    fn fermi_hole_counts() {
        let g = BandGrid::square(64, 64, CosineBands::STANDARD, 1.6, 0.8)
            .unwrap()
            .with_fermi_hole(PI / 30.0)
            .unwrap();
        let holes = g.occupation(Spin::Up).iter().filter(|&&x| x == 0.0).count();
        assert_eq!(holes, 5);
        assert!((g.filling(Spin::Down) - (1.0 - 5.0 / 4096.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_inverted_bands() {
        let r = BandGrid::from_tables(
            1,
            2,
            vec![0.0, 1.0],
            vec![1.0, 0.5],
            0.0,
            0.0,
            [vec![1.0; 2], vec![1.0; 2]],
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}

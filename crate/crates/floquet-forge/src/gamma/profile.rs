use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::Spin;
use crate::kspace::BandGrid;

fn wrap(k: f64) -> f64 {
    let x = k.rem_euclid(2.0 * PI);
    if x > PI {
        x - 2.0 * PI
    } else {
        x
    }
}

/// Displacement `k - k0` folded into the first zone.
fn displacement(grid: &BandGrid, i: usize, k0: (f64, f64)) -> (f64, f64) {
    let (kx, ky) = grid.k(i);
    (wrap(kx - k0.0), wrap(ky - k0.1))
}

/// Interaction `V_q` and interband light coupling `J^12_{k,s}` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionProfile {
    vq: Vec<f64>,
    j: [Vec<Complex64>; 2],
}

impl InteractionProfile {
    pub fn new(grid: &BandGrid, vq: Vec<f64>, j: [Vec<Complex64>; 2]) -> Result<Self> {
        let n = grid.len();
        if vq.len() != n || j.iter().any(|x| x.len() != n) {
            return Err(Error::domain(format!(
                "profile tables must have {n} entries"
            )));
        }
        if vq.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("V_q must be finite"));
        }
        if let Some(q) =
            (0..n).find(|&q| (vq[q] - vq[grid.neg(q)]).abs() > 1e-12 * (1.0 + vq[q].abs()))
        {
            return Err(Error::domain(format!("V_q != V_-q at q index {q}")));
        }
        if j.iter().flatten().any(|x| !(x.norm() <= 1.0 + 1e-12)) {
            return Err(Error::domain("|J| must not exceed 1"));
        }
        Ok(InteractionProfile { vq, j })
    }

    /// `V_q = u` and `J = 1`.
    pub fn uniform(grid: &BandGrid, u: f64) -> Result<Self> {
        let n = grid.len();
        Self::new(
            grid,
            vec![u; n],
            [
                vec![Complex64::new(1.0, 0.0); n],
                vec![Complex64::new(1.0, 0.0); n],
            ],
        )
    }

    /// Substrate-screened form `v0 / (1 + r0 |q|)` with the lattice momentum
    /// `|q|^2 = 4 sin^2(qx/2) + 4 sin^2(qy/2)`, and `J = 1`.
    pub fn screened(grid: &BandGrid, v0: f64, r0: f64) -> Result<Self> {
        if !(r0 >= 0.0) {
            return Err(Error::domain("screening length must be non-negative"));
        }
        let vq = (0..grid.len())
            .map(|i| {
                let (qx, qy) = grid.k(i);
                let q = (4.0 * (qx / 2.0).sin().powi(2) + 4.0 * (qy / 2.0).sin().powi(2)).sqrt();
                v0 / (1.0 + r0 * q)
            })
            .collect();
        let n = grid.len();
        Self::new(
            grid,
            vq,
            [
                vec![Complex64::new(1.0, 0.0); n],
                vec![Complex64::new(1.0, 0.0); n],
            ],
        )
    }

    /// Multiplies `J` by a Gaussian dip `1 - exp(-|k - K|^2 / (2 w^2))` that
    /// vanishes exactly at the grid point nearest `valley`.
    pub fn with_valley_dip(
        mut self,
        grid: &BandGrid,
        valley: (f64, f64),
        width: f64,
    ) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::domain("valley width must be positive"));
        }
        let kv = grid.k(grid.nearest(valley.0, valley.1));
        for i in 0..grid.len() {
            let (dx, dy) = displacement(grid, i, kv);
            let f = 1.0 - (-(dx * dx + dy * dy) / (2.0 * width * width)).exp();
            for s in &mut self.j {
                s[i] *= f;
            }
        }
        Ok(self)
    }

    /// Multiplies `J` by the winding phase `exp(i arg((k - K')_x + i (k - K')_y))`.
    pub fn with_phase_winding(mut self, grid: &BandGrid, valley: (f64, f64)) -> Self {
        let kv = grid.k(grid.nearest(valley.0, valley.1));
        for i in 0..grid.len() {
            let (dx, dy) = displacement(grid, i, kv);
            let ph = Complex64::from_polar(1.0, dy.atan2(dx));
            for s in &mut self.j {
                s[i] *= ph;
            }
        }
        self
    }

    pub fn vq(&self, q: usize) -> f64 {
        self.vq[q]
    }

    pub fn j(&self, k: usize, s: Spin) -> Complex64 {
        self.j[s.index()][k]
    }

    pub fn couplings(&self, s: Spin) -> &[Complex64] {
        &self.j[s.index()]
    }

    /// Same couplings with every phase removed.
    pub fn magnitudes(&self) -> Self {
        let j = self.j.clone().map(|s| {
            s.into_iter()
                .map(|x| Complex64::new(x.norm(), 0.0))
                .collect()
        });
        InteractionProfile {
            vq: self.vq.clone(),
            j,
        }
    }

    pub fn len(&self) -> usize {
        self.vq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vq.is_empty()
    }

    pub(crate) fn check(&self, grid: &BandGrid) -> Result<()> {
        if self.len() != grid.len() {
            return Err(Error::domain("interaction profile does not match the grid"));
        }
        Ok(())
    }
}

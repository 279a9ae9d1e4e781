use crate::error::{Error, Result};

/// Polynomial `c0 + ca*a + cb*b + cab*a*b` in two occupation numbers
/// (`a^2 = a`, `b^2 = b`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccPoly(pub [f64; 4]);

impl OccPoly {
    pub fn new(c0: f64, ca: f64, cb: f64, cab: f64) -> Self {
        OccPoly([c0, ca, cb, cab])
    }

    pub fn times(self, o: OccPoly) -> OccPoly {
        let [p0, pa, pb, pab] = self.0;
        let [q0, qa, qb, qab] = o.0;
        OccPoly([
            p0 * q0,
            p0 * qa + pa * q0 + pa * qa,
            p0 * qb + pb * q0 + pb * qb,
            p0 * qab
                + pab * q0
                + pa * qb
                + pb * qa
                + pa * qab
                + pab * qa
                + pb * qab
                + pab * qb
                + pab * qab,
        ])
    }

    pub fn scale(self, s: f64) -> OccPoly {
        OccPoly(self.0.map(|x| x * s))
    }

    pub fn plus(self, o: OccPoly) -> OccPoly {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(o.0) {
            *x += y;
        }
        OccPoly(r)
    }

    pub fn eval(self, a: f64, b: f64) -> f64 {
        let [c0, ca, cb, cab] = self.0;
        c0 + ca * a + cb * b + cab * a * b
    }
}

/// Occupation-dependent coefficients of the hopping-order expansion of the
/// driven Hubbard chain micro-motions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopExpansionCoeffs {
    pub omega: f64,
    pub u: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    /// Same as `beta`, `gamma`, `delta` with `omega -> 2 omega`.
    pub beta_pp: f64,
    pub gamma_pp: f64,
    pub delta_pp: f64,
    pub beta2: f64,
    pub gamma2: f64,
    pub delta2: f64,
    pub beta3: f64,
    pub gamma3: f64,
    pub delta3: f64,
    pub beta4: f64,
    pub gamma4: f64,
    pub delta4: f64,
}

fn first_order(omega: f64, u: f64) -> (f64, f64, f64) {
    let beta = -u / (omega + u);
    let gamma = u / (omega - u);
    (beta, gamma, -beta - gamma)
}

impl HopExpansionCoeffs {
    /// Coefficients for micro-motions up to `fswt_order` (1..=3). Frequencies
    /// within `tol` of `U`, `U/2` (order >= 2) or `U/3` (order 3) are resonant.
    pub fn new(omega: f64, u: f64, fswt_order: u32, tol: f64) -> Result<Self> {
        if !(1..=3).contains(&fswt_order) {
            return Err(Error::Unsupported(format!("FSWT order {fswt_order}")));
        }
        for m in 1..=fswt_order {
            if (m as f64 * omega - u).abs() < tol {
                return Err(Error::resonance(format!("{m} omega = U within {tol:e}")));
            }
        }
        Ok(Self::unchecked(omega, u))
    }

    fn unchecked(omega: f64, u: f64) -> Self {
        let (beta, gamma, delta) = first_order(omega, u);
        let (beta_pp, gamma_pp, delta_pp) = first_order(2.0 * omega, u);
        let t1 = OccPoly::new(1.0, beta, gamma, delta);
        let t2 = OccPoly::new(1.0, beta_pp, gamma_pp, delta_pp);
        let z = t1.times(t2);
        let t2m = OccPoly::new(-1.0, beta_pp, gamma_pp, delta_pp);
        let f3 = t1
            .times(t1)
            .times(t2m)
            .scale(1.0 / 8.0)
            .plus(t1.times(t1).scale(-1.0 / 3.0));
        let [_, beta2, gamma2, delta2] = z.0;
        let [_, beta3, gamma3, delta3] = f3.0;
        HopExpansionCoeffs {
            omega,
            u,
            beta,
            gamma,
            delta,
            beta_pp,
            gamma_pp,
            delta_pp,
            beta2,
            gamma2,
            delta2,
            beta3,
            gamma3,
            delta3,
            beta4: beta3 + beta2 / 24.0 + beta / 6.0,
            gamma4: gamma3 + gamma2 / 24.0 + gamma / 6.0,
            delta4: delta3 + delta2 / 24.0 + delta / 6.0,
        }
    }

    /// `theta' = 1 + beta a + gamma b + delta a b`.
    pub fn theta1(&self) -> OccPoly {
        OccPoly::new(1.0, self.beta, self.gamma, self.delta)
    }

    pub fn theta2(&self) -> OccPoly {
        OccPoly::new(1.0, self.beta2, self.gamma2, self.delta2)
    }

    pub fn theta3(&self) -> OccPoly {
        OccPoly::new(-11.0 / 24.0, self.beta3, self.gamma3, self.delta3)
    }

    /// Occupation polynomial of `f^(3)_1` that solves its Sylvester equation.
    /// Differs from `theta3` by using the Hermitian `H'^(2)` in the
    /// `[f_1, H'^(2)]` source term; the two agree at `U = 0`.
    pub fn theta3_solved(&self) -> OccPoly {
        let t1 = self.theta1();
        let t1t = OccPoly::new(1.0, self.gamma, self.beta, self.delta);
        let t2 = OccPoly::new(1.0, self.beta_pp, self.gamma_pp, self.delta_pp);
        let inner = t1
            .times(t2)
            .scale(1.0 / 8.0)
            .plus(t1.scale(1.0 / 12.0))
            .plus(t1.plus(t1t).scale(-1.0 / 3.0));
        t1.times(inner)
    }

    /// `theta3_solved + theta2/24 + theta'/6`, the counterpart of `theta4`.
    pub fn theta4_solved(&self) -> OccPoly {
        self.theta3_solved()
            .plus(self.theta2().scale(1.0 / 24.0))
            .plus(self.theta1().scale(1.0 / 6.0))
    }

    pub fn theta4(&self) -> OccPoly {
        OccPoly::new(-0.25, self.beta4, self.gamma4, self.delta4)
    }
}

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Prefactor of the solution `f = x * S` for a normal-ordered monomial
/// `S = c†_{i1}..c†_{ip} c_{j1}..c_{jq}` in the eigenmodes of a quadratic
/// `H0 = sum_m eps_m n_m`: `x = 1 / (shift + sum eps_created - sum eps_annihilated)`.
pub fn green_rule_solve(
    mode_energies: &[f64],
    created: &[usize],
    annihilated: &[usize],
    shift: f64,
    tol: f64,
) -> Result<Complex64> {
    let mut den = shift;
    for &i in created {
        den += energy(mode_energies, i)?;
    }
    for &j in annihilated {
        den -= energy(mode_energies, j)?;
    }
    if den.abs() < tol {
        return Err(Error::ResonantDenominator {
            detail: format!("monomial denominator {den:e} below tolerance"),
            pairs: Vec::new(),
        });
    }
    Ok(Complex64::new(1.0 / den, 0.0))
}

fn energy(e: &[f64], i: usize) -> Result<f64> {
    e.get(i)
        .copied()
        .ok_or_else(|| Error::domain(format!("mode {i} out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_hop_and_scalar() {
        let e = [0.3, -1.2];
        let x = green_rule_solve(&e, &[0], &[1], 5.0, 1e-8).unwrap();
        assert!((x.re - 1.0 / (5.0 + 0.3 + 1.2)).abs() < 1e-15);
        assert_eq!(green_rule_solve(&e, &[], &[], 4.0, 1e-8).unwrap().re, 0.25);
        assert!(green_rule_solve(&e, &[1], &[0], 1.5, 1e-8).is_err());
    }
}

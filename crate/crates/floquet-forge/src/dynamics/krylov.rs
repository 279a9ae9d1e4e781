use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest Krylov subspace before the step is split.
pub const DEFAULT_MAX_KRYLOV: usize = 40;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `exp(-i T tau) e_1` for the real symmetric tridiagonal `T`.
fn small_expm(eig: &SymmetricEigen<f64, nalgebra::Dyn>, tau: f64) -> Vec<Complex64> {
    let m = eig.eigenvalues.len();
    (0..m)
        .map(|r| {
            (0..m)
                .map(|k| {
                    let q = &eig.eigenvectors;
                    Complex64::from_polar(q[(r, k)] * q[(0, k)], -eig.eigenvalues[k] * tau)
                })
                .sum()
        })
        .collect()
}

fn tridiag(alpha: &[f64], beta: &[f64]) -> SymmetricEigen<f64, nalgebra::Dyn> {
    let m = alpha.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    t.symmetric_eigen()
}

/// `exp(-i H dt) v` for Hermitian `H` given as a matrix-vector product.
///
/// Lanczos with full reorthogonalisation; the subspace grows until the
/// a-posteriori error estimate drops below `tol * |v|`. If `max_dim` is
/// reached first the step is split, each piece meeting the same tolerance.
pub fn expm_apply<F>(
    apply: F,
    v: &[Complex64],
    dt: f64,
    tol: f64,
    max_dim: usize,
) -> Result<Vec<Complex64>>
where
    F: Fn(&[Complex64], &mut [Complex64]),
{
    let n = v.len();
    let mut w = v.to_vec();
    let nrm0 = norm(v);
    if nrm0 == 0.0 || dt == 0.0 {
        return Ok(w);
    }
    let max_dim = max_dim.clamp(2, n.max(2));
    let mut remaining = dt;
    let mut guard = 0;
    while remaining.abs() > 0.0 {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Numeric(format!(
                "Krylov exponential stalled with {remaining:e} left of dt = {dt:e}"
            )));
        }
        let beta0 = norm(&w);
        let mut basis: Vec<Vec<Complex64>> = vec![w.iter().map(|x| x / beta0).collect()];
        let (mut alpha, mut beta) = (Vec::new(), Vec::new());
        let mut scratch = vec![Complex64::new(0.0, 0.0); n];
        let (tau, c) = 'grow: loop {
            let k = basis.len() - 1;
            apply(&basis[k], &mut scratch);
            let a = dot(&basis[k], &scratch).re;
            alpha.push(a);
            for q in &basis {
                let c = dot(q, &scratch);
                for (s, x) in scratch.iter_mut().zip(q) {
                    *s -= c * x;
                }
            }
            let b = norm(&scratch);
            let m = alpha.len();
            let eig = tridiag(&alpha, &beta);
            if b <= 1e-14 * (a.abs() + 1.0) || m == n {
                // invariant subspace: exact for any step
                break (remaining, small_expm(&eig, remaining));
            }
            let c = small_expm(&eig, remaining);
            let err = b * c[m - 1].norm() * beta0;
            if err <= tol * nrm0 {
                break (remaining, c);
            }
            if m >= max_dim {
                let mut tau = remaining / 2.0;
                loop {
                    let c = small_expm(&eig, tau);
                    if b * c[m - 1].norm() * beta0 <= tol * nrm0 {
                        break 'grow (tau, c);
                    }
                    tau /= 2.0;
                    if (tau / dt).abs() < 1e-12 {
                        return Err(Error::Numeric(format!(
                            "Krylov step underflow at dt = {dt:e}"
                        )));
                    }
                }
            }
            beta.push(b);
            basis.push(scratch.iter().map(|x| x / b).collect());
        };
        w.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        for (q, ck) in basis.iter().zip(&c) {
            let s = ck * beta0;
            for (x, y) in w.iter_mut().zip(q) {
                *x += s * y;
            }
        }
        remaining -= tau;
        if (remaining / dt).abs() < 1e-14 {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_phases() {
        let e = [0.3, -1.2, 2.5, 0.0, 0.7, -0.4, 1.9, -2.2];
        let v: Vec<Complex64> = (0..8)
            .map(|i| Complex64::new(1.0 + i as f64, 0.5))
            .collect();
        let apply = |x: &[Complex64], y: &mut [Complex64]| {
            for i in 0..8 {
                y[i] = x[i] * e[i];
            }
        };
        for (dt, max_dim) in [(0.1, 5), (3.0, 5), (40.0, 5), (40.0, 8)] {
            let w = expm_apply(apply, &v, dt, 1e-12, max_dim).unwrap();
            for i in 0..8 {
                let want = v[i] * Complex64::from_polar(1.0, -e[i] * dt);
                assert!((w[i] - want).norm() < 1e-8, "dt={dt}");
            }
        }
    }
}

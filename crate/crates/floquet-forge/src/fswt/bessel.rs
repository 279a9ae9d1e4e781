//! Integer-order Bessel functions of the first kind.

/// `J_0(x) ..= J_nmax(x)` by Miller's downward recurrence, normalised with
/// `J_0 + 2 sum_k J_2k = 1`.
pub fn bessel_j_orders(x: f64, nmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let top = (nmax as f64).max(ax);
    let mut m = (top + 20.0 + (40.0 * top).sqrt()) as usize;
    m += m % 2;
    let (mut next, mut cur) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    for k in (1..=m).rev() {
        // cur = J_k, next = J_{k+1}
        let prev = 2.0 * k as f64 / ax * cur - next;
        next = cur;
        cur = prev;
        if k - 1 <= nmax {
            out[k - 1] = cur;
        }
        if (k - 1) % 2 == 0 {
            norm += if k == 1 { cur } else { 2.0 * cur };
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    for (n, v) in out.iter_mut().enumerate() {
        *v /= norm;
        if x < 0.0 && n % 2 == 1 {
            *v = -*v;
        }
    }
    out
}

/// `J_n(x)` for any integer `n`.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let v = bessel_j_orders(x, n.unsigned_abs() as usize)[n.unsigned_abs() as usize];
    if n < 0 && n % 2 != 0 {
        -v
    } else {
        v
    }
}

/// Weight `sum_{|j| > jmax} J_j(x)^2` dropped by truncating a harmonic series.
pub fn truncation_weight(x: f64, jmax: usize) -> f64 {
    let extra = jmax + 40 + x.abs() as usize;
    let j = bessel_j_orders(x, extra);
    2.0 * j[jmax + 1..].iter().map(|v| v * v).sum::<f64>()
}

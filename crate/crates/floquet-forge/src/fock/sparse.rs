use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::SectorBasis;

/// Rows above which products and matvecs are split across threads.
const PAR_ROWS: usize = 2048;

/// Sparse complex matrix over a [`SectorBasis`], stored row-compressed with
/// sorted column indices and no duplicate entries.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    basis: Arc<SectorBasis>,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<Complex64>,
    hermitian: bool,
}

impl SparseOperator {
    pub fn zero(basis: Arc<SectorBasis>) -> Self {
        let n = basis.dim();
        SparseOperator {
            basis,
            row_ptr: vec![0; n + 1],
            cols: Vec::new(),
            vals: Vec::new(),
            hermitian: true,
        }
    }

    pub fn identity(basis: Arc<SectorBasis>) -> Self {
        let n = basis.dim();
        Self::from_diagonal(basis, &vec![1.0; n])
    }

    pub fn from_diagonal(basis: Arc<SectorBasis>, diag: &[f64]) -> Self {
        assert_eq!(diag.len(), basis.dim());
        let mut row_ptr = Vec::with_capacity(diag.len() + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for (i, &d) in diag.iter().enumerate() {
            if d != 0.0 {
                cols.push(i as u32);
                vals.push(Complex64::new(d, 0.0));
            }
            row_ptr.push(cols.len());
        }
        SparseOperator {
            basis,
            row_ptr,
            cols,
            vals,
            hermitian: true,
        }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed in input
    /// order and exact zeros dropped.
    pub fn from_triplets(
        basis: Arc<SectorBasis>,
        mut triplets: Vec<(u32, u32, Complex64)>,
    ) -> Self {
        let n = basis.dim();
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols: Vec<u32> = Vec::with_capacity(triplets.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut rows: Vec<u32> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            if let (Some(&lr), Some(&lc)) = (rows.last(), cols.last()) {
                if lr == r && lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(r);
            cols.push(c);
            vals.push(v);
        }
        let mut keep_rows = Vec::with_capacity(rows.len());
        let mut keep_cols = Vec::with_capacity(rows.len());
        let mut keep_vals = Vec::with_capacity(rows.len());
        for ((r, c), v) in rows.into_iter().zip(cols).zip(vals) {
            if v != Complex64::new(0.0, 0.0) {
                keep_rows.push(r);
                keep_cols.push(c);
                keep_vals.push(v);
            }
        }
        for &r in &keep_rows {
            row_ptr[r as usize + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let mut op = SparseOperator {
            basis,
            row_ptr,
            cols: keep_cols,
            vals: keep_vals,
            hermitian: false,
        };
        op.hermitian = op.is_hermitian(1e-13);
        op
    }

    /// Sparsify a dense matrix, dropping entries below `drop_tol * max|A|`.
    pub fn from_dense(basis: Arc<SectorBasis>, m: &DMatrix<Complex64>, drop_tol: f64) -> Self {
        let n = basis.dim();
        assert_eq!(m.nrows(), n);
        let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let cut = drop_tol * scale;
        let mut triplets = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = m[(r, c)];
                if v.norm() > cut {
                    triplets.push((r as u32, c as u32, v));
                }
            }
        }
        Self::from_triplets(basis, triplets)
    }

    pub fn basis(&self) -> &Arc<SectorBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Whether the operator was found Hermitian (to `1e-13` relative) when built.
    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn row(&self, r: usize) -> (&[u32], &[Complex64]) {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    /// Entries in canonical (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |r| {
            let (cs, vs) = self.row(r);
            cs.iter().zip(vs).map(move |(&c, &v)| (r, c as usize, v))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let (cs, vs) = self.row(r);
        match cs.binary_search(&(c as u32)) {
            Ok(i) => vs[i],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    /// Real diagonal if the operator is diagonal with real entries.
    pub fn as_real_diagonal(&self) -> Option<Vec<f64>> {
        let mut d = vec![0.0; self.dim()];
        for (r, c, v) in self.entries() {
            if r != c || v.im != 0.0 {
                return None;
            }
            d[r] = v.re;
        }
        Some(d)
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.vals.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        let scale = self.max_abs();
        if scale == 0.0 {
            return true;
        }
        self.entries()
            .all(|(r, c, v)| (v - self.get(c, r).conj()).norm() <= rel_tol * scale)
    }

    pub fn adjoint(&self) -> SparseOperator {
        let triplets = self
            .entries()
            .map(|(r, c, v)| (c as u32, r as u32, v.conj()))
            .collect();
        Self::from_triplets(self.basis.clone(), triplets)
    }

    pub fn scale(&self, s: impl Into<Complex64>) -> SparseOperator {
        let s = s.into();
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= s;
        }
        out.hermitian = self.hermitian && s.im == 0.0;
        out
    }

    /// `a*self + b*other`.
    pub fn axpby(
        &self,
        a: impl Into<Complex64>,
        other: &SparseOperator,
        b: impl Into<Complex64>,
    ) -> SparseOperator {
        self.check_conformable(other);
        let (a, b) = (a.into(), b.into());
        let n = self.dim();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(self.nnz() + other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() + other.nnz());
        row_ptr.push(0);
        for r in 0..n {
            let (c1, v1) = self.row(r);
            let (c2, v2) = other.row(r);
            let (mut i, mut j) = (0, 0);
            while i < c1.len() || j < c2.len() {
                let (c, v) = if j == c2.len() || (i < c1.len() && c1[i] < c2[j]) {
                    i += 1;
                    (c1[i - 1], a * v1[i - 1])
                } else if i == c1.len() || c2[j] < c1[i] {
                    j += 1;
                    (c2[j - 1], b * v2[j - 1])
                } else {
                    i += 1;
                    j += 1;
                    (c1[i - 1], a * v1[i - 1] + b * v2[j - 1])
                };
                if v != Complex64::new(0.0, 0.0) {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        let hermitian = self.hermitian && other.hermitian && a.im == 0.0 && b.im == 0.0;
        SparseOperator {
            basis: self.basis.clone(),
            row_ptr,
            cols,
            vals,
            hermitian,
        }
    }

    pub fn add(&self, other: &SparseOperator) -> SparseOperator {
        self.axpby(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &SparseOperator) -> SparseOperator {
        self.axpby(1.0, other, -1.0)
    }

    /// Matrix product `self * other` (row-wise with a dense accumulator).
    pub fn mul(&self, other: &SparseOperator) -> SparseOperator {
        self.check_conformable(other);
        let n = self.dim();
        let row_product = |acc: &mut (Vec<Complex64>, Vec<bool>, Vec<u32>), r: usize| {
            let (vals, mark, touched) = acc;
            touched.clear();
            let (ca, va) = self.row(r);
            for (&k, &x) in ca.iter().zip(va) {
                let (cb, vb) = other.row(k as usize);
                for (&c, &y) in cb.iter().zip(vb) {
                    let ci = c as usize;
                    if !mark[ci] {
                        mark[ci] = true;
                        touched.push(c);
                        vals[ci] = Complex64::new(0.0, 0.0);
                    }
                    vals[ci] += x * y;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &c in touched.iter() {
                mark[c as usize] = false;
                let v = vals[c as usize];
                if v != Complex64::new(0.0, 0.0) {
                    out.push((c, v));
                }
            }
            out
        };
        let init = || {
            (
                vec![Complex64::new(0.0, 0.0); n],
                vec![false; n],
                Vec::new(),
            )
        };
        let rows: Vec<Vec<(u32, Complex64)>> = if n >= PAR_ROWS {
            (0..n).into_par_iter().map_init(init, row_product).collect()
        } else {
            let mut acc = init();
            (0..n).map(|r| row_product(&mut acc, r)).collect()
        };
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let total: usize = rows.iter().map(|r| r.len()).sum();
        let mut cols = Vec::with_capacity(total);
        let mut vals = Vec::with_capacity(total);
        for r in rows {
            for (c, v) in r {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        SparseOperator {
            basis: self.basis.clone(),
            row_ptr,
            cols,
            vals,
            hermitian: false,
        }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &SparseOperator) -> SparseOperator {
        self.mul(other).sub(&other.mul(self))
    }

    /// `(A + A^dagger) / 2`, flagged Hermitian.
    pub fn hermitian_part(&self) -> SparseOperator {
        let mut h = self.axpby(0.5, &self.adjoint(), 0.5);
        h.hermitian = true;
        h
    }

    pub fn max_abs_diff(&self, other: &SparseOperator) -> f64 {
        self.sub(other).max_abs()
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n);
        let row = |(r, out): (usize, &mut Complex64)| {
            let (cs, vs) = self.row(r);
            let mut acc = Complex64::new(0.0, 0.0);
            for (&c, &v) in cs.iter().zip(vs) {
                acc += v * x[c as usize];
            }
            *out = acc;
        };
        if n >= PAR_ROWS {
            y.par_iter_mut().enumerate().for_each(row);
        } else {
            y.iter_mut().enumerate().for_each(row);
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
        self.matvec(x, &mut y);
        y
    }

    /// `<x|A|x>`.
    pub fn expectation(&self, x: &[Complex64]) -> Complex64 {
        let y = self.apply(x);
        x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    /// Eigenvalues of the Hermitian part, by dense diagonalisation.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = self.hermitian_part().to_dense();
        m.symmetric_eigen().eigenvalues.iter().copied().collect()
    }

    fn check_conformable(&self, other: &SparseOperator) {
        assert!(
            Arc::ptr_eq(&self.basis, &other.basis) || *self.basis == *other.basis,
            "operators live on different bases"
        );
    }
}

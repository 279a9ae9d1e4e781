use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{SectorBasis, Spin};
use super::sparse::SparseOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Cdag,
    C,
    N,
}

/// Elementary fermion operator on orbital `orb` (0-based) with spin `spin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Op {
    pub kind: OpKind,
    pub orb: u8,
    pub spin: Spin,
}

impl Op {
    pub fn cdag(orb: usize, spin: Spin) -> Op {
        Op {
            kind: OpKind::Cdag,
            orb: orb as u8,
            spin,
        }
    }

    pub fn c(orb: usize, spin: Spin) -> Op {
        Op {
            kind: OpKind::C,
            orb: orb as u8,
            spin,
        }
    }

    pub fn n(orb: usize, spin: Spin) -> Op {
        Op {
            kind: OpKind::N,
            orb: orb as u8,
            spin,
        }
    }

    pub fn adjoint(self) -> Op {
        let kind = match self.kind {
            OpKind::Cdag => OpKind::C,
            OpKind::C => OpKind::Cdag,
            OpKind::N => OpKind::N,
        };
        Op { kind, ..self }
    }

    fn same_mode(self, other: Op) -> bool {
        self.orb == other.orb && self.spin == other.spin
    }

    fn sort_key(self) -> (u8, usize, OpKind) {
        (self.orb, self.spin.index(), self.kind)
    }
}

impl PartialOrd for Op {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Op {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.kind {
            OpKind::Cdag => "Cdag",
            OpKind::C => "C",
            OpKind::N => "N",
        };
        write!(
            f,
            "{}({},{})",
            name,
            self.orb as usize + 1,
            self.spin.label()
        )
    }
}

/// A coefficient times an operator product. The rightmost operator acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub ops: Vec<Op>,
}

impl Term {
    pub fn new(coeff: impl Into<Complex64>, ops: Vec<Op>) -> Term {
        Term {
            coeff: coeff.into(),
            ops,
        }
    }

    /// Act on an occupation pattern; `None` when the product annihilates it.
    pub fn apply(&self, n_orb: usize, state: u64) -> Option<(u64, f64)> {
        let mut s = state;
        let mut sign = 1.0;
        for op in self.ops.iter().rev() {
            let bit = 1u64 << (op.orb as usize + n_orb * op.spin.index());
            match op.kind {
                OpKind::N => {
                    if s & bit == 0 {
                        return None;
                    }
                }
                OpKind::C => {
                    if s & bit == 0 {
                        return None;
                    }
                    if (s & (bit - 1)).count_ones() & 1 == 1 {
                        sign = -sign;
                    }
                    s ^= bit;
                }
                OpKind::Cdag => {
                    if s & bit != 0 {
                        return None;
                    }
                    if (s & (bit - 1)).count_ones() & 1 == 1 {
                        sign = -sign;
                    }
                    s |= bit;
                }
            }
        }
        Some((s, sign))
    }

    pub fn adjoint(&self) -> Term {
        Term {
            coeff: self.coeff.conj(),
            ops: self.ops.iter().rev().map(|o| o.adjoint()).collect(),
        }
    }

    /// Move number operators that share no mode with a ladder operator to the
    /// right, sorted and deduplicated (they commute with the rest and n^2 = n).
    fn canonical_ops(&self) -> Vec<Op> {
        let ladders: Vec<Op> = self
            .ops
            .iter()
            .copied()
            .filter(|o| o.kind != OpKind::N)
            .collect();
        let mut core = Vec::with_capacity(self.ops.len());
        let mut free = Vec::new();
        for &o in &self.ops {
            if o.kind == OpKind::N && !ladders.iter().any(|l| l.same_mode(o)) {
                free.push(o);
            } else {
                core.push(o);
            }
        }
        free.sort();
        free.dedup();
        core.extend(free);
        core
    }

    pub fn op_string(&self) -> String {
        if self.ops.is_empty() {
            return "Id".to_string();
        }
        let parts: Vec<String> = self.ops.iter().map(|o| o.to_string()).collect();
        parts.join(" ")
    }
}

/// A sum of operator products, the common currency between analytic formulas,
/// sparse matrices and human-readable term dumps.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TermList {
    terms: Vec<Term>,
}

impl TermList {
    pub fn new() -> Self {
        TermList { terms: Vec::new() }
    }

    pub fn identity(coeff: impl Into<Complex64>) -> Self {
        TermList {
            terms: vec![Term::new(coeff, Vec::new())],
        }
    }

    pub fn single(coeff: impl Into<Complex64>, ops: Vec<Op>) -> Self {
        TermList {
            terms: vec![Term::new(coeff, ops)],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, coeff: impl Into<Complex64>, ops: Vec<Op>) {
        self.terms.push(Term::new(coeff, ops));
    }

    pub fn extend(&mut self, other: TermList) {
        self.terms.extend(other.terms);
    }

    pub fn scaled(mut self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        for t in &mut self.terms {
            t.coeff *= s;
        }
        self
    }

    pub fn plus(mut self, other: &TermList) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &TermList) -> TermList {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut ops = a.ops.clone();
                ops.extend_from_slice(&b.ops);
                terms.push(Term {
                    coeff: a.coeff * b.coeff,
                    ops,
                });
            }
        }
        TermList { terms }
    }

    pub fn adjoint(&self) -> TermList {
        TermList {
            terms: self.terms.iter().map(Term::adjoint).collect(),
        }
    }

    /// `self + self^dagger`.
    pub fn plus_hc(&self) -> TermList {
        self.clone().plus(&self.adjoint())
    }

    /// Canonicalise each product, merge identical products and drop
    /// coefficients below `1e-14` of the largest one. The result is sorted.
    pub fn simplified(&self) -> TermList {
        let mut merged: BTreeMap<(usize, Vec<Op>), Complex64> = BTreeMap::new();
        for t in &self.terms {
            let ops = t.canonical_ops();
            *merged.entry((ops.len(), ops)).or_default() += t.coeff;
        }
        let scale = merged.values().map(|c| c.norm()).fold(0.0, f64::max);
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > 1e-14 * scale)
            .map(|((_, ops), coeff)| Term { coeff, ops })
            .collect();
        TermList { terms }
    }

    /// Matrix of the operator on `basis`. Products leaving a restricted basis
    /// are projected out.
    pub fn materialize(&self, basis: &Arc<SectorBasis>) -> SparseOperator {
        let n_orb = basis.n_orb();
        let columns: Vec<Vec<(u32, u32, Complex64)>> = basis
            .states()
            .par_iter()
            .enumerate()
            .map(|(col, &s)| {
                let mut out = Vec::new();
                for t in &self.terms {
                    if let Some((s2, sign)) = t.apply(n_orb, s) {
                        if let Some(row) = basis.index(s2) {
                            out.push((row as u32, col as u32, t.coeff * sign));
                        }
                    }
                }
                out
            })
            .collect();
        let triplets: Vec<(u32, u32, Complex64)> = columns.into_iter().flatten().collect();
        SparseOperator::from_triplets(basis.clone(), triplets)
    }

    /// One term per line: `coeff_re coeff_im op_string`, canonical order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for t in self.simplified().terms {
            let _ = writeln!(
                out,
                "{:+.15e} {:+.15e} {}",
                t.coeff.re,
                t.coeff.im,
                t.op_string()
            );
        }
        out
    }
}

impl FromIterator<Term> for TermList {
    fn from_iter<T: IntoIterator<Item = Term>>(iter: T) -> Self {
        TermList {
            terms: iter.into_iter().collect(),
        }
    }
}

/// `c†_a c_b` for spin `s`.
pub fn hop(a: usize, b: usize, s: Spin) -> Vec<Op> {
    vec![Op::cdag(a, s), Op::c(b, s)]
}

/// Occupation polynomial `1 + x*n_a + y*n_b + z*n_a*n_b` on spin `s`.
pub fn occupation_poly(coeffs: [f64; 4], a: usize, b: usize, s: Spin) -> TermList {
    let [one, x, y, z] = coeffs;
    let mut t = TermList::new();
    t.push(one, vec![]);
    t.push(x, vec![Op::n(a, s)]);
    t.push(y, vec![Op::n(b, s)]);
    t.push(z, vec![Op::n(a, s), Op::n(b, s)]);
    t
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{
    bond_hopping, build_hubbard_operators, drive_terms, HubbardParams, Op, SectorBasis,
    SparseOperator, Spin, TermList,
};

use super::coeffs::{HopExpansionCoeffs, OccPoly};
use super::dense::solve_dense;
use super::series::{HarmonicSeries, MicroMotion};

/// Default resonance tolerance relative to the drive frequency.
pub const RESONANCE_TOL: f64 = 1e-8;

/// `p(n_a, n_b)` as a term list.
pub fn occ_poly_terms(p: OccPoly, a: Op, b: Op) -> TermList {
    let [c0, ca, cb, cab] = p.0;
    let mut t = TermList::new();
    t.push(c0, vec![]);
    t.push(ca, vec![a]);
    t.push(cb, vec![b]);
    t.push(cab, vec![a, b]);
    t
}

pub(crate) fn nn(l: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..l).flat_map(move |j| {
        [j.wrapping_sub(1), j + 1]
            .into_iter()
            .filter(move |&i| i < l)
            .map(move |i| (j, i))
    })
}

/// `sum_s sum_{j,i nn} w(j,i) c†_{j,s} c_{i,s} p(n_{j,sbar}, n_{i,sbar})`.
pub(crate) fn weighted_hops(
    l: usize,
    p: OccPoly,
    weight: impl Fn(usize, usize) -> f64,
) -> TermList {
    let mut t = TermList::new();
    for s in Spin::BOTH {
        for (j, i) in nn(l) {
            let w = weight(j, i);
            if w == 0.0 {
                continue;
            }
            let h = TermList::single(w, vec![Op::cdag(j, s), Op::c(i, s)]);
            t.extend(h.mul(&occ_poly_terms(p, Op::n(j, s.flip()), Op::n(i, s.flip()))));
        }
    }
    t
}

pub(crate) fn antisym(j: usize, i: usize) -> f64 {
    if i == j + 1 {
        1.0
    } else {
        -1.0
    }
}

/// `y0 = D / omega`.
pub fn y0_terms(p: &HubbardParams) -> TermList {
    drive_terms(p.l, p.g / p.omega)
}

/// First hopping order of `f^(1)_1`.
pub fn y1_terms(p: &HubbardParams, c: &HopExpansionCoeffs) -> TermList {
    let pre = p.j * p.g / (p.omega * p.omega);
    weighted_hops(p.l, c.theta1(), |j, i| pre * antisym(j, i))
}

pub(crate) fn pair_hop(to: usize, from: usize) -> Vec<Op> {
    vec![
        Op::cdag(to, Spin::Up),
        Op::cdag(to, Spin::Down),
        Op::c(from, Spin::Up),
        Op::c(from, Spin::Down),
    ]
}

pub(crate) fn density(j: usize) -> TermList {
    let mut t = TermList::new();
    t.push(1.0, vec![Op::n(j, Spin::Up)]);
    t.push(1.0, vec![Op::n(j, Spin::Down)]);
    t
}

pub(crate) fn doublon(j: usize) -> TermList {
    TermList::single(1.0, vec![Op::n(j, Spin::Up), Op::n(j, Spin::Down)])
}

pub(crate) fn lin(terms: &[(f64, Vec<Op>)]) -> TermList {
    let mut t = TermList::new();
    for (c, ops) in terms {
        t.push(*c, ops.clone());
    }
    t
}

/// Second hopping order of `f^(1)_1`, including the chain-end bonds.
pub fn y2_terms(p: &HubbardParams, c: &HopExpansionCoeffs) -> TermList {
    let (b, g, d) = (c.beta, c.gamma, c.delta);
    let w = p.omega;
    let mut out = TermList::new();
    let pre = 2.0 * p.j * p.j * p.g / w.powi(3);
    for j in 0..p.l - 1 {
        let k = j + 1;
        let mut t = TermList::new();
        t.push(b - g, pair_hop(j, k));
        t.push(-(b - g), pair_hop(k, j));
        t.extend(density(j).scaled(-1.0));
        t.extend(density(k));
        let one_minus = |x: usize| TermList::identity(1.0).plus(&density(x).scaled(-1.0));
        t.extend(doublon(k).mul(&one_minus(j)).scaled(b + g));
        t.extend(doublon(j).mul(&one_minus(k)).scaled(-(b + g)));
        out.extend(t.scaled(pre));
    }
    let pre = p.j * p.j * p.g / w.powi(3);
    let theta = c.theta1();
    for ctr in 1..p.l.saturating_sub(1) {
        let (m, q) = (ctr - 1, ctr + 1);
        for s in Spin::BOTH {
            let sb = s.flip();
            let mut t = TermList::new();
            let poly_a = lin(&[
                (b - g, vec![Op::n(ctr, sb)]),
                (-b, vec![Op::n(m, sb)]),
                (g, vec![Op::n(q, sb)]),
                (-d, vec![Op::n(ctr, sb), Op::n(m, sb)]),
                (d, vec![Op::n(ctr, sb), Op::n(q, sb)]),
            ]);
            t.extend(
                TermList::single(1.0, vec![Op::cdag(m, s), Op::c(q, s)])
                    .mul(&poly_a)
                    .mul(&occ_poly_terms(theta, Op::n(m, sb), Op::n(q, sb))),
            );
            let poly_b = lin(&[
                (g - b, vec![Op::n(ctr, sb)]),
                (-g, vec![Op::n(m, sb)]),
                (b, vec![Op::n(q, sb)]),
                (-d, vec![Op::n(ctr, sb), Op::n(m, sb)]),
                (d, vec![Op::n(ctr, sb), Op::n(q, sb)]),
            ]);
            t.extend(
                TermList::single(1.0, vec![Op::cdag(q, s), Op::c(m, s)])
                    .mul(&poly_b)
                    .mul(&occ_poly_terms(theta, Op::n(q, sb), Op::n(m, sb))),
            );
            let diff = |x: f64| {
                lin(&[
                    (x, vec![]),
                    (-d, vec![Op::n(m, s)]),
                    (d, vec![Op::n(q, sb)]),
                ])
            };
            t.extend(
                TermList::single(
                    1.0,
                    vec![
                        Op::cdag(ctr, s),
                        Op::cdag(m, sb),
                        Op::c(ctr, sb),
                        Op::c(q, s),
                    ],
                )
                .mul(&diff(b - g))
                .mul(&occ_poly_terms(theta, Op::n(m, s), Op::n(q, sb))),
            );
            t.extend(
                TermList::single(
                    1.0,
                    vec![
                        Op::cdag(q, s),
                        Op::cdag(ctr, sb),
                        Op::c(m, sb),
                        Op::c(ctr, s),
                    ],
                )
                .mul(&diff(g - b))
                .mul(&occ_poly_terms(theta, Op::n(q, sb), Op::n(m, s))),
            );
            let ddiff = lin(&[(d, vec![Op::n(m, s)]), (-d, vec![Op::n(q, sb)])]);
            let tail = |x0: f64, x1: f64| {
                lin(&[
                    (x0, vec![]),
                    (-x1, vec![Op::n(m, s)]),
                    (-x1, vec![Op::n(q, sb)]),
                    (-d, vec![Op::n(m, s), Op::n(q, sb)]),
                ])
            };
            t.extend(
                TermList::single(
                    1.0,
                    vec![
                        Op::cdag(ctr, s),
                        Op::cdag(ctr, sb),
                        Op::c(m, sb),
                        Op::c(q, s),
                    ],
                )
                .mul(&ddiff)
                .mul(&tail(w / (w + p.u), b)),
            );
            t.extend(
                TermList::single(
                    1.0,
                    vec![
                        Op::cdag(q, s),
                        Op::cdag(m, sb),
                        Op::c(ctr, sb),
                        Op::c(ctr, s),
                    ],
                )
                .mul(&ddiff)
                .mul(&tail(w / (w - p.u), g)),
            );
            out.extend(t.scaled(pre));
        }
    }
    out
}

/// Leading hopping order of `f^(2)_2`.
pub fn z1_terms(p: &HubbardParams, c: &HopExpansionCoeffs) -> TermList {
    let pre = p.j * p.g * p.g / (4.0 * p.omega.powi(3));
    weighted_hops(p.l, c.theta2(), |_, _| pre)
}

/// Leading hopping order of `f^(3)_1`.
pub fn f3_terms(p: &HubbardParams, c: &HopExpansionCoeffs) -> TermList {
    let pre = p.j * p.g.powi(3) / p.omega.powi(4);
    weighted_hops(p.l, c.theta3_solved(), |j, i| pre * antisym(j, i))
}

/// Analytic micro-motions of the driven Hubbard chain: `f^(1)_1` truncated at
/// `max_hop_order`, `f^(2)_2` and `f^(3)_1` at leading hopping order, and the
/// vanishing `f^(2)_1`, `f^(3)_2`. `f^(3)_3` is not assembled since it does
/// not enter the order-g^4 Hamiltonian.
pub fn hubbard_micromotion(
    p: &HubbardParams,
    b: &Arc<SectorBasis>,
    max_hop_order: usize,
    fswt_order: u32,
) -> Result<MicroMotion> {
    p.validate()?;
    if max_hop_order > 2 {
        return Err(Error::Unsupported(format!(
            "hopping order {max_hop_order} > 2"
        )));
    }
    if b.n_orb() != p.l {
        return Err(Error::domain("basis does not match the chain"));
    }
    let c = HopExpansionCoeffs::new(p.omega, p.u, fswt_order, RESONANCE_TOL * p.omega)?;
    let mut f1 = y0_terms(p);
    if max_hop_order >= 1 {
        f1.extend(y1_terms(p, &c));
    }
    if max_hop_order >= 2 {
        f1.extend(y2_terms(p, &c));
    }
    let mut mm = MicroMotion::new(p.omega);
    mm.insert_pair(1, 1, f1.materialize(b))?;
    let zero = SparseOperator::zero(b.clone());
    let hopping = max_hop_order >= 1;
    if fswt_order >= 2 {
        mm.insert_pair(2, 1, zero.clone())?;
        let z = if hopping {
            z1_terms(p, &c).materialize(b)
        } else {
            zero.clone()
        };
        mm.insert_pair(2, 2, z)?;
    }
    if fswt_order >= 3 {
        let f = if hopping {
            f3_terms(p, &c).materialize(b)
        } else {
            zero.clone()
        };
        mm.insert_pair(3, 1, f)?;
        mm.insert_pair(3, 2, zero)?;
    }
    Ok(mm)
}

/// Lab-frame Fourier series of the driven chain: `H^(0)_0 = h + U - mu N`,
/// `H^(1)_{+-1} = D`.
pub fn hubbard_series(p: &HubbardParams, b: &Arc<SectorBasis>) -> Result<HarmonicSeries> {
    let ops = build_hubbard_operators(p, b)?;
    let mut s = HarmonicSeries::new(p.omega);
    s.insert(0, 0, ops.h0(p.mu))?;
    s.insert(1, 1, ops.drive.clone())?;
    s.insert(1, -1, ops.drive)?;
    Ok(s)
}

/// Order-2 micro-motion `f^(2)_j` from the dense solver with source
/// `H^(2)_j + 1/2 sum_{j' != 0} [f^(1)_{j'}, H^(1)_{j-j'}] + 1/2 [f^(1)_j, H^(1)_0]`.
pub fn solve_order2(
    h0: &SparseOperator,
    series: &HarmonicSeries,
    f1: &MicroMotion,
    j: i32,
    tol: f64,
) -> Result<SparseOperator> {
    if j == 0 {
        return Err(Error::domain("micro-motion has no static part"));
    }
    let mut src = series
        .get(2, j)
        .cloned()
        .unwrap_or_else(|| SparseOperator::zero(h0.basis().clone()));
    for (n, jp, f) in f1.iter() {
        if n != 1 {
            continue;
        }
        if let Some(h) = series.get(1, j - jp) {
            src = src.axpby(1.0, &f.commutator(h), 0.5);
        }
    }
    if let (Some(f), Some(h)) = (f1.get(1, j), series.get(1, 0)) {
        src = src.axpby(1.0, &f.commutator(h), 0.5);
    }
    if src.max_abs() == 0.0 {
        return Ok(src);
    }
    solve_dense(h0, &src, j as f64 * series.omega(), tol)
}

/// `K` scaled by `-J`: the bare kinetic term as a term list.
pub fn kinetic_terms(p: &HubbardParams) -> TermList {
    bond_hopping(p.l).scaled(-p.j)
}

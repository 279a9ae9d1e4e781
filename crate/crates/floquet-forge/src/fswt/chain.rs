use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{
    bond_hopping, double_occupancy, hop, number_terms, HubbardParams, Op, SectorBasis,
    SparseOperator, Spin, TermList,
};
use crate::sylvester::hubbard::{lin, pair_hop, weighted_hops, RESONANCE_TOL};
use crate::sylvester::{
    hubbard_micromotion, hubbard_series, solve_dense, HarmonicSeries, HopExpansionCoeffs,
    MicroMotion, OccPoly,
};

/// `H^(0)_0 + H^(1)_0 + H^(2)_0 + sum_{j>0} 1/2 ([f^(1)_j, H^(1)_{-j}] + h.c.)`.
pub fn floquet_h_order2(series: &HarmonicSeries, mm: &MicroMotion) -> Result<SparseOperator> {
    let mut acc = series
        .static_part()
        .ok_or_else(|| Error::domain("series has no static part"))?
        .clone();
    for n in [1, 2] {
        if let Some(h) = series.get(n, 0) {
            acc = acc.add(h);
        }
    }
    for (n, j, f) in mm.iter() {
        if n != 1 || j <= 0 {
            continue;
        }
        if let Some(h) = series.get(1, -j) {
            acc = acc.add(&f.commutator(h).hermitian_part());
        }
    }
    Ok(acc)
}

fn bond_density(j: usize, s: Spin) -> TermList {
    let sb = s.flip();
    lin(&[
        (0.5, vec![Op::n(j, sb)]),
        (0.5, vec![Op::n(j + 1, sb)]),
        (-1.0, vec![Op::n(j, sb), Op::n(j + 1, sb)]),
    ])
}

fn hop_pair(a: usize, b: usize, s: Spin) -> TermList {
    lin(&[(1.0, hop(a, b, s)), (1.0, hop(b, a, s))])
}

/// Terms of the order-`g^2` FSWT Floquet Hamiltonian of the driven chain;
/// `include_j2` adds the `O(J^2)` correlated processes.
pub fn floquet_h2_terms(p: &HubbardParams, include_j2: bool) -> Result<TermList> {
    p.validate()?;
    let c = HopExpansionCoeffs::new(p.omega, p.u, 1, RESONANCE_TOL * p.omega)?;
    let (w, g, u) = (p.omega, p.g, p.u);
    let mut t = bond_hopping(p.l).scaled(-p.j * (1.0 - g * g / (w * w)));
    t.extend(double_occupancy(p.l).scaled(u));
    if p.mu != 0.0 {
        t.extend(number_terms(p.l).scaled(-p.mu));
    }
    let corr = -p.j * g * g * u / (w * w) * (1.0 / (u - w) + 1.0 / (w + u));
    if corr != 0.0 {
        for s in Spin::BOTH {
            for j in 0..p.l - 1 {
                t.extend(hop_pair(j, j + 1, s).mul(&bond_density(j, s)).scaled(corr));
            }
        }
    }
    if include_j2 {
        t.extend(j2_terms(p, &c));
    }
    Ok(t)
}

/// `1/2 ([y2, H_{-1}] + h.c.)` written out term by term.
pub fn j2_terms(p: &HubbardParams, c: &HopExpansionCoeffs) -> TermList {
    let mut t = TermList::new();
    let bg = c.beta - c.gamma;
    let d = c.delta;
    let pre = p.j * p.j * p.g * p.g / p.omega.powi(3) * bg;
    if pre == 0.0 {
        return t;
    }
    for j in 0..p.l - 1 {
        t.push(4.0 * pre, pair_hop(j, j + 1));
        t.push(4.0 * pre, pair_hop(j + 1, j));
    }
    for ctr in 1..p.l.saturating_sub(1) {
        let (m, q) = (ctr - 1, ctr + 1);
        for s in Spin::BOTH {
            let sb = s.flip();
            let one_minus_2n = lin(&[(1.0, vec![]), (-2.0, vec![Op::n(ctr, sb)])]);
            let outer = lin(&[
                (1.0, vec![Op::n(m, sb)]),
                (1.0, vec![Op::n(q, sb)]),
                (-2.0, vec![Op::n(m, sb), Op::n(q, sb)]),
            ]);
            let dens = lin(&[
                (2.0, vec![Op::n(ctr, sb)]),
                (-1.0, vec![Op::n(m, sb)]),
                (-1.0, vec![Op::n(q, sb)]),
            ])
            .plus(&one_minus_2n.mul(&outer).scaled(d));
            t.extend(hop_pair(m, q, s).mul(&dens).scaled(pre));
            let ex = lin(&[
                (
                    1.0,
                    vec![
                        Op::cdag(ctr, s),
                        Op::cdag(m, sb),
                        Op::c(ctr, sb),
                        Op::c(q, s),
                    ],
                ),
                (
                    1.0,
                    vec![
                        Op::cdag(q, s),
                        Op::cdag(ctr, sb),
                        Op::c(m, sb),
                        Op::c(ctr, s),
                    ],
                ),
            ]);
            let w = lin(&[
                (1.0, vec![]),
                (-d, vec![Op::n(m, s)]),
                (-d, vec![Op::n(q, sb)]),
                (2.0 * d, vec![Op::n(m, s), Op::n(q, sb)]),
            ]);
            t.extend(ex.mul(&w).scaled(2.0 * pre));
        }
    }
    t
}

/// Order-`g^2` FSWT Floquet Hamiltonian of the driven chain.
pub fn floquet_h2(
    p: &HubbardParams,
    b: &Arc<SectorBasis>,
    include_j2: bool,
) -> Result<SparseOperator> {
    check_chain(p, b)?;
    let mut h = floquet_h2_terms(p, include_j2)?.materialize(b);
    h = h.hermitian_part();
    Ok(h)
}

/// Same Hamiltonian with the micro-motion from the dense Sylvester solve,
/// exact in `J`.
pub fn dense_floquet_h2(p: &HubbardParams, b: &Arc<SectorBasis>) -> Result<SparseOperator> {
    let series = hubbard_series(p, b)?;
    let h0 = series.static_part().unwrap();
    let d = series.get(1, -1).unwrap();
    let f = solve_dense(h0, d, p.omega, RESONANCE_TOL * p.omega)?;
    let mut mm = MicroMotion::new(p.omega);
    mm.insert_pair(1, 1, f)?;
    floquet_h_order2(&series, &mm)
}

fn check_chain(p: &HubbardParams, b: &SectorBasis) -> Result<()> {
    p.validate()?;
    if b.n_orb() != p.l {
        return Err(Error::domain("basis does not match the chain"));
    }
    Ok(())
}

/// Order-`g^4` Floquet Hamiltonian at leading hopping order, assembled from
/// the micro-motions by the nested commutators.
pub fn floquet_h4(p: &HubbardParams, b: &Arc<SectorBasis>) -> Result<SparseOperator> {
    check_chain(p, b)?;
    if p.g == 0.0 {
        return Ok(SparseOperator::zero(b.clone()));
    }
    let c = HopExpansionCoeffs::new(p.omega, p.u, 2, RESONANCE_TOL * p.omega)?;
    let y0 = crate::sylvester::y0_terms(p).materialize(b);
    let y1 = crate::sylvester::y1_terms(p, &c).materialize(b);
    let mm = hubbard_micromotion(p, b, 1, 2)?;
    let z1 = mm.get(2, 2).unwrap();
    let f3 = crate::sylvester::f3_terms(p, &c).materialize(b);
    let d = crate::fock::drive_terms(p.l, p.g).materialize(b);
    let h2 = y1.commutator(&d).hermitian_part();
    let a = f3
        .commutator(&d)
        .scale(0.5)
        .axpby(1.0, &y0.commutator(&z1.commutator(&d)), -1.0 / 12.0)
        .axpby(1.0, &y0.commutator(&y0.commutator(&h2)), 1.0 / 12.0);
    let mut h = a.add(&a.adjoint());
    h = h.hermitian_part();
    Ok(h)
}

/// Closed form `(J g^4 / 2 omega^4) sum (c†_j c_i + h.c.) theta(n_j, n_i)` of
/// the order-`g^4` Hamiltonian with the given occupation polynomial.
pub fn floquet_h4_terms(p: &HubbardParams, theta: OccPoly) -> TermList {
    let pre = p.j * p.g.powi(4) / (2.0 * p.omega.powi(4));
    let t = weighted_hops(p.l, theta, |_, _| pre);
    let hc = t.adjoint();
    t.plus(&hc)
}

/// High-frequency-expansion comparator of the driven chain up to `omega^-order`.
pub fn hfe_h_terms(p: &HubbardParams, order: u32) -> Result<TermList> {
    p.validate()?;
    if !(1..=2).contains(&order) {
        return Err(Error::Unsupported(format!("HFE order {order}")));
    }
    let ren = if order >= 2 {
        p.g * p.g / (p.omega * p.omega)
    } else {
        0.0
    };
    let mut t = bond_hopping(p.l).scaled(-p.j * (1.0 - ren));
    t.extend(double_occupancy(p.l).scaled(p.u));
    if p.mu != 0.0 {
        t.extend(number_terms(p.l).scaled(-p.mu));
    }
    Ok(t)
}

pub fn hfe_h(p: &HubbardParams, b: &Arc<SectorBasis>, order: u32) -> Result<SparseOperator> {
    check_chain(p, b)?;
    Ok(hfe_h_terms(p, order)?.materialize(b))
}

/// Van Vleck high-frequency expansion of an arbitrary harmonic series,
/// summing all orders `n` per harmonic.
pub fn van_vleck(series: &HarmonicSeries, order: u32) -> Result<SparseOperator> {
    let w = series.omega();
    let harmonic = |j: i32| -> Option<SparseOperator> {
        let mut acc: Option<SparseOperator> = None;
        for (_, _, op) in series.iter().filter(|&(_, jj, _)| jj == j) {
            acc = Some(match acc {
                Some(a) => a.add(op),
                None => op.clone(),
            });
        }
        acc
    };
    let h0 = harmonic(0).ok_or_else(|| Error::domain("series has no static part"))?;
    let jm = series.max_harmonic();
    let mut acc = h0.clone();
    if order >= 1 {
        for j in 1..=jm {
            if let (Some(hp), Some(hm)) = (harmonic(j), harmonic(-j)) {
                acc = acc.axpby(1.0, &hp.commutator(&hm), 1.0 / (j as f64 * w));
            }
        }
    }
    if order >= 2 {
        for j in (-jm..=jm).filter(|&j| j != 0) {
            let Some(hj) = harmonic(j) else { continue };
            if let Some(hmj) = harmonic(-j) {
                let x = hmj.commutator(&h0).commutator(&hj);
                acc = acc.axpby(1.0, &x, 1.0 / (2.0 * (j * j) as f64 * w * w));
            }
            for jp in (-jm..=jm).filter(|&jp| jp != 0 && jp != j) {
                if let (Some(a), Some(b)) = (harmonic(-jp), harmonic(jp - j)) {
                    let x = a.commutator(&b).commutator(&hj);
                    acc = acc.axpby(1.0, &x, 1.0 / (3.0 * (j * jp) as f64 * w * w));
                }
            }
        }
    }
    if order > 2 {
        return Err(Error::Unsupported(format!("van Vleck order {order}")));
    }
    Ok(acc)
}

/// Floquet-modified super-exchange of the large-`U` spin projection.
pub fn spin_exchange(u: f64, j: f64, g: f64, omega: f64) -> Result<f64> {
    if u == omega {
        return Err(Error::resonance("omega = U"));
    }
    if u == 0.0 {
        return Err(Error::domain("spin exchange needs U != 0"));
    }
    let r = g * g / (omega * omega);
    Ok(4.0 * j * j / u * (1.0 - 2.0 * r)
        + 4.0 * r * j * j * (1.0 / (u - omega) + 1.0 / (omega + u)))
}

use std::fmt::Write as _;
use std::sync::Arc;

use clap::ValueEnum;
use rayon::prelude::*;

use floquet_forge::dynamics::{absorbance_ed, return_rate_sweep, ReturnRateSetup};
use floquet_forge::fock::{build_sector_basis, HubbardParams, Spin, TwoBandChainParams};
use floquet_forge::fswt::{
    bessel_j, floquet_h2_terms, floquet_h4_terms, strong_drive_floquet, strong_drive_harmonics,
    StrongDriveModel,
};
use floquet_forge::gamma::{
    coulomb_mix_selfenergy, eigen_sign_analysis, gamma_matrix, scattering_row, InteractionProfile,
};
use floquet_forge::kspace::{
    band_edge, bs_detuning, exciton_frequency, floquet_band, hartree_detuning,
    pomeranchuk_at_detuning, screened_detuning, t_matrix, BandGrid, CavitySpec, CosineBands,
    ScreeningOccupation,
};
use floquet_forge::sylvester::HopExpansionCoeffs;

use crate::config::{KeySpec, Params, Units, UNSET};
use crate::error::RunError;
use crate::output::{num, Outputs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    BenchReturnRate,
    DeriveHamiltonian,
    KspaceMap,
    Exciton,
    GammaScan,
    AbsorbanceEd,
    Pomeranchuk,
    StrongDrive,
}

const UP: Spin = Spin::Up;

const BANDS: [KeySpec; 4] = [
    ("eps1", Some("0")),
    ("eps2", Some("3.7")),
    ("t1", Some("0.05")),
    ("t2", Some("-0.15")),
];

fn keys(base: &[KeySpec], extra: &[&[KeySpec]]) -> Vec<KeySpec> {
    let mut v = base.to_vec();
    for e in extra {
        v.extend_from_slice(e);
    }
    v
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::BenchReturnRate => "bench-return-rate",
            Scenario::DeriveHamiltonian => "derive-hamiltonian",
            Scenario::KspaceMap => "kspace-map",
            Scenario::Exciton => "exciton",
            Scenario::GammaScan => "gamma-scan",
            Scenario::AbsorbanceEd => "absorbance-ed",
            Scenario::Pomeranchuk => "pomeranchuk",
            Scenario::StrongDrive => "strong-drive",
        }
    }

    pub fn units(self) -> Units {
        match self {
            Scenario::BenchReturnRate | Scenario::DeriveHamiltonian | Scenario::StrongDrive => {
                Units::Hopping
            }
            _ => Units::ElectronVolt,
        }
    }

    /// Accepted keys besides `units`, with their defaults.
    pub fn schema(self) -> Vec<KeySpec> {
        match self {
            Scenario::BenchReturnRate => vec![
                ("L", None),
                ("U", None),
                ("omega", None),
                ("g", UNSET),
                ("g_over_omega", UNSET),
                ("J", Some("1")),
                ("tf", Some("60")),
                ("dt", Some("1e-3")),
                ("sample", Some("0.1")),
            ],
            Scenario::DeriveHamiltonian => vec![
                ("L", None),
                ("U", None),
                ("omega", None),
                ("g", None),
                ("J", Some("1")),
                ("mu", Some("0")),
                ("order", Some("2")),
                ("j2", Some("false")),
                ("theta", Some("solved")),
            ],
            Scenario::KspaceMap => keys(
                &[
                    ("nx", None),
                    ("ny", None),
                    ("omega", None),
                    ("U11", Some("1.6")),
                    ("U12", Some("0.8")),
                    ("g", Some("0.05")),
                ],
                &[&BANDS, &[("kf", UNSET), ("screening", Some("grid"))]],
            ),
            Scenario::Exciton => keys(
                &[
                    ("U11", None),
                    ("U12", None),
                    ("nx", Some("64")),
                    ("ny", Some("64")),
                ],
                &[&BANDS, &[("kf", UNSET), ("screening", Some("grid"))]],
            ),
            Scenario::GammaScan => keys(
                &[("nx", None), ("ny", None), ("V", None), ("omega", None)],
                &[
                    &BANDS,
                    &[
                        ("r0", Some("0")),
                        ("profile", Some("constant")),
                        ("valley_kx", Some("pi/2")),
                        ("valley_ky", Some("pi/2")),
                        ("width", Some("0.6")),
                        ("g", Some("0.1")),
                        ("k_index", Some("all")),
                        ("q_index", Some("0")),
                        ("grid_cap", Some("1024")),
                    ],
                ],
            ),
            Scenario::AbsorbanceEd => vec![
                ("L", None),
                ("U11", None),
                ("U12", None),
                ("omega_min", None),
                ("omega_max", None),
                ("n_omega", None),
                ("eps21", Some("3.7")),
                ("t1", Some("0")),
                ("t2", Some("0")),
                ("gamma", Some("0.01")),
                ("periodic", Some("false")),
            ],
            Scenario::Pomeranchuk => keys(
                &[
                    ("g", None),
                    ("delta_ex", None),
                    ("delta_c", None),
                    ("gc0", None),
                    ("kf", None),
                    ("U11", Some("1.6")),
                    ("U12", Some("0.8")),
                    ("nx", Some("64")),
                    ("ny", Some("64")),
                ],
                &[&BANDS],
            ),
            Scenario::StrongDrive => {
                vec![
                    ("L", None),
                    ("U", None),
                    ("g", None),
                    ("omega", None),
                    ("J", Some("1")),
                    ("jmax", Some("8")),
                ]
            }
        }
    }

    pub fn run(self, p: &Params) -> Result<Outputs, RunError> {
        let mut out = Outputs::new();
        match self {
            Scenario::BenchReturnRate => bench(p, &mut out)?,
            Scenario::DeriveHamiltonian => derive(p, &mut out)?,
            Scenario::KspaceMap => kspace_map(p, &mut out)?,
            Scenario::Exciton => exciton(p, &mut out)?,
            Scenario::GammaScan => gamma_scan(p, &mut out)?,
            Scenario::AbsorbanceEd => absorbance(p, &mut out)?,
            Scenario::Pomeranchuk => pomeranchuk(p, &mut out)?,
            Scenario::StrongDrive => strong(p, &mut out)?,
        }
        Ok(out)
    }
}

fn lib<T>(key: &str, r: floquet_forge::Result<T>) -> Result<T, RunError> {
    r.map_err(|e| RunError::from_lib(Some(key), e))
}

fn chain_params(p: &Params, omega: f64, g: f64) -> Result<HubbardParams, RunError> {
    let hp = HubbardParams {
        l: p.usize("L")?,
        j: p.f64("J")?,
        u: p.f64("U")?,
        mu: 0.0,
        g,
        omega,
    };
    lib("L", hp.validate())?;
    Ok(hp)
}

fn bench(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let omegas = p.f64_list("omega")?;
    let g_key = p.one_of(&["g", "g_over_omega"])?;
    let gv = p.f64(g_key)?;
    let j = p.f64("J")?;
    if !(j > 0.0) {
        return Err(RunError::key("J", "must be positive"));
    }
    let (tf, dt, sample) = (p.f64("tf")? / j, p.f64("dt")? / j, p.f64("sample")? / j);
    if !(dt > 0.0 && sample >= dt && tf >= sample) {
        return Err(RunError::key("dt", "need 0 < dt <= sample <= tf"));
    }
    let setups = omegas
        .iter()
        .map(|&w| {
            let g = if g_key == "g" { gv } else { gv * w };
            Ok(ReturnRateSetup {
                params: chain_params(p, w, g)?,
                t_final: tf,
                dt,
                sample,
            })
        })
        .collect::<Result<Vec<_>, RunError>>()?;
    let l = setups[0].params.l;
    out.grid(format!("chain sites = {l}"));
    out.grid(format!("sector = ({}, {})", l.div_ceil(2), l.div_ceil(2)));
    out.grid(format!("samples = {}", (tf / sample).round() as usize + 1));
    let mut summary = String::new();
    for (w, r) in omegas.iter().zip(return_rate_sweep(&setups)) {
        let b = lib("omega", r)?;
        let name = if omegas.len() == 1 {
            "return_rate.csv".to_string()
        } else {
            format!("return_rate_omega{}.csv", num(*w))
        };
        let rows = (0..b.times.len()).map(|i| {
            vec![
                num(b.times[i]),
                num(b.exact[i]),
                num(b.fswt[i]),
                num(b.hfe[i]),
            ]
        });
        out.csv(&name, &["t", "L_exact", "L_fswt", "L_hfe"], rows);
        let _ = writeln!(
            summary,
            "omega = {}  g = {}  nrmse_fswt = {}  nrmse_hfe = {}  nrmse_bare = {}  norm_drift = {:.3e}",
            num(*w),
            num(b.setup.params.g),
            num(b.nrmse_fswt),
            num(b.nrmse_hfe),
            num(b.nrmse_bare),
            b.norm_drift
        );
    }
    out.text("nrmse.txt", summary);
    Ok(())
}

fn derive(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let mut hp = chain_params(p, p.f64("omega")?, p.f64("g")?)?;
    hp.mu = p.f64("mu")?;
    let mut terms = lib("omega", floquet_h2_terms(&hp, p.bool("j2")?))?;
    match p.usize("order")? {
        2 => {}
        4 => {
            let c = lib(
                "omega",
                HopExpansionCoeffs::new(hp.omega, hp.u, 2, 1e-8 * hp.omega),
            )?;
            let theta = match p.choice("theta", &["solved", "closed"])? {
                "solved" => c.theta4_solved(),
                _ => c.theta4(),
            };
            terms.extend(floquet_h4_terms(&hp, theta));
        }
        _ => return Err(RunError::key("order", "must be 2 or 4")),
    }
    out.grid(format!("chain sites = {}", hp.l));
    out.text("hamiltonian.terms", terms.dump());
    Ok(())
}

/// Grid from the band keys. `hole` empties the lower band inside `kf`.
fn band_grid(p: &Params, hole: bool) -> Result<BandGrid, RunError> {
    let bands = CosineBands {
        eps1: p.f64("eps1")?,
        eps2: p.f64("eps2")?,
        t1: p.f64("t1")?,
        t2: p.f64("t2")?,
    };
    let (u11, u12) = if p.has("U11") {
        (p.f64("U11")?, p.f64("U12")?)
    } else {
        (0.0, 0.0)
    };
    let mut g = lib(
        "nx",
        BandGrid::square(p.usize("nx")?, p.usize("ny")?, bands, u11, u12),
    )?;
    if p.has("screening") && p.choice("screening", &["grid", "saturated"])? == "saturated" {
        g = g.with_screening(ScreeningOccupation::Saturated);
    }
    if hole && p.has("kf") {
        g = lib("kf", g.with_fermi_hole(p.f64("kf")?))?;
    }
    Ok(g)
}

fn record_grid(out: &mut Outputs, g: &BandGrid) {
    out.grid(format!("k grid = {} x {}", g.nx, g.ny));
}

fn kspace_map(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let grid = band_grid(p, true)?;
    let (w, g) = (p.f64("omega")?, p.f64("g")?);
    let a = hartree_detuning(&grid, w, 0.0, UP);
    let d = lib("omega", screened_detuning(&grid, w, UP))?;
    let dbs = lib("omega", bs_detuning(&grid, w, UP))?;
    let fb = lib("omega", floquet_band(&grid, w, g, UP))?;
    let t = lib("omega", t_matrix(&grid, w, UP))?;
    record_grid(out, &grid);
    let rows = (0..grid.len()).map(|i| {
        let (kx, ky) = grid.k(i);
        vec![
            i.to_string(),
            num(kx),
            num(ky),
            num(a[i]),
            num(d[i]),
            num(dbs[i]),
            num(fb.eps[i]),
        ]
    });
    out.csv(
        "kspace_map.csv",
        &[
            "k_index",
            "kx",
            "ky",
            "A",
            "Delta",
            "Delta_BS",
            "eps_floquet",
        ],
        rows,
    );
    out.text(
        "screening.txt",
        format!("T = {}\nt_eff = {}\n", num(t), num(fb.t_eff)),
    );
    Ok(())
}

fn exciton(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let grid = band_grid(p, true)?;
    let edge = band_edge(&grid, UP);
    let w = lib("U12", exciton_frequency(&grid, UP))?;
    record_grid(out, &grid);
    out.text(
        "exciton.txt",
        format!(
            "omega_ex = {:.6} eV\nband_edge = {:.6} eV\nbinding = {:.6} eV\n",
            w,
            edge,
            edge - w
        ),
    );
    Ok(())
}

fn profile(p: &Params, grid: &BandGrid) -> Result<(InteractionProfile, Option<usize>), RunError> {
    let prof = lib(
        "V",
        InteractionProfile::screened(grid, p.f64("V")?, p.f64("r0")?),
    )?;
    let valley = (p.f64("valley_kx")?, p.f64("valley_ky")?);
    let kind = p.choice("profile", &["constant", "valley", "winding"])?;
    if kind == "constant" {
        return Ok((prof, None));
    }
    let prof = lib("width", prof.with_valley_dip(grid, valley, p.f64("width")?))?;
    let prof = if kind == "winding" {
        prof.with_phase_winding(grid, (-valley.0, -valley.1))
    } else {
        prof
    };
    Ok((prof, Some(grid.nearest(valley.0, valley.1))))
}

fn gamma_scan(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let grid = band_grid(p, true)?;
    if grid.len() > p.usize("grid_cap")? {
        return Err(RunError::key(
            "nx",
            format!("nx*ny = {} exceeds grid_cap", grid.len()),
        ));
    }
    let (prof, kv) = profile(p, &grid)?;
    let (w, g) = (p.f64("omega")?, p.f64("g")?);
    let q = p.usize("q_index")?;
    if q >= grid.len() {
        return Err(RunError::key("q_index", "outside the grid"));
    }
    let ks: Vec<usize> = match p.choice("k_index", &["all"]) {
        Ok(_) => (0..grid.len()).collect(),
        Err(_) => {
            let k = p.usize("k_index")?;
            if k >= grid.len() {
                return Err(RunError::key("k_index", "outside the grid"));
            }
            vec![k]
        }
    };
    record_grid(out, &grid);
    out.grid(format!("gamma dimension = {}", grid.len()));
    let gm = lib("omega", gamma_matrix(&grid, &prof, ks[0], q, w))?;
    let res = eigen_sign_analysis(&gm);
    out.csv(
        "resonances.csv",
        &["j", "E_j"],
        res.iter()
            .enumerate()
            .map(|(j, r)| vec![j.to_string(), num(r.energy)]),
    );
    let rows: Vec<Vec<_>> = ks
        .par_iter()
        .map(|&k| scattering_row(&grid, &prof, g, w, k, q, UP))
        .collect::<Result<_, _>>()
        .map_err(|e| RunError::from_lib(Some("omega"), e))?;
    let csv = ks.iter().zip(&rows).flat_map(|(&k, row)| {
        row.iter()
            .enumerate()
            .map(move |(k1, v)| vec![k.to_string(), k1.to_string(), num(v.re), num(v.im)])
    });
    out.csv("scattering.csv", &["k_index", "k1_index", "re", "im"], csv);
    if let Some(kv) = kv {
        let m = lib("omega", coulomb_mix_selfenergy(&grid, &prof, g, w, kv, UP))?;
        out.text(
            "coulomb_mix.txt",
            format!(
                "k_index = {kv}\nsigma = {}\ndirect = {}\nstark = {}\n",
                num(m.sigma),
                num(m.direct),
                num(m.stark)
            ),
        );
    }
    Ok(())
}

fn absorbance(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let tp = TwoBandChainParams {
        l: p.usize("L")?,
        eps21: p.f64("eps21")?,
        t1: p.f64("t1")?,
        t2: p.f64("t2")?,
        u11: p.f64("U11")?,
        u12: p.f64("U12")?,
        g: 0.0,
        omega: 0.0,
        periodic: p.bool("periodic")?,
    };
    lib("L", tp.validate())?;
    let (lo, hi, n) = (
        p.f64("omega_min")?,
        p.f64("omega_max")?,
        p.usize("n_omega")?,
    );
    if !(hi > lo) || n < 2 {
        return Err(RunError::key(
            "n_omega",
            "need omega_max > omega_min and n_omega >= 2",
        ));
    }
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let s = lib("gamma", absorbance_ed(&tp, &grid, p.f64("gamma")?))?;
    out.grid(format!("chain sites = {}", tp.l));
    out.grid(format!("frequency points = {n}"));
    out.csv(
        "spectrum.csv",
        &["omega", "alpha"],
        s.omega
            .iter()
            .zip(&s.alpha)
            .map(|(w, a)| vec![num(*w), num(*a)]),
    );
    out.csv(
        "peaks.csv",
        &["j", "E_j", "weight"],
        s.resonances
            .iter()
            .enumerate()
            .map(|(j, r)| vec![j.to_string(), num(r.0), num(r.1)]),
    );
    Ok(())
}

fn pomeranchuk(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let grid = band_grid(p, false)?;
    let cav = CavitySpec {
        g: p.f64("g")?,
        gc0: p.f64("gc0")?,
        delta_c: p.f64("delta_c")?,
    };
    lib("delta_c", cav.validate())?;
    let (w, c) = lib(
        "kf",
        pomeranchuk_at_detuning(&grid, &cav, p.f64("delta_ex")?, p.f64("kf")?, UP),
    )?;
    record_grid(out, &grid);
    out.text(
        "pomeranchuk.txt",
        format!(
            "omega = {}\nlhs = {}\nrhs = {}\neta = {}\nt_eff = {}\nt_bare = {}\ntriggered = {}\n",
            num(w),
            num(c.lhs),
            num(c.rhs),
            num(c.eta),
            num(c.t_eff),
            num(c.t_bare),
            c.triggered
        ),
    );
    Ok(())
}

fn strong(p: &Params, out: &mut Outputs) -> Result<(), RunError> {
    let l = p.usize("L")?;
    if !(2..=8).contains(&l) {
        return Err(RunError::key("L", "strong-drive spectra need 2 <= L <= 8"));
    }
    let (j, u, g, w) = (p.f64("J")?, p.f64("U")?, p.f64("g")?, p.f64("omega")?);
    let jmax = p.usize("jmax")?;
    let m = StrongDriveModel::linear_chain(l, j, u, g, w);
    lib("omega", m.validate())?;
    let n = l.div_ceil(2);
    let b = Arc::new(lib("L", build_sector_basis(l, n, l / 2))?);
    let sd = lib("jmax", strong_drive_harmonics(&m, &b, jmax))?;
    let h = lib("omega", strong_drive_floquet(&sd))?;
    let mut e = h.eigenvalues();
    e.sort_by(f64::total_cmp);
    out.grid(format!("chain sites = {l}"));
    out.grid(format!("sector dimension = {}", b.dim()));
    out.grid(format!("harmonics = {jmax}"));
    let amp = 2.0 * g / w;
    let js = -(jmax as i32)..=jmax as i32;
    out.csv(
        "bessel.csv",
        &["j", "J_j"],
        js.map(|k| vec![k.to_string(), num(bessel_j(k, amp))]),
    );
    out.text("static_hopping.terms", m.harmonic_terms(0).dump());
    out.csv(
        "spectrum.csv",
        &["n", "E_n"],
        e.iter()
            .enumerate()
            .map(|(i, x)| vec![i.to_string(), num(*x)]),
    );
    out.text(
        "strong_drive.txt",
        format!(
            "bond amplitude = {}\ntruncation = {:.3e}\n",
            num(amp),
            sd.truncation
        ),
    );
    Ok(())
}

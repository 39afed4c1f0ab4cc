//! Experiment registry: per-kind schemas and runners producing artifacts.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde_json::json;
use zakharov_core::bourgain::{
    bilinear_ratio, ensemble_max_ratio, kernel_supremum, resonant_spike_pair, EstimateParams,
    KernelConfig, KernelVerdict, Phase, ProbeLevel, Regime,
};
use zakharov_core::bourgain::bilinear::{inadmissible_point, resonant_spike_ratio};
use zakharov_core::conservation::{mass, monitor, state_energy, DIAGNOSTIC_HEADER};
use zakharov_core::continuation::{
    exponent_ledger, increment_audit, run_global, run_interval_pipeline, ContinuationReport,
    GlobalRunConfig, PipelineConfig,
};
use zakharov_core::data::{rough_data, smooth_data, RoughParams, SmoothParams};
use zakharov_core::evolution::{
    duhamel_fixed_point, evolve_splitting, DuhamelConfig, Method, Panels,
};
use zakharov_core::split::{self, Mode, SplitConfig};
use zakharov_core::state::{from_first_order, to_first_order};
use zakharov_core::{FirstOrderState, Grid, SecondOrderData, ZakharovError};

use crate::config::{key, KeySpec, Resolved, ValueKind::*};
use crate::dump::trajectory_dump;
use crate::error::{Context, LabError, LabResult};
use crate::manifest::Artifacts;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Conservation,
    ReductionRoundtrip,
    SplitScaling,
    BilinearProbe,
    KernelSupremumSweep,
    DuhamelVsSplitting,
    IntervalPipeline,
    GlobalGrowth,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Conservation,
        Kind::ReductionRoundtrip,
        Kind::SplitScaling,
        Kind::BilinearProbe,
        Kind::KernelSupremumSweep,
        Kind::DuhamelVsSplitting,
        Kind::IntervalPipeline,
        Kind::GlobalGrowth,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Kind::Conservation => "conservation",
            Kind::ReductionRoundtrip => "reduction_roundtrip",
            Kind::SplitScaling => "split_scaling",
            Kind::BilinearProbe => "bilinear_probe",
            Kind::KernelSupremumSweep => "kernel_supremum_sweep",
            Kind::DuhamelVsSplitting => "duhamel_vs_splitting",
            Kind::IntervalPipeline => "interval_pipeline",
            Kind::GlobalGrowth => "global_growth",
        }
    }

    pub fn schema(self) -> Vec<KeySpec> {
        let mut v: Vec<KeySpec> = Vec::new();
        match self {
            Kind::Conservation => {
                v.extend(grid_keys("64", "512"));
                v.extend(DATA_KEYS);
                v.extend([
                    key("horizon", Real, "1"),
                    key("dt", Real, "0.000244140625"),
                    key("stride", Int, "64"),
                    key("dump", Bool, "true"),
                ]);
            }
            Kind::ReductionRoundtrip => {
                v.extend(grid_keys("16", "256"));
                v.extend(ROUGH_KEYS);
                v.extend([
                    key("sets", Int, "100"),
                    key("horizon", Real, "1"),
                    key("steps", Int, "256"),
                ]);
            }
            Kind::SplitScaling => {
                v.extend(grid_keys("16", "16384"));
                v.extend(ROUGH_KEYS);
                v.extend([
                    key("member", Int, "0"),
                    key("cutoffs", RealList, "2,4,8,16,32,64,128,256"),
                ]);
            }
            Kind::BilinearProbe => v.extend([
                key("point", Text, "admissible"),
                key("eps", Real, "0.01"),
                key("levels", RealList, "0,1,2"),
                key("members", Int, "100"),
            ]),
            Kind::KernelSupremumSweep => v.extend([
                key("eps", Real, "0.01"),
                key("s_values", RealList, "1"),
                key("k_values", RealList, ""),
                key("regimes", Text, "output_dominant"),
                key("initial_radius", Real, "16"),
                key("max_doublings", Int, "6"),
                key("tolerance", Real, "0.05"),
                key("diverge_after", Int, "3"),
                key("rel_tol", Real, "1e-6"),
                key("heatmap", Bool, "false"),
            ]),
            Kind::DuhamelVsSplitting => {
                v.extend(grid_keys("64", "512"));
                v.extend(DATA_KEYS);
                v.extend(SPLIT_KEYS);
                v.extend([key("split_steps", Int, "1024")]);
                v.extend(DUHAMEL_KEYS);
            }
            Kind::IntervalPipeline => {
                v.extend(grid_keys("16", "1024"));
                v.extend(ROUGH_KEYS);
                v.extend(SPLIT_KEYS);
                v.extend(METHOD_KEYS);
                v.extend(DUHAMEL_KEYS);
                v.extend([key("dump", Bool, "true")]);
            }
            Kind::GlobalGrowth => {
                v.extend(grid_keys("16", "1024"));
                v.extend(ROUGH_KEYS);
                v.extend(SPLIT_KEYS);
                v.extend(METHOD_KEYS);
                v.extend(DUHAMEL_KEYS);
                v.extend([
                    key("horizon", Real, "0"),
                    key("intervals", Int, "4"),
                    key("margin", Real, "2"),
                    key("audit.slack", Real, "4"),
                    key("audit.energy_margin", Real, "1"),
                ]);
            }
        }
        v
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Kind {
    type Err = LabError;

    fn from_str(s: &str) -> LabResult<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| LabError::Config(format!("unknown experiment kind `{s}`")))
    }
}

fn grid_keys(length_pi: &'static str, points: &'static str) -> [KeySpec; 2] {
    [key("grid.length_pi", Real, length_pi), key("grid.points", Int, points)]
}

const ROUGH_KEYS: [KeySpec; 5] = [
    key("rough.s", Real, "0.95"),
    key("rough.amplitude", Real, "0.1"),
    key("rough.eps_g", Real, "0.05"),
    key("rough.wave_band", Real, "4"),
    key("rough.wave_amplitude", Real, "0.1"),
];

const DATA_KEYS: [KeySpec; 11] = [
    key("data", Text, "smooth"),
    key("smooth.a", Real, "0.5"),
    key("smooth.b", Real, "0.3"),
    key("smooth.c", Real, "0.2"),
    key("smooth.width", Real, "4"),
    key("smooth.kappa", Real, "0.5"),
    ROUGH_KEYS[0],
    ROUGH_KEYS[1],
    ROUGH_KEYS[2],
    ROUGH_KEYS[3],
    ROUGH_KEYS[4],
];

const SPLIT_KEYS: [KeySpec; 4] = [
    key("s", Real, "0.95"),
    key("cutoff", Real, "8"),
    key("delta", Real, "0.05"),
    key("mode", Text, "strict"),
];

const METHOD_KEYS: [KeySpec; 2] = [key("method", Text, "splitting"), key("steps", Int, "256")];

const DUHAMEL_KEYS: [KeySpec; 5] = [
    key("duhamel.tol", Real, "1e-12"),
    key("duhamel.max_iter", Int, "20"),
    key("duhamel.panels", Int, "0"),
    key("duhamel.nodes_per_panel", Int, "8"),
    key("duhamel.norm_s", Real, "1"),
];

fn e(x: f64) -> String {
    format!("{x:.12e}")
}

fn grid(c: &Resolved) -> LabResult<Grid> {
    Grid::new(c.real("grid.length_pi") * PI, c.usize("grid.points")).ctx("spectral-core")
}

fn rough_params(c: &Resolved) -> RoughParams {
    RoughParams {
        s: c.real("rough.s"),
        amplitude: c.real("rough.amplitude"),
        eps_g: c.real("rough.eps_g"),
        wave_band: c.real("rough.wave_band"),
        wave_amplitude: c.real("rough.wave_amplitude"),
    }
}

fn initial_data(c: &Resolved, g: Grid, seed: u64) -> LabResult<SecondOrderData> {
    match c.text("data") {
        "smooth" => smooth_data(
            g,
            SmoothParams {
                a: c.real("smooth.a"),
                b: c.real("smooth.b"),
                c: c.real("smooth.c"),
                width: c.real("smooth.width"),
                kappa: c.real("smooth.kappa"),
            },
        )
        .ctx("state-model"),
        "rough" => rough_data(g, rough_params(c), seed, 0).ctx("frequency-split"),
        other => Err(LabError::Config(format!("key `data`: expected smooth or rough, got `{other}`"))),
    }
}

fn mode(c: &Resolved) -> LabResult<Mode> {
    match c.text("mode") {
        "strict" => Ok(Mode::Strict),
        "exploration" => Ok(Mode::Exploration),
        other => Err(LabError::Config(format!("key `mode`: expected strict or exploration, got `{other}`"))),
    }
}

fn split_config(c: &Resolved, g: Grid) -> LabResult<SplitConfig> {
    let n = c.real("cutoff");
    if n >= g.band_wavenumber() {
        return Err(LabError::Core {
            context: "frequency-split",
            source: ZakharovError::Capacity(format!(
                "cutoff {n} reaches the resolved band {} of the grid",
                g.band_wavenumber()
            )),
        });
    }
    SplitConfig::new(n, c.real("s"), c.real("delta"), mode(c)?).ctx("frequency-split")
}

fn duhamel_config(c: &Resolved) -> DuhamelConfig {
    DuhamelConfig {
        tol: c.real("duhamel.tol"),
        max_iter: c.usize("duhamel.max_iter"),
        panels: match c.usize("duhamel.panels") {
            0 => Panels::Auto,
            p => Panels::Fixed(p),
        },
        nodes_per_panel: c.usize("duhamel.nodes_per_panel"),
        norm_s: c.real("duhamel.norm_s"),
        nonlinear: true,
    }
}

fn method(c: &Resolved) -> LabResult<Method> {
    match c.text("method") {
        "splitting" => Ok(Method::Splitting { steps: c.usize("steps") }),
        "duhamel" => Ok(Method::Duhamel(duhamel_config(c))),
        other => Err(LabError::Config(format!("key `method`: expected splitting or duhamel, got `{other}`"))),
    }
}

fn positive_count(c: &Resolved, k: &str) -> LabResult<usize> {
    match c.usize(k) {
        0 => Err(LabError::Config(format!("key `{k}` must be positive"))),
        n => Ok(n),
    }
}

/// Runs `kind` on a validated configuration.
pub fn run_kind(kind: Kind, c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    match kind {
        Kind::Conservation => conservation(c, seed),
        Kind::ReductionRoundtrip => reduction_roundtrip(c, seed),
        Kind::SplitScaling => split_scaling(c, seed),
        Kind::BilinearProbe => bilinear_probe(c, seed),
        Kind::KernelSupremumSweep => kernel_sweep(c),
        Kind::DuhamelVsSplitting => duhamel_vs_splitting(c, seed),
        Kind::IntervalPipeline => interval_pipeline(c, seed),
        Kind::GlobalGrowth => global_growth(c, seed),
    }
}

fn steps_for(horizon: f64, dt: f64) -> LabResult<usize> {
    if !(horizon > 0.0 && dt > 0.0) {
        return Err(LabError::Config("`horizon` and `dt` must be positive".into()));
    }
    let q = horizon / dt;
    let n = q.round();
    if n < 1.0 || (q - n).abs() > 1e-9 * n {
        return Err(LabError::Config(format!("horizon {horizon} is not a whole number of steps {dt}")));
    }
    Ok(n as usize)
}

fn conservation(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let g = grid(c)?;
    let d = initial_data(c, g, seed)?;
    let s0 = to_first_order(&d).ctx("state-model")?;
    let horizon = c.real("horizon");
    let steps = steps_for(horizon, c.real("dt"))?;
    let traj = evolve_splitting(&s0, horizon, steps, positive_count(c, "stride")?).ctx("evolution")?;
    let m0 = mass(&s0.u);
    let e0 = state_energy(&s0).total;
    let rel = |x: f64, x0: f64| if x0 != 0.0 { (x - x0).abs() / x0.abs() } else { (x - x0).abs() };
    let mut csv = String::from("t,mass,energy,mass_drift,energy_drift,conjugacy_defect\n");
    for s in &traj.states {
        let m = mass(&s.u);
        let en = state_energy(s).total;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            e(s.t),
            e(m),
            e(en),
            e(rel(m, m0)),
            e(rel(en, e0)),
            e(s.conjugacy_defect())
        );
    }
    let mut diag = format!("{DIAGNOSTIC_HEADER}\n");
    for r in monitor(&traj.states) {
        diag.push_str(&r.csv());
        diag.push('\n');
    }
    let mut a = Artifacts::new();
    a.add_text("conservation.csv", csv);
    a.add_text("diagnostics.csv", diag);
    if c.flag("dump") {
        let meta = [("method", "splitting".to_string()), ("steps", steps.to_string()), ("dt", e(horizon / steps as f64))];
        a.add("trajectory.zk1", trajectory_dump(&meta, &traj.states).ctx("state-model")?);
    }
    Ok(a)
}

fn reduction_roundtrip(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let g = grid(c)?;
    let p = rough_params(c);
    let mut csv = String::from("member,roundtrip_error\n");
    for m in 0..c.int("sets") {
        let d = rough_data(g, p, seed, m).ctx("state-model")?;
        let back = from_first_order(&to_first_order(&d).ctx("state-model")?);
        let err = back.u.distance(&d.u0, 0.0) + back.n.distance(&d.n0, 0.0) + back.n_t.distance(&d.n1, 0.0);
        let scale = d.u0.l2_norm() + d.n0.l2_norm() + d.n1.l2_norm();
        let _ = writeln!(csv, "{m},{}", e(if scale > 0.0 { err / scale } else { err }));
    }
    let d = rough_data(g, p, seed, 0).ctx("state-model")?;
    let s0 = to_first_order(&d).ctx("state-model")?;
    let traj = evolve_splitting(&s0, c.real("horizon"), positive_count(c, "steps")?, 1).ctx("evolution")?;
    let mut conj = String::from("t,conjugacy_defect\n");
    for s in &traj.states {
        let _ = writeln!(conj, "{},{}", e(s.t), e(s.conjugacy_defect()));
    }
    let mut a = Artifacts::new();
    a.add_text("roundtrip.csv", csv);
    a.add_text("conjugacy.csv", conj);
    Ok(a)
}

fn split_scaling(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let g = grid(c)?;
    let p = rough_params(c);
    let d = rough_data(g, p, seed, c.int("member")).ctx("frequency-split")?;
    let s = p.s;
    let mut csv = String::from(
        "cutoff,u02_L2,u01_H1,high_product,low_product,low_h1_ratio,low_l2_ratio,high_hs_ratio,high_l2_ratio\n",
    );
    let mut high = Vec::new();
    let mut low = Vec::new();
    for n in c.reals("cutoffs") {
        if n >= g.band_wavenumber() {
            return Err(LabError::Core {
                context: "frequency-split",
                source: ZakharovError::Capacity(format!(
                    "cutoff {n} reaches the resolved band {} of the grid",
                    g.band_wavenumber()
                )),
            });
        }
        let sd = split::split(&d.u0, n).ctx("frequency-split")?;
        let b = sd.measured_bounds(s);
        let (l2, h1) = (sd.u02.l2_norm(), sd.u01.sobolev_norm(1.0));
        let hp = l2 * n.powf(s);
        let lp = h1 * n.powf(s - 1.0);
        high.push(hp);
        low.push(lp);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            e(n),
            e(l2),
            e(h1),
            e(hp),
            e(lp),
            e(b.low_h1),
            e(b.low_l2),
            e(b.high_hs),
            e(b.high_l2)
        );
    }
    let spread = |v: &[f64]| {
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        if lo > 0.0 { hi / lo } else { f64::INFINITY }
    };
    let summary = format!(
        "high_product_variation = {}\nlow_product_variation = {}\n",
        e(spread(&high)),
        e(spread(&low))
    );
    let mut a = Artifacts::new();
    a.add_text("split_scaling.csv", csv);
    a.add_text("summary.txt", summary);
    Ok(a)
}

fn bilinear_probe(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let eps = c.real("eps");
    let p = match c.text("point") {
        "admissible" => EstimateParams::wave_schrodinger_point(eps),
        "inadmissible" => inadmissible_point(eps),
        other => {
            return Err(LabError::Config(format!(
                "key `point`: expected admissible or inadmissible, got `{other}`"
            )))
        }
    };
    let members = c.int("members");
    let mut csv = String::from("level,grid_points,time_samples,members,ensemble_max,spike_ratio,spike_closed_form\n");
    for lv in c.reals("levels") {
        if lv < 0.0 || lv.fract() != 0.0 || lv > 6.0 {
            return Err(LabError::Config(format!("key `levels`: {lv} is not an integer in 0..=6")));
        }
        let level = ProbeLevel(lv as u32);
        let ens = if members > 0 {
            ensemble_max_ratio(level, &p, seed, members).ctx("bourgain-analysis")?
        } else {
            f64::NAN
        };
        let (n, u) = resonant_spike_pair(level).ctx("bourgain-analysis")?;
        let spike = bilinear_ratio(&n, &u, &p, Phase::HalfWavePlus, Phase::Schrodinger).ctx("bourgain-analysis")?;
        let _ = writeln!(
            csv,
            "{},{},{},{members},{},{},{}",
            level.0,
            level.grid().points(),
            level.time_samples(),
            e(ens),
            e(spike),
            e(resonant_spike_ratio(level, &p))
        );
    }
    let mut a = Artifacts::new();
    a.add_text("bilinear.csv", csv);
    Ok(a)
}

fn kernel_sweep(c: &Resolved) -> LabResult<Artifacts> {
    let eps = c.real("eps");
    let base = EstimateParams::wave_schrodinger_point(eps);
    let regimes: Vec<Regime> = c
        .text("regimes")
        .split(',')
        .map(|r| r.trim().parse::<Regime>().map_err(|e| LabError::Config(format!("key `regimes`: {e}"))))
        .collect::<LabResult<_>>()?;
    let s_values = c.reals("s_values");
    let k_values = match c.reals("k_values") {
        v if v.is_empty() => vec![base.k],
        v => v,
    };
    let cfg = KernelConfig {
        initial_radius: c.real("initial_radius"),
        max_doublings: c.usize("max_doublings"),
        tolerance: c.real("tolerance"),
        diverge_after: positive_count(c, "diverge_after")?,
        rel_tol: c.real("rel_tol"),
    };
    let mut csv = String::from("params,regime,resolution,value,converged\n");
    let mut heat = String::from("# s k regime final_value\n");
    for &s in &s_values {
        for &k in &k_values {
            let p = EstimateParams { s, k, ..base };
            let tag = format!("s={s};k={k};l={};a={};a1={};a2={}", p.l, p.a, p.a1, p.a2);
            for &regime in &regimes {
                let (verdict, history, fin) = match kernel_supremum(&p, regime, &cfg) {
                    Ok(probe) => {
                        let v = match probe.verdict {
                            KernelVerdict::Stabilized => "stabilized",
                            KernelVerdict::Diverging => "diverging",
                        };
                        (v, probe.history, probe.value)
                    }
                    Err(ZakharovError::ProbeFailure(msg)) => {
                        log::warn!("{msg}");
                        (
                            "probe_failure",
                            Vec::new(),
                            f64::NAN,
                        )
                    }
                    Err(source) => {
                        return Err(LabError::Core {
                            context: "bourgain-analysis",
                            source,
                        })
                    }
                };
                for (r, v) in &history {
                    let _ = writeln!(csv, "{tag},{regime},{},{},{verdict}", e(*r), e(*v));
                }
                if history.is_empty() {
                    let _ = writeln!(csv, "{tag},{regime},NA,NA,{verdict}");
                }
                let _ = writeln!(heat, "{} {} {regime} {}", e(s), e(k), e(fin));
            }
        }
    }
    let mut a = Artifacts::new();
    a.add_text("kernel_sweep.csv", csv);
    if c.flag("heatmap") {
        a.add_text("kernel_heatmap.dat", heat);
    }
    Ok(a)
}

fn duhamel_vs_splitting(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let g = grid(c)?;
    let d = initial_data(c, g, seed)?;
    let s0 = to_first_order(&d).ctx("state-model")?;
    let len = split::interval_length(c.real("cutoff"), c.real("s"), c.real("delta"), mode(c)?).ctx("frequency-split")?;
    let dcfg = duhamel_config(c);
    let rep = duhamel_fixed_point(&s0, len, &dcfg).ctx("evolution")?;
    let steps = positive_count(c, "split_steps")?;
    let st = evolve_splitting(&s0, len, steps, steps).ctx("evolution")?;
    let diff = rep.trajectory.last().l2_distance(st.last());
    let mut csv = String::from("iteration,contraction_factor\n");
    for (i, f) in rep.info.factors.iter().enumerate() {
        let _ = writeln!(csv, "{},{}", i + 1, e(*f));
    }
    let summary = format!(
        "interval_length = {}\niterations = {}\nfinal_contraction_factor = {}\nmax_contraction_factor = {}\nsplitting_steps = {steps}\nend_l2_difference = {}\n",
        e(len),
        rep.info.iterations,
        e(rep.info.final_factor()),
        e(rep.info.max_factor()),
        e(diff)
    );
    let mut a = Artifacts::new();
    a.add_text("contraction.csv", csv);
    a.add_text("summary.txt", summary);
    Ok(a)
}

fn interval_pipeline(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let g = grid(c)?;
    let d = rough_data(g, rough_params(c), seed, 0).ctx("frequency-split")?;
    let sc = split_config(c, g)?;
    let pieces = split::split(&d.u0, sc.cutoff).ctx("frequency-split")?;
    let full0 = to_first_order(&d).ctx("state-model")?;
    let reg = FirstOrderState {
        u: pieces.u01.clone(),
        ..full0
    };
    let pcfg = PipelineConfig {
        split: sc,
        method: method(c)?,
    };
    let (step, consts) = run_interval_pipeline(0, &reg, &pieces.u02, &d.u0, &pcfg, None).ctx("continuation-driver")?;
    let mut a = Artifacts::new();
    a.add_text(
        "interval.csv",
        format!("{}\n{}\n", ContinuationReport::CSV_HEADER, step.report.csv_row()),
    );
    a.add_text("constants.txt", format!("c2 = {}\nc3 = {}\n", e(consts.c2), e(consts.c3)));
    if c.flag("dump") {
        let meta = [("cutoff", e(sc.cutoff)), ("interval_length", e(sc.interval_length))];
        a.add("next_data.zk1", trajectory_dump(&meta, std::slice::from_ref(&step.next_data)).ctx("state-model")?);
        a.add("full_end.zk1", trajectory_dump(&meta, std::slice::from_ref(&step.full_end)).ctx("state-model")?);
    }
    Ok(a)
}

/// Note attached to every growth summary.
pub const ASYMPTOTIC_NOTE: &str = "the theory exponent is an asymptotic large-cutoff statement; \
the desk-scale slope is reported beside it and is not expected to match";

fn global_growth(c: &Resolved, seed: u64) -> LabResult<Artifacts> {
    let g = grid(c)?;
    let s = c.real("s");
    let d = rough_data(g, rough_params(c), seed, 0).ctx("frequency-split")?;
    let mut cfg = GlobalRunConfig::new(g, 1.0, s);
    cfg.delta = c.real("delta");
    cfg.margin = c.real("margin");
    cfg.mode = mode(c)?;
    cfg.method = method(c)?;
    cfg.seed = seed;
    let cutoff = c.real("cutoff");
    cfg.cutoff = (cutoff > 0.0).then_some(cutoff);
    let horizon = c.real("horizon");
    if horizon > 0.0 {
        cfg.horizon = horizon;
    } else {
        let Some(n) = cfg.cutoff else {
            return Err(LabError::Config("`horizon = 0` needs an explicit `cutoff`".into()));
        };
        let len = split::interval_length(n, s, cfg.delta, cfg.mode).ctx("frequency-split")?;
        cfg.horizon = positive_count(c, "intervals")? as f64 * len;
    }
    let run = run_global(&cfg, &d).ctx("continuation-driver")?;
    if let Some(err) = run.failure {
        return Err(LabError::Core {
            context: "continuation-driver",
            source: err,
        });
    }
    let mut reports = format!("{}\n", ContinuationReport::CSV_HEADER);
    for r in &run.reports {
        reports.push_str(&r.csv_row());
        reports.push('\n');
    }
    let mut growth = String::from("t,remainder_H1\n");
    for (t, r) in &run.growth.points {
        let _ = writeln!(growth, "{},{}", e(*t), e(*r));
    }
    let ledger = exponent_ledger(s);
    let audit = if run.reports.len() >= 2 {
        Some(
            increment_audit(&run.reports, s, c.real("audit.slack"), c.real("audit.energy_margin"))
                .ctx("continuation-driver")?,
        )
    } else {
        None
    };
    let mut audit_csv = String::from("interval_index,mass_ratio,energy_ratio,mass_ok\n");
    if let Some(au) = &audit {
        for r in &au.rows {
            let _ = writeln!(audit_csv, "{},{},{},{}", r.interval_index, e(r.mass_ratio), e(r.energy_ratio), r.mass_ok);
        }
    }
    let finite = run.reports.iter().all(|r| r.remainder_h1.is_finite());
    let summary = json!({
        "kind": Kind::GlobalGrowth.label(),
        "seed": seed,
        "s": s,
        "cutoff": run.split.cutoff,
        "interval_length": run.split.interval_length,
        "intervals": run.reports.len(),
        "horizon": cfg.horizon,
        "fitted_growth_slope": run.growth.slope,
        "theory_exponent": run.growth.theory_exponent,
        "remainder_finite": finite,
        "note": ASYMPTOTIC_NOTE,
        "constants": run.constants.map(|k| json!({"c2": k.c2, "c3": k.c3})),
        "audit": audit.as_ref().map(|au| json!({
            "slack": au.slack,
            "mass_regression_holds": au.mass_regression_holds,
            "total_energy_increment": au.total_energy_increment,
            "energy_scale": au.energy_scale,
            "accumulated_energy_holds": au.accumulated_energy_holds,
        })),
        "exponent_ledger": {
            "lhs": ledger.lhs,
            "rhs": ledger.rhs,
            "verdict": ledger.verdict.label(),
        },
    });
    let mut a = Artifacts::new();
    a.add_text("reports.csv", reports);
    a.add_text("growth.csv", growth);
    a.add_text("audit.csv", audit_csv);
    a.add_text(
        "summary.json",
        serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
    );
    Ok(a)
}

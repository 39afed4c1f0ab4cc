//! Acceptance criteria 1 to 10, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use zakharov_core::bourgain::bilinear::inadmissible_point;
use zakharov_core::bourgain::{
    bilinear_ratio, check_wave_schrodinger, ensemble_max_ratio, kernel_supremum,
    resonant_spike_pair, EstimateParams, KernelConfig, KernelVerdict, Phase, ProbeLevel, Regime,
    WaveCondition,
};
use zakharov_core::conservation::{mass, state_energy};
use zakharov_core::continuation::{
    exponent_ledger, increment_audit, run_global, theory_exponent, ExponentVerdict,
    GlobalRunConfig,
};
use zakharov_core::data::{rough_data, rough_grid, smooth_data, smooth_grid, RoughParams, SmoothParams};
use zakharov_core::evolution::{
    duhamel_fixed_point, evolve_splitting, evolve_splitting_pair, DuhamelConfig,
};
use zakharov_core::split::{interval_length, select_cutoff, split, step_count, Mode, SplitConfig};
use zakharov_core::state::{from_first_order, to_first_order};
use zakharov_core::{FirstOrderState, Grid};

struct Outcome {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, budget_s: u64) -> bool {
    elapsed <= Duration::from_secs(budget_s)
}

fn max_drift(states: &[FirstOrderState]) -> (f64, f64) {
    let m0 = mass(&states[0].u);
    let e0 = state_energy(&states[0]).total;
    states.iter().fold((0.0, 0.0), |(dm, de), s| {
        (
            f64::max(dm, (mass(&s.u) - m0).abs() / m0),
            f64::max(de, (state_energy(s).total - e0).abs() / e0.abs()),
        )
    })
}

fn conservation() -> Outcome {
    let start = Instant::now();
    let g = smooth_grid();
    let s0 = to_first_order(&smooth_data(g, SmoothParams::default()).unwrap()).unwrap();
    let fine = evolve_splitting(&s0, 1.0, 4096, 64).unwrap();
    let elapsed = start.elapsed();
    let coarse = evolve_splitting(&s0, 1.0, 2048, 32).unwrap();
    let (dm, de) = max_drift(&fine.states);
    let (_, de_coarse) = max_drift(&coarse.states);
    let ratio = de_coarse / de;
    verdict(
        dm <= 1e-10 && de <= 1e-6 && (3.0..=5.0).contains(&ratio) && within(elapsed, 60),
        format!(
            "mass drift {dm:.2e} (<= 1e-10), energy drift {de:.2e} (<= 1e-6), halving ratio {ratio:.2} (about 4), {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn reduction_roundtrip() -> Outcome {
    let g = Grid::new(16.0 * PI, 256).unwrap();
    let p = RoughParams::new(0.95, 0.1);
    let mut worst: f64 = 0.0;
    for m in 0..100 {
        let d = rough_data(g, p, 2024, m).unwrap();
        let back = from_first_order(&to_first_order(&d).unwrap());
        let rel = |a: &zakharov_core::SpectralField, b: &zakharov_core::SpectralField| {
            a.distance(b, 0.0) / b.l2_norm().max(f64::MIN_POSITIVE)
        };
        worst = worst.max(rel(&back.u, &d.u0)).max(rel(&back.n, &d.n0)).max(rel(&back.n_t, &d.n1));
    }
    let s0 = to_first_order(&rough_data(g, p, 2024, 0).unwrap()).unwrap();
    let traj = evolve_splitting(&s0, 1.0, 1024, 8).unwrap();
    let conj = traj.states.iter().map(|s| s.conjugacy_defect()).fold(0.0, f64::max);
    verdict(
        worst <= 1e-12 && conj <= 1e-10,
        format!("round trip {worst:.2e} (<= 1e-12), conjugacy defect {conj:.2e} (<= 1e-10)"),
    )
}

fn split_fidelity() -> Outcome {
    let start = Instant::now();
    let g = rough_grid();
    let d = rough_data(g, RoughParams::new(0.95, 0.1), 11, 0).unwrap();
    let full0 = to_first_order(&d).unwrap();
    let mut worst: f64 = 0.0;
    for n in [4.0, 8.0] {
        let len = interval_length(n, 0.95, 0.05, Mode::Strict).unwrap();
        let pieces = split(&d.u0, n).unwrap();
        let reg0 = FirstOrderState {
            u: pieces.u01.clone(),
            ..full0.clone()
        };
        let (reg, diff) = evolve_splitting_pair(&reg0, &pieces.u02, len, 512, 512).unwrap();
        let direct = evolve_splitting(&full0, len, 512, 512).unwrap();
        let sum = reg.last().add(&diff.last().as_state());
        worst = worst.max(sum.l2_distance(direct.last()));
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-8 && within(elapsed, 300),
        format!("reassembly vs direct {worst:.2e} L2 (<= 1e-8) for N = 4, 8, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn duhamel_contraction() -> Outcome {
    let g = smooth_grid();
    let s0 = to_first_order(&smooth_data(g, SmoothParams::default()).unwrap()).unwrap();
    let len = interval_length(8.0, 0.95, 0.05, Mode::Strict).unwrap();
    let rep = duhamel_fixed_point(&s0, len, &DuhamelConfig::default()).unwrap();
    let st = evolve_splitting(&s0, len, 1024, 1024).unwrap();
    let diff = rep.trajectory.last().l2_distance(st.last());
    let it = rep.info.iterations;
    let f = rep.info.final_factor();
    verdict(
        it <= 20 && f < 0.5 && diff <= 1e-6,
        format!("{it} iterations (<= 20), final factor {f:.3e} (< 1/2), vs splitting {diff:.2e} L2 (<= 1e-6), |I| = {len:.4}"),
    )
}

fn bilinear_probe() -> Outcome {
    let start = Instant::now();
    let p = EstimateParams::wave_schrodinger_point(0.01);
    let maxima: Vec<f64> = (0..3).map(|r| ensemble_max_ratio(ProbeLevel(r), &p, 7, 100).unwrap()).collect();
    let stable = maxima.windows(2).all(|w| {
        let q = w[1] / w[0];
        (1.0 / 1.5..=1.5).contains(&q)
    });
    let bad = inadmissible_point(0.01);
    let spikes: Vec<f64> = (0..3)
        .map(|r| {
            let (n, u) = resonant_spike_pair(ProbeLevel(r)).unwrap();
            bilinear_ratio(&n, &u, &bad, Phase::HalfWavePlus, Phase::Schrodinger).unwrap()
        })
        .collect();
    let growth: Vec<f64> = spikes.windows(2).map(|w| w[1] / w[0]).collect();
    let grows = growth.iter().all(|&g| g >= 2.0);
    let elapsed = start.elapsed();
    verdict(
        stable && grows && within(elapsed, 600),
        format!(
            "ensemble maxima {:.4} {:.4} {:.4} (steps within 1.5x), inadmissible spike growth {:.2} {:.2} (>= 2x), {:.1}s",
            maxima[0],
            maxima[1],
            maxima[2],
            growth[0],
            growth[1],
            elapsed.as_secs_f64()
        ),
    )
}

fn kernel_supremum_probe() -> Outcome {
    let cfg = KernelConfig::default();
    let good = EstimateParams::wave_schrodinger_point(0.01);
    // s − l = 2a₁ + 1
    let bad = EstimateParams { s: 2.0, ..good };
    let violations = check_wave_schrodinger(&bad).violations;
    let a = kernel_supremum(&good, Regime::OutputDominant, &cfg).unwrap();
    let b = kernel_supremum(&bad, Regime::OutputDominant, &cfg).unwrap();
    let last_change = {
        let h = &a.history;
        (h[h.len() - 1].1 - h[h.len() - 2].1).abs() / h[h.len() - 2].1
    };
    verdict(
        a.verdict == KernelVerdict::Stabilized
            && last_change < 0.05
            && b.verdict == KernelVerdict::Diverging
            && violations.contains(&WaveCondition::WaveGain),
        format!(
            "admissible: {:?} at {:.3} (R = {}, change {:.1}%), point with s - l = 2a1 + 1: {:?} at R = {}",
            a.verdict,
            a.value,
            a.radius,
            100.0 * last_change,
            b.verdict,
            b.radius
        ),
    )
}

fn split_scaling() -> Outcome {
    let g = Grid::new(16.0 * PI, 16384).unwrap();
    let s = 0.95;
    let d = rough_data(g, RoughParams::new(s, 0.1), 5, 0).unwrap();
    let mut high = Vec::new();
    let mut low = Vec::new();
    for k in 1..=8 {
        let n = f64::from(1u32 << k);
        assert!(n < g.band_wavenumber());
        let sd = split(&d.u0, n).unwrap();
        high.push(sd.u02.l2_norm() * n.powf(s));
        low.push(sd.u01.sobolev_norm(1.0) * n.powf(s - 1.0));
    }
    let spread = |v: &[f64]| {
        v.iter().copied().fold(f64::MIN, f64::max) / v.iter().copied().fold(f64::MAX, f64::min)
    };
    let (sh, sl) = (spread(&high), spread(&low));
    verdict(
        sh <= 4.0 && sl <= 4.0,
        format!("spread of N^s |u02| {sh:.3}, of N^(s-1) |u01|_H1 {sl:.3} (<= 4) over N = 2..256"),
    )
}

struct GrowthRuns {
    slopes: Vec<Option<f64>>,
    finite: bool,
    audits: Vec<bool>,
    worst_mass_ratio: f64,
}

fn growth_runs() -> GrowthRuns {
    let g = rough_grid();
    let mut out = GrowthRuns {
        slopes: Vec::new(),
        finite: true,
        audits: Vec::new(),
        worst_mass_ratio: 0.0,
    };
    for seed in [1u64, 2] {
        let d = rough_data(g, RoughParams::new(0.95, 0.1), seed, 0).unwrap();
        let mut cfg = GlobalRunConfig::new(g, 1.0, 0.95);
        cfg.cutoff = Some(8.0);
        cfg.horizon = 4.0 * cfg.split_config().unwrap().interval_length;
        let run = run_global(&cfg, &d).unwrap();
        out.finite &= run.failure.is_none()
            && run.reports.len() == 4
            && run.reports.iter().all(|r| r.remainder_h1.is_finite());
        out.slopes.push(run.growth.slope);
        let audit = increment_audit(&run.reports, 0.95, 4.0, 1.0).unwrap();
        out.audits.push(audit.mass_regression_holds);
        for r in &audit.rows {
            out.worst_mass_ratio = out.worst_mass_ratio.max(r.mass_ratio);
        }
    }
    out
}

fn remainder_smoothing(runs: &GrowthRuns) -> Outcome {
    let theory = theory_exponent(0.95);
    let (a, b) = match (runs.slopes[0], runs.slopes[1]) {
        (Some(a), Some(b)) => (a, b),
        _ => return verdict(false, "slope fit unavailable".into()),
    };
    let rel = (a - b).abs() / (0.5 * (a.abs() + b.abs()));
    verdict(
        runs.finite && rel <= 0.5,
        format!(
            "remainder finite: {}, slopes {a:.3} / {b:.3} (spread {:.0}% <= 50%), theory exponent {theory:.2}; the exponent is asymptotic and not expected at desk scale",
            runs.finite,
            100.0 * rel
        ),
    )
}

fn increment_audit_check(runs: &GrowthRuns) -> Outcome {
    let l = exponent_ledger(0.95);
    let ledger_ok = (l.lhs + 0.15).abs() < 1e-12 && (l.rhs - 0.1).abs() < 1e-12;
    let flip = exponent_ledger(0.9).verdict == ExponentVerdict::Marginal
        && exponent_ledger(0.9 + 1e-9).verdict == ExponentVerdict::Stable
        && exponent_ledger(0.9 - 1e-9).verdict == ExponentVerdict::Unstable;
    let regression = runs.audits.iter().all(|&h| h);
    verdict(
        regression && ledger_ok && flip,
        format!(
            "mass regression within 4x for both seeds: {regression} (worst ratio {:.3}), ledger {:.2} vs {:.2}, sign flip at 9/10: {flip}",
            runs.worst_mass_ratio, l.lhs, l.rhs
        ),
    )
}

fn cutoff_arithmetic() -> Outcome {
    let len = interval_length(16.0, 0.95, 0.05, Mode::Strict).unwrap();
    let n = select_cutoff(16.0, 0.95, 1.0, Mode::Strict).unwrap();
    let cfg = SplitConfig::new(n, 0.95, 0.05, Mode::Strict).unwrap();
    let steps = step_count(16.0, &cfg);
    verdict(
        len == 0.5 && n == 65536.0 && steps == 256,
        format!("interval_length {len}, cutoff {n}, steps {steps}"),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = vec![
        (1, "conservation", conservation()),
        (2, "reduction round trip", reduction_roundtrip()),
        (3, "split fidelity", split_fidelity()),
        (4, "duhamel contraction", duhamel_contraction()),
        (5, "bilinear probe", bilinear_probe()),
        (6, "kernel supremum", kernel_supremum_probe()),
        (7, "split scaling", split_scaling()),
    ];
    let runs = growth_runs();
    results.push((8, "remainder smoothing", remainder_smoothing(&runs)));
    results.push((9, "increment audit", increment_audit_check(&runs)));
    results.push((10, "cutoff arithmetic", cutoff_arithmetic()));
    for (i, name, o) in &results {
        println!("criterion {i:>2} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

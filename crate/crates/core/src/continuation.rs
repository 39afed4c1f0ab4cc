//! Interval-by-interval continuation: split the datum, solve the regular
//! and difference systems, reassemble, and audit the increments.

use crate::conservation::{mass, state_energy};
use crate::error::{Result, ZakharovError};
use crate::evolution::{evolve_interval, propagate_linear, Method, PropagatorKind};
use crate::spectral::{Grid, SpectralField};
use crate::split::{self, Mode, SplitConfig};
use crate::state::{from_first_order, to_first_order, FirstOrderState, SecondOrderData};

/// Per-interval record.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuationReport {
    pub interval_index: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// `M(ũ(t_end))`
    pub mass_regular: f64,
    /// `E(ũ, ñ±)(t_end)`
    pub energy_regular: f64,
    /// `|M(ũ + w) − M(ũ)|` at `t_end`
    pub mass_increment: f64,
    /// `|E(ũ + w, ñ± + m±) − E(ũ, ñ±)|` at `t_end`
    pub energy_increment: f64,
    /// `c₂ N^{−3/2+3s/4}`
    pub bound_mass_incr: f64,
    /// `c₃ N^{1−s} N^{3/2−2s}`
    pub bound_energy_incr: f64,
    pub w_h1: f64,
    pub w_l2: f64,
    /// `‖(m₊ + m₋)/2‖`
    pub m_l2: f64,
    /// `‖u(t_end) − e^{it∂ₓ²}u₀‖_{H¹}`
    pub remainder_h1: f64,
    /// Full `‖n(t_end)‖`.
    pub n_l2: f64,
    /// Full `‖n_t(t_end)‖_{Ḣ^{−1}}`.
    pub nt_hm1: f64,
    /// Full `M(u(t_end))`.
    pub mass_full: f64,
    /// `‖u − (ũ + v)‖ + ‖n± − (ñ± + m±)‖` at `t_end`.
    pub reassembly_defect: f64,
    pub contraction_factor: Option<f64>,
}

impl ContinuationReport {
    pub const CSV_HEADER: &'static str = "interval_index,t_start,t_end,mass_regular,energy_regular,mass_increment,energy_increment,bound_mass_incr,bound_energy_incr,w_H1,w_L2,m_L2,remainder_H1,n_L2,nt_Hm1,mass_full,reassembly_defect,contraction_factor";

    pub fn csv_row(&self) -> String {
        let cf = self.contraction_factor.map(|c| format!("{c:.12e}")).unwrap_or_else(|| "NA".into());
        format!(
            "{},{:.15e},{:.15e},{:.15e},{:.15e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.15e},{:.3e},{}",
            self.interval_index,
            self.t_start,
            self.t_end,
            self.mass_regular,
            self.energy_regular,
            self.mass_increment,
            self.energy_increment,
            self.bound_mass_incr,
            self.bound_energy_incr,
            self.w_h1,
            self.w_l2,
            self.m_l2,
            self.remainder_h1,
            self.n_l2,
            self.nt_hm1,
            self.mass_full,
            self.reassembly_defect,
            cf
        )
    }

    fn norms(&self) -> [f64; 14] {
        [
            self.mass_regular,
            self.energy_regular,
            self.mass_increment,
            self.energy_increment,
            self.bound_mass_incr,
            self.bound_energy_incr,
            self.w_h1,
            self.w_l2,
            self.m_l2,
            self.remainder_h1,
            self.n_l2,
            self.nt_hm1,
            self.mass_full,
            self.reassembly_defect,
        ]
    }
}

/// `N^{−3/2+3s/4}`.
pub fn mass_increment_scale(cutoff: f64, s: f64) -> f64 {
    cutoff.powf(-1.5 + 0.75 * s)
}

/// `N^{1−s} N^{3/2−2s}`.
pub fn energy_increment_scale(cutoff: f64, s: f64) -> f64 {
    cutoff.powf(1.0 - s) * cutoff.powf(1.5 - 2.0 * s)
}

/// Increment constants `(c₂, c₃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncrementConstants {
    pub c2: f64,
    pub c3: f64,
}

/// Settings shared by every interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub split: SplitConfig,
    pub method: Method,
}

/// Output of one interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalStep {
    pub report: ContinuationReport,
    pub next_data: FirstOrderState,
    pub next_u02: SpectralField,
    /// Reassembled full solution at `t_end`.
    pub full_end: FirstOrderState,
}

/// Increments at the end of one interval, before constants are applied.
fn increments(reg_end: &FirstOrderState, next: &FirstOrderState) -> (f64, f64) {
    let dm = (mass(&next.u) - mass(&reg_end.u)).abs();
    let de = (state_energy(next).total - state_energy(reg_end).total).abs();
    (dm, de)
}

/// Solves one interval from regular data `data` and the carried rough part
/// `u02`. `u0` is the original full datum at `t = 0`, used for the
/// remainder. Without `constants`, this interval calibrates them: `c₂` from
/// `‖w(t_end)‖`, `c₃` from the energy increment.
pub fn run_interval_pipeline(
    index: usize,
    data: &FirstOrderState,
    u02: &SpectralField,
    u0: &SpectralField,
    cfg: &PipelineConfig,
    constants: Option<IncrementConstants>,
) -> Result<(IntervalStep, IncrementConstants)> {
    let len = cfg.split.interval_length;
    let out = evolve_interval(data, u02, len, cfg.method)?;
    let reg_end = out.regular.last();
    let diff_end = out.difference.last();
    let w = out.difference.last_w();
    let t_end = data.t + len;

    let next_data = FirstOrderState {
        u: &reg_end.u + w,
        n_plus: &reg_end.n_plus + &diff_end.m_plus,
        n_minus: &reg_end.n_minus + &diff_end.m_minus,
        t: t_end,
    };
    let next_u02 = propagate_linear(u02, PropagatorKind::Schrodinger, len);
    let full_end = reg_end.add(&diff_end.as_state());
    let assembled = FirstOrderState {
        u: &next_data.u + &next_u02,
        ..next_data.clone()
    };
    let reassembly_defect = full_end.l2_distance(&assembled);

    let (dm, de) = increments(reg_end, &next_data);
    let (ms, es) = (
        mass_increment_scale(cfg.split.cutoff, cfg.split.s),
        energy_increment_scale(cfg.split.cutoff, cfg.split.s),
    );
    // c₂ bounds ‖w(|I|)‖, which in turn bounds the mass increment
    let consts = constants.unwrap_or(IncrementConstants {
        c2: w.l2_norm() / ms,
        c3: de / es,
    });

    let fields = from_first_order(&full_end);
    let free = propagate_linear(u0, PropagatorKind::Schrodinger, t_end);
    let report = ContinuationReport {
        interval_index: index,
        t_start: data.t,
        t_end,
        mass_regular: mass(&reg_end.u),
        energy_regular: state_energy(reg_end).total,
        mass_increment: dm,
        energy_increment: de,
        bound_mass_incr: consts.c2 * ms,
        bound_energy_incr: consts.c3 * es,
        w_h1: w.sobolev_norm(1.0),
        w_l2: w.l2_norm(),
        m_l2: diff_end.density().l2_norm(),
        remainder_h1: (&full_end.u - &free).sobolev_norm(1.0),
        n_l2: fields.n.l2_norm(),
        nt_hm1: fields.n_t.homogeneous_sobolev_norm(-1.0)?,
        mass_full: mass(&full_end.u),
        reassembly_defect,
        contraction_factor: out.contraction.as_ref().map(|c| c.final_factor()),
    };
    if report.norms().iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(ZakharovError::Numerical(format!(
            "non-finite or negative norm on interval {index}: {report:?}"
        )));
    }
    if report.energy_increment > 4.0 * report.bound_energy_incr && constants.is_some() {
        log::warn!(
            "interval {index}: energy increment {:.3e} exceeds 4x the fitted bound {:.3e}",
            report.energy_increment,
            report.bound_energy_incr
        );
    }
    Ok((
        IntervalStep {
            report,
            next_data,
            next_u02,
            full_end,
        },
        consts,
    ))
}

/// Global run settings. `cutoff = None` selects `N` from the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalRunConfig {
    pub horizon: f64,
    pub s: f64,
    pub delta: f64,
    pub cutoff: Option<f64>,
    pub margin: f64,
    pub grid: Grid,
    pub method: Method,
    pub mode: Mode,
    pub seed: u64,
}

impl GlobalRunConfig {
    pub fn new(grid: Grid, horizon: f64, s: f64) -> Self {
        Self {
            horizon,
            s,
            delta: split::DEFAULT_DELTA,
            cutoff: None,
            margin: split::DEFAULT_MARGIN,
            grid,
            method: Method::Splitting { steps: 256 },
            mode: Mode::Strict,
            seed: 0,
        }
    }

    pub fn split_config(&self) -> Result<SplitConfig> {
        let n = match self.cutoff {
            Some(n) => n,
            None => split::select_cutoff(self.horizon, self.s, self.margin, self.mode)?,
        };
        if n >= self.grid.band_wavenumber() {
            return Err(ZakharovError::Capacity(format!(
                "cutoff {n} reaches the resolved band {} of the grid",
                self.grid.band_wavenumber()
            )));
        }
        SplitConfig::new(n, self.s, self.delta, self.mode)
    }
}

/// Least-squares slope of `log ‖r‖_{H¹}` against `log t`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub slope: Option<f64>,
    /// `(1 − s)/(5s − 9/2)`
    pub theory_exponent: f64,
    pub points: Vec<(f64, f64)>,
}

/// `(1 − s)/(5s − 9/2)`.
pub fn theory_exponent(s: f64) -> f64 {
    (1.0 - s) / (5.0 * s - 4.5)
}

pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(t, r)| *t > 0.0 && *r > 0.0)
        .map(|(t, r)| (t.ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[derive(Debug)]
pub struct GlobalRun {
    pub split: SplitConfig,
    pub reports: Vec<ContinuationReport>,
    pub constants: Option<IncrementConstants>,
    /// Full solution at the last completed interval end.
    pub final_state: FirstOrderState,
    pub growth: GrowthFit,
    /// Error that stopped the run early, if any.
    pub failure: Option<ZakharovError>,
}

/// Runs `step_count(T)` intervals from `data`.
pub fn run_global(cfg: &GlobalRunConfig, data: &SecondOrderData) -> Result<GlobalRun> {
    if data.u0.grid() != cfg.grid {
        return Err(ZakharovError::GridMismatch);
    }
    let sc = cfg.split_config()?;
    let steps = split::step_count(cfg.horizon, &sc);
    let pieces = split::split(&data.u0, sc.cutoff)?;
    let full0 = to_first_order(data)?;
    let mut reg = FirstOrderState {
        u: pieces.u01.clone(),
        ..full0.clone()
    };
    let mut u02 = pieces.u02.clone();
    let pcfg = PipelineConfig {
        split: sc,
        method: cfg.method,
    };
    let mut reports = Vec::with_capacity(steps);
    let mut constants = None;
    let mut final_state = full0;
    let mut failure = None;
    for k in 0..steps {
        // intervals start at exact multiples of |I|
        reg.t = k as f64 * sc.interval_length;
        match run_interval_pipeline(k, &reg, &u02, &data.u0, &pcfg, constants) {
            Ok((step, c)) => {
                constants.get_or_insert(c);
                reports.push(step.report);
                reg = step.next_data;
                u02 = step.next_u02;
                final_state = step.full_end;
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    let points: Vec<(f64, f64)> = reports.iter().map(|r| (r.t_end, r.remainder_h1)).collect();
    let growth = GrowthFit {
        slope: log_log_slope(&points),
        theory_exponent: theory_exponent(cfg.s),
        points,
    };
    Ok(GlobalRun {
        split: sc,
        reports,
        constants,
        final_state,
        growth,
        failure,
    })
}

/// Sign of `lhs − rhs` in the accumulated-increment exponent comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentVerdict {
    Stable,
    Marginal,
    Unstable,
}

impl ExponentVerdict {
    pub fn label(self) -> &'static str {
        match self {
            ExponentVerdict::Stable => "stable",
            ExponentVerdict::Marginal => "marginal",
            ExponentVerdict::Unstable => "unstable regime",
        }
    }
}

/// `4(1−s) + (1−s) + 3/2 − 2s` against `2(1−s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentLedger {
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: ExponentVerdict,
}

pub fn exponent_ledger(s: f64) -> ExponentLedger {
    let lhs = 4.0 * (1.0 - s) + (1.0 - s) + 1.5 - 2.0 * s;
    let rhs = 2.0 * (1.0 - s);
    let verdict = if (lhs - rhs).abs() <= 1e-12 {
        ExponentVerdict::Marginal
    } else if lhs < rhs {
        ExponentVerdict::Stable
    } else {
        ExponentVerdict::Unstable
    };
    ExponentLedger { lhs, rhs, verdict }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditRow {
    pub interval_index: usize,
    /// `mass_increment / bound_mass_incr`
    pub mass_ratio: f64,
    /// `energy_increment / bound_energy_incr`
    pub energy_ratio: f64,
    pub mass_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncrementAudit {
    pub rows: Vec<AuditRow>,
    pub slack: f64,
    pub mass_regression_holds: bool,
    /// `Σ energy increments`
    pub total_energy_increment: f64,
    /// `|E|` of the regular part at the end of the first interval.
    pub energy_scale: f64,
    pub accumulated_energy_holds: bool,
    pub ledger: ExponentLedger,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else if a == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Checks each interval's mass increment against `slack · c₂ N^{−3/2+3s/4}`
/// and the accumulated energy increment against `margin · |E|`.
pub fn increment_audit(reports: &[ContinuationReport], s: f64, slack: f64, margin: f64) -> Result<IncrementAudit> {
    if reports.len() < 2 {
        return Err(ZakharovError::Domain("increment audit needs at least two intervals".into()));
    }
    let rows: Vec<AuditRow> = reports
        .iter()
        .map(|r| {
            let mass_ratio = ratio(r.mass_increment, r.bound_mass_incr);
            AuditRow {
                interval_index: r.interval_index,
                mass_ratio,
                energy_ratio: ratio(r.energy_increment, r.bound_energy_incr),
                mass_ok: mass_ratio <= slack,
            }
        })
        .collect();
    let total: f64 = reports.iter().map(|r| r.energy_increment).sum();
    let scale = reports[0].energy_regular.abs();
    Ok(IncrementAudit {
        mass_regression_holds: rows.iter().all(|r| r.mass_ok),
        rows,
        slack,
        total_energy_increment: total,
        energy_scale: scale,
        accumulated_energy_holds: total <= margin * scale,
        ledger: exponent_ledger(s),
    })
}

//! Picard iteration of the Duhamel integral equations in interaction-picture
//! variables `y = e^{iφt} ŷ`, with Gauss–Lobatto panels in time.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::{difference_rhs, rhs_coupled, DifferenceState, DifferenceTrajectory, Forcing, Trajectory, COMPONENTS};
use crate::error::{Result, ZakharovError};
use crate::quad::{gauss_lobatto_nodes, integration_matrix};
use crate::spectral::{Grid, SpectralField};
use crate::state::FirstOrderState;

/// Largest number of stored complex coefficients per iterate.
pub const MAX_NODE_COEFFS: usize = 1 << 23;
/// Target of `h·ω` per panel in the automatic panel count.
const PANEL_PHASE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Panels {
    /// From the effective bandwidth of the data.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuhamelConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub panels: Panels,
    pub nodes_per_panel: usize,
    /// Regularity of the `u` component in the stopping norm.
    pub norm_s: f64,
    /// `false` drops the nonlinear terms.
    pub nonlinear: bool,
}

impl Default for DuhamelConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 20,
            panels: Panels::Auto,
            nodes_per_panel: 8,
            norm_s: 1.0,
            nonlinear: true,
        }
    }
}

/// Composite Gauss–Lobatto time grid on `[t0, t0 + len]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeGrid {
    t0: f64,
    len: f64,
    panels: usize,
    local: Vec<f64>,
    integ: Vec<Vec<f64>>,
    times: Vec<f64>,
}

impl NodeGrid {
    pub fn new(t0: f64, len: f64, panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if !(len > 0.0 && len.is_finite()) {
            return Err(ZakharovError::Domain(format!("interval length must be positive, got {len}")));
        }
        if panels == 0 || nodes_per_panel < 2 {
            return Err(ZakharovError::Domain("need at least one panel of two nodes".into()));
        }
        let local = gauss_lobatto_nodes(nodes_per_panel);
        let integ = integration_matrix(&local);
        let h = len / panels as f64;
        let mut times = vec![t0];
        for p in 0..panels {
            let a = p as f64 * h;
            for &x in &local[1..] {
                times.push(t0 + a + 0.5 * h * (x + 1.0));
            }
        }
        *times.last_mut().expect("nonempty") = t0 + len;
        Ok(Self {
            t0,
            len,
            panels,
            local,
            integ,
            times,
        })
    }

    /// Panel count with `h·ω ≤ 1/2`, `ω = ξ² + 2ξ` at the effective bandwidth.
    pub fn auto(t0: f64, len: f64, nodes_per_panel: usize, fields: &[&SpectralField]) -> Result<Self> {
        let xi = effective_bandwidth(fields);
        let omega = xi * xi + 2.0 * xi;
        let panels = ((len * omega / PANEL_PHASE).ceil() as usize).max(1);
        Self::new(t0, len, panels, nodes_per_panel)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn length(&self) -> f64 {
        self.len
    }

    pub fn start(&self) -> f64 {
        self.t0
    }
}

/// Largest `|ξ|` inside the dealiasing band carrying a coefficient above
/// `1e−13` of the largest one.
fn effective_bandwidth(fields: &[&SpectralField]) -> f64 {
    let scale = fields.iter().map(|f| f.max_abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let mut xi: f64 = 0.0;
    for f in fields {
        let g = f.grid();
        let band = g.dealias_band();
        for (i, c) in f.coeffs().iter().enumerate() {
            if g.mode(i).abs() <= band && c.norm() > 1e-13 * scale {
                xi = xi.max(g.xi(i).abs());
            }
        }
    }
    xi
}

/// Contraction record of a converged iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionInfo {
    pub iterations: usize,
    /// Ratios of successive iterate differences.
    pub factors: Vec<f64>,
}

impl ContractionInfo {
    pub fn final_factor(&self) -> f64 {
        self.factors.last().copied().unwrap_or(0.0)
    }

    pub fn max_factor(&self) -> f64 {
        self.factors.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DuhamelReport {
    pub trajectory: Trajectory,
    pub nodes: NodeGrid,
    pub info: ContractionInfo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DuhamelDifference {
    pub trajectory: DifferenceTrajectory,
    pub info: ContractionInfo,
}

type Triple = [SpectralField; 3];

fn triple_norm(x: &Triple, s: f64) -> f64 {
    x[0].sobolev_norm(s) + x[1].l2_norm() + x[2].l2_norm()
}

fn phase_mul(f: &SpectralField, k: usize, tau: f64, sign: f64) -> SpectralField {
    let kind = COMPONENTS[k];
    f.apply_symbol(|xi| C64::from_polar(1.0, sign * kind.phase(xi) * tau))
}

fn picard<R>(grid: Grid, nodes: &NodeGrid, init: &Triple, rhs: R, cfg: &DuhamelConfig) -> Result<(Vec<Triple>, ContractionInfo)>
where
    R: Fn(usize, &Triple) -> Result<Forcing> + Sync,
{
    let count = nodes.len();
    if count.saturating_mul(grid.points()).saturating_mul(3) > MAX_NODE_COEFFS {
        return Err(ZakharovError::Capacity(format!(
            "{count} time nodes on {} points exceed the fixed-point storage limit",
            grid.points()
        )));
    }
    if !(cfg.tol > 0.0) || cfg.max_iter == 0 {
        return Err(ZakharovError::Domain("tolerance and iteration cap must be positive".into()));
    }
    let taus: Vec<f64> = nodes.times.iter().map(|t| t - nodes.t0).collect();
    let mut x: Vec<Triple> = taus
        .par_iter()
        .map(|&tau| std::array::from_fn(|k| phase_mul(&init[k], k, tau, -1.0)))
        .collect();
    let npp = nodes.local.len();
    let h = nodes.len / nodes.panels as f64;
    let mut factors = Vec::new();
    let mut prev: Option<f64> = None;
    for it in 1..=cfg.max_iter {
        let g: Vec<Triple> = (0..count)
            .into_par_iter()
            .map(|i| -> Result<Triple> {
                let forcing = if cfg.nonlinear {
                    rhs(i, &x[i])?
                } else {
                    Forcing {
                        f: SpectralField::zeros(grid),
                        g_plus: SpectralField::zeros(grid),
                        g_minus: SpectralField::zeros(grid),
                    }
                };
                let parts = [forcing.f, forcing.g_plus, forcing.g_minus];
                Ok(std::array::from_fn(|k| {
                    phase_mul(&parts[k], k, taus[i], 1.0).scaled(C64::new(0.0, -1.0))
                }))
            })
            .collect::<Result<_>>()?;
        let mut y: Vec<Triple> = Vec::with_capacity(count);
        y.push(init.clone());
        for p in 0..nodes.panels {
            let base = p * (npp - 1);
            let start = y[base].clone();
            for q in 1..npp {
                let mut acc = start.clone();
                for r in 0..npp {
                    let wgt = C64::new(0.5 * h * nodes.integ[q][r], 0.0);
                    for k in 0..3 {
                        acc[k].axpy(wgt, &g[base + r][k]);
                    }
                }
                y.push(acc);
            }
        }
        let new_x: Vec<Triple> = y
            .par_iter()
            .zip(taus.par_iter())
            .map(|(yi, &tau)| std::array::from_fn(|k| phase_mul(&yi[k], k, tau, -1.0)))
            .collect();
        let stats: Vec<(f64, f64)> = new_x
            .par_iter()
            .zip(x.par_iter())
            .map(|(a, b)| {
                let d: Triple = std::array::from_fn(|k| &a[k] - &b[k]);
                (triple_norm(&d, cfg.norm_s), triple_norm(a, cfg.norm_s))
            })
            .collect();
        let diff = stats.iter().map(|s| s.0).fold(0.0, f64::max);
        let norm = stats.iter().map(|s| s.1).fold(0.0, f64::max);
        if !(diff.is_finite() && norm.is_finite()) {
            return Err(ZakharovError::Numerical(format!("non-finite Picard iterate at iteration {it}")));
        }
        if let Some(p) = prev {
            if p > 0.0 {
                factors.push(diff / p);
            }
        }
        prev = Some(diff);
        x = new_x;
        log::debug!("picard iteration {it}: diff {diff:.3e}, norm {norm:.3e}");
        if diff <= cfg.tol * norm.max(f64::MIN_POSITIVE) {
            return Ok((x, ContractionInfo { iterations: it, factors }));
        }
    }
    Err(ZakharovError::NonContraction {
        factor: factors.last().copied().unwrap_or(f64::NAN),
        iterations: cfg.max_iter,
    })
}

fn node_grid(data: &[&SpectralField], t0: f64, len: f64, cfg: &DuhamelConfig) -> Result<NodeGrid> {
    match cfg.panels {
        Panels::Auto => NodeGrid::auto(t0, len, cfg.nodes_per_panel, data),
        Panels::Fixed(p) => NodeGrid::new(t0, len, p, cfg.nodes_per_panel),
    }
}

/// Regular solve on `[data.t, data.t + len]`, `len ≤ 1`.
pub fn duhamel_fixed_point(data: &FirstOrderState, len: f64, cfg: &DuhamelConfig) -> Result<DuhamelReport> {
    let nodes = node_grid(&[&data.u, &data.n_plus, &data.n_minus], data.t, len, cfg)?;
    duhamel_on_nodes(data, nodes, cfg)
}

/// Regular solve on a prescribed node grid starting at `data.t`.
pub fn duhamel_on_nodes(data: &FirstOrderState, nodes: NodeGrid, cfg: &DuhamelConfig) -> Result<DuhamelReport> {
    if !(nodes.len <= 1.0) {
        return Err(ZakharovError::Domain(format!("interval length {} exceeds 1", nodes.len)));
    }
    if nodes.t0 != data.t {
        return Err(ZakharovError::Domain("node grid does not start at the data time".into()));
    }
    let grid = data.grid();
    let init = [data.u.clone(), data.n_plus.clone(), data.n_minus.clone()];
    let times = nodes.times.clone();
    let (x, info) = picard(
        grid,
        &nodes,
        &init,
        |i, xi| {
            rhs_coupled(&FirstOrderState {
                u: xi[0].clone(),
                n_plus: xi[1].clone(),
                n_minus: xi[2].clone(),
                t: times[i],
            })
        },
        cfg,
    )?;
    let states = x
        .into_iter()
        .zip(&times)
        .map(|([u, n_plus, n_minus], &t)| FirstOrderState { u, n_plus, n_minus, t })
        .collect();
    Ok(DuhamelReport {
        trajectory: Trajectory { times, states },
        nodes,
        info,
    })
}

/// Difference solve with data `(u02, 0, 0)` against a regular solve.
pub fn duhamel_difference(regular: &DuhamelReport, u02: &SpectralField, cfg: &DuhamelConfig) -> Result<DuhamelDifference> {
    let reg = &regular.trajectory;
    if u02.grid() != reg.last().grid() {
        return Err(ZakharovError::GridMismatch);
    }
    let grid = u02.grid();
    let init = [u02.clone(), SpectralField::zeros(grid), SpectralField::zeros(grid)];
    let times = regular.nodes.times.clone();
    let (x, info) = picard(
        grid,
        &regular.nodes,
        &init,
        |i, xi| {
            let d = DifferenceState {
                v: xi[0].clone(),
                m_plus: xi[1].clone(),
                m_minus: xi[2].clone(),
                t: times[i],
            };
            difference_rhs(&reg.states[i], &d)
        },
        cfg,
    )?;
    let states = x
        .into_iter()
        .zip(&times)
        .map(|([v, m_plus, m_minus], &t)| DifferenceState { v, m_plus, m_minus, t })
        .collect();
    Ok(DuhamelDifference {
        trajectory: DifferenceTrajectory::build(times, states, u02),
        info,
    })
}

/// Node grid fitted to both the regular data and a rough datum.
pub fn interval_nodes(data: &FirstOrderState, u02: &SpectralField, len: f64, cfg: &DuhamelConfig) -> Result<NodeGrid> {
    node_grid(&[&data.u, &data.n_plus, &data.n_minus, u02], data.t, len, cfg)
}

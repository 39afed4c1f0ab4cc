//! Weighted space-time norms: `X^{s,b}`, `Y^s`, restrictions to an interval
//! and the Duhamel bound `‖w‖_{L^∞H^s} ≲ ‖F‖_{Y^s}`.

use num_complex::Complex64 as C64;

use super::spacetime::{time_mode, Phase, SpaceTimeField};
use crate::error::{Result, ZakharovError};
use crate::evolution::is_uniform;
use crate::spectral::{bracket, SpectralField};

/// `Σ_{k,i} sw(ξ_i) · tw(k, i) · |F|²`-style reductions share this walk. At
/// an even time count the Nyquist bin is split between `±τ_N`.
fn time_weight(f: &SpaceTimeField, k: usize, xi: f64, phase: Phase, w: impl Fn(f64) -> f64) -> f64 {
    let tau = f.tau(k);
    let phi = phase.phi(xi);
    let n = f.time_samples();
    if n % 2 == 0 && k == n / 2 {
        0.5 * (w(tau + phi) + w(-tau + phi))
    } else {
        w(tau + phi)
    }
}

fn weighted_l2(f: &SpaceTimeField, phase: Phase, sw: impl Fn(f64) -> f64, b: f64) -> f64 {
    let g = f.grid();
    let m = g.points();
    let spec = f.lab_spectrum();
    let mut acc = 0.0;
    for k in 0..f.time_samples() {
        for i in 0..m {
            let c = spec[k * m + i].norm_sqr();
            if c == 0.0 {
                continue;
            }
            let xi = g.xi(i);
            acc += sw(xi) * time_weight(f, k, xi, phase, |s| bracket(s).powf(2.0 * b)) * c;
        }
    }
    (g.length() * f.window() * acc).sqrt()
}

/// `‖⟨ξ⟩^s ⟨τ + φ(ξ)⟩^b F‖` with the `L W` Parseval factor.
pub fn xsb_norm(f: &SpaceTimeField, s: f64, b: f64, phase: Phase) -> f64 {
    weighted_l2(f, phase, |xi| bracket(xi).powf(2.0 * s), b)
}

/// Homogeneous variant with `|ξ|^s` in place of `⟨ξ⟩^s`.
pub fn xsb_norm_homogeneous(f: &SpaceTimeField, s: f64, b: f64, phase: Phase) -> Result<f64> {
    if s < 0.0 {
        let m = f.grid().points();
        let spec = f.lab_spectrum();
        let zero = (0..f.time_samples()).map(|k| spec[k * m].norm()).fold(0.0, f64::max);
        if zero > 0.0 {
            let scale = spec.iter().map(|c| c.norm()).fold(0.0, f64::max);
            return Err(ZakharovError::ZeroMode { value: zero, scale });
        }
    }
    Ok(weighted_l2(
        f,
        phase,
        |xi| if xi == 0.0 { if s == 0.0 { 1.0 } else { 0.0 } } else { xi.abs().powf(2.0 * s) },
        b,
    ))
}

/// `Y^s` from a spectrum given directly on the `σ` lattice.
fn ys_from_sigma_spectrum(f: &SpaceTimeField, spec: &[C64], s: f64, sigma_of: impl Fn(usize, f64) -> (f64, f64)) -> f64 {
    let g = f.grid();
    let m = g.points();
    let mut acc = 0.0;
    for i in 0..m {
        let xi = g.xi(i);
        let mut inner = 0.0;
        for k in 0..f.time_samples() {
            let c = spec[k * m + i].norm();
            if c == 0.0 {
                continue;
            }
            let (lo, hi) = sigma_of(k, xi);
            inner += 0.5 * (1.0 / bracket(lo) + 1.0 / bracket(hi)) * c;
        }
        acc += bracket(xi).powf(2.0 * s) * inner * inner;
    }
    (g.length() * acc).sqrt()
}

/// `‖⟨ξ⟩^s ⟨τ + φ(ξ)⟩^{−1} F‖_{L²_ξ L¹_τ}`.
pub fn ys_norm(f: &SpaceTimeField, s: f64, phase: Phase) -> f64 {
    let n = f.time_samples();
    let spec = f.lab_spectrum();
    ys_from_sigma_spectrum(f, &spec, s, |k, xi| {
        let tau = f.tau(k);
        let phi = phase.phi(xi);
        if n % 2 == 0 && k == n / 2 {
            (tau + phi, -tau + phi)
        } else {
            (tau + phi, tau + phi)
        }
    })
}

/// Uniformly sampled trajectory of one field.
#[derive(Debug, Clone, Copy)]
pub struct TrajectorySlice<'a> {
    pub times: &'a [f64],
    pub fields: &'a [SpectralField],
}

impl<'a> TrajectorySlice<'a> {
    pub fn new(times: &'a [f64], fields: &'a [SpectralField]) -> Result<Self> {
        if times.len() != fields.len() {
            return Err(ZakharovError::Dimension {
                expected: times.len(),
                got: fields.len(),
            });
        }
        if times.len() < 2 || !is_uniform(times) {
            return Err(ZakharovError::Domain("trajectory samples must be uniform and at least two".into()));
        }
        Ok(Self { times, fields })
    }

    fn dt(&self) -> f64 {
        (self.times[self.times.len() - 1] - self.times[0]) / (self.times.len() - 1) as f64
    }

    /// Sample indices of `start` and `end`.
    fn locate(&self, start: f64, end: f64) -> Result<(usize, usize)> {
        let dt = self.dt();
        let tol = 1e-9 * dt;
        let first = self.times[0];
        let last = self.times[self.times.len() - 1];
        if start < first - tol || end > last + tol || !(end > start) {
            return Err(ZakharovError::Coverage {
                have_start: first,
                have_end: last,
                want_start: start,
                want_end: end,
            });
        }
        let idx = |t: f64| -> Result<usize> {
            let q = (t - first) / dt;
            let r = q.round();
            if (q - r).abs() * dt > tol.max(1e-12 * t.abs()) {
                return Err(ZakharovError::Domain(format!("time {t} is not a sample point")));
            }
            Ok(r as usize)
        };
        Ok((idx(start)?, idx(end)?))
    }
}

/// Smooth transition `0 → 1` on `[0, 1]`, flat to all orders at both ends.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / x).exp();
    let b = (-1.0 / (1.0 - x)).exp();
    a / (a + b)
}

/// Reflect-and-taper extension: width `fraction · |I|` on both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extension {
    pub fraction: f64,
}

impl Default for Extension {
    fn default() -> Self {
        Self { fraction: 0.5 }
    }
}

/// Norm of one canonical extension; an upper bound for the restriction norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictedNorm {
    pub upper_bound: f64,
    pub extension_width: f64,
    pub window: f64,
}

/// Extended field on `[start − ρ, end + ρ)`.
pub fn extend_to_window(
    traj: &TrajectorySlice,
    start: f64,
    end: f64,
    phase: Phase,
    ext: Extension,
) -> Result<SpaceTimeField> {
    if !(ext.fraction > 0.0 && ext.fraction <= 1.0) {
        return Err(ZakharovError::Domain(format!(
            "extension fraction must lie in (0, 1], got {}",
            ext.fraction
        )));
    }
    let (i0, i1) = traj.locate(start, end)?;
    let inner = i1 - i0;
    let dt = traj.dt();
    let m = ((ext.fraction * inner as f64).round() as usize).max(1).min(inner);
    let grid = traj.fields[i0].grid();
    let frame = |f: &SpectralField, t: f64, factor: f64, back_t: f64| -> SpectralField {
        // interaction frame at t, then back to the lab frame at back_t
        f.apply_symbol(|xi| C64::from_polar(factor, phase.phi(xi) * (t - back_t)))
    };
    let mut rows = Vec::with_capacity(inner + 2 * m);
    for q in (1..=m).rev() {
        let chi = smooth_step(1.0 - q as f64 / m as f64);
        let src = i0 + q;
        rows.push(frame(&traj.fields[src], traj.times[src], chi, start - q as f64 * dt));
    }
    for i in i0..=i1 {
        if traj.fields[i].grid() != grid {
            return Err(ZakharovError::GridMismatch);
        }
        rows.push(traj.fields[i].clone());
    }
    for q in 1..m {
        let chi = smooth_step(1.0 - q as f64 / m as f64);
        let src = i1 - q;
        rows.push(frame(&traj.fields[src], traj.times[src], chi, end + q as f64 * dt));
    }
    let k = rows.len();
    SpaceTimeField::from_rows(start - m as f64 * dt, k as f64 * dt, &rows)
}

/// `X^{s,b}(I)` upper bound from the reflect-and-taper extension.
pub fn restricted_norm(
    traj: &TrajectorySlice,
    start: f64,
    end: f64,
    s: f64,
    b: f64,
    phase: Phase,
    ext: Extension,
) -> Result<RestrictedNorm> {
    let f = extend_to_window(traj, start, end, phase, ext)?;
    let width = (f.time_samples() as f64 * f.dt() - (end - start)) / 2.0;
    Ok(RestrictedNorm {
        upper_bound: xsb_norm(&f, s, b, phase),
        extension_width: width,
        window: f.window(),
    })
}

/// Upper bounds under extensions of width `|I|/2` and `|I|/4`.
pub fn extension_sensitivity(
    traj: &TrajectorySlice,
    start: f64,
    end: f64,
    s: f64,
    b: f64,
    phase: Phase,
) -> Result<(RestrictedNorm, RestrictedNorm)> {
    Ok((
        restricted_norm(traj, start, end, s, b, phase, Extension { fraction: 0.5 })?,
        restricted_norm(traj, start, end, s, b, phase, Extension { fraction: 0.25 })?,
    ))
}

/// `max_t ‖w(t)‖_{H^s} / ‖F‖_{Y^s}` for `w' = i w_xx − i F`, `w(t₀) = 0`,
/// with `Y^s` taken over the periodic window spanned by the samples.
pub fn duhamel_bound_ratio(traj_forcing: &TrajectorySlice, w: &[SpectralField], s: f64) -> Result<f64> {
    if w.len() != traj_forcing.fields.len() {
        return Err(ZakharovError::Dimension {
            expected: traj_forcing.fields.len(),
            got: w.len(),
        });
    }
    let t0 = traj_forcing.times[0];
    let dt = traj_forcing.dt();
    let n = traj_forcing.fields.len();
    let f = SpaceTimeField::from_rows(t0, n as f64 * dt, traj_forcing.fields)?;
    let spec = f.interaction_spectrum(Phase::Schrodinger);
    let win = f.window();
    let ys = ys_from_sigma_spectrum(&f, &spec, s, |k, _| {
        let sig = 2.0 * std::f64::consts::PI * time_mode(k, n) as f64 / win;
        (sig, if n % 2 == 0 && k == n / 2 { -sig } else { sig })
    });
    if !(ys > 1e-300) {
        return Err(ZakharovError::Degenerate("forcing has zero Y norm".into()));
    }
    let top = w.iter().map(|x| x.sobolev_norm(s)).fold(0.0, f64::max);
    Ok(top / ys)
}

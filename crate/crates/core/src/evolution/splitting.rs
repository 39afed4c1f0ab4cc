//! Strang splitting: half free flow, exact nonlinear substep, half free flow.

use num_complex::Complex64 as C64;

use super::{
    difference_density, wave_forcing, DifferenceState, DifferenceTrajectory, PropagatorKind,
    Trajectory,
};
use crate::error::{Result, ZakharovError};
use crate::spectral::{Grid, SpectralField};
use crate::state::FirstOrderState;

/// Stepper with the half-step symbols precomputed.
#[derive(Debug, Clone)]
pub struct Strang {
    grid: Grid,
    dt: f64,
    half: [Vec<C64>; 3],
}

fn rotate(samples: &[C64], n: &[f64], scale: f64) -> Vec<C64> {
    samples
        .iter()
        .zip(n)
        .map(|(u, &n)| u * C64::from_polar(1.0, -n * scale))
        .collect()
}

fn mul_in_place(f: &mut SpectralField, sym: &[C64]) {
    for (c, s) in f.coeffs_mut().iter_mut().zip(sym) {
        *c *= s;
    }
}

impl Strang {
    /// `dt` may be negative (backward stepping) but not zero.
    pub fn new(grid: Grid, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt != 0.0) {
            return Err(ZakharovError::Domain(format!("time step must be finite and nonzero, got {dt}")));
        }
        let half = [
            PropagatorKind::Schrodinger.symbols(grid, 0.5 * dt),
            PropagatorKind::HalfWavePlus.symbols(grid, 0.5 * dt),
            PropagatorKind::HalfWaveMinus.symbols(grid, 0.5 * dt),
        ];
        Ok(Self { grid, dt, half })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn linear_half(&self, u: &mut SpectralField, np: &mut SpectralField, nm: &mut SpectralField) {
        mul_in_place(u, &self.half[0]);
        mul_in_place(np, &self.half[1]);
        mul_in_place(nm, &self.half[2]);
    }

    /// Physical-space samples of `Re (n₊ + n₋)/2`.
    fn density_samples(np: &SpectralField, nm: &SpectralField) -> Vec<f64> {
        (&(np + nm) * 0.5).samples().iter().map(|c| c.re).collect()
    }

    fn check_grid(&self, g: Grid) -> Result<()> {
        if g != self.grid {
            return Err(ZakharovError::GridMismatch);
        }
        Ok(())
    }

    /// One step of the full system.
    pub fn step(&self, s: &mut FirstOrderState) -> Result<()> {
        self.check_grid(s.grid())?;
        let dt = self.dt;
        self.linear_half(&mut s.u, &mut s.n_plus, &mut s.n_minus);
        let n = Self::density_samples(&s.n_plus, &s.n_minus);
        let us = s.u.samples();
        let mid = SpectralField::from_samples(self.grid, &rotate(&us, &n, 0.5 * dt))?;
        let (gp, gm) = wave_forcing(&mid.modulus_squared());
        s.n_plus.axpy(C64::new(0.0, -dt), &gp);
        s.n_minus.axpy(C64::new(0.0, -dt), &gm);
        s.u = SpectralField::from_samples(self.grid, &rotate(&us, &n, dt))?;
        self.linear_half(&mut s.u, &mut s.n_plus, &mut s.n_minus);
        s.t += dt;
        if !s.all_finite() {
            return Err(ZakharovError::Numerical(format!("non-finite state at t = {}", s.t)));
        }
        Ok(())
    }

    /// One lockstep step of the regular state and the difference state.
    pub fn step_pair(&self, reg: &mut FirstOrderState, diff: &mut DifferenceState) -> Result<()> {
        self.check_grid(reg.grid())?;
        self.check_grid(diff.v.grid())?;
        let dt = self.dt;
        self.linear_half(&mut reg.u, &mut reg.n_plus, &mut reg.n_minus);
        self.linear_half(&mut diff.v, &mut diff.m_plus, &mut diff.m_minus);

        let n_reg = Self::density_samples(&reg.n_plus, &reg.n_minus);
        let m = Self::density_samples(&diff.m_plus, &diff.m_minus);
        let n_full: Vec<f64> = n_reg.iter().zip(&m).map(|(a, b)| a + b).collect();
        let ur = reg.u.samples();
        let uf: Vec<C64> = ur.iter().zip(diff.v.samples()).map(|(a, b)| a + b).collect();

        let ur_mid = rotate(&ur, &n_reg, 0.5 * dt);
        let uf_mid = rotate(&uf, &n_full, 0.5 * dt);
        let v_mid: Vec<C64> = uf_mid.iter().zip(&ur_mid).map(|(a, b)| a - b).collect();
        let ur_mid = SpectralField::from_samples(self.grid, &ur_mid)?;
        let v_mid = SpectralField::from_samples(self.grid, &v_mid)?;
        let (gp, gm) = wave_forcing(&ur_mid.modulus_squared());
        let (dp, dm) = wave_forcing(&difference_density(&ur_mid, &v_mid)?);
        let k = C64::new(0.0, -dt);
        reg.n_plus.axpy(k, &gp);
        reg.n_minus.axpy(k, &gm);
        diff.m_plus.axpy(k, &dp);
        diff.m_minus.axpy(k, &dm);

        let ur_new = rotate(&ur, &n_reg, dt);
        let uf_new = rotate(&uf, &n_full, dt);
        let v_new: Vec<C64> = uf_new.iter().zip(&ur_new).map(|(a, b)| a - b).collect();
        reg.u = SpectralField::from_samples(self.grid, &ur_new)?;
        diff.v = SpectralField::from_samples(self.grid, &v_new)?;

        self.linear_half(&mut reg.u, &mut reg.n_plus, &mut reg.n_minus);
        self.linear_half(&mut diff.v, &mut diff.m_plus, &mut diff.m_minus);
        reg.t += dt;
        diff.t += dt;
        if !reg.all_finite() || !diff.all_finite() {
            return Err(ZakharovError::Numerical(format!("non-finite state at t = {}", reg.t)));
        }
        Ok(())
    }
}

/// Single Strang step of size `dt ≠ 0`.
pub fn step_strang(state: &FirstOrderState, dt: f64) -> Result<FirstOrderState> {
    let st = Strang::new(state.grid(), dt)?;
    let mut out = state.clone();
    st.step(&mut out)?;
    Ok(out)
}

/// `steps` steps of size `len/steps`, recording every `stride`-th state and the last.
pub fn evolve_splitting(data: &FirstOrderState, len: f64, steps: usize, stride: usize) -> Result<Trajectory> {
    if steps == 0 || stride == 0 {
        return Err(ZakharovError::Domain("step count and stride must be positive".into()));
    }
    let dt = len / steps as f64;
    let st = Strang::new(data.grid(), dt)?;
    let t0 = data.t;
    let mut s = data.clone();
    let mut times = vec![t0];
    let mut states = vec![s.clone()];
    for k in 1..=steps {
        st.step(&mut s)?;
        // time stamps without accumulated rounding
        s.t = t0 + k as f64 * dt;
        if k % stride == 0 || k == steps {
            times.push(s.t);
            states.push(s.clone());
        }
    }
    Ok(Trajectory { times, states })
}

/// Lockstep regular and difference evolution from `(data, (u02, 0, 0))`.
pub fn evolve_splitting_pair(
    data: &FirstOrderState,
    u02: &SpectralField,
    len: f64,
    steps: usize,
    stride: usize,
) -> Result<(Trajectory, DifferenceTrajectory)> {
    if steps == 0 || stride == 0 {
        return Err(ZakharovError::Domain("step count and stride must be positive".into()));
    }
    if u02.grid() != data.grid() {
        return Err(ZakharovError::GridMismatch);
    }
    let dt = len / steps as f64;
    let st = Strang::new(data.grid(), dt)?;
    let t0 = data.t;
    let mut reg = data.clone();
    let mut diff = DifferenceState::from_rough(u02.clone(), t0);
    let mut times = vec![t0];
    let mut regs = vec![reg.clone()];
    let mut diffs = vec![diff.clone()];
    for k in 1..=steps {
        st.step_pair(&mut reg, &mut diff)?;
        reg.t = t0 + k as f64 * dt;
        diff.t = reg.t;
        if k % stride == 0 || k == steps {
            times.push(reg.t);
            regs.push(reg.clone());
            diffs.push(diff.clone());
        }
    }
    let dtraj = DifferenceTrajectory::build(times.clone(), diffs, u02);
    Ok((Trajectory { times, states: regs }, dtraj))
}

//! Time evolution of the first-order system: free propagators, the coupled
//! right-hand sides, a Strang splitting integrator, a Duhamel fixed-point
//! solver and the difference system.

mod duhamel;
mod interval;
mod splitting;

pub use duhamel::{
    duhamel_difference, duhamel_fixed_point, duhamel_on_nodes, interval_nodes, ContractionInfo, DuhamelConfig, DuhamelDifference,
    DuhamelReport, NodeGrid, Panels,
};
pub use interval::{evolve_interval, IntervalOutcome, Method};
pub use splitting::{evolve_splitting, evolve_splitting_pair, step_strang, Strang};

use num_complex::Complex64 as C64;

use crate::error::{Result, ZakharovError};
use crate::spectral::{Grid, SpectralField};
use crate::state::FirstOrderState;

/// Free flows of the three components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropagatorKind {
    /// `e^{it∂ₓ²}`, symbol `e^{−iξ²t}`
    Schrodinger,
    /// symbol `e^{−i|ξ|t}`
    HalfWavePlus,
    /// symbol `e^{+i|ξ|t}`
    HalfWaveMinus,
}

impl PropagatorKind {
    /// Phase `φ(ξ)` with symbol `e^{−iφ(ξ)t}`.
    #[inline]
    pub fn phase(self, xi: f64) -> f64 {
        match self {
            Self::Schrodinger => xi * xi,
            Self::HalfWavePlus => xi.abs(),
            Self::HalfWaveMinus => -xi.abs(),
        }
    }

    #[inline]
    pub fn symbol(self, xi: f64, t: f64) -> C64 {
        C64::from_polar(1.0, -self.phase(xi) * t)
    }

    /// Symbols `e^{−iφ(ξ_j)t}` in FFT order.
    pub fn symbols(self, grid: Grid, t: f64) -> Vec<C64> {
        (0..grid.points()).map(|i| self.symbol(grid.xi(i), t)).collect()
    }
}

/// Components in the order `(u, n₊, n₋)`.
pub const COMPONENTS: [PropagatorKind; 3] = [
    PropagatorKind::Schrodinger,
    PropagatorKind::HalfWavePlus,
    PropagatorKind::HalfWaveMinus,
];

pub fn propagate_linear(f: &SpectralField, kind: PropagatorKind, t: f64) -> SpectralField {
    f.apply_symbol(|xi| kind.symbol(xi, t))
}

/// Free flow of a whole state by `t`.
pub fn propagate_state(s: &FirstOrderState, t: f64) -> FirstOrderState {
    FirstOrderState {
        u: propagate_linear(&s.u, PropagatorKind::Schrodinger, t),
        n_plus: propagate_linear(&s.n_plus, PropagatorKind::HalfWavePlus, t),
        n_minus: propagate_linear(&s.n_minus, PropagatorKind::HalfWaveMinus, t),
        t: s.t + t,
    }
}

/// Nonlinear terms: `u_t = i u_xx − i F`, `n±_t = ∓i A^{1/2} n± − i G±`.
#[derive(Debug, Clone, PartialEq)]
pub struct Forcing {
    pub f: SpectralField,
    pub g_plus: SpectralField,
    pub g_minus: SpectralField,
}

/// `G± = ±|ξ| ρ̂`.
pub(crate) fn wave_forcing(rho: &SpectralField) -> (SpectralField, SpectralField) {
    let gp = rho.apply_real_symbol(f64::abs);
    let gm = -&gp;
    (gp, gm)
}

/// `F = ½(n₊+n₋)u`, `G± = ±|ξ|·(dealiased |u|²)^`.
pub fn rhs_coupled(state: &FirstOrderState) -> Result<Forcing> {
    let f = state.density().dealiased_product(&state.u)?;
    let (g_plus, g_minus) = wave_forcing(&state.u.modulus_squared());
    Ok(Forcing { f, g_plus, g_minus })
}

/// Difference variables `(v, m₊, m₋)` of the split system.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceState {
    pub v: SpectralField,
    pub m_plus: SpectralField,
    pub m_minus: SpectralField,
    pub t: f64,
}

impl DifferenceState {
    /// `(u02, 0, 0)` at time `t`.
    pub fn from_rough(u02: SpectralField, t: f64) -> Self {
        let g = u02.grid();
        Self {
            v: u02,
            m_plus: SpectralField::zeros(g),
            m_minus: SpectralField::zeros(g),
            t,
        }
    }

    pub fn as_state(&self) -> FirstOrderState {
        FirstOrderState {
            u: self.v.clone(),
            n_plus: self.m_plus.clone(),
            n_minus: self.m_minus.clone(),
            t: self.t,
        }
    }

    pub fn from_state(s: FirstOrderState) -> Self {
        Self {
            v: s.u,
            m_plus: s.n_plus,
            m_minus: s.n_minus,
            t: s.t,
        }
    }

    /// `(m₊ + m₋)/2`.
    pub fn density(&self) -> SpectralField {
        &(&self.m_plus + &self.m_minus) * 0.5
    }

    pub fn all_finite(&self) -> bool {
        self.v.all_finite() && self.m_plus.all_finite() && self.m_minus.all_finite()
    }
}

/// `ũv̄ + |v|² + vũ̄`, each product dealiased.
pub(crate) fn difference_density(u_reg: &SpectralField, v: &SpectralField) -> Result<SpectralField> {
    let a = u_reg.dealiased_product(&v.conj())?;
    let b = v.modulus_squared();
    let c = v.dealiased_product(&u_reg.conj())?;
    Ok(&(&a + &b) + &c)
}

/// `F = ñv + mv + mũ`, `G± = ±|ξ|·(ũv̄ + |v|² + vũ̄)^` with `ñ`, `m` the
/// densities of the regular and difference states.
pub fn difference_rhs(regular: &FirstOrderState, diff: &DifferenceState) -> Result<Forcing> {
    if regular.grid() != diff.v.grid() {
        return Err(ZakharovError::GridMismatch);
    }
    let n_reg = regular.density();
    let m = diff.density();
    let f = &(&n_reg.dealiased_product(&diff.v)? + &m.dealiased_product(&diff.v)?)
        + &m.dealiased_product(&regular.u)?;
    let (g_plus, g_minus) = wave_forcing(&difference_density(&regular.u, &diff.v)?);
    Ok(Forcing { f, g_plus, g_minus })
}

/// Regular trajectory on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<FirstOrderState>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> &FirstOrderState {
        self.states.last().expect("trajectory is never empty")
    }

    /// `true` when the sample times are equispaced to `1e−9` relative.
    pub fn is_uniform(&self) -> bool {
        is_uniform(&self.times)
    }
}

pub(crate) fn is_uniform(times: &[f64]) -> bool {
    if times.len() < 2 {
        return true;
    }
    let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.abs().max(f64::MIN_POSITIVE))
}

/// Difference trajectory with `w = v − e^{i(t−t₀)∂ₓ²}u02` stored beside it.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<DifferenceState>,
    pub w: Vec<SpectralField>,
}

impl DifferenceTrajectory {
    pub(crate) fn build(times: Vec<f64>, states: Vec<DifferenceState>, u02: &SpectralField) -> Self {
        let t0 = times.first().copied().unwrap_or(0.0);
        let w = times
            .iter()
            .zip(&states)
            .map(|(&t, s)| &s.v - &propagate_linear(u02, PropagatorKind::Schrodinger, t - t0))
            .collect();
        Self { times, states, w }
    }

    pub fn last(&self) -> &DifferenceState {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn last_w(&self) -> &SpectralField {
        self.w.last().expect("trajectory is never empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn g() -> Grid {
        Grid::new(2.0 * PI, 32).unwrap()
    }

    #[test]
    fn plane_wave_flows() {
        let t = 0.37;
        let e3 = SpectralField::plane_wave(g(), 3, C64::new(1.0, 0.0));
        let got = propagate_linear(&e3, PropagatorKind::Schrodinger, t);
        assert!((got.coeff(3) - C64::from_polar(1.0, -9.0 * t)).norm() < 1e-15);
        let e2 = SpectralField::plane_wave(g(), 2, C64::new(1.0, 0.0));
        let got = propagate_linear(&e2, PropagatorKind::HalfWavePlus, t);
        assert!((got.coeff(2) - C64::from_polar(1.0, -2.0 * t)).norm() < 1e-15);
        let got = propagate_linear(&e2, PropagatorKind::HalfWaveMinus, t);
        assert!((got.coeff(2) - C64::from_polar(1.0, 2.0 * t)).norm() < 1e-15);
    }

    #[test]
    fn rhs_examples() {
        let z = FirstOrderState::zeros(g(), 0.0);
        let r = rhs_coupled(&z).unwrap();
        assert!(r.f.is_zero() && r.g_plus.is_zero() && r.g_minus.is_zero());

        let n = SpectralField::from_real_fn(g(), |x| x.cos());
        let u = SpectralField::from_fn(g(), |x| C64::new((2.0 * x).sin(), 0.5));
        let s = FirstOrderState {
            u: u.clone(),
            n_plus: n.clone(),
            n_minus: n.clone(),
            t: 0.0,
        };
        let r = rhs_coupled(&s).unwrap();
        let want = SpectralField::from_fn(g(), |x| x.cos() * C64::new((2.0 * x).sin(), 0.5));
        assert!((&r.f - &want).max_abs() < 1e-14);

        let s = FirstOrderState {
            u: SpectralField::plane_wave(g(), 1, C64::new(1.0, 0.0)),
            ..z
        };
        let r = rhs_coupled(&s).unwrap();
        assert!(r.g_plus.max_abs() < 1e-14 && r.g_minus.max_abs() < 1e-14);
    }

    #[test]
    fn difference_rhs_examples() {
        let n = SpectralField::from_real_fn(g(), |x| x.sin());
        let reg = FirstOrderState {
            u: SpectralField::from_fn(g(), |x| C64::new(x.cos(), 0.1)),
            n_plus: n.clone(),
            n_minus: n.clone(),
            t: 0.0,
        };
        let zero = DifferenceState::from_rough(SpectralField::zeros(g()), 0.0);
        let r = difference_rhs(&reg, &zero).unwrap();
        assert!(r.f.is_zero() && r.g_plus.is_zero() && r.g_minus.is_zero());

        let v = SpectralField::plane_wave(g(), 3, C64::new(0.2, 0.0));
        let d = DifferenceState::from_rough(v.clone(), 0.0);
        let r = difference_rhs(&reg, &d).unwrap();
        let want = n.dealiased_product(&v).unwrap();
        assert!((&r.f - &want).max_abs() < 1e-15);
    }

    #[test]
    fn difference_rhs_is_full_minus_regular() {
        let reg = FirstOrderState {
            u: SpectralField::from_fn(g(), |x| C64::new(x.cos(), 0.3 * (2.0 * x).sin())),
            n_plus: SpectralField::from_fn(g(), |x| C64::new(x.sin(), 0.2 * x.cos())),
            n_minus: SpectralField::from_fn(g(), |x| C64::new(x.sin(), -0.2 * x.cos())),
            t: 0.0,
        };
        let d = DifferenceState {
            v: SpectralField::from_fn(g(), |x| C64::new(0.1 * (3.0 * x).cos(), 0.0)),
            m_plus: SpectralField::from_fn(g(), |x| C64::new(0.05 * (2.0 * x).cos(), 0.0)),
            m_minus: SpectralField::from_fn(g(), |x| C64::new(0.05 * (2.0 * x).cos(), 0.0)),
            t: 0.0,
        };
        let full = rhs_coupled(&reg.add(&d.as_state())).unwrap();
        let r0 = rhs_coupled(&reg).unwrap();
        let r = difference_rhs(&reg, &d).unwrap();
        assert!((&(&full.f - &r0.f) - &r.f).max_abs() < 1e-14);
        assert!((&(&full.g_plus - &r0.g_plus) - &r.g_plus).max_abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn propagators_are_unitary(
            re in prop::collection::vec(-1.0f64..1.0, 32),
            im in prop::collection::vec(-1.0f64..1.0, 32),
            t in -5.0f64..5.0,
        ) {
            let c: Vec<C64> = re.iter().zip(&im).map(|(a, b)| C64::new(*a, *b)).collect();
            let f = SpectralField::from_fft_order(g(), c).unwrap();
            for kind in COMPONENTS {
                let p = propagate_linear(&f, kind, t);
                for s in [0.0, 1.0] {
                    let (a, b) = (f.sobolev_norm(s), p.sobolev_norm(s));
                    prop_assert!((a - b).abs() <= 1e-13 * a.max(1.0));
                }
            }
        }
    }
}

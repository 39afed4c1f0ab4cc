//! Mass, energy, the coupling term and the a priori bounds on the regular part.

use crate::error::Result;
use crate::spectral::{Multiplier, SpectralField};
use crate::state::{from_first_order, FirstOrderState};

/// `M(u) = ‖u‖`.
pub fn mass(u: &SpectralField) -> f64 {
    u.l2_norm()
}

/// Energy split into its three terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    /// `‖u_x‖²`
    pub kinetic: f64,
    /// `(‖n‖² + ‖A^{−1/2} n_t‖²)/2`
    pub wave: f64,
    /// `∫ n |u|² dx`
    pub coupling: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    fn new(kinetic: f64, wave: f64, coupling: f64) -> Self {
        Self {
            kinetic,
            wave,
            coupling,
            total: kinetic + wave + coupling,
        }
    }
}

/// `∫ n |u|² dx` with the dealiased `|u|²`.
pub fn coupling_integral(u: &SpectralField, n: &SpectralField) -> f64 {
    let rho = u.modulus_squared().real_samples();
    let nv = n.real_samples();
    let dx = u.grid().dx();
    // trapezoidal rule, exact for ρ inside the dealiasing band
    nv.iter().zip(&rho).map(|(a, b)| a * b).sum::<f64>() * dx
}

/// `E(u, n, n_t)`; `n_t` must have zero mean.
pub fn energy(u: &SpectralField, n: &SpectralField, n_t: &SpectralField) -> Result<EnergyBreakdown> {
    let kinetic = u.apply(Multiplier::Derivative(1)).l2_norm().powi(2);
    let v = n_t.homogeneous_sobolev_norm(-1.0)?;
    let wave = 0.5 * (n.l2_norm().powi(2) + v * v);
    Ok(EnergyBreakdown::new(kinetic, wave, coupling_integral(u, n)))
}

/// Energy of a first-order state through `(u, n, n_t)`.
pub fn state_energy(s: &FirstOrderState) -> EnergyBreakdown {
    let f = from_first_order(s);
    energy(&f.u, &f.n, &f.n_t).expect("n_t from a first-order state has zero mean")
}

/// Both sides of `|∫ n|u|²| ≤ ¼‖n‖² + c ‖u_x‖ ‖u‖³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub c: f64,
}

impl CouplingCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

pub fn gn_coupling_bound(u: &SpectralField, n: &SpectralField, c: f64) -> CouplingCheck {
    let lhs = coupling_integral(u, n).abs();
    let ux = u.apply(Multiplier::Derivative(1)).l2_norm();
    let rhs = 0.25 * n.l2_norm().powi(2) + c * ux * u.l2_norm().powi(3);
    CouplingCheck { lhs, rhs, c }
}

/// Smallest `c ≥ 0` for which the coupling inequality holds on every pair.
pub fn fit_gn_constant<'a>(pairs: impl IntoIterator<Item = (&'a SpectralField, &'a SpectralField)>) -> f64 {
    let mut c: f64 = 0.0;
    for (u, n) in pairs {
        let base = gn_coupling_bound(u, n, 0.0);
        let ux = u.apply(Multiplier::Derivative(1)).l2_norm();
        let denom = ux * u.l2_norm().powi(3);
        let excess = base.lhs - base.rhs;
        if excess > 0.0 && denom > 0.0 {
            c = c.max(excess / denom);
        }
    }
    c
}

/// A priori bounds from the energy and mass of the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AprioriBounds {
    pub mass: f64,
    pub energy: f64,
    pub c1: f64,
    /// `(4/3)(E + c1 M⁶)`, bounds `‖u_x‖²`
    pub bound_ux_sq: f64,
    /// `4(E + c1 M⁶)`, bounds `‖n‖² + ‖A^{−1/2} n_t‖²`
    pub bound_wave_sq: f64,
}

/// `c1` is the square of the Gagliardo–Nirenberg constant `c`.
pub fn apriori_bounds(energy: f64, mass: f64, c1: f64) -> AprioriBounds {
    let base = energy + c1 * mass.powi(6);
    AprioriBounds {
        mass,
        energy,
        c1,
        bound_ux_sq: 4.0 / 3.0 * base,
        bound_wave_sq: 4.0 * base,
    }
}

/// `(5/4)‖u_x‖² + (3/4)(‖n‖² + ‖A^{−1/2}n_t‖²) + c1 ‖u‖⁶`, an upper bound of `E`.
pub fn energy_upper_bound(e: &EnergyBreakdown, mass: f64, c1: f64) -> f64 {
    1.25 * e.kinetic + 1.5 * e.wave + c1 * mass.powi(6)
}

impl AprioriBounds {
    pub fn bound_e_from_fields(&self, e: &EnergyBreakdown, mass: f64) -> f64 {
        energy_upper_bound(e, mass, self.c1)
    }

    /// Violations of the bounds by a state's energy split.
    pub fn check(&self, e: &EnergyBreakdown) -> BoundViolations {
        BoundViolations {
            kinetic: e.kinetic > self.bound_ux_sq,
            wave: 2.0 * e.wave > self.bound_wave_sq,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundViolations {
    pub kinetic: bool,
    pub wave: bool,
}

impl BoundViolations {
    pub fn any(&self) -> bool {
        self.kinetic || self.wave
    }

    /// `-`, `k`, `w` or `kw`.
    pub fn flags(&self) -> &'static str {
        match (self.kinetic, self.wave) {
            (false, false) => "-",
            (true, false) => "k",
            (false, true) => "w",
            (true, true) => "kw",
        }
    }
}

/// One row of the conservation diagnostics table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticRow {
    pub t: f64,
    pub mass: f64,
    pub energy: EnergyBreakdown,
    pub bounds: AprioriBounds,
    pub violations: BoundViolations,
}

pub const DIAGNOSTIC_HEADER: &str =
    "t,mass,kinetic,wave,coupling,total_energy,bound_ux_sq,bound_wave_sq,violated_flags";

impl DiagnosticRow {
    pub fn csv(&self) -> String {
        format!(
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}",
            self.t,
            self.mass,
            self.energy.kinetic,
            self.energy.wave,
            self.energy.coupling,
            self.energy.total,
            self.bounds.bound_ux_sq,
            self.bounds.bound_wave_sq,
            self.violations.flags()
        )
    }
}

/// Builds diagnostic rows for a run; bounds come from the first state's
/// `(E, M)` and a constant fitted over all states. Violations are logged.
pub fn monitor(states: &[FirstOrderState]) -> Vec<DiagnosticRow> {
    let Some(first) = states.first() else {
        return Vec::new();
    };
    let dens: Vec<SpectralField> = states.iter().map(|s| s.density()).collect();
    let c = fit_gn_constant(states.iter().map(|s| &s.u).zip(dens.iter()));
    let c1 = c * c;
    log::info!("fitted coupling constant c = {c:.6e}, c1 = {c1:.6e}");
    let e0 = state_energy(first);
    let bounds = apriori_bounds(e0.total, mass(&first.u), c1);
    states
        .iter()
        .map(|s| {
            let e = state_energy(s);
            let violations = bounds.check(&e);
            if violations.any() {
                log::warn!("a priori bound violated at t = {} ({})", s.t, violations.flags());
            }
            DiagnosticRow {
                t: s.t,
                mass: mass(&s.u),
                energy: e,
                bounds,
                violations,
            }
        })
        .collect()
}

//! Empirical probe of `‖n u‖_{X^{s,−a₁}} ≤ c ‖n‖_{X^{l,a}_±} ‖u‖_{X^{k,a₂}}`
//! on the `2π × 2π` space-time torus.

use num_complex::Complex64 as C64;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::conditions::EstimateParams;
use super::norms::xsb_norm;
use super::spacetime::{Phase, SpaceTimeField};
use crate::error::{Result, ZakharovError};
use crate::rng::member_rng;
use crate::spectral::{bracket, Grid};

/// `xsb(n u, s, −a₁) / (xsb(n, l, a) · xsb(u, k, a₂))` with the product
/// dealiased in space and time.
pub fn bilinear_ratio(
    n: &SpaceTimeField,
    u: &SpaceTimeField,
    p: &EstimateParams,
    phase_n: Phase,
    phase_u: Phase,
) -> Result<f64> {
    let den = xsb_norm(n, p.l, p.a, phase_n) * xsb_norm(u, p.k, p.a2, phase_u);
    if !(den >= 1e-14) {
        return Err(ZakharovError::Degenerate(format!("denominator {den:e} below 1e-14")));
    }
    let prod = n.dealiased_product(u)?;
    Ok(xsb_norm(&prod, p.s, -p.a1, Phase::Schrodinger) / den)
}

/// Resolution level `r`: `M = 32·2^r` points, modulation support
/// `|σ| ≤ 8·2^r` and enough time samples to hold the exact product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeLevel(pub u32);

impl ProbeLevel {
    pub fn grid(self) -> Grid {
        Grid::new(2.0 * std::f64::consts::PI, 32 << self.0).expect("valid probe grid")
    }

    pub fn space_band(self) -> i64 {
        self.grid().dealias_band()
    }

    pub fn modulation_band(self) -> i64 {
        8 << self.0
    }

    pub fn time_samples(self) -> usize {
        let b = self.space_band();
        let need = b * b + b + 2 * self.modulation_band();
        let mut k = 4usize;
        while ((k as i64) - 1) / 3 < need {
            k *= 2;
        }
        k
    }

    pub fn window(self) -> f64 {
        2.0 * std::f64::consts::PI
    }
}

/// Field with lab spectrum given at integer `(ξ, σ)` pairs.
fn from_modulation_modes(level: ProbeLevel, phase: Phase, modes: &[(i64, i64, C64)]) -> Result<SpaceTimeField> {
    let g = level.grid();
    let m = g.points();
    let k = level.time_samples();
    let mut spec = vec![C64::new(0.0, 0.0); k * m];
    for &(j, sigma, c) in modes {
        let tau = sigma - phase.phi(j as f64).round() as i64;
        spec[tau.rem_euclid(k as i64) as usize * m + g.index(j)] += c;
    }
    SpaceTimeField::from_lab_spectrum(g, level.window(), k, spec)
}

fn random_field(level: ProbeLevel, phase: Phase, reg: f64, modulation: f64, seed: u64, member: u64) -> Result<SpaceTimeField> {
    let mut rng = member_rng(seed, member);
    let bx = level.space_band();
    let bs = level.modulation_band();
    let mut modes = Vec::with_capacity(((2 * bx + 1) * (2 * bs + 1)) as usize);
    for j in -bx..=bx {
        for sigma in -bs..=bs {
            let w = bracket(j as f64).powf(-reg - 1.0) * bracket(sigma as f64).powf(-modulation - 1.0);
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            modes.push((j, sigma, C64::new(re, im) * (w / std::f64::consts::SQRT_2)));
        }
    }
    from_modulation_modes(level, phase, &modes)
}

/// Random pair `(n, u)` with coefficients `⟨ξ⟩^{−l−1}⟨σ⟩^{−a−1}` and
/// `⟨ξ⟩^{−k−1}⟨σ⟩^{−a₂−1}` times complex normals.
pub fn random_pair(level: ProbeLevel, p: &EstimateParams, seed: u64, member: u64) -> Result<(SpaceTimeField, SpaceTimeField)> {
    let n = random_field(level, Phase::HalfWavePlus, p.l, p.a, seed, 2 * member)?;
    let u = random_field(level, Phase::Schrodinger, p.k, p.a2, seed, 2 * member + 1)?;
    Ok((n, u))
}

/// Largest ratio over `members` random pairs.
pub fn ensemble_max_ratio(level: ProbeLevel, p: &EstimateParams, seed: u64, members: u64) -> Result<f64> {
    let ratios: Result<Vec<f64>> = (0..members)
        .into_par_iter()
        .map(|m| {
            let (n, u) = random_pair(level, p, seed, m)?;
            bilinear_ratio(&n, &u, p, Phase::HalfWavePlus, Phase::Schrodinger)
        })
        .collect();
    Ok(ratios?.into_iter().fold(0.0, f64::max))
}

/// Spike frequency `K` so that `2K + 1` stays inside the band.
pub fn spike_frequency(level: ProbeLevel) -> i64 {
    (level.space_band() - 1) / 2
}

/// Resonant spikes: `n` at `(2K+1, −(2K+1))` on the half-wave, `u` at
/// `(−K, −K²)`; the product sits at `(K+1, −(K+1)²)` with zero modulation.
pub fn resonant_spike_pair(level: ProbeLevel) -> Result<(SpaceTimeField, SpaceTimeField)> {
    let kk = spike_frequency(level);
    let one = C64::new(1.0, 0.0);
    let n = from_modulation_modes(level, Phase::HalfWavePlus, &[(2 * kk + 1, 0, one)])?;
    let u = from_modulation_modes(level, Phase::Schrodinger, &[(-kk, 0, one)])?;
    Ok((n, u))
}

/// Closed form of the spike ratio: `⟨K+1⟩^s / (⟨2K+1⟩^l ⟨K⟩^k) / (2π)`.
pub fn resonant_spike_ratio(level: ProbeLevel, p: &EstimateParams) -> f64 {
    let kk = spike_frequency(level) as f64;
    bracket(kk + 1.0).powf(p.s) / (bracket(2.0 * kk + 1.0).powf(p.l) * bracket(kk).powf(p.k)) / (2.0 * std::f64::consts::PI)
}

/// Point violating the Schrödinger gain condition used for the divergence
/// signature: `s = 3/2, k = l = 0, a = ½+ε, a₁ = ½, a₂ = ¼+ε`.
pub fn inadmissible_point(eps: f64) -> EstimateParams {
    EstimateParams {
        s: 1.5,
        k: 0.0,
        l: 0.0,
        a: 0.5 + eps,
        a1: 0.5,
        a2: 0.25 + eps,
    }
}

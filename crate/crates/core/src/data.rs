//! Initial data: a smooth localized wave packet and the seeded rough ensemble.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, ZakharovError};
use crate::rng::member_rng;
use crate::spectral::{Grid, Multiplier, SpectralField};
use crate::state::SecondOrderData;

/// `u0 = a sech((x−L/2)/w) e^{iκx}`, `n0 = −b sech²`, `n1 = c ∂ₓ sech²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub width: f64,
    pub kappa: f64,
}

impl Default for SmoothParams {
    fn default() -> Self {
        Self {
            a: 0.5,
            b: 0.3,
            c: 0.2,
            width: 4.0,
            kappa: 0.5,
        }
    }
}

/// Reference grid of the smooth experiments, `L = 64π`, `M = 512`.
pub fn smooth_grid() -> Grid {
    Grid::new(64.0 * PI, 512).expect("valid grid")
}

/// Reference grid of the rough experiments, `L = 16π`, `M = 1024`.
pub fn rough_grid() -> Grid {
    Grid::new(16.0 * PI, 1024).expect("valid grid")
}

pub fn smooth_data(grid: Grid, p: SmoothParams) -> Result<SecondOrderData> {
    if !(p.width > 0.0) {
        return Err(ZakharovError::Domain(format!("packet width must be positive, got {}", p.width)));
    }
    let mid = grid.length() / 2.0;
    // the wave number is snapped to the lattice so u0 stays periodic
    let kappa = grid.wavenumber_of_mode((p.kappa / grid.wavenumber_of_mode(1)).round() as i64);
    let u0 = SpectralField::from_fn(grid, |x| {
        C64::from_polar(p.a / ((x - mid) / p.width).cosh(), kappa * x)
    });
    let sech2 = SpectralField::from_real_fn(grid, |x| ((x - mid) / p.width).cosh().powi(-2));
    let n0 = &sech2 * (-p.b);
    let n1 = (&sech2.apply(Multiplier::Derivative(1)) * p.c).real_part();
    SecondOrderData::new(u0, n0, n1)
}

/// Rough ensemble: `û0(ξ) = amplitude ⟨ξ⟩^{−(s+½+ε_g)} e^{iθ}` on the
/// dealiasing band, real Gaussian wave fields on `|ξ| ≤ wave_band`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoughParams {
    pub s: f64,
    pub amplitude: f64,
    pub eps_g: f64,
    pub wave_band: f64,
    /// Expected `‖n0‖` and `‖A^{−1/2} n1‖`.
    pub wave_amplitude: f64,
}

impl RoughParams {
    pub fn new(s: f64, amplitude: f64) -> Self {
        Self {
            s,
            amplitude,
            eps_g: 0.05,
            wave_band: 4.0,
            wave_amplitude: 0.1,
        }
    }
}

fn real_noise(grid: Grid, band: f64, norm: f64, zero_mean: bool, rng: &mut impl Rng) -> SpectralField {
    let k_max = ((band / grid.wavenumber_of_mode(1)).floor() as i64).min(grid.dealias_band());
    let count = (2 * k_max + 1) as f64;
    let sigma = norm / (grid.length() * count).sqrt();
    let mut f = SpectralField::zeros(grid);
    let mut gauss = || -> f64 { StandardNormal.sample(rng) };
    let c0 = gauss() * sigma;
    if !zero_mean {
        f.set_coeff(0, C64::new(c0, 0.0));
    }
    for j in 1..=k_max {
        let c = C64::new(gauss(), gauss()) * (sigma / 2f64.sqrt());
        f.set_coeff(j, c);
        f.set_coeff(-j, c.conj());
    }
    f
}

/// Second-order data of ensemble member `member` of `seed`.
pub fn rough_data(grid: Grid, p: RoughParams, seed: u64, member: u64) -> Result<SecondOrderData> {
    if !(p.s > 0.0 && p.s <= 1.0) {
        return Err(ZakharovError::Domain(format!("rough data regularity {} outside (0, 1]", p.s)));
    }
    let mut rng = member_rng(seed, member);
    let band = grid.dealias_band();
    let decay = p.s + 0.5 + p.eps_g;
    let mut u0 = SpectralField::zeros(grid);
    for j in -band..=band {
        let theta: f64 = rng.random::<f64>() * 2.0 * PI;
        let xi = grid.wavenumber_of_mode(j);
        u0.set_coeff(j, C64::from_polar(p.amplitude * xi.hypot(1.0).powf(-decay), theta));
    }
    let n0 = real_noise(grid, p.wave_band, p.wave_amplitude, false, &mut rng);
    let n1 = real_noise(grid, p.wave_band, 1.0, true, &mut rng);
    // rescale so that ‖A^{−1/2} n1‖ is the requested size
    let h = n1.homogeneous_sobolev_norm(-1.0)?;
    let n1 = if h > 0.0 { &n1 * (p.wave_amplitude / h) } else { n1 };
    if p.amplitude == 0.0 && p.wave_amplitude == 0.0 {
        let z = SpectralField::zeros(grid);
        return SecondOrderData::new(z.clone(), z.clone(), z);
    }
    SecondOrderData::new(u0, n0, n1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_data_is_valid() {
        let d = smooth_data(smooth_grid(), SmoothParams::default()).unwrap();
        assert!(d.n1.coeff(0).norm() == 0.0);
        let g = smooth_grid();
        let edge = g.dealias_band();
        assert!(d.u0.coeff(edge).norm() < 1e-6 * d.u0.max_abs());
    }

    #[test]
    fn rough_data_reproducible() {
        let g = Grid::new(16.0 * PI, 256).unwrap();
        let p = RoughParams::new(0.95, 0.02);
        let a = rough_data(g, p, 11, 2).unwrap();
        let b = rough_data(g, p, 11, 2).unwrap();
        let c = rough_data(g, p, 11, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.u0.coeff(-128).norm(), 0.0);
        let z = rough_data(g, RoughParams { amplitude: 0.0, wave_amplitude: 0.0, ..p }, 1, 0).unwrap();
        assert!(z.u0.is_zero() && z.n0.is_zero() && z.n1.is_zero());
    }

    #[test]
    fn rough_data_h1_grows_under_refinement() {
        let p = RoughParams::new(0.9, 0.02);
        let sq: Vec<(f64, f64)> = [256usize, 1024, 4096]
            .iter()
            .map(|&m| {
                let d = rough_data(Grid::new(16.0 * PI, m).unwrap(), p, 5, 0).unwrap();
                (d.u0.sobolev_norm(p.s).powi(2), d.u0.sobolev_norm(1.0).powi(2))
            })
            .collect();
        // the added shells of ‖u0‖²_{H¹} scale like M^{2(1−s−ε_g)}
        let rate = ((sq[2].1 - sq[1].1) / (sq[1].1 - sq[0].1)).ln() / 4f64.ln();
        assert!((rate - 0.1).abs() < 0.01, "rate {rate}");
        assert!(sq[2].1 > sq[1].1 && sq[1].1 > sq[0].1);
        // while in H^s the shells shrink like M^{−2ε_g}
        let rate_s = ((sq[2].0 - sq[1].0) / (sq[1].0 - sq[0].0)).ln() / 4f64.ln();
        assert!((rate_s + 0.1).abs() < 0.01, "rate {rate_s}");
    }
}

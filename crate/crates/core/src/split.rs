//! High/low frequency decomposition of the rough datum and the cutoff,
//! interval-length and step-count arithmetic.

use crate::error::{Result, ZakharovError};
use crate::spectral::SpectralField;

/// Default `δ` in `|I| = N^{−4(1−s)−δ}`.
pub const DEFAULT_DELTA: f64 = 0.05;
/// Default safety factor of the cutoff selection.
pub const DEFAULT_MARGIN: f64 = 2.0;

/// Regularity threshold `9/10`.
pub const S_THRESHOLD: f64 = 0.9;

/// Admissibility policy for `s` outside `(9/10, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    /// Out-of-range `s` is accepted with a warning.
    Exploration,
}

fn check_regularity(s: f64, mode: Mode) -> Result<()> {
    if s > S_THRESHOLD && s < 1.0 {
        return Ok(());
    }
    match mode {
        Mode::Strict if s <= S_THRESHOLD => Err(ZakharovError::Threshold { s }),
        Mode::Strict => Err(ZakharovError::Domain(format!("regularity s = {s} must lie below 1"))),
        Mode::Exploration => {
            log::warn!("regularity s = {s} outside (9/10, 1), continuing in exploration mode");
            Ok(())
        }
    }
}

/// Cutoff, regularity, `δ` and the derived interval length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    pub cutoff: f64,
    pub s: f64,
    pub delta: f64,
    pub interval_length: f64,
}

impl SplitConfig {
    pub fn new(cutoff: f64, s: f64, delta: f64, mode: Mode) -> Result<Self> {
        let interval_length = interval_length(cutoff, s, delta, mode)?;
        Ok(Self {
            cutoff,
            s,
            delta,
            interval_length,
        })
    }
}

/// `N^{−4(1−s)−δ}`.
pub fn interval_length(cutoff: f64, s: f64, delta: f64, mode: Mode) -> Result<f64> {
    if !(cutoff >= 1.0 && cutoff.is_finite()) {
        return Err(ZakharovError::Domain(format!("cutoff must be at least 1, got {cutoff}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(ZakharovError::Domain(format!("delta must be positive, got {delta}")));
    }
    check_regularity(s, mode)?;
    // 4s − (4 + δ): both terms carry matching rounding for decimal s and δ
    let len = cutoff.powf(4.0 * s - (4.0 + delta));
    if !(len > 0.0 && len <= 1.0) {
        return Err(ZakharovError::Domain(format!("interval length {len} outside (0, 1]")));
    }
    Ok(len)
}

/// `1/(5s − 9/2)`, the exponent of `T` in the cutoff selection.
pub fn cutoff_exponent(s: f64) -> Result<f64> {
    let d = 5.0 * s - 4.5;
    if d == 0.0 {
        return Err(ZakharovError::Threshold { s });
    }
    Ok(1.0 / d)
}

/// `N = margin · T^{1/(5s − 9/2)}`, clamped to at least 1.
pub fn select_cutoff(horizon: f64, s: f64, margin: f64, mode: Mode) -> Result<f64> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(ZakharovError::Domain(format!("horizon must be positive, got {horizon}")));
    }
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(ZakharovError::Domain(format!("margin must be positive, got {margin}")));
    }
    check_regularity(s, mode)?;
    let p = cutoff_exponent(s)?;
    Ok((margin * horizon.powf(p)).max(1.0))
}

/// `⌈T / |I|⌉`; a quotient within `1e−9` relative of an integer counts as that integer.
pub fn step_count(horizon: f64, cfg: &SplitConfig) -> usize {
    let q = horizon / cfg.interval_length;
    let r = q.round();
    if r >= 1.0 && (q - r).abs() <= 1e-9 * r {
        r as usize
    } else {
        q.ceil().max(1.0) as usize
    }
}

/// Measured ratios of the four decomposition bounds; each is `≤ 1` for a
/// sharp cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitBounds {
    /// `‖u01‖_{H¹} / (⟨N⟩^{1−s} ‖u0‖_{H^s})`
    pub low_h1: f64,
    /// `‖u01‖ / ‖u0‖`
    pub low_l2: f64,
    /// `‖u02‖_{H^s} / ‖u0‖_{H^s}`
    pub high_hs: f64,
    /// `N^s ‖u02‖ / ‖u0‖_{H^s}`
    pub high_l2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitData {
    pub u01: SpectralField,
    pub u02: SpectralField,
    pub cutoff: f64,
}

impl SplitData {
    /// Bound ratios at regularity `s`.
    pub fn measured_bounds(&self, s: f64) -> SplitBounds {
        let u0 = &self.u01 + &self.u02;
        let hs = u0.sobolev_norm(s);
        let l2 = u0.l2_norm();
        let ratio = |a: f64, b: f64| if b > 0.0 { a / b } else { 0.0 };
        let bn = self.cutoff.hypot(1.0);
        SplitBounds {
            low_h1: ratio(self.u01.sobolev_norm(1.0), bn.powf(1.0 - s) * hs),
            low_l2: ratio(self.u01.l2_norm(), l2),
            high_hs: ratio(self.u02.sobolev_norm(s), hs),
            high_l2: ratio(self.cutoff.powf(s) * self.u02.l2_norm(), hs),
        }
    }
}

/// Sharp cutoff: `u01` keeps `|ξ| ≤ N`, `u02` the rest.
pub fn split(u0: &SpectralField, cutoff: f64) -> Result<SplitData> {
    if !(cutoff >= 1.0) {
        return Err(ZakharovError::Domain(format!("cutoff must be at least 1, got {cutoff}")));
    }
    let g = u0.grid();
    let mut u01 = u0.clone();
    let mut u02 = u0.clone();
    for (i, (lo, hi)) in u01.coeffs_mut().iter_mut().zip(u02.coeffs_mut()).enumerate() {
        if g.xi(i).abs() <= cutoff {
            *hi = Default::default();
        } else {
            *lo = Default::default();
        }
    }
    Ok(SplitData { u01, u02, cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use num_complex::Complex64 as C64;
    use std::f64::consts::PI;

    #[test]
    fn split_examples() {
        let g = Grid::new(2.0 * PI, 64).unwrap();
        let a = SpectralField::plane_wave(g, 3, C64::new(1.0, 0.0));
        let d = split(&a, 8.0).unwrap();
        assert_eq!(d.u01, a);
        assert!(d.u02.is_zero());
        let b = SpectralField::plane_wave(g, 12, C64::new(1.0, 0.0));
        let d = split(&(&a + &b), 8.0).unwrap();
        assert_eq!(d.u01, a);
        assert_eq!(d.u02, b);
        assert!(split(&a, 0.5).is_err());
    }

    #[test]
    fn interval_examples() {
        let v = interval_length(16.0, 0.95, 0.05, Mode::Strict).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(interval_length(1.0, 0.93, 0.05, Mode::Strict).unwrap(), 1.0);
        let near_one = interval_length(32.0, 1.0 - 1e-12, 0.1, Mode::Strict).unwrap();
        assert!((near_one - 32f64.powf(-0.1)).abs() < 1e-10);
        assert!(matches!(
            interval_length(4.0, 0.85, 0.05, Mode::Strict),
            Err(ZakharovError::Threshold { .. })
        ));
        assert!(interval_length(4.0, 0.85, 0.05, Mode::Exploration).is_ok());
        assert!(interval_length(4.0, 0.95, 0.0, Mode::Strict).is_err());
    }

    #[test]
    fn cutoff_examples() {
        assert_eq!(select_cutoff(16.0, 0.95, 1.0, Mode::Strict).unwrap(), 65536.0);
        assert_eq!(select_cutoff(0.5, 0.95, 1.0, Mode::Strict).unwrap(), 1.0);
        assert_eq!(select_cutoff(1.0, 0.95, 3.0, Mode::Strict).unwrap(), 3.0);
        assert!(matches!(
            select_cutoff(16.0, 0.9, 1.0, Mode::Strict),
            Err(ZakharovError::Threshold { .. })
        ));
        assert!(matches!(
            select_cutoff(16.0, 0.9, 1.0, Mode::Exploration),
            Err(ZakharovError::Threshold { .. })
        ));
    }

    #[test]
    fn step_examples() {
        let c = |len: f64| SplitConfig {
            cutoff: 1.0,
            s: 0.95,
            delta: 0.05,
            interval_length: len,
        };
        assert_eq!(step_count(1.0, &c(0.5)), 2);
        assert_eq!(step_count(0.3, &c(0.5)), 1);
        let cfg = SplitConfig::new(65536.0, 0.95, 0.05, Mode::Strict).unwrap();
        assert_eq!(step_count(16.0, &cfg), 256);
    }
}

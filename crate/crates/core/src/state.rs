//! Second-order data `(u, n, n_t)` and the first-order state `(u, n₊, n₋)`.

use std::io::{Read, Write};

use num_complex::Complex64 as C64;

use crate::error::{Result, ZakharovError};
use crate::snapshot;
use crate::spectral::{Multiplier, SpectralField, REAL_TOL};

/// Initial data `u(0) = u0`, `n(0) = n0`, `n_t(0) = n1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderData {
    pub u0: SpectralField,
    pub n0: SpectralField,
    pub n1: SpectralField,
}

impl SecondOrderData {
    /// Validates grids, reality of `n0`, `n1` and the zero mean of `n1`.
    pub fn new(u0: SpectralField, n0: SpectralField, n1: SpectralField) -> Result<Self> {
        let d = Self { u0, n0, n1 };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.u0.grid() != self.n0.grid() || self.u0.grid() != self.n1.grid() {
            return Err(ZakharovError::GridMismatch);
        }
        for (name, f) in [("n0", &self.n0), ("n1", &self.n1)] {
            let d = f.real_defect();
            if d > REAL_TOL {
                return Err(ZakharovError::Domain(format!(
                    "{name} is not real-valued (conjugacy defect {d:e})"
                )));
            }
        }
        self.n1.check_zero_mean()
    }
}

/// Fields `(u, n, n_t)` recovered from a first-order state.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderFields {
    pub u: SpectralField,
    pub n: SpectralField,
    pub n_t: SpectralField,
}

/// State `(u, n₊, n₋)` at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderState {
    pub u: SpectralField,
    pub n_plus: SpectralField,
    pub n_minus: SpectralField,
    pub t: f64,
}

impl FirstOrderState {
    pub fn zeros(grid: crate::spectral::Grid, t: f64) -> Self {
        Self {
            u: SpectralField::zeros(grid),
            n_plus: SpectralField::zeros(grid),
            n_minus: SpectralField::zeros(grid),
            t,
        }
    }

    pub fn grid(&self) -> crate::spectral::Grid {
        self.u.grid()
    }

    /// `n = (n₊ + n₋)/2`.
    pub fn density(&self) -> SpectralField {
        &(&self.n_plus + &self.n_minus) * 0.5
    }

    /// `A^{−1/2} n_t = (n₊ − n₋)/(2i)`.
    pub fn potential(&self) -> SpectralField {
        &(&self.n_plus - &self.n_minus) * C64::new(0.0, -0.5)
    }

    /// `max_j |c⁻_j − conj(c⁺_{−j})| / max(|c⁺|, |c⁻|)`.
    pub fn conjugacy_defect(&self) -> f64 {
        let scale = self.n_plus.max_abs().max(self.n_minus.max_abs());
        if scale == 0.0 {
            return 0.0;
        }
        (&self.n_minus - &self.n_plus.conj()).max_abs() / scale
    }

    pub fn all_finite(&self) -> bool {
        self.u.all_finite() && self.n_plus.all_finite() && self.n_minus.all_finite() && self.t.is_finite()
    }

    /// Componentwise sum with the same time stamp as `self`.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            u: &self.u + &other.u,
            n_plus: &self.n_plus + &other.n_plus,
            n_minus: &self.n_minus + &other.n_minus,
            t: self.t,
        }
    }

    /// `(‖δu‖², ‖δn₊‖², ‖δn₋‖²)^{1/2}` in L².
    pub fn l2_distance(&self, other: &Self) -> f64 {
        let du = self.u.distance(&other.u, 0.0);
        let dp = self.n_plus.distance(&other.n_plus, 0.0);
        let dm = self.n_minus.distance(&other.n_minus, 0.0);
        (du * du + dp * dp + dm * dm).sqrt()
    }

    pub fn write_zk1<W: Write>(&self, w: &mut W) -> Result<()> {
        snapshot::write_record(w, self.t, &[&self.u, &self.n_plus, &self.n_minus])
    }

    /// Reads one `(u, n₊, n₋)` record; `Ok(None)` at end of stream.
    pub fn read_zk1<R: Read>(r: &mut R) -> Result<Option<Self>> {
        Ok(snapshot::read_record(r, 3)?.map(|(h, mut f)| {
            let n_minus = f.pop().expect("three blocks");
            let n_plus = f.pop().expect("three blocks");
            let u = f.pop().expect("three blocks");
            Self { u, n_plus, n_minus, t: h.t }
        }))
    }
}

/// `n± = n0 ± i A^{−1/2} n1`, `u = u0`, `t = 0`.
pub fn to_first_order(d: &SecondOrderData) -> Result<FirstOrderState> {
    d.validate()?;
    let q = d.n1.apply(Multiplier::INV_SQRT_A).scaled(C64::new(0.0, 1.0));
    Ok(FirstOrderState {
        u: d.u0.clone(),
        n_plus: &d.n0 + &q,
        n_minus: &d.n0 - &q,
        t: 0.0,
    })
}

/// `n = (n₊ + n₋)/2`, `n_t = A^{1/2}(n₊ − n₋)/(2i)`.
pub fn from_first_order(s: &FirstOrderState) -> SecondOrderFields {
    SecondOrderFields {
        u: s.u.clone(),
        n: s.density(),
        n_t: s.potential().apply(Multiplier::SQRT_A),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(2.0 * PI, 32).unwrap()
    }

    #[test]
    fn static_density() {
        let g = grid();
        let n0 = SpectralField::from_real_fn(g, |x| x.cos() + 0.3);
        let d = SecondOrderData::new(SpectralField::zeros(g), n0.clone(), SpectralField::zeros(g)).unwrap();
        let s = to_first_order(&d).unwrap();
        assert_eq!(s.n_plus, n0);
        assert_eq!(s.n_minus, n0);
        let back = from_first_order(&s);
        assert!((&back.n - &n0).max_abs() < 1e-16);
        assert_eq!(back.n_t.max_abs(), 0.0);
    }

    #[test]
    fn pure_velocity() {
        let g = grid();
        let n1 = SpectralField::from_real_fn(g, |x| (2.0 * x).cos());
        let d = SecondOrderData::new(SpectralField::zeros(g), SpectralField::zeros(g), n1.clone()).unwrap();
        let s = to_first_order(&d).unwrap();
        let want = &n1 * C64::new(0.0, 0.5);
        assert!((&s.n_plus - &want).max_abs() < 1e-15);
        assert!((&s.n_minus + &want).max_abs() < 1e-15);
        let back = from_first_order(&s);
        assert!(back.n.max_abs() < 1e-16);
        assert!((&back.n_t - &n1).max_abs() < 1e-15);
    }

    #[test]
    fn nonzero_mean_velocity_rejected() {
        let g = grid();
        let n1 = SpectralField::from_real_fn(g, |x| 1.0 + x.cos());
        let r = SecondOrderData::new(SpectralField::zeros(g), SpectralField::zeros(g), n1);
        assert!(matches!(r, Err(ZakharovError::ZeroMode { .. })));
    }

    #[test]
    fn complex_density_rejected() {
        let g = grid();
        let n0 = SpectralField::plane_wave(g, 1, C64::new(1.0, 0.0));
        let r = SecondOrderData::new(SpectralField::zeros(g), n0, SpectralField::zeros(g));
        assert!(matches!(r, Err(ZakharovError::Domain(_))));
    }

    #[test]
    fn zk1_roundtrip() {
        let g = grid();
        let s = FirstOrderState {
            u: SpectralField::plane_wave(g, 2, C64::new(1.0, 1.0)),
            n_plus: SpectralField::plane_wave(g, 1, C64::new(0.0, 1.0)),
            n_minus: SpectralField::plane_wave(g, -1, C64::new(0.0, -1.0)),
            t: 1.5,
        };
        let mut buf = Vec::new();
        s.write_zk1(&mut buf).unwrap();
        let mut r = buf.as_slice();
        assert_eq!(FirstOrderState::read_zk1(&mut r).unwrap().unwrap(), s);
        assert!(FirstOrderState::read_zk1(&mut r).unwrap().is_none());
        assert_eq!(s.conjugacy_defect(), 0.0);
    }
}

//! Periodic grid, spectral transforms, Fourier multipliers and Sobolev norms.
//!
//! A field is held by its Fourier coefficients with the convention
//! `f(x) = Σ_j c_j e^{i ξ_j x}`, `ξ_j = 2π j / L`, so that
//! `‖f‖² = L Σ_j |c_j|²`. Coefficients are stored in FFT order
//! (`j = 0, 1, …, M/2 − 1, −M/2, …, −1`); wavenumber order is used only at
//! the I/O boundary.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, ZakharovError};

/// Relative tolerance of the real-field conjugacy invariant.
pub const REAL_TOL: f64 = 1e-12;
/// Relative size below which a zero mode counts as vanishing.
pub const ZERO_MODE_TOL: f64 = 1e-12;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

/// In-place unnormalized DFT (`e^{-i}` kernel) of every consecutive chunk of
/// length `len` in `buf`.
pub(crate) fn fft_forward(buf: &mut [C64], len: usize) {
    plan(len, false).process(buf);
}

/// In-place unnormalized inverse DFT (`e^{+i}` kernel), chunked like
/// [`fft_forward`].
pub(crate) fn fft_inverse(buf: &mut [C64], len: usize) {
    plan(len, true).process(buf);
}

/// Japanese bracket `⟨λ⟩ = (1 + λ²)^{1/2}`.
#[inline]
pub fn bracket(x: f64) -> f64 {
    x.hypot(1.0)
}

/// Bracket and plus-part with a configurable value of `[0]₊`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketScale {
    eps: f64,
}

impl Default for BracketScale {
    fn default() -> Self {
        Self { eps: 1e-3 }
    }
}

impl BracketScale {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(ZakharovError::Domain(format!(
                "plus-part epsilon must be positive, got {eps}"
            )));
        }
        Ok(Self { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn bracket(&self, x: f64) -> f64 {
        bracket(x)
    }

    /// `[λ]₊`: `λ` for `λ > 0`, `ε` at zero, `0` for `λ < 0`.
    pub fn plus(&self, x: f64) -> f64 {
        if x > 0.0 {
            x
        } else if x == 0.0 {
            self.eps
        } else {
            0.0
        }
    }
}

/// Uniform periodic grid of `points` samples on `[0, length)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    length: f64,
    points: usize,
}

impl Grid {
    pub fn new(length: f64, points: usize) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(ZakharovError::Domain(format!(
                "box length must be positive, got {length}"
            )));
        }
        if points < 4 || points % 2 != 0 {
            return Err(ZakharovError::Domain(format!(
                "point count must be even and at least 4, got {points}"
            )));
        }
        Ok(Self { length, points })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dx(&self) -> f64 {
        self.length / self.points as f64
    }

    /// Mode number `j` stored at FFT index `idx`.
    #[inline]
    pub fn mode(&self, idx: usize) -> i64 {
        let m = self.points as i64;
        let i = idx as i64;
        if i < m / 2 {
            i
        } else {
            i - m
        }
    }

    /// FFT index of mode `j`; `j` is taken modulo `M`.
    #[inline]
    pub fn index(&self, j: i64) -> usize {
        j.rem_euclid(self.points as i64) as usize
    }

    /// FFT index holding the coefficient of mode `−j` when `idx` holds `j`.
    #[inline]
    pub fn reflect(&self, idx: usize) -> usize {
        (self.points - idx) % self.points
    }

    #[inline]
    pub fn wavenumber_of_mode(&self, j: i64) -> f64 {
        2.0 * PI * j as f64 / self.length
    }

    /// Wavenumber at FFT index `idx`.
    #[inline]
    pub fn xi(&self, idx: usize) -> f64 {
        self.wavenumber_of_mode(self.mode(idx))
    }

    /// Wavenumbers in FFT order.
    pub fn fft_wavenumbers(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.xi(i)).collect()
    }

    /// Wavenumbers `ξ_j` for `j = −M/2, …, M/2 − 1`.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let h = self.points as i64 / 2;
        (-h..h).map(|j| self.wavenumber_of_mode(j)).collect()
    }

    pub fn positions(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.points).map(|m| m as f64 * dx).collect()
    }

    /// Largest `|j|` kept by the 2/3 rule; `3K < M` so quadratic products of
    /// band-limited fields never alias back into the band.
    pub fn dealias_band(&self) -> i64 {
        (self.points as i64 - 1) / 3
    }

    pub fn nyquist_index(&self) -> usize {
        self.points / 2
    }

    /// Largest wavenumber magnitude inside the dealiasing band.
    pub fn band_wavenumber(&self) -> f64 {
        self.wavenumber_of_mode(self.dealias_band())
    }
}

/// Fourier multiplier symbols used throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    /// `∂ₓ^k ↔ (iξ)^k`.
    Derivative(u32),
    /// `|ξ|^p`; for `p < 0` the zero mode maps to 0.
    AbsPower(f64),
    /// `⟨ξ⟩^s`.
    Bracket(f64),
}

impl Multiplier {
    /// `A^{1/2}` with `A = −∂ₓ²`.
    pub const SQRT_A: Multiplier = Multiplier::AbsPower(1.0);
    /// `A^{−1/2}`, zero mode mapped to 0.
    pub const INV_SQRT_A: Multiplier = Multiplier::AbsPower(-1.0);

    pub fn symbol(&self, xi: f64) -> C64 {
        match *self {
            Multiplier::Derivative(k) => C64::new(0.0, xi).powu(k),
            Multiplier::AbsPower(p) => {
                if xi == 0.0 {
                    if p > 0.0 {
                        C64::new(0.0, 0.0)
                    } else if p == 0.0 {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                } else {
                    C64::new(xi.abs().powf(p), 0.0)
                }
            }
            Multiplier::Bracket(s) => C64::new(bracket(xi).powf(s), 0.0),
        }
    }

    fn drops_zero_mode(&self) -> bool {
        matches!(*self, Multiplier::AbsPower(p) if p < 0.0)
    }
}

/// Result of [`apply_multiplier`]: the field and whether a nonzero mean was
/// discarded by an inverse power of `|ξ|`.
#[derive(Debug, Clone)]
pub struct Applied {
    pub field: SpectralField,
    pub zero_mode_dropped: bool,
}

/// Periodic complex field held as Fourier coefficients on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<C64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![C64::new(0.0, 0.0); grid.points()],
        }
    }

    pub fn constant(grid: Grid, value: C64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[0] = value;
        f
    }

    /// `amp · e^{i ξ_j x}`.
    pub fn plane_wave(grid: Grid, j: i64, amp: C64) -> Self {
        let mut f = Self::zeros(grid);
        f.coeffs[grid.index(j)] = amp;
        f
    }

    /// Sum of plane waves `Σ c e^{i ξ_j x}` over `(j, c)` pairs.
    pub fn from_modes(grid: Grid, modes: &[(i64, C64)]) -> Self {
        let mut f = Self::zeros(grid);
        for &(j, c) in modes {
            f.coeffs[grid.index(j)] += c;
        }
        f
    }

    pub fn from_fft_order(grid: Grid, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != grid.points() {
            return Err(ZakharovError::Dimension {
                expected: grid.points(),
                got: coeffs.len(),
            });
        }
        Ok(Self { grid, coeffs })
    }

    /// Coefficients listed for `j = −M/2, …, M/2 − 1`.
    pub fn from_wavenumber_order(grid: Grid, coeffs: &[C64]) -> Result<Self> {
        let m = grid.points();
        if coeffs.len() != m {
            return Err(ZakharovError::Dimension {
                expected: m,
                got: coeffs.len(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); m];
        for (k, &c) in coeffs.iter().enumerate() {
            out[(k + m / 2) % m] = c;
        }
        Ok(Self { grid, coeffs: out })
    }

    pub fn to_wavenumber_order(&self) -> Vec<C64> {
        let m = self.grid.points();
        (0..m).map(|k| self.coeffs[(k + m / 2) % m]).collect()
    }

    /// Forward transform of grid samples `f(x_m)`, `x_m = m L / M`.
    pub fn from_samples(grid: Grid, samples: &[C64]) -> Result<Self> {
        let m = grid.points();
        if samples.len() != m {
            return Err(ZakharovError::Dimension {
                expected: m,
                got: samples.len(),
            });
        }
        let mut buf = samples.to_vec();
        fft_forward(&mut buf, m);
        let scale = 1.0 / m as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        Ok(Self { grid, coeffs: buf })
    }

    pub fn from_real_samples(grid: Grid, samples: &[f64]) -> Result<Self> {
        let buf: Vec<C64> = samples.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_samples(grid, &buf)
    }

    /// Samples `f(x_m)` and transforms them.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> C64) -> Self {
        let samples: Vec<C64> = grid.positions().into_iter().map(f).collect();
        Self::from_samples(grid, &samples).expect("sample count matches grid")
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| C64::new(f(x), 0.0))
    }

    /// Inverse transform: values at the grid points.
    pub fn samples(&self) -> Vec<C64> {
        let mut buf = self.coeffs.clone();
        fft_inverse(&mut buf, self.grid.points());
        buf
    }

    /// Real parts of the grid samples.
    pub fn real_samples(&self) -> Vec<f64> {
        self.samples().into_iter().map(|c| c.re).collect()
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn coeff(&self, j: i64) -> C64 {
        self.coeffs[self.grid.index(j)]
    }

    pub fn set_coeff(&mut self, j: i64, c: C64) {
        let i = self.grid.index(j);
        self.coeffs[i] = c;
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn all_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `(L Σ ⟨ξ_j⟩^{2s} |c_j|²)^{1/2}`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let acc: f64 = if s == 0.0 {
            self.coeffs.iter().map(|c| c.norm_sqr()).sum()
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (1.0 + self.grid.xi(i).powi(2)).powf(s) * c.norm_sqr())
                .sum()
        };
        (self.grid.length() * acc).sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.sobolev_norm(0.0)
    }

    /// `(L Σ_{j≠0} |ξ_j|^{2s} |c_j|²)^{1/2}`; for `s < 0` the mean must vanish.
    pub fn homogeneous_sobolev_norm(&self, s: f64) -> Result<f64> {
        if s < 0.0 {
            self.check_zero_mean()?;
        }
        let acc: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.grid.xi(i).abs().powf(2.0 * s) * c.norm_sqr())
            .sum();
        Ok((self.grid.length() * acc).sqrt())
    }

    /// Error unless `|c_0| ≤ 1e−12 · max|c_j|`.
    pub fn check_zero_mean(&self) -> Result<()> {
        let c0 = self.coeffs[0].norm();
        let scale = self.max_abs();
        if c0 > ZERO_MODE_TOL * scale {
            Err(ZakharovError::ZeroMode { value: c0, scale })
        } else {
            Ok(())
        }
    }

    /// Coefficients of `conj(f)`: `c_j ↦ conj(c_{−j})`.
    pub fn conj(&self) -> Self {
        let coeffs = (0..self.grid.points())
            .map(|i| self.coeffs[self.grid.reflect(i)].conj())
            .collect();
        Self {
            grid: self.grid,
            coeffs,
        }
    }

    /// `max_j |c_j − conj(c_{−j})| / max_j |c_j|`; zero for real fields.
    pub fn real_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let worst = (0..self.grid.points())
            .map(|i| (self.coeffs[i] - self.coeffs[self.grid.reflect(i)].conj()).norm())
            .fold(0.0, f64::max);
        worst / scale
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.real_defect() <= tol
    }

    /// Projection onto real-valued fields, `(f + conj f)/2`.
    pub fn real_part(&self) -> Self {
        let c = self.conj();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&c.coeffs)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        Self {
            grid: self.grid,
            coeffs,
        }
    }

    pub fn apply(&self, m: Multiplier) -> Self {
        self.apply_checked(m).field
    }

    pub fn apply_checked(&self, m: Multiplier) -> Applied {
        let dropped = m.drops_zero_mode() && self.check_zero_mean().is_err();
        let field = self.apply_symbol(|xi| m.symbol(xi));
        Applied {
            field,
            zero_mode_dropped: dropped,
        }
    }

    /// Pointwise multiplication of the coefficients by `m(ξ_j)`.
    pub fn apply_symbol(&self, m: impl Fn(f64) -> C64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * m(self.grid.xi(i)))
            .collect();
        Self {
            grid: self.grid,
            coeffs,
        }
    }

    /// Same as [`apply_symbol`](Self::apply_symbol) with a real symbol.
    pub fn apply_real_symbol(&self, m: impl Fn(f64) -> f64) -> Self {
        self.apply_symbol(|xi| C64::new(m(xi), 0.0))
    }

    /// Zeroes every mode with `|j| > band`.
    pub fn band_limited(&self, band: i64) -> Self {
        let mut out = self.clone();
        out.truncate_in_place(band);
        out
    }

    pub(crate) fn truncate_in_place(&mut self, band: i64) {
        let g = self.grid;
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            if g.mode(i).abs() > band {
                *c = C64::new(0.0, 0.0);
            }
        }
    }

    /// Product evaluated in physical space under the 2/3 rule.
    pub fn dealiased_product(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(ZakharovError::GridMismatch);
        }
        let band = self.grid.dealias_band();
        let a = self.band_limited(band).samples();
        let b = other.band_limited(band).samples();
        let prod: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let mut out = Self::from_samples(self.grid, &prod)?;
        out.truncate_in_place(band);
        Ok(out)
    }

    /// Dealiased `|f|²`, real by construction.
    pub fn modulus_squared(&self) -> Self {
        let band = self.grid.dealias_band();
        let s = self.band_limited(band).samples();
        let rho: Vec<f64> = s.iter().map(|c| c.norm_sqr()).collect();
        let mut out = Self::from_real_samples(self.grid, &rho).expect("grid length");
        out.truncate_in_place(band);
        out
    }

    /// `L Σ conj(a_j) b_j = ∫ conj(a) b dx`.
    pub fn inner(&self, other: &Self) -> C64 {
        let acc: C64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum();
        acc * self.grid.length()
    }

    pub fn scaled(&self, a: C64) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    /// `self += a · x`.
    pub fn axpy(&mut self, a: C64, x: &Self) {
        debug_assert_eq!(self.grid, x.grid);
        for (y, xv) in self.coeffs.iter_mut().zip(&x.coeffs) {
            *y += a * xv;
        }
    }

    /// `‖self − other‖_{H^s}`.
    pub fn distance(&self, other: &Self, s: f64) -> f64 {
        (self - other).sobolev_norm(s)
    }
}

/// Forward transform of grid samples.
pub fn forward_transform(grid: Grid, samples: &[C64]) -> Result<SpectralField> {
    SpectralField::from_samples(grid, samples)
}

/// Inverse transform to grid samples.
pub fn inverse_transform(f: &SpectralField) -> Vec<C64> {
    f.samples()
}

pub fn sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    f.sobolev_norm(s)
}

pub fn homogeneous_sobolev_norm(f: &SpectralField, s: f64) -> Result<f64> {
    f.homogeneous_sobolev_norm(s)
}

pub fn apply_multiplier(f: &SpectralField, m: Multiplier) -> Applied {
    f.apply_checked(m)
}

pub fn dealiased_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.dealiased_product(g)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&SpectralField> for &SpectralField {
            type Output = SpectralField;
            fn $method(self, rhs: &SpectralField) -> SpectralField {
                assert_eq!(self.grid, rhs.grid, "fields live on different grids");
                SpectralField {
                    grid: self.grid,
                    coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<SpectralField> for SpectralField {
            type Output = SpectralField;
            fn $method(self, rhs: SpectralField) -> SpectralField {
                &self $op &rhs
            }
        }
        impl $tr<&SpectralField> for SpectralField {
            type Output = SpectralField;
            fn $method(self, rhs: &SpectralField) -> SpectralField {
                &self $op rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        assert_eq!(self.grid, rhs.grid, "fields live on different grids");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&SpectralField> for SpectralField {
    fn sub_assign(&mut self, rhs: &SpectralField) {
        assert_eq!(self.grid, rhs.grid, "fields live on different grids");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scaled(C64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, a: f64) -> SpectralField {
        self.scaled(C64::new(a, 0.0))
    }
}

impl Mul<C64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, a: C64) -> SpectralField {
        self.scaled(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2pi(m: usize) -> Grid {
        Grid::new(2.0 * PI, m).unwrap()
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(Grid::new(1.0, 3).is_err());
        assert!(Grid::new(1.0, 2).is_err());
        assert!(Grid::new(0.0, 8).is_err());
        assert!(Grid::new(f64::NAN, 8).is_err());
    }

    #[test]
    fn wavenumbers_symmetric_except_nyquist() {
        let g = Grid::new(5.0, 16).unwrap();
        let k = g.wavenumbers();
        assert_eq!(k.len(), 16);
        assert_eq!(k[0], -g.wavenumber_of_mode(8));
        for j in 1..8 {
            assert_eq!(k[8 + j], -k[8 - j]);
        }
    }

    #[test]
    fn single_mode_transform() {
        let g = g2pi(64);
        let f = SpectralField::from_fn(g, |x| C64::new(0.0, 3.0 * x).exp());
        for j in -32..32 {
            let want = if j == 3 { 1.0 } else { 0.0 };
            assert!((f.coeff(j) - want).norm() <= 1e-12, "mode {j}");
        }
    }

    #[test]
    fn constant_transform() {
        let g = Grid::new(3.7, 10).unwrap();
        let f = SpectralField::from_fn(g, |_| C64::new(1.0, 0.0));
        assert!((f.coeff(0) - 1.0).norm() < 1e-15);
        assert!(f.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn transform_length_mismatch() {
        let g = g2pi(8);
        assert!(matches!(
            forward_transform(g, &[C64::new(0.0, 0.0); 7]),
            Err(ZakharovError::Dimension { expected: 8, got: 7 })
        ));
    }

    #[test]
    fn sobolev_examples() {
        let g = g2pi(64);
        let f = SpectralField::plane_wave(g, 3, C64::new(1.0, 0.0));
        assert!((f.sobolev_norm(1.0) - (2.0 * PI * 10.0).sqrt()).abs() < 1e-12);
        assert_eq!(SpectralField::zeros(g).sobolev_norm(1.3), 0.0);
        let two = SpectralField::from_modes(g, &[(1, C64::new(1.0, 0.0)), (2, C64::new(1.0, 0.0))]);
        let want = (2.0 * PI * (2f64.sqrt() + 5f64.sqrt())).sqrt();
        assert!((two.sobolev_norm(0.5) - want).abs() < 1e-12);
    }

    #[test]
    fn homogeneous_examples() {
        let g = g2pi(64);
        let c = SpectralField::from_real_fn(g, |x| (2.0 * x).cos());
        let v = c.homogeneous_sobolev_norm(-1.0).unwrap();
        // defining sum: 2π · 2 · (1/2)² · 2^{−2} = π/4
        assert!((v - PI.sqrt() / 2.0).abs() < 1e-12);
        let e = SpectralField::plane_wave(g, 1, C64::new(1.0, 0.0));
        assert!((e.homogeneous_sobolev_norm(0.0).unwrap() - e.sobolev_norm(0.0)).abs() < 1e-14);
        let k = SpectralField::constant(g, C64::new(2.0, 0.0));
        assert!(matches!(
            k.homogeneous_sobolev_norm(-1.0),
            Err(ZakharovError::ZeroMode { .. })
        ));
    }

    #[test]
    fn multiplier_examples() {
        let g = g2pi(32);
        let c = SpectralField::from_real_fn(g, |x| (2.0 * x).cos());
        let half = c.apply(Multiplier::INV_SQRT_A);
        assert!((&half - &(&c * 0.5)).max_abs() < 1e-15);
        let e = SpectralField::plane_wave(g, 3, C64::new(1.0, 0.0));
        let d = e.apply(Multiplier::Derivative(1));
        assert!((d.coeff(3) - C64::new(0.0, 3.0)).norm() < 1e-15);
        let k = SpectralField::constant(g, C64::new(1.0, 0.0));
        assert!(k.apply_checked(Multiplier::INV_SQRT_A).zero_mode_dropped);
        assert!(!c.apply_checked(Multiplier::INV_SQRT_A).zero_mode_dropped);
        assert!(!k.apply_checked(Multiplier::SQRT_A).zero_mode_dropped);
    }

    #[test]
    fn products() {
        let g = g2pi(64);
        let e = SpectralField::plane_wave(g, 1, C64::new(1.0, 0.0));
        let p = e.dealiased_product(&e).unwrap();
        assert!((p.coeff(2) - 1.0).norm() < 1e-14);
        assert!((&p - &SpectralField::plane_wave(g, 2, C64::new(1.0, 0.0))).max_abs() < 1e-14);
        let top = SpectralField::plane_wave(g, 31, C64::new(1.0, 0.0));
        assert!(top.dealiased_product(&top).unwrap().max_abs() == 0.0);
        let other = SpectralField::zeros(Grid::new(1.0, 64).unwrap());
        assert!(matches!(e.dealiased_product(&other), Err(ZakharovError::GridMismatch)));
    }

    #[test]
    fn plus_part() {
        let b = BracketScale::default();
        assert_eq!(b.plus(2.0), 2.0);
        assert_eq!(b.plus(0.0), 1e-3);
        assert_eq!(b.plus(-1.0), 0.0);
        assert!(BracketScale::new(0.0).is_err());
        assert_eq!(BracketScale::new(0.5).unwrap().plus(0.0), 0.5);
    }

    #[test]
    fn wavenumber_order_roundtrip() {
        let g = g2pi(8);
        let v: Vec<C64> = (0..8).map(|k| C64::new(k as f64, -(k as f64))).collect();
        let f = SpectralField::from_wavenumber_order(g, &v).unwrap();
        assert_eq!(f.coeff(-4), v[0]);
        assert_eq!(f.coeff(0), v[4]);
        assert_eq!(f.to_wavenumber_order(), v);
    }
}

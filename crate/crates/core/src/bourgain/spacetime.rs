//! Space-time fields on a periodic window `[t0, t0 + W)` and their
//! space-time spectra.
//!
//! Samples sit at `t_n = t0 + n W / K`; row `n` holds the spatial Fourier
//! coefficients at `t_n`. The spectrum `F(ξ_j, τ_k)` with `τ_k = 2πk/W` is
//! normalized so that `f = Σ F e^{i(ξx + τt)}` and `∫∫|f|² = L W Σ|F|²`.

use num_complex::Complex64 as C64;

use crate::error::{Result, ZakharovError};
use crate::spectral::{fft_forward, fft_inverse, Grid, SpectralField};

/// Dispersion relation `φ` entering `σ = τ + φ(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Zero,
    /// `φ = ξ²`
    Schrodinger,
    /// `φ = −ξ²`, the relation seen by `conj(u)`.
    AntiSchrodinger,
    /// `φ = |ξ|`
    HalfWavePlus,
    /// `φ = −|ξ|`
    HalfWaveMinus,
}

impl Phase {
    pub fn phi(self, xi: f64) -> f64 {
        match self {
            Phase::Zero => 0.0,
            Phase::Schrodinger => xi * xi,
            Phase::AntiSchrodinger => -xi * xi,
            Phase::HalfWavePlus => xi.abs(),
            Phase::HalfWaveMinus => -xi.abs(),
        }
    }
}

impl From<crate::evolution::PropagatorKind> for Phase {
    fn from(k: crate::evolution::PropagatorKind) -> Self {
        use crate::evolution::PropagatorKind as P;
        match k {
            P::Schrodinger => Phase::Schrodinger,
            P::HalfWavePlus => Phase::HalfWavePlus,
            P::HalfWaveMinus => Phase::HalfWaveMinus,
        }
    }
}

/// Row-major `K × M` array indexed by (time or τ index, FFT space index).
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    grid: Grid,
    t0: f64,
    window: f64,
    rows: usize,
    data: Vec<C64>,
}

/// `τ` (or `σ`) lattice value of FFT time index `k` out of `n`.
pub(crate) fn time_mode(k: usize, n: usize) -> i64 {
    if k < n.div_ceil(2) {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn transpose(src: &[C64], rows: usize, cols: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); src.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = src[r * cols + c];
        }
    }
    out
}

/// Transform along the time axis of a row-major `rows × cols` array.
fn time_transform(data: &[C64], rows: usize, cols: usize, inverse: bool) -> Vec<C64> {
    let mut t = transpose(data, rows, cols);
    if inverse {
        fft_inverse(&mut t, rows);
    } else {
        fft_forward(&mut t, rows);
    }
    transpose(&t, cols, rows)
}

impl SpaceTimeField {
    fn check(window: f64, rows: usize) -> Result<()> {
        if !(window > 0.0 && window.is_finite()) {
            return Err(ZakharovError::Domain(format!("window must be positive, got {window}")));
        }
        if rows < 2 {
            return Err(ZakharovError::Domain("at least two time samples required".into()));
        }
        Ok(())
    }

    /// Field from spatial spectra at `K = rows.len()` uniform samples.
    pub fn from_rows(t0: f64, window: f64, rows: &[SpectralField]) -> Result<Self> {
        let grid = rows
            .first()
            .ok_or_else(|| ZakharovError::Domain("no time samples".into()))?
            .grid();
        Self::check(window, rows.len())?;
        let mut data = Vec::with_capacity(rows.len() * grid.points());
        for r in rows {
            if r.grid() != grid {
                return Err(ZakharovError::GridMismatch);
            }
            data.extend_from_slice(r.coeffs());
        }
        Ok(Self {
            grid,
            t0,
            window,
            rows: rows.len(),
            data,
        })
    }

    /// Samples `f(x_m, t_n)` of a function on `[0, W)`.
    pub fn from_fn(grid: Grid, window: f64, rows: usize, f: impl Fn(f64, f64) -> C64) -> Result<Self> {
        Self::check(window, rows)?;
        let dt = window / rows as f64;
        let fields: Vec<SpectralField> = (0..rows)
            .map(|n| {
                let t = n as f64 * dt;
                SpectralField::from_fn(grid, |x| f(x, t))
            })
            .collect();
        Self::from_rows(0.0, window, &fields)
    }

    /// Field with the given lab spectrum, `spectrum[k * M + i]` at
    /// `(τ index k, space index i)`, window start 0.
    pub fn from_lab_spectrum(grid: Grid, window: f64, rows: usize, spectrum: Vec<C64>) -> Result<Self> {
        Self::check(window, rows)?;
        if spectrum.len() != rows * grid.points() {
            return Err(ZakharovError::Dimension {
                expected: rows * grid.points(),
                got: spectrum.len(),
            });
        }
        let data = time_transform(&spectrum, rows, grid.points(), true);
        Ok(Self {
            grid,
            t0: 0.0,
            window,
            rows,
            data,
        })
    }

    pub fn zeros(grid: Grid, window: f64, rows: usize) -> Result<Self> {
        Self::from_lab_spectrum(grid, window, rows, vec![C64::new(0.0, 0.0); rows * grid.points()])
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn start(&self) -> f64 {
        self.t0
    }

    /// Number of time samples `K`.
    pub fn time_samples(&self) -> usize {
        self.rows
    }

    pub fn dt(&self) -> f64 {
        self.window / self.rows as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.rows).map(|n| self.t0 + n as f64 * self.dt()).collect()
    }

    /// `τ_k` at time-FFT index `k`.
    pub fn tau(&self, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * time_mode(k, self.rows) as f64 / self.window
    }

    /// Spatial spectrum at sample `n`.
    pub fn row(&self, n: usize) -> SpectralField {
        let m = self.grid.points();
        SpectralField::from_fft_order(self.grid, self.data[n * m..(n + 1) * m].to_vec())
            .expect("row length matches grid")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Lab spectrum `F(ξ, τ)`, relative to the window start.
    pub fn lab_spectrum(&self) -> Vec<C64> {
        let mut f = time_transform(&self.data, self.rows, self.grid.points(), false);
        let scale = 1.0 / self.rows as f64;
        f.iter_mut().for_each(|c| *c *= scale);
        f
    }

    /// Spectrum of `e^{iφ(ξ)t} f̂(ξ, t)` on the `σ` lattice `2πk/W`.
    pub fn interaction_spectrum(&self, phase: Phase) -> Vec<C64> {
        let m = self.grid.points();
        let mut buf = self.data.clone();
        let dt = self.dt();
        for n in 0..self.rows {
            let t = self.t0 + n as f64 * dt;
            for i in 0..m {
                buf[n * m + i] *= C64::from_polar(1.0, phase.phi(self.grid.xi(i)) * t);
            }
        }
        let mut f = time_transform(&buf, self.rows, m, false);
        let scale = 1.0 / self.rows as f64;
        f.iter_mut().for_each(|c| *c *= scale);
        f
    }

    /// Pointwise complex conjugate `conj f(x, t)`.
    pub fn conj(&self) -> Self {
        let rows: Vec<SpectralField> = (0..self.rows).map(|n| self.row(n).conj()).collect();
        Self::from_rows(self.t0, self.window, &rows).expect("same layout")
    }

    /// Keeps `|j| ≤ band_x` and `|k| ≤ band_t`.
    pub fn band_limited(&self, band_x: i64, band_t: i64) -> Self {
        let m = self.grid.points();
        let mut f = self.lab_spectrum();
        for k in 0..self.rows {
            let kt = time_mode(k, self.rows).abs();
            for i in 0..m {
                if kt > band_t || self.grid.mode(i).abs() > band_x {
                    f[k * m + i] = C64::new(0.0, 0.0);
                }
            }
        }
        let mut out = Self::from_lab_spectrum(self.grid, self.window, self.rows, f).expect("same layout");
        out.t0 = self.t0;
        out
    }

    /// Physical samples `f(x_m, t_n)`, row-major by time.
    pub fn physical(&self) -> Vec<C64> {
        let mut buf = self.data.clone();
        fft_inverse(&mut buf, self.grid.points());
        buf
    }

    /// Product with both factors and the result limited to the space-time
    /// 2/3 band, so it equals the truncated spectral convolution.
    pub fn dealiased_product(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid || self.rows != other.rows {
            return Err(ZakharovError::GridMismatch);
        }
        if (self.window - other.window).abs() > 1e-12 * self.window {
            return Err(ZakharovError::Domain("windows differ".into()));
        }
        let bx = self.grid.dealias_band();
        let bt = (self.rows as i64 - 1) / 3;
        let a = self.band_limited(bx, bt).physical();
        let b = other.band_limited(bx, bt).physical();
        let m = self.grid.points();
        let mut prod: Vec<C64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        fft_forward(&mut prod, m);
        let scale = 1.0 / m as f64;
        prod.iter_mut().for_each(|c| *c *= scale);
        let out = Self {
            grid: self.grid,
            t0: self.t0,
            window: self.window,
            rows: self.rows,
            data: prod,
        };
        Ok(out.band_limited(bx, bt))
    }

    /// `∫∫ |f|² dx dt` by the rectangle rule on the samples.
    pub fn l2_squared(&self) -> f64 {
        let l = self.grid.length();
        let dt = self.dt();
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>() * l * dt
    }
}

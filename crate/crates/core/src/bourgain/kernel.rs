//! Supremum-of-integral kernels from the Schwarz reduction of the
//! wave-Schrödinger estimate, evaluated on truncated lattices with
//! truncation doubling.

use std::fmt;

use rayon::prelude::*;

use super::conditions::EstimateParams;
use crate::error::{Result, ZakharovError};
use crate::quad::{geometric_breaks, integrate};

/// Integration regimes. Frequencies `ξ = ξ₁ − ξ₂`, modulations
/// `σ = σ₁ − σ₂ − z` with `z = ξ₁² − ξ₂²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|ξ₁| ≥ 2|ξ₂|`, `σ₁` dominant; sup over `(ξ₁, σ₁)`.
    OutputDominant,
    /// `|ξ₁| ≥ 2|ξ₂|`, `σ₂` dominant; sup over `(ξ₂, σ₂)`.
    InputDominant,
    /// `|ξ₁| ≥ 2|ξ₂|`, `σ` dominant; sup over `(ξ, σ)`.
    WaveDominant,
    /// `|ξ₁| ≤ 2|ξ₂|`; sup over `(ξ₂, σ₂)`.
    ComparableFrequencies,
}

impl Regime {
    pub const ALL: [Regime; 4] = [
        Regime::OutputDominant,
        Regime::InputDominant,
        Regime::WaveDominant,
        Regime::ComparableFrequencies,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Regime::OutputDominant => "output_dominant",
            Regime::InputDominant => "input_dominant",
            Regime::WaveDominant => "wave_dominant",
            Regime::ComparableFrequencies => "comparable_frequencies",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Regime {
    type Err = ZakharovError;
    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.label() == s)
            .ok_or_else(|| ZakharovError::Domain(format!("unknown regime `{s}`")))
    }
}

/// `⟨x⟩^{2e}`.
#[inline]
fn br(x: f64, e: f64) -> f64 {
    (1.0 + x * x).powf(e)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    pub initial_radius: f64,
    pub max_doublings: usize,
    /// Relative change below which the value counts as stable.
    pub tolerance: f64,
    /// Consecutive increases beyond `tolerance` that flag divergence.
    pub diverge_after: usize,
    pub rel_tol: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            initial_radius: 16.0,
            max_doublings: 6,
            tolerance: 0.05,
            diverge_after: 3,
            rel_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelVerdict {
    Stabilized,
    Diverging,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelProbe {
    pub regime: Regime,
    pub verdict: KernelVerdict,
    /// Stabilized value, or `+∞` for a diverging probe.
    pub value: f64,
    /// Radius of the last evaluation.
    pub radius: f64,
    /// `(radius, lattice supremum)` per evaluation.
    pub history: Vec<(f64, f64)>,
}

struct Inner {
    rel_tol: f64,
    max_panels: usize,
}

impl Inner {
    /// `∫ dq ∫ dσ g(q, σ)` with `σ ∈ span(q)` and peak centres `peaks(q)`.
    fn double(
        &self,
        q_pieces: &[(f64, f64)],
        q_breaks: &[f64],
        span: impl Fn(f64) -> (f64, f64) + Sync,
        peaks: impl Fn(f64) -> [f64; 2] + Sync,
        g: impl Fn(f64, f64) -> f64 + Sync,
    ) -> Result<f64> {
        let row = |q: f64| -> f64 {
            let (lo, hi) = span(q);
            if !(hi > lo) {
                return 0.0;
            }
            let [c1, c2] = peaks(q);
            let mut bp = geometric_breaks(c1, lo, hi, -1);
            bp.extend(geometric_breaks(c2, lo, hi, -1));
            integrate(|s| g(q, s), lo, hi, &bp, self.rel_tol, 0.0, self.max_panels).value
        };
        let mut total = 0.0;
        for &(a, b) in q_pieces {
            let mut br: Vec<f64> = q_breaks.to_vec();
            br.extend(geometric_breaks(0.0, a, b, -2));
            let r = integrate(row, a, b, &br, self.rel_tol, 0.0, self.max_panels);
            if !r.value.is_finite() {
                return Err(ZakharovError::Numerical("non-finite kernel integral".into()));
            }
            total += r.value;
        }
        Ok(total)
    }
}

/// Outer-variable lattice for truncation radius `r`: frequencies
/// `{0} ∪ {2^{m/2}} ≤ r`, modulations `{0, ±2^m} ∪ {±ξ² ± {0, 2^m}}` with
/// `|σ| ≤ r²`. Lattices are nested under doubling.
fn lattice(r: f64) -> Vec<(f64, f64)> {
    let r2 = r * r;
    let mut freqs = vec![0.0];
    let mut m = -2;
    while 2f64.powf(m as f64 / 2.0) <= r {
        freqs.push(2f64.powf(m as f64 / 2.0));
        m += 1;
    }
    let mut offsets = vec![0.0];
    let mut e = -1;
    while 2f64.powi(e) <= 2.0 * r2 {
        offsets.push(2f64.powi(e));
        e += 1;
    }
    let mut out = Vec::new();
    for &x in &freqs {
        let mut sig: Vec<f64> = Vec::new();
        for &d in &offsets {
            sig.extend([d, -d, x * x + d, x * x - d, -x * x + d, -x * x - d]);
        }
        sig.retain(|s| s.abs() <= r2);
        sig.sort_by(|a, b| a.total_cmp(b));
        sig.dedup();
        out.extend(sig.into_iter().map(|s| (x, s)));
    }
    out
}

fn sqrt_pos(x: f64) -> Vec<f64> {
    if x > 0.0 {
        let r = x.sqrt();
        vec![-r, r]
    } else {
        vec![]
    }
}

/// Value of the regime's integral at outer point `(x, y)` for truncation `r`.
fn kernel_at(p: &EstimateParams, regime: Regime, x: f64, y: f64, r: f64, inner: &Inner) -> Result<f64> {
    let EstimateParams { s, k, l, a, a1, a2 } = *p;
    match regime {
        Regime::OutputDominant => {
            // x = ξ₁, y = σ₁, q = ξ₂, integrate σ₂
            let (xi1, s1) = (x, y);
            let h = xi1.abs() / 2.0;
            if h == 0.0 {
                return Ok(0.0);
            }
            let pre = br(s1, -a1) * br(xi1, s);
            let m = s1.abs();
            let v = inner.double(
                &[(-h, h)],
                &sqrt_pos(xi1 * xi1 - s1),
                |q| {
                    let c = s1 - (xi1 * xi1 - q * q);
                    ((-m).max(c - m), m.min(c + m))
                },
                |q| [0.0, s1 - (xi1 * xi1 - q * q)],
                |q, s2| {
                    let z = xi1 * xi1 - q * q;
                    br(s1 - s2 - z, -a) * br(s2, -a2) * br(q, -k) * br(xi1 - q, -l)
                },
            )?;
            Ok(pre * v)
        }
        Regime::InputDominant => {
            // x = ξ₂, y = σ₂, q = ξ₁, integrate σ₁
            let (xi2, s2) = (x, y);
            let m = s2.abs();
            let top = (xi2 * xi2 + 3.0 * m).sqrt();
            let lo = 2.0 * xi2.abs();
            if !(top > lo) {
                return Ok(0.0);
            }
            let pieces: Vec<(f64, f64)> = if lo == 0.0 { vec![(-top, top)] } else { vec![(-top, -lo), (lo, top)] };
            let pre = br(s2, -a2) * br(xi2, -k);
            let v = inner.double(
                &pieces,
                &sqrt_pos(xi2 * xi2 - s2),
                |q| {
                    let c = s2 + q * q - xi2 * xi2;
                    ((-m).max(c - m), m.min(c + m))
                },
                |q| [0.0, s2 + q * q - xi2 * xi2],
                |q, s1| {
                    let z = q * q - xi2 * xi2;
                    br(q, s) * br(s1 - s2 - z, -a) * br(s1, -a1) * br(q - xi2, -l)
                },
            )?;
            Ok(pre * v)
        }
        Regime::WaveDominant => {
            // x = ξ ≥ 0, y = σ, q = ξ₂, ξ₁ = ξ + q, integrate σ₂
            let (xi, sg) = (x, y);
            if xi == 0.0 {
                return Ok(0.0);
            }
            let m = sg.abs();
            let pre = br(sg, -a) * br(xi, -l);
            let mut qb = vec![0.0];
            qb.push(-(sg + xi * xi) / (2.0 * xi));
            let v = inner.double(
                &[(-xi / 3.0, xi)],
                &qb,
                |q| {
                    let c = -sg - (xi * xi + 2.0 * xi * q);
                    ((-m).max(c - m), m.min(c + m))
                },
                |q| [0.0, -sg - (xi * xi + 2.0 * xi * q)],
                |q, s2| {
                    let z = xi * xi + 2.0 * xi * q;
                    br(q, -k) * br(sg + s2 + z, -a1) * br(s2, -a2) * br(xi + q, s)
                },
            )?;
            Ok(pre * v)
        }
        Regime::ComparableFrequencies => {
            // x = ξ₂, y = σ₂, q = ξ₁ with |ξ₁| ≤ 2|ξ₂|, σ₁ truncated to 4r²
            let (xi2, s2) = (x, y);
            let h = 2.0 * xi2.abs();
            if h == 0.0 {
                return Ok(0.0);
            }
            let t = 4.0 * r * r;
            let pre = br(s2, -a2) * br(xi2, -k);
            let mut qb = sqrt_pos(xi2 * xi2 - s2);
            qb.push(xi2);
            let v = inner.double(
                &[(-h, h)],
                &qb,
                |_| (-t, t),
                |q| [0.0, s2 + q * q - xi2 * xi2],
                |q, s1| {
                    let z = q * q - xi2 * xi2;
                    br(q, s) * br(s1 - s2 - z, -a) * br(s1, -a1) * br(q - xi2, -l)
                },
            )?;
            Ok(pre * v)
        }
    }
}

/// Lattice supremum at truncation radius `r`.
pub fn kernel_value(p: &EstimateParams, regime: Regime, radius: f64, rel_tol: f64) -> Result<f64> {
    if !(radius >= 1.0 && radius.is_finite()) {
        return Err(ZakharovError::Domain(format!("radius must be at least 1, got {radius}")));
    }
    let inner = Inner {
        rel_tol,
        max_panels: 400,
    };
    let vals: Result<Vec<f64>> = lattice(radius)
        .into_par_iter()
        .map(|(x, y)| kernel_at(p, regime, x, y, radius, &inner))
        .collect();
    Ok(vals?.into_iter().fold(0.0, f64::max))
}

/// Truncation-doubling probe: stable when a doubling changes the value by
/// less than `tolerance`, diverging after `diverge_after` consecutive
/// larger increases.
pub fn kernel_supremum(p: &EstimateParams, regime: Regime, cfg: &KernelConfig) -> Result<KernelProbe> {
    let mut r = cfg.initial_radius;
    let mut prev = kernel_value(p, regime, r, cfg.rel_tol)?;
    let mut history = vec![(r, prev)];
    let mut streak = 0;
    for _ in 0..cfg.max_doublings {
        r *= 2.0;
        let v = kernel_value(p, regime, r, cfg.rel_tol)?;
        history.push((r, v));
        let change = if prev > 0.0 { (v - prev) / prev } else if v > 0.0 { f64::INFINITY } else { 0.0 };
        if change.abs() < cfg.tolerance {
            return Ok(KernelProbe {
                regime,
                verdict: KernelVerdict::Stabilized,
                value: v,
                radius: r,
                history,
            });
        }
        streak = if change > 0.0 { streak + 1 } else { 0 };
        if streak >= cfg.diverge_after {
            return Ok(KernelProbe {
                regime,
                verdict: KernelVerdict::Diverging,
                value: f64::INFINITY,
                radius: r,
                history,
            });
        }
        prev = v;
    }
    Err(ZakharovError::ProbeFailure(format!(
        "{regime} kernel neither stabilized nor diverged by radius {r}: {history:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_is_nested() {
        let a = lattice(4.0);
        let b = lattice(8.0);
        assert!(a.iter().all(|p| b.contains(p)));
        assert!(b.len() > a.len());
    }

    #[test]
    fn regime_labels_round_trip() {
        for r in Regime::ALL {
            assert_eq!(r.label().parse::<Regime>().unwrap(), r);
        }
        assert!("case_zz".parse::<Regime>().is_err());
    }

    #[test]
    fn single_point_against_box_sum() {
        // crude midpoint sum of the output-dominant integral
        let p = EstimateParams::wave_schrodinger_point(0.01);
        let inner = Inner {
            rel_tol: 1e-8,
            max_panels: 400,
        };
        let (xi1, s1) = (3.0, 5.0);
        let v = kernel_at(&p, Regime::OutputDominant, xi1, s1, 8.0, &inner).unwrap();
        let (nq, ns) = (600, 2000);
        let mut acc = 0.0;
        for i in 0..nq {
            let q = -1.5 + 3.0 * (i as f64 + 0.5) / nq as f64;
            let z = xi1 * xi1 - q * q;
            for j in 0..ns {
                let s2 = -5.0 + 10.0 * (j as f64 + 0.5) / ns as f64;
                if (s1 - s2 - z).abs() <= 5.0 {
                    acc += br(s1 - s2 - z, -p.a) * br(s2, -p.a2) * br(q, -p.k);
                }
            }
        }
        acc *= (3.0 / nq as f64) * (10.0 / ns as f64) * br(s1, -p.a1) * br(xi1, p.s);
        assert!((v - acc).abs() < 2e-3 * acc, "{v} vs {acc}");
    }
}

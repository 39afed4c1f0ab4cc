//! `‖f‖_{L^q_t L^r_x} / ‖f‖_{X^{0,b}}` for Strichartz-admissible exponents.

use super::norms::xsb_norm;
use super::spacetime::{Phase, SpaceTimeField};
use crate::error::{Result, ZakharovError};

/// Interpolation data `(θ, η, b₀)` with `θ = b/b₀`, `2/q = 1 − ηθ`,
/// `½ − 1/r = (1 − η)θ`. `None` marks the `q = r = 2` endpoint.
pub fn admissibility(q: f64, r: f64, b: f64) -> Result<Option<(f64, f64, f64)>> {
    let bad = |why: &str| Err(ZakharovError::Domain(format!("exponents (q, r, b) = ({q}, {r}, {b}) not admissible: {why}")));
    if !(q >= 2.0 && r >= 2.0 && q.is_finite() && r.is_finite() && b >= 0.0) {
        return bad("need 2 ≤ q, r < ∞ and b ≥ 0");
    }
    let theta = 1.5 - 2.0 / q - 1.0 / r;
    if theta.abs() < 1e-12 {
        return if b == 0.0 { Ok(None) } else { bad("endpoint q = r = 2 requires b = 0") };
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return bad("θ outside (0, 1]");
    }
    let eta = (1.0 - 2.0 / q) / theta;
    if !(eta >= 0.5 - 1e-12 && eta <= 1.0 + 1e-12) {
        return bad("η outside [1/2, 1]");
    }
    let b0 = b / theta;
    if !(b0 > 0.5) {
        return bad("b/θ must exceed 1/2");
    }
    Ok(Some((theta, eta, b0)))
}

/// Mixed norm by the rectangle rule in `x` and `t`.
pub fn mixed_norm(f: &SpaceTimeField, q: f64, r: f64) -> f64 {
    let m = f.grid().points();
    let dx = f.grid().dx();
    let vals = f.physical();
    let sum: f64 = vals
        .chunks(m)
        .map(|row| {
            let lr: f64 = row.iter().map(|c| c.norm().powf(r)).sum::<f64>() * dx;
            lr.powf(q / r)
        })
        .sum();
    (sum * f.dt()).powf(1.0 / q)
}

pub fn strichartz_ratio(f: &SpaceTimeField, q: f64, r: f64, b: f64) -> Result<f64> {
    admissibility(q, r, b)?;
    let den = xsb_norm(f, 0.0, b, Phase::Schrodinger);
    if !(den > 1e-300) {
        return Err(ZakharovError::Degenerate("zero field".into()));
    }
    Ok(mixed_norm(f, q, r) / den)
}

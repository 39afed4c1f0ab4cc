//! One continuation interval: regular and difference solves side by side.

use super::duhamel::{duhamel_difference, duhamel_on_nodes, interval_nodes};
use super::splitting::evolve_splitting_pair;
use super::{ContractionInfo, DifferenceTrajectory, DuhamelConfig, Trajectory};
use crate::error::{Result, ZakharovError};
use crate::spectral::SpectralField;
use crate::state::FirstOrderState;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Lockstep Strang splitting with `steps` steps per interval.
    Splitting { steps: usize },
    Duhamel(DuhamelConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalOutcome {
    pub regular: Trajectory,
    pub difference: DifferenceTrajectory,
    /// Worse of the two fixed-point records, Duhamel only.
    pub contraction: Option<ContractionInfo>,
}

/// Solves the regular system from `regular` and the difference system from
/// `(u02, 0, 0)` on `[regular.t, regular.t + len]`.
pub fn evolve_interval(
    regular: &FirstOrderState,
    u02: &SpectralField,
    len: f64,
    method: Method,
) -> Result<IntervalOutcome> {
    if u02.grid() != regular.grid() {
        return Err(ZakharovError::GridMismatch);
    }
    if !(len > 0.0 && len.is_finite()) {
        return Err(ZakharovError::Domain(format!("interval length must be positive, got {len}")));
    }
    match method {
        Method::Splitting { steps } => {
            let (reg, diff) = evolve_splitting_pair(regular, u02, len, steps, 1)?;
            Ok(IntervalOutcome {
                regular: reg,
                difference: diff,
                contraction: None,
            })
        }
        Method::Duhamel(cfg) => {
            let nodes = interval_nodes(regular, u02, len, &cfg)?;
            let reg = duhamel_on_nodes(regular, nodes, &cfg)?;
            let diff = duhamel_difference(&reg, u02, &cfg)?;
            let info = if diff.info.max_factor() > reg.info.max_factor() {
                diff.info.clone()
            } else {
                reg.info.clone()
            };
            Ok(IntervalOutcome {
                regular: reg.trajectory,
                difference: diff.trajectory,
                contraction: Some(info),
            })
        }
    }
}

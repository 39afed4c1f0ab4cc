//! Space-time norms, estimate conditions and probes of the bilinear
//! estimates.

pub mod bilinear;
pub mod conditions;
pub mod kernel;
pub mod norms;
pub mod spacetime;
pub mod strichartz;

pub use bilinear::{bilinear_ratio, ensemble_max_ratio, random_pair, resonant_spike_pair, ProbeLevel};
pub use conditions::{
    check_schrodinger_pair, check_wave_schrodinger, ConditionReport, EstimateParams, PairCondition, WaveCondition,
};
pub use kernel::{kernel_supremum, kernel_value, KernelConfig, KernelProbe, KernelVerdict, Regime};
pub use norms::{
    duhamel_bound_ratio, extension_sensitivity, restricted_norm, xsb_norm, xsb_norm_homogeneous, ys_norm, Extension,
    RestrictedNorm, TrajectorySlice,
};
pub use spacetime::{Phase, SpaceTimeField};
pub use strichartz::strichartz_ratio;

//! Parameter conditions of the two bilinear estimates
//! `‖n u‖_{X^{s,−a₁}} ≲ ‖n‖_{X^{l,a}_±} ‖u‖_{X^{k,a₂}}` (wave-Schrödinger
//! interaction) and `‖(|u|²)_x‖ ≲ …` (Schrödinger-Schrödinger interaction).

use std::fmt;

/// Exponents `(s, k, l, a, a₁, a₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateParams {
    pub s: f64,
    pub k: f64,
    pub l: f64,
    pub a: f64,
    pub a1: f64,
    pub a2: f64,
}

/// Default realization of the `a±` exponents.
pub const DEFAULT_EPS: f64 = 0.01;

impl EstimateParams {
    /// `s = 1, l = 0, k = ½+ε, a₁ = ½, a = ½+ε, a₂ = ¼+ε`: the point used
    /// for the regular system.
    pub fn wave_schrodinger_point(eps: f64) -> Self {
        Self {
            s: 1.0,
            k: 0.5 + eps,
            l: 0.0,
            a: 0.5 + eps,
            a1: 0.5,
            a2: 0.25 + eps,
        }
    }

    /// `s = 1, l = 0, k = ½+ε, a = a₂ = ½`: the point used for the
    /// difference system.
    pub fn schrodinger_pair_point(eps: f64) -> Self {
        Self {
            s: 1.0,
            k: 0.5 + eps,
            l: 0.0,
            a: 0.5,
            a1: 0.5,
            a2: 0.5,
        }
    }
}

/// Individual inequalities of the wave-Schrödinger estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveCondition {
    /// `k ≥ 0`
    KNonnegative,
    /// `l ≥ 0`
    LNonnegative,
    /// `s − k < min(2a − ½, 2a₁ − ½, 2(a + a₁) − 3/2)`
    SchrodingerGain,
    /// `s − l ≤ 2a₁`
    WaveGain,
    /// `a > ¼`
    WaveModulationFloor,
    /// `a₁ > ¼`
    OutputModulationFloor,
    /// `a₂ > ¼`
    InputModulationFloor,
    /// `a₁ ≤ ½`
    OutputModulationCap,
    /// `a + a₁ > ¾`
    WaveOutputSum,
    /// `a + a₂ > ¾`
    WaveInputSum,
    /// `a₁ + a₂ > ¾`
    OutputInputSum,
    /// `k + a₁ > ½`
    RegularityOutputSum,
    /// `k + a₂ > ½`
    RegularityInputSum,
    /// `k + a₁ + a₂ > 1`
    RegularityTotal,
}

/// Individual inequalities of the Schrödinger-pair estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairCondition {
    /// `k > 0`
    KPositive,
    /// `l ≥ 0`
    LNonnegative,
    /// `s − k < min(2a − ½, ½)`
    SchrodingerGain,
    /// `s − l ≤ 1`
    WaveGain,
    /// `a > ¼`
    OutputModulationFloor,
    /// `a₂ > ¼`
    InputModulationFloor,
    /// `a + a₂ > ¾`
    ModulationSum,
    /// `k + a₂ > ½`
    RegularityInputSum,
}

impl fmt::Display for WaveCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use WaveCondition::*;
        let s = match self {
            KNonnegative => "k >= 0",
            LNonnegative => "l >= 0",
            SchrodingerGain => "s - k < min(2a - 1/2, 2a1 - 1/2, 2(a + a1) - 3/2)",
            WaveGain => "s - l <= 2a1",
            WaveModulationFloor => "a > 1/4",
            OutputModulationFloor => "a1 > 1/4",
            InputModulationFloor => "a2 > 1/4",
            OutputModulationCap => "a1 <= 1/2",
            WaveOutputSum => "a + a1 > 3/4",
            WaveInputSum => "a + a2 > 3/4",
            OutputInputSum => "a1 + a2 > 3/4",
            RegularityOutputSum => "k + a1 > 1/2",
            RegularityInputSum => "k + a2 > 1/2",
            RegularityTotal => "k + a1 + a2 > 1",
        };
        f.write_str(s)
    }
}

impl fmt::Display for PairCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PairCondition::*;
        let s = match self {
            KPositive => "k > 0",
            LNonnegative => "l >= 0",
            SchrodingerGain => "s - k < min(2a - 1/2, 1/2)",
            WaveGain => "s - l <= 1",
            OutputModulationFloor => "a > 1/4",
            InputModulationFloor => "a2 > 1/4",
            ModulationSum => "a + a2 > 3/4",
            RegularityInputSum => "k + a2 > 1/2",
        };
        f.write_str(s)
    }
}

/// Outcome of a condition check: admissibility and the violated lines.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<C> {
    pub admissible: bool,
    pub violations: Vec<C>,
}

fn report<C: Copy>(checks: &[(C, bool)]) -> ConditionReport<C> {
    let violations: Vec<C> = checks.iter().filter(|(_, ok)| !ok).map(|(c, _)| *c).collect();
    ConditionReport {
        admissible: violations.is_empty(),
        violations,
    }
}

pub fn check_wave_schrodinger(p: &EstimateParams) -> ConditionReport<WaveCondition> {
    use WaveCondition::*;
    let EstimateParams { s, k, l, a, a1, a2 } = *p;
    let gain = (2.0 * a - 0.5).min(2.0 * a1 - 0.5).min(2.0 * (a + a1) - 1.5);
    report(&[
        (KNonnegative, k >= 0.0),
        (LNonnegative, l >= 0.0),
        (SchrodingerGain, s - k < gain),
        (WaveGain, s - l <= 2.0 * a1),
        (WaveModulationFloor, a > 0.25),
        (OutputModulationFloor, a1 > 0.25),
        (InputModulationFloor, a2 > 0.25),
        (OutputModulationCap, a1 <= 0.5),
        (WaveOutputSum, a + a1 > 0.75),
        (WaveInputSum, a + a2 > 0.75),
        (OutputInputSum, a1 + a2 > 0.75),
        (RegularityOutputSum, k + a1 > 0.5),
        (RegularityInputSum, k + a2 > 0.5),
        (RegularityTotal, k + a1 + a2 > 1.0),
    ])
}

pub fn check_schrodinger_pair(p: &EstimateParams) -> ConditionReport<PairCondition> {
    use PairCondition::*;
    let EstimateParams { s, k, l, a, a2, .. } = *p;
    report(&[
        (KPositive, k > 0.0),
        (LNonnegative, l >= 0.0),
        (SchrodingerGain, s - k < (2.0 * a - 0.5).min(0.5)),
        (WaveGain, s - l <= 1.0),
        (OutputModulationFloor, a > 0.25),
        (InputModulationFloor, a2 > 0.25),
        (ModulationSum, a + a2 > 0.75),
        (RegularityInputSum, k + a2 > 0.5),
    ])
}

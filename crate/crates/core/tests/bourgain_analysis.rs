use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use zakharov_core::bourgain::bilinear::inadmissible_point;
use zakharov_core::bourgain::norms::smooth_step;
use zakharov_core::bourgain::{
    check_schrodinger_pair, check_wave_schrodinger, kernel_supremum, kernel_value, strichartz_ratio, xsb_norm,
    EstimateParams, KernelConfig, KernelVerdict, PairCondition, Phase, Regime, SpaceTimeField, WaveCondition,
};
use zakharov_core::Grid;

const ROWS: usize = 9;

fn grid() -> Grid {
    Grid::new(2.0 * PI, 16).unwrap()
}

fn field(re: &[f64], im: &[f64]) -> SpaceTimeField {
    let g = grid();
    let m = g.points();
    let mut spec: Vec<C64> = re.iter().zip(im).map(|(a, b)| C64::new(*a, *b)).collect();
    // spatial Nyquist column has no conjugate partner
    for k in 0..ROWS {
        spec[k * m + g.nyquist_index()] = C64::new(0.0, 0.0);
    }
    SpaceTimeField::from_lab_spectrum(g, 1.5, ROWS, spec).unwrap()
}

fn spectrum() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    let n = 16 * ROWS;
    (prop::collection::vec(-1.0f64..1.0, n), prop::collection::vec(-1.0f64..1.0, n))
}

#[test]
fn condition_examples() {
    let good = EstimateParams::wave_schrodinger_point(0.01);
    assert!(check_wave_schrodinger(&good).admissible);
    let r = check_wave_schrodinger(&EstimateParams { s: 2.0, ..good });
    assert!(r.violations.contains(&WaveCondition::WaveGain));
    let r = check_wave_schrodinger(&inadmissible_point(0.01));
    assert!(r.violations.contains(&WaveCondition::SchrodingerGain));
    assert!(check_schrodinger_pair(&EstimateParams::schrodinger_pair_point(0.01)).admissible);
    let r = check_schrodinger_pair(&EstimateParams { s: 1.2, ..EstimateParams::schrodinger_pair_point(0.01) });
    assert!(r.violations.contains(&PairCondition::WaveGain));
}

#[test]
fn kernel_decreases_in_input_regularity() {
    let base = EstimateParams::wave_schrodinger_point(0.01);
    for regime in [Regime::OutputDominant, Regime::WaveDominant] {
        let vals: Vec<f64> = [0.51, 1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|&k| kernel_value(&EstimateParams { k, ..base }, regime, 16.0, 1e-6).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9)), "{regime}: {vals:?}");
    }
}

#[test]
fn wave_gain_violation_alone_diverges() {
    let p = EstimateParams { s: 1.2, k: 0.71, ..EstimateParams::wave_schrodinger_point(0.01) };
    let r = check_wave_schrodinger(&p);
    assert_eq!(r.violations, vec![WaveCondition::WaveGain]);
    let probe = kernel_supremum(&p, Regime::OutputDominant, &KernelConfig::default()).unwrap();
    assert_eq!(probe.verdict, KernelVerdict::Diverging, "{:?}", probe.history);
    assert_eq!(probe.value, f64::INFINITY);
}

fn free_packet(g: Grid, k: usize) -> SpaceTimeField {
    let w = 1.0;
    SpaceTimeField::from_fn(g, w, k, |x, t| {
        let y = t / w;
        let taper = smooth_step(4.0 * y) * smooth_step(4.0 * (1.0 - y));
        let mut v = C64::new(0.0, 0.0);
        for j in -3i64..=3 {
            let xi = j as f64;
            v += C64::from_polar((-(xi * xi) / 4.0).exp(), xi * x - xi * xi * t);
        }
        v * taper
    })
    .unwrap()
}

#[test]
fn strichartz_ratio_resolves() {
    let coarse = strichartz_ratio(&free_packet(Grid::new(2.0 * PI, 32).unwrap(), 64), 8.0, 4.0, 0.6).unwrap();
    let fine = strichartz_ratio(&free_packet(Grid::new(2.0 * PI, 64).unwrap(), 128), 8.0, 4.0, 0.6).unwrap();
    assert!(coarse.is_finite() && coarse > 0.0);
    assert!((fine - coarse).abs() <= 0.05 * coarse, "{coarse} {fine}");
    let f = free_packet(Grid::new(2.0 * PI, 32).unwrap(), 64);
    assert!((strichartz_ratio(&f, 2.0, 2.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn xsb_monotone_in_both_exponents((re, im) in spectrum(), s in -1.0f64..2.0, b in -1.0f64..1.0, ds in 0.0f64..1.0, db in 0.0f64..1.0) {
        let f = field(&re, &im);
        for phase in [Phase::Schrodinger, Phase::HalfWavePlus, Phase::HalfWaveMinus] {
            let base = xsb_norm(&f, s, b, phase);
            prop_assert!(xsb_norm(&f, s + ds, b, phase) >= base * (1.0 - 1e-12));
            prop_assert!(xsb_norm(&f, s, b + db, phase) >= base * (1.0 - 1e-12));
        }
    }

    #[test]
    fn zero_b_ignores_phase((re, im) in spectrum(), s in -1.0f64..2.0) {
        let f = field(&re, &im);
        let a = xsb_norm(&f, s, 0.0, Phase::Zero);
        for phase in [Phase::Schrodinger, Phase::HalfWavePlus, Phase::HalfWaveMinus] {
            prop_assert!((xsb_norm(&f, s, 0.0, phase) - a).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn conjugation_reflects_phase((re, im) in spectrum(), s in -1.0f64..2.0, b in -1.0f64..1.0) {
        let f = field(&re, &im);
        let a = xsb_norm(&f.conj(), s, b, Phase::Schrodinger);
        let c = xsb_norm(&f, s, b, Phase::AntiSchrodinger);
        prop_assert!((a - c).abs() <= 1e-12 * c);
        let a = xsb_norm(&f.conj(), s, b, Phase::HalfWavePlus);
        let c = xsb_norm(&f, s, b, Phase::HalfWaveMinus);
        prop_assert!((a - c).abs() <= 1e-12 * c);
    }

    #[test]
    fn space_time_parseval((re, im) in spectrum()) {
        let f = field(&re, &im);
        let quad: f64 = f.physical().iter().map(|c| c.norm_sqr()).sum::<f64>() * f.grid().dx() * f.dt();
        prop_assert!((f.l2_squared() - quad).abs() <= 1e-10 * quad);
        let x00 = xsb_norm(&f, 0.0, 0.0, Phase::Zero);
        prop_assert!((x00 * x00 - quad).abs() <= 1e-10 * quad);
    }
}

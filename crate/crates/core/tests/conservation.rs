use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use zakharov_core::conservation::{apriori_bounds, energy, fit_gn_constant, gn_coupling_bound, mass, monitor};
use zakharov_core::data::{smooth_data, smooth_grid, SmoothParams};
use zakharov_core::evolution::evolve_splitting;
use zakharov_core::rng::member_rng;
use zakharov_core::state::to_first_order;
use zakharov_core::{Grid, SpectralField};
use rand::Rng;

fn g2pi() -> Grid {
    Grid::new(2.0 * PI, 64).unwrap()
}

#[test]
fn energy_examples() {
    let g = g2pi();
    let z = SpectralField::zeros(g);
    let cosx = SpectralField::from_real_fn(g, f64::cos);
    let e = energy(&z, &cosx, &z).unwrap();
    assert!((e.total - PI / 2.0).abs() < 1e-13);
    let eix = SpectralField::from_fn(g, |x| C64::from_polar(1.0, x));
    assert!((energy(&eix, &z, &z).unwrap().total - 2.0 * PI).abs() < 1e-13);
    let u = SpectralField::from_fn(g, |x| C64::new(1.0, 0.0) + C64::from_polar(1.0, x));
    let e = energy(&u, &cosx, &z).unwrap();
    assert!((e.total - 4.5 * PI).abs() < 1e-12);
    assert_eq!(e.total, e.kinetic + e.wave + e.coupling);
    assert!(energy(&z, &z, &SpectralField::from_real_fn(g, |_| 1.0)).is_err());
    assert!((mass(&eix) - (2.0 * PI).sqrt()).abs() < 1e-14);
    assert_eq!(mass(&z), 0.0);
}

#[test]
fn apriori_examples() {
    let b = apriori_bounds(3.0, 0.0, 1.0);
    assert_eq!((b.bound_ux_sq, b.bound_wave_sq), (4.0, 12.0));
    let b = apriori_bounds(0.0, 0.0, 1.0);
    assert_eq!((b.bound_ux_sq, b.bound_wave_sq), (0.0, 0.0));
    let b = apriori_bounds(1.0, 1.0, 2.0);
    assert_eq!((b.bound_ux_sq, b.bound_wave_sq), (4.0, 12.0));
}

fn smooth_pair(seed: u64, member: u64) -> (SpectralField, SpectralField) {
    let g = g2pi();
    let mut rng = member_rng(seed, member);
    let mut u = SpectralField::zeros(g);
    let mut n = SpectralField::zeros(g);
    for j in -6i64..=6 {
        let w = (-(j * j) as f64 / 8.0).exp();
        u.set_coeff(j, C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5) * w);
    }
    for j in 0i64..=6 {
        let c = C64::new(rng.random::<f64>() - 0.5, if j == 0 { 0.0 } else { rng.random::<f64>() - 0.5 });
        n.set_coeff(j, c);
        n.set_coeff(-j, c.conj());
    }
    (u, n)
}

#[test]
fn gn_fit_over_ensemble() {
    let pairs: Vec<(SpectralField, SpectralField)> = (0..100).map(|m| smooth_pair(3, m)).collect();
    let c = fit_gn_constant(pairs.iter().map(|(u, n)| (u, n)));
    assert!(c.is_finite() && c >= 0.0);
    for (u, n) in &pairs {
        assert!(gn_coupling_bound(u, n, c).holds() || (gn_coupling_bound(u, n, c).lhs - gn_coupling_bound(u, n, c).rhs) < 1e-14);
    }
    let z = SpectralField::zeros(g2pi());
    assert_eq!(gn_coupling_bound(&z, &pairs[0].1, 1.0).lhs, 0.0);
    assert_eq!(gn_coupling_bound(&pairs[0].0, &z, 1.0).lhs, 0.0);
}

#[test]
fn monitored_bounds_hold_on_smooth_run() {
    let s0 = to_first_order(&smooth_data(smooth_grid(), SmoothParams::default()).unwrap()).unwrap();
    let traj = evolve_splitting(&s0, 0.5, 512, 32).unwrap();
    let rows = monitor(&traj.states);
    assert_eq!(rows.len(), traj.states.len());
    assert!(rows.iter().all(|r| !r.violations.any()));
    assert!(rows.iter().all(|r| r.bounds.bound_ux_sq <= r.bounds.bound_wave_sq));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mass_matches_quadrature(re in prop::collection::vec(-1.0f64..1.0, 64), im in prop::collection::vec(-1.0f64..1.0, 64)) {
        let s: Vec<C64> = re.iter().zip(&im).map(|(a, b)| C64::new(*a, *b)).collect();
        let u = SpectralField::from_samples(g2pi(), &s).unwrap();
        let quad: f64 = s.iter().map(|c| c.norm_sqr()).sum::<f64>() * g2pi().dx();
        prop_assert!((mass(&u).powi(2) - quad).abs() <= 1e-10 * quad);
    }

    #[test]
    fn coupling_matches_mode_sum(seed in 0u64..1000) {
        let (u, n) = smooth_pair(seed, 0);
        let z = SpectralField::zeros(u.grid());
        let e = energy(&u, &n, &z).unwrap();
        // L Σ_j n̂_{−j} (|u|²)^_j by direct convolution of the coefficients
        let band = 6i64;
        let mut sum = C64::new(0.0, 0.0);
        for a in -band..=band {
            for b in -band..=band {
                let j = a - b;
                sum += n.coeff(-j) * u.coeff(a) * u.coeff(b).conj();
            }
        }
        let want = sum.re * u.grid().length();
        prop_assert!((e.coupling - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn ux_bound_below_wave_bound(e in -10.0f64..10.0, m in 0.0f64..3.0, c1 in 0.0f64..2.0) {
        let b = apriori_bounds(e, m, c1);
        if e + c1 * m.powi(6) >= 0.0 {
            prop_assert!(b.bound_ux_sq <= b.bound_wave_sq);
        }
    }
}

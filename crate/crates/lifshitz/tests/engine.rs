use lifshitz::diff::richardson;
use lifshitz::lowtemp::thermal_correction_low_t;
use lifshitz::matsubara::{
    free_energy, pressure, tau, temperature_for_tau, thermal_correction, Options, PlateConfig,
};
use lifshitz::models::{ArrheniusConductivity, DielectricModel, Oscillator};
use lifshitz::nernst::{free_energy_with_dc, DcStudyConfig};
use proptest::prelude::*;

fn constants(e1: f64, e2: f64, a: f64, t: f64) -> PlateConfig {
    PlateConfig::new(DielectricModel::constant(e1).unwrap(), DielectricModel::constant(e2).unwrap(), a, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pressure_is_minus_separation_derivative(
        e1 in 1.5f64..15.0, e2 in 1.5f64..15.0, a in 1e-7f64..2e-6, t in 1.0f64..400.0
    ) {
        let opts = Options::new(1e-13).unwrap();
        let cfg = constants(e1, e2, a, t);
        let p = pressure(&cfg, &opts).unwrap().value;
        let d = richardson(|a| Ok(free_energy(&cfg.at_separation(a)?, &opts)?.value), a, 0.01 * a, 3).unwrap();
        prop_assert!(((-d.value - p) / p).abs() < 1e-6);
    }

    #[test]
    fn attraction_grows_as_plates_approach(
        e1 in 1.5f64..15.0, e2 in 1.5f64..15.0, a in 1e-7f64..2e-6, t in 0.0f64..400.0
    ) {
        let opts = Options::default();
        let far = free_energy(&constants(e1, e2, a, t), &opts).unwrap().value;
        let near = free_energy(&constants(e1, e2, 0.9 * a, t), &opts).unwrap().value;
        prop_assert!(far < 0.0 && near < far);
    }

    #[test]
    fn swapping_plates_changes_nothing(
        e1 in 1.0f64..30.0, e2 in 1.0f64..30.0, a in 1e-7f64..2e-6, t in 1.0f64..400.0
    ) {
        let opts = Options::default();
        let cfg = constants(e1, e2, a, t);
        let f = free_energy(&cfg, &opts).unwrap().value;
        let g = free_energy(&cfg.swapped(), &opts).unwrap().value;
        prop_assert!((f - g).abs() <= 1e-12 * f.abs());
    }

    #[test]
    fn conductivity_lowers_the_free_energy(
        sigma in 1e6f64..1e14, b in 50.0f64..1000.0, t in 10.0f64..300.0
    ) {
        let base = constants(11.66, 3.84, 4e-7, 0.0);
        let c = ArrheniusConductivity::new(sigma, b).unwrap();
        let study = DcStudyConfig::new(base.clone(), c, c).unwrap();
        let opts = Options::new(1e-12).unwrap();
        let plain = free_energy(&base.at_temperature(t).unwrap(), &opts).unwrap().value;
        let with_dc = free_energy_with_dc(&study, t, &opts).unwrap().value;
        prop_assert!(with_dc <= plain);
    }
}

#[test]
fn high_resonance_oscillator_approaches_constant() {
    let opts = Options::new(1e-12).unwrap();
    let (a, t) = (5e-7, 300.0);
    let exact = free_energy(&constants(5.0, 3.0, a, t), &opts).unwrap().value;
    let mut prev = f64::INFINITY;
    for omega in [1e17, 1e18, 1e19, 1e20] {
        let osc = DielectricModel::oscillators(vec![Oscillator { strength: 4.0, omega }]).unwrap();
        let cfg = PlateConfig::new(osc, DielectricModel::constant(3.0).unwrap(), a, t).unwrap();
        let gap = ((free_energy(&cfg, &opts).unwrap().value - exact) / exact).abs();
        assert!(gap < prev, "gap {gap} did not shrink at omega = {omega}");
        prev = gap;
    }
    assert!(prev < 1e-5);
}

#[test]
fn parallel_sum_is_bit_identical() {
    let cfg = constants(11.66, 3.84, 3e-7, 300.0);
    let serial = Options::new(1e-13).unwrap();
    let parallel = serial.parallel(true);
    assert_eq!(free_energy(&cfg, &serial).unwrap().value, free_energy(&cfg, &parallel).unwrap().value);
    assert_eq!(pressure(&cfg, &serial).unwrap().value, pressure(&cfg, &parallel).unwrap().value);
}

#[test]
fn low_temperature_gap_closes_like_tau_squared() {
    // the asymptote drops O(τ⁵) in the bracket, so gap/τ² should settle
    let (e1, e2, a) = (11.66, 3.84, 4e-7);
    let opts = Options::new(1e-14).unwrap();
    let mut scaled = Vec::new();
    for tau_v in [0.005, 0.01, 0.02] {
        let t = temperature_for_tau(a, tau_v);
        let engine = thermal_correction(&constants(e1, e2, a, t), &opts).unwrap().value;
        let gap = (engine - thermal_correction_low_t(e1, e2, a, t).unwrap()) / engine;
        scaled.push(gap / (tau(a, t) * tau(a, t)));
    }
    assert!((scaled[0] / scaled[2] - 1.0).abs() < 0.1, "{scaled:?}");
}

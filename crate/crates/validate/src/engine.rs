use crate::{rel, Outcome, Part};
use lifshitz::diff::richardson;
use lifshitz::lowtemp::{free_energy_high_t, pressure_high_t};
use lifshitz::matsubara::{free_energy, pressure, pressure_correction, temperature_for_tau, thermal_correction, Options, PlateConfig};
use lifshitz::models::{DielectricModel, Oscillator};
use rayon::prelude::*;

fn constant(e: f64) -> lifshitz::Result<DielectricModel> {
    DielectricModel::constant(e)
}

pub(crate) fn thermodynamic_consistency() -> Outcome {
    let opts = Options::new(1e-13)?;
    let silicon_like = DielectricModel::oscillators(vec![Oscillator { strength: 10.66, omega: 6.6e15 }])?;
    let configs = [
        PlateConfig::new(constant(11.66)?, constant(3.84)?, 4e-7, 300.0)?,
        PlateConfig::new(constant(3.84)?, constant(3.84)?, 1e-6, 50.0)?,
        PlateConfig::new(constant(2.0)?, constant(5.0)?, 2e-7, 10.0)?,
        PlateConfig::new(silicon_like, constant(3.84)?, 5e-7, 300.0)?,
        PlateConfig::new(DielectricModel::dilute(1e-3)?, DielectricModel::dilute(2e-3)?, 1e-6, 100.0)?,
    ];
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for cfg in &configs {
        let p = pressure(cfg, &opts)?.value;
        let d = richardson(|a| Ok(free_energy(&cfg.at_separation(a)?, &opts)?.value), cfg.a, 0.01 * cfg.a, 3)?;
        let g = rel(-d.value, p);
        notes.push(format!("a = {:e} m, T = {} K: P = {p:.10e} Pa, -dF/da = {:.10e} Pa", cfg.a, cfg.t, -d.value));
        worst = worst.max(g);
    }
    Ok((vec![Part::at_most("max relative gap", worst, 1e-4)], notes))
}

pub(crate) fn high_temperature() -> Outcome {
    let opts = Options::new(1e-12)?;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (e1, e2, a) in [(11.66, 3.84, 1e-6), (3.84, 3.84, 2e-6)] {
        for tau in [8.0, 12.0] {
            let t = temperature_for_tau(a, tau);
            let cfg = PlateConfig::new(constant(e1)?, constant(e2)?, a, t)?;
            let gf = rel(free_energy(&cfg, &opts)?.value, free_energy_high_t(e1, e2, a, t)?);
            let gp = rel(pressure(&cfg, &opts)?.value, pressure_high_t(e1, e2, a, t)?);
            // the first neglected Matsubara term falls like τ²e^{−τ} in the pressure
            let scaled = gp * tau.exp() / (tau * tau);
            notes.push(format!("eps ({e1}, {e2}), tau {tau}: F gap {gf:.3e}, P gap {gp:.3e}, P gap e^tau/tau^2 {scaled:.3e}"));
            worst = worst.max(gf).max(gp);
        }
    }
    Ok((vec![Part::at_most("max relative gap", worst, 1e-3)], notes))
}

/// Number of steps where the sequence fails to increase strictly.
fn non_increasing_steps(v: &[f64]) -> usize {
    v.windows(2).filter(|w| !(w[1] > w[0])).count()
}

pub(crate) fn monotonicity() -> Outcome {
    let opts = Options::new(1e-12)?;
    let temps: Vec<f64> = (1..=30).map(|k| 10.0 * k as f64).collect();
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for (name, e1, e2, a) in [("Si/SiO2 400 nm", 11.66, 3.84, 4e-7), ("SiO2/SiO2 450 nm", 3.84, 3.84, 4.5e-7), ("Si/Si 300 nm", 11.66, 11.66, 3e-7)] {
        let base = PlateConfig::new(constant(e1)?, constant(e2)?, a, 0.0)?;
        let rows: Vec<(f64, f64)> = temps
            .par_iter()
            .map(|&t| {
                let cfg = base.at_temperature(t)?;
                Ok((thermal_correction(&cfg, &opts)?.value.abs(), pressure_correction(&cfg, &opts)?.value.abs()))
            })
            .collect::<lifshitz::Result<_>>()?;
        let (df, dp): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        let bad = non_increasing_steps(&df) + non_increasing_steps(&dp);
        notes.push(format!("{name}: |dF| {:.3e} -> {:.3e} J/m^2, |dP| {:.3e} -> {:.3e} Pa", df[0], df[29], dp[0], dp[29]));
        parts.push(Part::at_most(format!("{name} non-increasing steps"), bad as f64, 0.0));
    }
    Ok((parts, notes))
}

use crate::fit::least_squares;
use crate::{rel, Outcome, Part};
use lifshitz::constants::ZETA3;
use lifshitz::dilute::{f1, f2, free_energy_exact, DilutePair};
use lifshitz::lowtemp::c4_coefficient;
use lifshitz::matsubara::{free_energy, temperature_for_tau, Options, PlateConfig};
use lifshitz::models::DielectricModel;
use std::f64::consts::PI;
use std::time::Instant;

fn f1_series(t: f64) -> f64 {
    46.0 / (15.0 * t) + ZETA3 * t * t / (2.0 * PI * PI) - 7.0 * t.powi(3) / 360.0
}

fn f2_series(t: f64) -> f64 {
    338.0 / (105.0 * t) + ZETA3 * t * t / (4.0 * PI * PI) + t.powi(3) / 360.0
}

pub(crate) fn small_tau() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for t in [0.02, 0.05, 0.1] {
        let d1 = (f1(t)? - f1_series(t)).abs() / t.powi(4);
        let d2 = (f2(t)? - f2_series(t)).abs() / t.powi(4);
        notes.push(format!("tau {t}: |f1 - series|/tau^4 = {d1:.3e}, |f2 - series|/tau^4 = {d2:.3e}"));
        worst = worst.max(d1).max(d2);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((vec![Part::at_most("max |f - series|/tau^4", worst, 5.0), Part::at_most("runtime s", secs, 1.0)], notes))
}

pub(crate) fn high_tau() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..=40 {
        let t = 10.0 + 0.5 * k as f64;
        let bound = (-t / 2.0).exp();
        worst = worst.max((f1(t)? - 1.0).abs() / bound).max((f2(t)? - 1.0).abs() / bound);
    }
    Ok((vec![Part::at_most("max |f - 1| e^(tau/2)", worst, 1.0)], vec![]))
}

fn engine_gap(eps1: f64, eps2: f64, a: f64, tau: f64, opts: &Options) -> lifshitz::Result<f64> {
    let t = temperature_for_tau(a, tau);
    let cfg = PlateConfig::new(DielectricModel::constant(eps1)?, DielectricModel::constant(eps2)?, a, t)?;
    let engine = free_energy(&cfg, opts)?.value;
    let closed = free_energy_exact(DilutePair::new(eps1 - 1.0, eps2 - 1.0)?, a, t)?;
    Ok(rel(engine, closed))
}

pub(crate) fn engine_equivalence() -> Outcome {
    let start = Instant::now();
    let opts = Options::new(1e-12)?;
    let points = [(2e-7, 0.05), (5e-7, 0.2), (1e-6, 0.5), (1e-6, 1.0), (2e-6, 3.0), (5e-6, 10.0)];
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (a, tau) in points {
        let g = engine_gap(1.001, 1.002, a, tau, &opts)?;
        notes.push(format!("a = {a:e} m, tau = {tau}: relative gap {g:.3e}"));
        worst = worst.max(g);
    }
    let secs = start.elapsed().as_secs_f64();
    // the closed forms keep terms through second order in η; halving both η
    // should quarter the gap if what remains is the dropped quartic part
    let half = engine_gap(1.0005, 1.001, 1e-6, 1.0, &opts)?;
    let full = engine_gap(1.001, 1.002, 1e-6, 1.0, &opts)?;
    notes.push(format!("gap ratio under eta -> eta/2 at tau = 1: {:.4} (quadratic scaling gives 0.25)", half / full));
    Ok((vec![Part::at_most("max relative gap", worst, 1e-6), Part::at_most("runtime s", secs, 30.0)], notes))
}

/// τ³ coefficient of a dilute bracket function after removing its known
/// 1/τ and τ² terms, by a polynomial fit over moderate τ.
fn cubic_coefficient(f: fn(f64) -> lifshitz::Result<f64>, lead: f64, quad: f64) -> lifshitz::Result<f64> {
    let ts: Vec<f64> = (0..12).map(|k| 0.05 + 0.025 * k as f64).collect();
    let mut ys = Vec::with_capacity(ts.len());
    for &t in &ts {
        ys.push((f(t)? - lead / t - quad * t * t) / t.powi(3));
    }
    let basis: [&dyn Fn(f64) -> f64; 4] = [&|_| 1.0, &|t| t, &|t| t * t, &|t| t.powi(3)];
    Ok(least_squares(&ts, &ys, &basis)[0])
}

pub(crate) fn c4_reduction() -> Outcome {
    // oracle: τ⁴ terms of the dilute closed forms, C₄ = η₁η₂(−c₁ + h·c₂)/8 with h = (η₁+η₂)/2
    let c1 = cubic_coefficient(f1, 46.0 / 15.0, ZETA3 / (2.0 * PI * PI))?;
    let c2 = cubic_coefficient(f2, 338.0 / 105.0, ZETA3 / (4.0 * PI * PI))?;
    let lead_oracle = -c1 / 8.0;
    // along η = (λ, 2λ): C₄/(2λ²) = −c₁/8 + (3λ/2)·c₂/8
    let slope_oracle = 3.0 * c2 / 16.0;

    let lambdas: Vec<f64> = (1..=8).map(|k| 2e-3 * k as f64).collect();
    let mut ys = Vec::new();
    for &l in &lambdas {
        ys.push(c4_coefficient(1.0 + l, 1.0 + 2.0 * l)? / (2.0 * l * l));
    }
    let basis: [&dyn Fn(f64) -> f64; 3] = [&|_| 1.0, &|l| l, &|l| l * l];
    let c = least_squares(&lambdas, &ys, &basis);
    let notes = vec![
        format!("eta1*eta2 coefficient: fitted {:.10e}, dilute {:.10e}", c[0], lead_oracle),
        format!("cubic-in-eta slope: fitted {:.10e}, dilute {:.10e}", c[1], slope_oracle),
    ];
    Ok((
        vec![
            Part::at_most("eta1*eta2 term rel", rel(c[0], lead_oracle), 1e-3),
            Part::at_most("next order rel", rel(c[1], slope_oracle), 1e-3),
        ],
        notes,
    ))
}

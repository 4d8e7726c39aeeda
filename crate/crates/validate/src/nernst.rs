use crate::fit::{geomspace, least_squares, max_relative_residual};
use crate::oracles::entropy_tau2_coefficient;
use crate::{rel, Outcome, Part};
use lifshitz::diff::richardson;
use lifshitz::matsubara::{entropy, temperature_for_tau, Options, PlateConfig};
use lifshitz::models::{ArrheniusConductivity, DielectricModel};
use lifshitz::nernst::{entropy_residual_at_zero, entropy_with_dc, remainder_r, DcStudyConfig};

pub(crate) fn entropy_power_law() -> Outcome {
    let a = 1e-6;
    let opts = Options::new(1e-14)?;
    let taus = geomspace(0.005, 0.05, 7);
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for (e1, e2) in [(11.66, 3.84), (3.84, 3.84)] {
        let base = PlateConfig::new(DielectricModel::constant(e1)?, DielectricModel::constant(e2)?, a, 0.0)?;
        let mut s = Vec::new();
        for &tau in &taus {
            s.push(entropy(&base.at_temperature(temperature_for_tau(a, tau))?, &opts)?.value);
        }
        let ln_tau: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
        let ln_s: Vec<f64> = s.iter().map(|v| v.ln()).collect();
        let line: [&dyn Fn(f64) -> f64; 2] = [&|_| 1.0, &|x| x];
        let p = least_squares(&ln_tau, &ln_s, &line)[1];
        // S/τ² = A + Bτ: intercept is the τ² coefficient
        let ratio: Vec<f64> = s.iter().zip(&taus).map(|(s, t)| s / (t * t)).collect();
        let lead = least_squares(&taus, &ratio, &line)[0];
        let oracle = entropy_tau2_coefficient(e1, e2, a);
        notes.push(format!("eps ({e1}, {e2}): exponent {p:.5}, tau^2 coefficient {lead:.6e} vs {oracle:.6e} J/(m^2 K)"));
        parts.push(Part::at_most(format!("({e1}, {e2}) |p - 2|"), (p - 2.0).abs(), 0.1));
        parts.push(Part::at_most(format!("({e1}, {e2}) tau^2 coefficient rel"), rel(lead, oracle), 0.05));
    }
    Ok((parts, notes))
}

pub(crate) fn dc_violation() -> Outcome {
    let (e1, e2, a) = (11.66, 3.84, 4e-7);
    // activation energy b = 400 K, σ₀ ≈ 1e12 s⁻¹·e^{−b/T}
    let b = 400.0;
    let cond = ArrheniusConductivity::new(1e12, b)?;
    let base = PlateConfig::new(DielectricModel::constant(e1)?, DielectricModel::constant(e2)?, a, 0.0)?;
    let study = DcStudyConfig::new(base, cond, cond)?;
    let opts = Options::new(1e-12)?;
    let mut notes = Vec::new();

    // S̃(T) = S̃(0) + cT² + dT³ near zero
    let temps = [0.5, 0.75, 1.0, 1.5, 2.0, 3.0];
    let mut s = Vec::new();
    for &t in &temps {
        s.push(entropy_with_dc(&study, t, &opts)?.value);
    }
    let basis: [&dyn Fn(f64) -> f64; 3] = [&|_| 1.0, &|t| t * t, &|t| t.powi(3)];
    let s0 = least_squares(&temps, &s, &basis)[0];
    let residual = entropy_residual_at_zero(e1, e2, a)?;
    notes.push(format!("S(0) extrapolated {s0:.6e}, closed form {residual:.6e} J/(m^2 K)"));

    // R·e^{b/T} against c₀ + c₁ ln T on [b/20, b/5]
    let window = geomspace(b / 20.0, b / 5.0, 13);
    let mut scaled = Vec::new();
    let mut slope = Vec::new();
    for &t in &window {
        scaled.push(remainder_r(&study, t, &opts)?.total * (b / t).exp());
        let d = richardson(|t| Ok(remainder_r(&study, t, &opts)?.total), t, 1e-3 * t, 3)?;
        slope.push(d.value.abs().ln());
    }
    let log_line: [&dyn Fn(f64) -> f64; 2] = [&|_| 1.0, &|t: f64| t.ln()];
    let c = least_squares(&window, &scaled, &log_line);
    let log_residual = max_relative_residual(&window, &scaled, &log_line, &c);
    notes.push(format!(
        "R e^(b/T): {:.4e} at {} K to {:.4e} at {} K, log fit {:.4e} + {:.4e} ln T",
        scaled[0],
        window[0],
        scaled[12],
        window[12],
        c[0],
        c[1]
    ));

    // ln|∂R/∂T| = A − b′/T + k ln T
    let arrhenius: [&dyn Fn(f64) -> f64; 3] = [&|_| 1.0, &|t| -1.0 / t, &|t: f64| t.ln()];
    let fit = least_squares(&window, &slope, &arrhenius);
    notes.push(format!("fitted decay rate b' = {:.3} K (b = {b} K), power {:.3}", fit[1], fit[2]));

    Ok((
        vec![
            Part::at_most("S(0) rel", rel(s0, residual), 0.01),
            Part::at_most("R e^(b/T) deviation from log law", log_residual, 0.01),
            Part::at_most("decay rate rel", rel(fit[1], b), 0.1),
        ],
        notes,
    ))
}

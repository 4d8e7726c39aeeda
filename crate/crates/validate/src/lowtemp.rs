use crate::fit::{least_squares, max_relative_residual};
use crate::oracles::{bose_t3_integral, c4_direct, phi, phi_tm_excess, Polarization};
use crate::{rel, Outcome, Part};
use lifshitz::lowtemp::{c4_coefficient, c4_similar, phi_par_x3_coefficient, phi_perp_x3_coefficient, pressure_correction_low_t, thermal_correction_low_t};
use lifshitz::matsubara::{pressure_correction, thermal_correction, Options, PlateConfig};
use lifshitz::models::DielectricModel;
use lifshitz::specfunc::polylog;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

pub(crate) fn asymptote_gap() -> Outcome {
    let start = Instant::now();
    let (e1, e2, a) = (11.66, 3.84, 4e-7);
    let opts = Options::new(1e-14)?;
    let base = PlateConfig::new(DielectricModel::constant(e1)?, DielectricModel::constant(e2)?, a, 0.0)?;
    let (mut worst_f, mut worst_p): (f64, f64) = (0.0, 0.0);
    let mut notes = Vec::new();
    for t in [5.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0] {
        let cfg = base.at_temperature(t)?;
        let gf = rel(thermal_correction(&cfg, &opts)?.value, thermal_correction_low_t(e1, e2, a, t)?);
        worst_f = worst_f.max(gf);
        let mut line = format!("T = {t} K: dF gap {gf:.3e}");
        if t <= 50.0 {
            let gp = rel(pressure_correction(&cfg, &opts)?.value, pressure_correction_low_t(e1, e2, a, t)?);
            worst_p = worst_p.max(gp);
            line.push_str(&format!(", dP gap {gp:.3e}"));
        }
        notes.push(line);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        vec![
            Part::at_most("free energy gap, T <= 60 K", worst_f, 0.02),
            Part::at_most("pressure gap, T <= 50 K", worst_p, 0.02),
            Part::at_most("runtime s", secs, 120.0),
        ],
        notes,
    ))
}

pub(crate) fn similar_reduction() -> Outcome {
    let mut worst_sim: f64 = 0.0;
    let mut worst_seam: f64 = 0.0;
    let mut notes = Vec::new();
    for e0 in [2.0f64, 3.84, 11.66] {
        worst_sim = worst_sim.max(rel(c4_coefficient(e0, e0)?, c4_similar(e0)?));
        // √ε₀₁ − √ε₀₂ = 1e-5, compared with the term-by-term formula
        let e2 = (e0.sqrt() + 1e-5).powi(2);
        let general = c4_coefficient(e0, e2)?;
        let direct = c4_direct(e0, e2);
        worst_seam = worst_seam.max(rel(general, direct));
        notes.push(format!("eps0 {e0}: C4 {:.15e}, near seam {general:.15e} vs direct {direct:.15e}", c4_similar(e0)?));
    }
    Ok((
        vec![Part::at_most("similar-plate rel", worst_sim, 1e-10), Part::at_most("seam rel", worst_seam, 1e-8)],
        notes,
    ))
}

type Basis<'a> = [&'a dyn Fn(f64) -> f64];

const LOG_SERIES: [&dyn Fn(f64) -> f64; 9] = [
    &|_| 1.0,
    &|x| x,
    &|x: f64| x * x.ln(),
    &|x| x * x,
    &|x: f64| x * x * x.ln(),
    &|x| x.powi(3),
    &|x: f64| x.powi(3) * x.ln(),
    &|x| x.powi(4),
    &|x: f64| x.powi(4) * x.ln(),
];

/// x³ coefficient of Φ from quadrature on x ∈ [0.02, 0.1].
fn fitted_x3(e1: f64, e2: f64, pol: Polarization) -> (f64, f64) {
    let xs: Vec<f64> = (0..33).map(|k| 0.02 + 0.0025 * k as f64).collect();
    // known lower-order TM terms: 2Li₃(s) − c·s/(1−s)·x², c = Σ εₖ/(εₖ+1)
    let (r1, r2) = ((e1 - 1.0) / (e1 + 1.0), (e2 - 1.0) / (e2 + 1.0));
    let s = r1 * r2;
    let c = e1 / (e1 + 1.0) + e2 / (e2 + 1.0);
    let li3 = polylog(3, s).expect("polylog");
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let known = match pol {
                Polarization::Tm => 2.0 * li3 - c * s / (1.0 - s) * x * x,
                Polarization::Te => 0.0,
            };
            (phi(x, e1, e2, pol) - known) / x.powi(3)
        })
        .collect();
    let basis: &Basis = &LOG_SERIES;
    let coef = least_squares(&xs, &ys, basis);
    (coef[0], max_relative_residual(&xs, &ys, basis, &coef))
}

/// Same TM fit on x ∈ [1e-3, 1e-2], where the x√ε corrections are small.
fn fitted_x3_narrow(e1: f64, e2: f64) -> f64 {
    let xs = crate::fit::geomspace(1e-3, 1e-2, 25);
    let (r1, r2) = ((e1 - 1.0) / (e1 + 1.0), (e2 - 1.0) / (e2 + 1.0));
    let s = r1 * r2;
    let c = e1 / (e1 + 1.0) + e2 / (e2 + 1.0);
    let ys: Vec<f64> = xs.iter().map(|&x| (phi_tm_excess(x, e1, e2) + c * s / (1.0 - s) * x * x) / x.powi(3)).collect();
    least_squares(&xs, &ys, &LOG_SERIES[..7])[0]
}

pub(crate) fn phi_coefficients() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let bose = bose_t3_integral();
    let (mut worst_perp, mut worst_par, mut worst_c4): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut notes = Vec::new();
    for _ in 0..5 {
        let e1 = rng.gen_range(1.5..20.0);
        let e2 = rng.gen_range(1.5..20.0);
        let (perp_fit, perp_res) = fitted_x3(e1, e2, Polarization::Te);
        let (par_fit, par_res) = fitted_x3(e1, e2, Polarization::Tm);
        let perp = phi_perp_x3_coefficient(e1, e2)?;
        let par = phi_par_x3_coefficient(e1, e2)?;
        worst_perp = worst_perp.max(rel(perp_fit, perp));
        worst_par = worst_par.max(rel(par_fit, par));
        // ΔP integrand: Φ(ix) − Φ(−ix) = −2i·c₃x³, then ∫t³/(e^{2πt}−1) dt
        let assembled = 2.0 * (par + perp) * bose;
        worst_c4 = worst_c4.max(rel(assembled, c4_coefficient(e1, e2)?));
        notes.push(format!(
            "eps ({e1:.4}, {e2:.4}): TE fit {perp_fit:.8e} vs {perp:.8e}, TM fit {par_fit:.8e} vs {par:.8e}, fit residuals {perp_res:.1e}/{par_res:.1e}"
        ));
        let narrow = fitted_x3_narrow(e1, e2);
        notes.push(format!("    TM fit on x in [1e-3, 1e-2]: {narrow:.8e}, rel {:.1e}", rel(narrow, par)));
    }
    Ok((
        vec![
            Part::at_most("TE coefficient rel", worst_perp, 1e-3),
            Part::at_most("TM coefficient rel", worst_par, 1e-3),
            Part::at_most("assembled C4 rel", worst_c4, 1e-10),
        ],
        notes,
    ))
}

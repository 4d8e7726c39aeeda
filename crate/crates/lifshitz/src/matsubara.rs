//! The Lifshitz engine: free energy and pressure as Matsubara sums over
//! y-integrals, the T = 0 energy as a double integral, and the entropy by
//! differentiation in T.
//!
//! With τ = 4πk_B aT/(ħc) and ζ_l = τl,
//!
//! F = (ħcτ/32π²a³) Σ'_l g_F(ζ_l),  g_F(ζ) = ∫_ζ^∞ y [ln(1 − r∥r∥e^{−y}) + ln(1 − r⊥r⊥e^{−y})] dy
//!
//! P = −(ħcτ/32π²a⁴) Σ'_l g_P(ζ_l), g_P(ζ) = ∫_ζ^∞ y² [r∥r∥/(e^y − r∥r∥) + r⊥r⊥/(e^y − r⊥r⊥)] dy
//!
//! and E(a) = (ħc/32π²a³) ∫₀^∞ g_F(ζ) dζ.

use crate::constants::{C, HBAR, K_B};
use crate::diff::richardson;
use crate::error::{config, domain, Error, Result};
use crate::models::{DielectricModel, Permittivity};
use crate::quad::{integrate_breaks, QuadOptions};
use crate::specfunc::polylog;
use crate::sum::pairwise;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Smallest separation accepted (m).
pub const MIN_SEPARATION: f64 = 2e-9;
/// Temperatures in (0, MIN_TEMPERATURE) are rejected (K).
pub const MIN_TEMPERATURE: f64 = 1e-6;
const MAX_TERMS: usize = 10_000_000;

#[derive(Debug, Clone)]
pub struct PlateConfig {
    pub model1: DielectricModel,
    pub model2: DielectricModel,
    /// separation, m
    pub a: f64,
    /// temperature, K
    pub t: f64,
}

impl PlateConfig {
    pub fn new(model1: DielectricModel, model2: DielectricModel, a: f64, t: f64) -> Result<Self> {
        if !(a >= MIN_SEPARATION) || !a.is_finite() {
            return config(format!("separation must be >= 2 nm, got {a} m"));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return config(format!("temperature must be >= 0, got {t} K"));
        }
        Ok(PlateConfig { model1, model2, a, t })
    }

    pub fn at_temperature(&self, t: f64) -> Result<Self> {
        PlateConfig::new(self.model1.clone(), self.model2.clone(), self.a, t)
    }

    pub fn at_separation(&self, a: f64) -> Result<Self> {
        PlateConfig::new(self.model1.clone(), self.model2.clone(), a, self.t)
    }

    pub fn swapped(&self) -> Self {
        PlateConfig { model1: self.model2.clone(), model2: self.model1.clone(), a: self.a, t: self.t }
    }

    pub fn state(&self) -> DimensionlessState {
        DimensionlessState::new(self.a, self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessState {
    pub tau: f64,
    /// c/(2a), rad/s
    pub xi_c: f64,
}

impl DimensionlessState {
    pub fn new(a: f64, t: f64) -> Self {
        DimensionlessState { tau: tau(a, t), xi_c: C / (2.0 * a) }
    }

    pub fn zeta(&self, l: usize) -> f64 {
        self.tau * l as f64
    }

    /// ξ_l = ζ_l ξ_c = 2πk_B T l/ħ.
    pub fn xi(&self, l: usize) -> f64 {
        self.zeta(l) * self.xi_c
    }
}

/// τ = 4πk_B aT/(ħc).
pub fn tau(a: f64, t: f64) -> f64 {
    4.0 * PI * K_B * a * t / (HBAR * C)
}

/// Temperature at which τ takes the given value.
pub fn temperature_for_tau(a: f64, tau: f64) -> f64 {
    tau * HBAR * C / (4.0 * PI * K_B * a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: f64,
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { tol: 1e-10, parallel: false }
    }
}

impl Options {
    pub fn new(tol: f64) -> Result<Self> {
        if !(1e-15..=1e-2).contains(&tol) {
            return config(format!("tolerance must lie in [1e-15, 1e-2], got {tol}"));
        }
        Ok(Options { tol, parallel: false })
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

/// A computed quantity with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    /// highest Matsubara index summed (0 for T = 0 integrals)
    pub l_max: usize,
    /// relative error estimate
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalResult {
    /// J/m²
    pub free_energy_per_area: f64,
    /// Pa
    pub pressure: f64,
    /// J/(m²·K); absent at T = 0
    pub entropy_per_area: Option<f64>,
    pub l_max_used: usize,
    pub quadrature_error_estimate: f64,
}

// ε − 1, or None for the infinite marker
pub(crate) type Chi = Option<f64>;

pub(crate) fn chi_of(model: &DielectricModel, xi: f64) -> Result<Chi> {
    model.eval_susceptibility(xi)
}

fn check_args(chi: f64, zeta: f64, y: f64) -> Result<()> {
    if !(chi >= 0.0) {
        return domain(format!("permittivity below 1 (ε − 1 = {chi})"));
    }
    if !(zeta >= 0.0) || !(y >= zeta) {
        return domain(format!("reflection coefficients need y >= ζ >= 0, got ζ = {zeta}, y = {y}"));
    }
    Ok(())
}

/// TM coefficient r∥ = (εy − √(y² + ζ²(ε−1)))/(εy + √(y² + ζ²(ε−1))).
pub fn reflection_parallel(eps: Permittivity, zeta: f64, y: f64) -> Result<f64> {
    match eps {
        Permittivity::Infinite => {
            check_args(0.0, zeta, y)?;
            Ok(1.0)
        }
        Permittivity::Finite(e) => {
            check_args(e - 1.0, zeta, y)?;
            Ok(r_par(e - 1.0, zeta * zeta, y))
        }
    }
}

/// TE coefficient r⊥ = (√(y² + ζ²(ε−1)) − y)/(√(y² + ζ²(ε−1)) + y).
pub fn reflection_perp(eps: Permittivity, zeta: f64, y: f64) -> Result<f64> {
    match eps {
        Permittivity::Infinite => {
            check_args(0.0, zeta, y)?;
            Ok(if zeta == 0.0 { 0.0 } else { 1.0 })
        }
        Permittivity::Finite(e) => {
            check_args(e - 1.0, zeta, y)?;
            Ok(r_perp(e - 1.0, zeta * zeta, y))
        }
    }
}

// Rationalised forms, free of cancellation when ε → 1.
#[inline]
pub(crate) fn r_par(chi: f64, z2: f64, y: f64) -> f64 {
    let s = (y * y + z2 * chi).sqrt();
    let d = (1.0 + chi) * y + s;
    chi * ((chi + 2.0) * y * y - z2) / (d * d)
}

#[inline]
pub(crate) fn r_perp(chi: f64, z2: f64, y: f64) -> f64 {
    let s = (y * y + z2 * chi).sqrt();
    let d = s + y;
    z2 * chi / (d * d)
}

pub(crate) fn r_static(chi: Chi) -> f64 {
    match chi {
        None => 1.0,
        Some(c) => c / (c + 2.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Quantity {
    Energy,
    Pressure,
}

pub(crate) fn upper_cutoff(tol: f64) -> f64 {
    -(tol * 1e-2).ln() + 8.0
}

/// g_F(ζ) or g_P(ζ) for one pair of susceptibilities; returns (value, abs error).
pub(crate) fn y_integral(chi1: Chi, chi2: Chi, zeta: f64, q: Quantity, tol: f64) -> Result<(f64, f64)> {
    if zeta == 0.0 {
        let s = r_static(chi1) * r_static(chi2);
        let li3 = polylog(3, s)?;
        return Ok(match q {
            Quantity::Energy => (-li3, 0.0),
            Quantity::Pressure => (2.0 * li3, 0.0),
        });
    }
    let (c1, c2) = match (chi1, chi2) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InfinitePermittivity),
    };
    if c1 == 0.0 || c2 == 0.0 {
        return Ok((0.0, 0.0));
    }
    let z2 = zeta * zeta;
    let f = |u: f64| {
        let y = zeta + u;
        let e = (-y).exp();
        let xp = r_par(c1, z2, y) * r_par(c2, z2, y) * e;
        let xs = r_perp(c1, z2, y) * r_perp(c2, z2, y) * e;
        match q {
            Quantity::Energy => y * ((-xp).ln_1p() + (-xs).ln_1p()),
            Quantity::Pressure => y * y * (xp / (1.0 - xp) + xs / (1.0 - xs)),
        }
    };
    let upper = upper_cutoff(tol);
    let mut breaks = vec![0.0];
    let mut b = zeta;
    while b < 1.0 {
        breaks.push(b);
        b *= 4.0;
    }
    breaks.extend([1.0, 4.0, 12.0, upper]);
    let opts = QuadOptions::new((tol * 0.1).max(1e-16));
    let r = integrate_breaks(f, &breaks, &opts)?;
    Ok((r.value, r.abs_error))
}

fn matsubara_sum(cfg: &PlateConfig, q: Quantity, opts: &Options) -> Result<(f64, usize, f64)> {
    let st = cfg.state();
    if !(st.tau > 0.0) {
        return domain("Matsubara sum needs T > 0");
    }
    let term = |l: usize| -> Result<(f64, f64)> {
        let xi = st.xi(l);
        let c1 = chi_of(&cfg.model1, xi)?;
        let c2 = chi_of(&cfg.model2, xi)?;
        y_integral(c1, c2, st.zeta(l), q, opts.tol)
    };
    let (t0, _) = term(0)?;
    truncated_sum(st.tau, 0.5 * t0, opts, term)
}

/// first + Σ_{l≥1} term(l), stopped once three consecutive terms times the
/// geometric tail factor 1/(1 − e^{−τ}) fall below tol·|partial|.
/// Returns (sum, l_max, relative error estimate).
pub(crate) fn truncated_sum<F>(tau: f64, first: f64, opts: &Options, term: F) -> Result<(f64, usize, f64)>
where
    F: Fn(usize) -> Result<(f64, f64)> + Sync,
{
    let mut values = vec![first];
    let mut abs_err = 0.0;
    let mut partial = first;
    let tail_factor = 1.0 / (-(-tau).exp_m1());
    let block = if opts.parallel { 64 } else { 1 };
    let mut l = 1;
    let mut small_run = 0;
    'outer: loop {
        let hi = l + block;
        let chunk: Vec<Result<(f64, f64)>> = if opts.parallel {
            (l..hi).into_par_iter().map(&term).collect()
        } else {
            (l..hi).map(&term).collect()
        };
        for r in chunk {
            let (v, e) = r?;
            values.push(v);
            abs_err += e;
            partial += v;
            if v.abs() * tail_factor <= opts.tol * partial.abs() {
                small_run += 1;
                if small_run >= 3 {
                    break 'outer;
                }
            } else {
                small_run = 0;
            }
        }
        l = hi;
        if l > MAX_TERMS {
            return Err(Error::Convergence(format!(
                "Matsubara sum not converged after {MAX_TERMS} terms (tau = {tau:.3e})"
            )));
        }
    }
    let sum = pairwise(&values);
    let last = values[values.len() - 1];
    let rel = if sum != 0.0 { (abs_err + last.abs() * tail_factor) / sum.abs() } else { 0.0 };
    Ok((sum, values.len() - 1, rel))
}

fn reject_tiny_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t < MIN_TEMPERATURE {
        return domain(format!(
            "T = {t} K is below {MIN_TEMPERATURE} K; use the low-temperature asymptotic forms instead"
        ));
    }
    Ok(())
}

/// Free energy per unit area (J/m²); T = 0 is routed to [`energy_t0`].
pub fn free_energy(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    if cfg.t == 0.0 {
        return energy_t0(cfg, opts);
    }
    reject_tiny_temperature(cfg.t)?;
    let st = cfg.state();
    let (sum, l_max, rel) = matsubara_sum(cfg, Quantity::Energy, opts)?;
    let pref = HBAR * C * st.tau / (32.0 * PI * PI * cfg.a.powi(3));
    Ok(Estimate { value: pref * sum, l_max, error_estimate: rel })
}

/// Pressure (Pa); T = 0 is routed to [`pressure_t0`].
pub fn pressure(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    if cfg.t == 0.0 {
        return pressure_t0(cfg, opts);
    }
    reject_tiny_temperature(cfg.t)?;
    let st = cfg.state();
    let (sum, l_max, rel) = matsubara_sum(cfg, Quantity::Pressure, opts)?;
    let pref = HBAR * C * st.tau / (32.0 * PI * PI * cfg.a.powi(4));
    Ok(Estimate { value: -pref * sum, l_max, error_estimate: rel })
}

fn zeta_integral(cfg: &PlateConfig, q: Quantity, opts: &Options) -> Result<(f64, f64)> {
    if cfg.model1.is_dc_augmented() || cfg.model2.is_dc_augmented() {
        return config("zero-temperature energy is undefined for dc-conducting models");
    }
    let xi_c = C / (2.0 * cfg.a);
    let upper = upper_cutoff(opts.tol);
    let mut breaks: Vec<f64> = vec![0.0];
    breaks.extend((-8..=0).map(|k| 10f64.powi(k)));
    breaks.extend([2.0, 4.0, 8.0, 16.0, 32.0]);
    for w in cfg.model1.frequency_scales().into_iter().chain(cfg.model2.frequency_scales()) {
        for f in [0.1, 1.0, 10.0] {
            breaks.push(f * w / xi_c);
        }
    }
    breaks.retain(|&b| b >= 0.0 && b < upper);
    breaks.push(upper);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut failure = None;
    let g = |zeta: f64| -> f64 {
        let eval = || -> Result<f64> {
            let xi = zeta * xi_c;
            let c1 = chi_of(&cfg.model1, xi)?;
            let c2 = chi_of(&cfg.model2, xi)?;
            Ok(y_integral(c1, c2, zeta, q, opts.tol * 0.1)?.0)
        };
        match eval() {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let r = integrate_breaks(g, &breaks, &QuadOptions::new(opts.tol))?;
    if let Some(e) = failure {
        return Err(e);
    }
    let rel = if r.value != 0.0 { r.abs_error / r.value.abs() } else { 0.0 };
    Ok((r.value, rel))
}

/// Zero-temperature interaction energy E(a) (J/m²).
pub fn energy_t0(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    let (v, rel) = zeta_integral(cfg, Quantity::Energy, opts)?;
    Ok(Estimate { value: HBAR * C / (32.0 * PI * PI * cfg.a.powi(3)) * v, l_max: 0, error_estimate: rel })
}

/// Zero-temperature pressure P₀(a) (Pa).
pub fn pressure_t0(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    let (v, rel) = zeta_integral(cfg, Quantity::Pressure, opts)?;
    Ok(Estimate { value: -HBAR * C / (32.0 * PI * PI * cfg.a.powi(4)) * v, l_max: 0, error_estimate: rel })
}

/// ΔF = F − E(a).
pub fn thermal_correction(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    let f = free_energy(cfg, opts)?;
    let e = energy_t0(cfg, opts)?;
    Ok(difference(f, e))
}

/// ΔP = P − P₀(a).
pub fn pressure_correction(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    let p = pressure(cfg, opts)?;
    let p0 = pressure_t0(cfg, opts)?;
    Ok(difference(p, p0))
}

fn difference(x: Estimate, y: Estimate) -> Estimate {
    let value = x.value - y.value;
    let abs = x.error_estimate * x.value.abs() + y.error_estimate * y.value.abs();
    let rel = if value != 0.0 { abs / value.abs() } else { 0.0 };
    Estimate { value, l_max: x.l_max, error_estimate: rel }
}

/// Relative step used for the temperature derivative.
pub const ENTROPY_STEP: f64 = 1e-3;

/// S = −∂F/∂T by Richardson-extrapolated central differences (J/(m²·K)).
pub fn entropy(cfg: &PlateConfig, opts: &Options) -> Result<Estimate> {
    if !(cfg.t > 0.0) {
        return domain("entropy needs T > 0");
    }
    reject_tiny_temperature(cfg.t)?;
    let h = (ENTROPY_STEP * cfg.t).max(1e-3).min(0.25 * cfg.t);
    let f = |t: f64| -> Result<f64> { free_energy(&cfg.at_temperature(t)?, opts).map(|e| e.value) };
    let d = richardson(f, cfg.t, h, 3)?;
    let l_max = free_energy(&cfg.at_temperature(cfg.t - h)?, opts)?.l_max;
    let rel = if d.value != 0.0 { d.abs_error / d.value.abs() } else { 0.0 };
    Ok(Estimate { value: -d.value, l_max, error_estimate: rel })
}

/// F, P and S in one call; S is omitted at T = 0.
pub fn compute(cfg: &PlateConfig, opts: &Options) -> Result<ThermalResult> {
    let f = free_energy(cfg, opts)?;
    let p = pressure(cfg, opts)?;
    let s = if cfg.t > 0.0 { Some(entropy(cfg, opts)?) } else { None };
    let err = [Some(f.error_estimate), Some(p.error_estimate), s.map(|s| s.error_estimate)]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max);
    Ok(ThermalResult {
        free_energy_per_area: f.value,
        pressure: p.value,
        entropy_per_area: s.map(|s| s.value),
        l_max_used: f.l_max.max(p.l_max),
        quadrature_error_estimate: err,
    })
}

/// F₀ = −(k_BT/16πa²) Li3(r∥¹(0) r∥²(0)), the l = 0 contribution.
pub fn zero_frequency_term(cfg: &PlateConfig) -> Result<f64> {
    let r1 = r_static(chi_of(&cfg.model1, 0.0)?);
    let r2 = r_static(chi_of(&cfg.model2, 0.0)?);
    Ok(-K_B * cfg.t / (16.0 * PI * cfg.a * cfg.a) * polylog(3, r1 * r2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// E(a) ≈ −H/(12πa²)
    Short,
    /// E(a) ≈ −Ψ/a³
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitFit {
    /// H (J) or Ψ (J·m)
    pub coefficient: f64,
    /// max relative deviation of the per-point coefficients from their mean
    pub residual: f64,
}

/// Fit H or Ψ over one decade of separations starting at `cfg.a`.
pub fn limit_coefficient(cfg: &PlateConfig, regime: Regime, fit_tol: f64, opts: &Options) -> Result<LimitFit> {
    let mut coeffs = Vec::new();
    for k in 0..=4 {
        let a = cfg.a * 10f64.powf(k as f64 / 4.0);
        let e = energy_t0(&cfg.at_separation(a)?, opts)?.value;
        coeffs.push(match regime {
            Regime::Short => -12.0 * PI * a * a * e,
            Regime::Long => -a.powi(3) * e,
        });
    }
    let mean = coeffs.iter().sum::<f64>() / coeffs.len() as f64;
    let residual = if mean == 0.0 {
        0.0
    } else {
        coeffs.iter().map(|c| ((c - mean) / mean).abs()).fold(0.0, f64::max)
    };
    if residual > fit_tol {
        return Err(Error::Convergence(format!(
            "{regime:?}-separation law does not hold over this decade (residual {residual:.3e} > {fit_tol:.1e})"
        )));
    }
    Ok(LimitFit { coefficient: mean, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Oscillator;
    use approx::assert_relative_eq;

    fn constant(e: f64) -> DielectricModel {
        DielectricModel::constant(e).unwrap()
    }

    fn opts(tol: f64) -> Options {
        Options::new(tol).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let f = Permittivity::Finite;
        assert_eq!(reflection_parallel(f(1.0), 0.3, 0.7).unwrap(), 0.0);
        assert_eq!(reflection_perp(f(1.0), 0.3, 0.7).unwrap(), 0.0);
        assert_relative_eq!(reflection_parallel(f(3.84), 0.0, 1.0).unwrap(), 2.84 / 4.84, max_relative = 1e-15);
        assert_eq!(reflection_perp(f(3.84), 0.0, 1.0).unwrap(), 0.0);
        let s2 = 2f64.sqrt();
        assert_relative_eq!(reflection_perp(f(2.0), 1.5, 1.5).unwrap(), (s2 - 1.0) / (s2 + 1.0), max_relative = 1e-15);
        assert_relative_eq!(reflection_parallel(f(5.0), 1.0, 1e9).unwrap(), 4.0 / 6.0, max_relative = 1e-12);
        assert_eq!(reflection_parallel(Permittivity::Infinite, 0.0, 2.0).unwrap(), 1.0);
        assert_eq!(reflection_perp(Permittivity::Infinite, 0.0, 2.0).unwrap(), 0.0);
        assert!(reflection_parallel(f(2.0), 1.0, 0.5).is_err());
        assert!(reflection_perp(f(0.5), 0.0, 0.5).is_err());
    }

    #[test]
    fn reflection_matches_textbook_form() {
        for &(e, z, y) in &[(1.001f64, 0.2f64, 0.3f64), (11.66, 1.0, 1.2), (3.84, 0.01, 5.0)] {
            let s: f64 = (y * y + z * z * (e - 1.0)).sqrt();
            let par = (e * y - s) / (e * y + s);
            let perp = (s - y) / (s + y);
            let f = Permittivity::Finite(e);
            assert_relative_eq!(reflection_parallel(f, z, y).unwrap(), par, max_relative = 1e-9);
            assert_relative_eq!(reflection_perp(f, z, y).unwrap(), perp, max_relative = 1e-9);
        }
    }

    #[test]
    fn state_identity() {
        let st = DimensionlessState::new(400e-9, 300.0);
        let xi_l = 2.0 * PI * K_B * 300.0 * 7.0 / HBAR;
        assert_relative_eq!(st.xi(7), xi_l, max_relative = 1e-14);
        assert_relative_eq!(temperature_for_tau(400e-9, st.tau), 300.0, max_relative = 1e-14);
    }

    #[test]
    fn config_guards() {
        assert!(PlateConfig::new(constant(2.0), constant(2.0), 1e-9, 300.0).is_err());
        assert!(PlateConfig::new(constant(2.0), constant(2.0), 1e-7, -1.0).is_err());
        assert!(Options::new(1e-20).is_err());
        let cfg = PlateConfig::new(constant(2.0), constant(2.0), 1e-7, 1e-7).unwrap();
        assert!(free_energy(&cfg, &Options::default()).is_err());
    }

    #[test]
    fn vacuum_gives_zero() {
        let cfg = PlateConfig::new(DielectricModel::vacuum(), constant(3.84), 1e-7, 300.0).unwrap();
        let o = Options::default();
        assert_eq!(free_energy(&cfg, &o).unwrap().value, 0.0);
        assert_eq!(pressure(&cfg, &o).unwrap().value, 0.0);
        assert_eq!(energy_t0(&cfg, &o).unwrap().value, 0.0);
        assert_eq!(thermal_correction(&cfg, &o).unwrap().value, 0.0);
        assert_eq!(zero_frequency_term(&cfg).unwrap(), 0.0);
        assert_eq!(entropy(&cfg, &o).unwrap().value, 0.0);
    }

    #[test]
    fn zero_frequency_closed_form() {
        let cfg = PlateConfig::new(constant(11.66), constant(3.84), 4e-7, 300.0).unwrap();
        let pref = K_B * 300.0 / (16.0 * PI * 16e-14);
        let r = (10.66 / 12.66) * (2.84 / 4.84);
        assert_relative_eq!(zero_frequency_term(&cfg).unwrap(), -pref * polylog(3, r).unwrap(), max_relative = 1e-14);
        let dc = |e| DielectricModel::dc_augmented(constant(e), 1.0).unwrap();
        let cfg = PlateConfig::new(dc(11.66), dc(3.84), 4e-7, 300.0).unwrap();
        assert_relative_eq!(zero_frequency_term(&cfg).unwrap(), -pref * crate::constants::ZETA3, max_relative = 1e-14);
    }

    #[test]
    fn y_integral_matches_series_at_zero_frequency() {
        // at ζ = 0 only r∥ survives and ∫ y ln(1 − s e^{−y}) dy = −Li3(s)
        let (c1, c2) = (Some(10.66), Some(2.84));
        let (g, _) = y_integral(c1, c2, 0.0, Quantity::Energy, 1e-12).unwrap();
        let (g_small, _) = y_integral(c1, c2, 1e-9, Quantity::Energy, 1e-12).unwrap();
        assert_relative_eq!(g, g_small, max_relative = 1e-7);
        let (p, _) = y_integral(c1, c2, 0.0, Quantity::Pressure, 1e-12).unwrap();
        let (p_small, _) = y_integral(c1, c2, 1e-9, Quantity::Pressure, 1e-12).unwrap();
        assert_relative_eq!(p, p_small, max_relative = 1e-7);
    }

    #[test]
    fn swap_symmetry_and_sign() {
        let osc = DielectricModel::oscillators(vec![Oscillator { strength: 10.66, omega: 6e15 }]).unwrap();
        let cfg = PlateConfig::new(osc, constant(3.84), 2e-7, 120.0).unwrap();
        let o = opts(1e-11);
        let f = free_energy(&cfg, &o).unwrap();
        let g = free_energy(&cfg.swapped(), &o).unwrap();
        assert_relative_eq!(f.value, g.value, max_relative = 1e-12);
        assert!(f.value < 0.0 && pressure(&cfg, &o).unwrap().value < 0.0);
    }

    #[test]
    fn parallel_is_bit_identical() {
        let cfg = PlateConfig::new(constant(11.66), constant(3.84), 4e-7, 40.0).unwrap();
        let a = free_energy(&cfg, &opts(1e-12)).unwrap();
        let b = free_energy(&cfg, &opts(1e-12).parallel(true)).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.l_max, b.l_max);
    }

    #[test]
    fn truncation_is_sound() {
        let cfg = PlateConfig::new(constant(11.66), constant(3.84), 4e-7, 100.0).unwrap();
        let coarse = free_energy(&cfg, &opts(1e-8)).unwrap();
        let fine = free_energy(&cfg, &opts(1e-13)).unwrap();
        assert!(fine.l_max > coarse.l_max);
        assert_relative_eq!(coarse.value, fine.value, max_relative = 1e-8);
    }

    #[test]
    fn zero_temperature_routes_to_energy() {
        let cfg = PlateConfig::new(constant(11.66), constant(3.84), 4e-7, 0.0).unwrap();
        let o = Options::default();
        assert_eq!(free_energy(&cfg, &o).unwrap(), energy_t0(&cfg, &o).unwrap());
        let r = compute(&cfg, &o).unwrap();
        assert!(r.entropy_per_area.is_none());
        let dc = DielectricModel::dc_augmented(constant(3.84), 1.0).unwrap();
        let cfg = PlateConfig::new(dc, constant(3.84), 4e-7, 0.0).unwrap();
        assert!(energy_t0(&cfg, &o).is_err());
    }

    #[test]
    fn constant_model_energy_scales_as_inverse_cube() {
        let cfg = PlateConfig::new(constant(5.0), constant(5.0), 1e-7, 0.0).unwrap();
        let fit = limit_coefficient(&cfg, Regime::Long, 1e-9, &opts(1e-12)).unwrap();
        assert!(fit.coefficient > 0.0);
        assert!(limit_coefficient(&cfg, Regime::Short, 1e-3, &opts(1e-10)).is_err());
    }

    #[test]
    fn sum_approaches_integral_at_low_temperature() {
        let cfg = PlateConfig::new(constant(11.66), constant(3.84), 4e-7, 5.0).unwrap();
        let o = opts(1e-12);
        let f = free_energy(&cfg, &o).unwrap().value;
        let e = energy_t0(&cfg, &o).unwrap().value;
        assert!((f - e).abs() < 1e-5 * e.abs());
        assert!(f < e);
    }
}

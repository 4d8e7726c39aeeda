//! Plates whose permittivity carries a dc-conductivity term 4πσ₀/ξ.
//!
//! The term makes the zero-frequency TM reflection equal to 1 for any finite
//! σ₀ > 0, so F̃ − F keeps a piece linear in T,
//! −(k_BT/16πa²)[ζ(3) − Li₃(r₁r₂)], and the entropy tends to a positive
//! constant as T → 0. The l ≥ 1 terms contribute a remainder R that vanishes
//! like e^{−b/T} for an Arrhenius σ₀(T) = σ_ref·e^{−b/T}.

use crate::constants::{K_B, ZETA3};
use crate::diff::richardson;
use crate::error::{config, domain, Error, Result};
use crate::matsubara::{
    self, chi_of, r_par, r_perp, r_static, truncated_sum, upper_cutoff, Estimate, Options, PlateConfig,
    MIN_TEMPERATURE,
};
use crate::models::{conductivity_beta, ArrheniusConductivity, DielectricModel};
use crate::quad::{integrate_breaks, QuadOptions};
use crate::specfunc::polylog;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct DcStudyConfig {
    /// plates without conductivity; `base.t` is ignored
    pub base: PlateConfig,
    pub conductivity1: ArrheniusConductivity,
    pub conductivity2: ArrheniusConductivity,
}

impl DcStudyConfig {
    pub fn new(base: PlateConfig, conductivity1: ArrheniusConductivity, conductivity2: ArrheniusConductivity) -> Result<Self> {
        if base.model1.is_dc_augmented() || base.model2.is_dc_augmented() {
            return config("dc study base models must not already carry a conductivity");
        }
        Ok(DcStudyConfig { base, conductivity1, conductivity2 })
    }

    /// σ₀ for both plates at T. A positive σ_ref never yields exactly zero, so
    /// the zero-frequency marker survives when e^{−b/T} underflows.
    pub fn sigma0(&self, t: f64) -> (f64, f64) {
        let eval = |c: &ArrheniusConductivity| {
            let s = c.sigma0(t);
            if c.sigma_ref > 0.0 && t > 0.0 {
                s.max(f64::MIN_POSITIVE)
            } else {
                s
            }
        };
        (eval(&self.conductivity1), eval(&self.conductivity2))
    }

    /// (β₁, β₂) at T.
    pub fn beta(&self, t: f64) -> Result<(f64, f64)> {
        let (s1, s2) = self.sigma0(t);
        Ok((conductivity_beta(s1, t)?, conductivity_beta(s2, t)?))
    }

    pub fn plain(&self, t: f64) -> Result<PlateConfig> {
        self.base.at_temperature(t)
    }

    pub fn augmented(&self, t: f64) -> Result<PlateConfig> {
        let (s1, s2) = self.sigma0(t);
        PlateConfig::new(
            DielectricModel::dc_augmented(self.base.model1.clone(), s1)?,
            DielectricModel::dc_augmented(self.base.model2.clone(), s2)?,
            self.base.a,
            t,
        )
    }

    pub fn static_permittivities(&self) -> Result<(f64, f64)> {
        Ok((self.base.model1.static_permittivity()?, self.base.model2.static_permittivity()?))
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= MIN_TEMPERATURE) || !t.is_finite() {
        return domain(format!("dc study needs T >= {MIN_TEMPERATURE} K, got {t}"));
    }
    Ok(())
}

/// F̃: the engine free energy with both permittivities augmented by 4πσ₀(T)/ξ.
pub fn free_energy_with_dc(study: &DcStudyConfig, t: f64, opts: &Options) -> Result<Estimate> {
    check_t(t)?;
    matsubara::free_energy(&study.augmented(t)?, opts)
}

/// S̃ = −∂F̃/∂T, with σ₀ following its Arrhenius law through the difference.
pub fn entropy_with_dc(study: &DcStudyConfig, t: f64, opts: &Options) -> Result<Estimate> {
    check_t(t)?;
    let h = (matsubara::ENTROPY_STEP * t).max(1e-3).min(0.25 * t);
    let f = |t: f64| free_energy_with_dc(study, t, opts).map(|e| e.value);
    let d = richardson(f, t, h, 3)?;
    let rel = if d.value != 0.0 { d.abs_error / d.value.abs() } else { 0.0 };
    let l_max = free_energy_with_dc(study, t, opts)?.l_max;
    Ok(Estimate { value: -d.value, l_max, error_estimate: rel })
}

fn static_product(e1: f64, e2: f64) -> Result<f64> {
    for e in [e1, e2] {
        if !(e >= 1.0) || !e.is_finite() {
            return domain(format!("static permittivity must be finite and >= 1, got {e}"));
        }
    }
    Ok(r_static(Some(e1 - 1.0)) * r_static(Some(e2 - 1.0)))
}

/// lim_{T→0} S̃ = (k_B/16πa²)[ζ(3) − Li₃(r₁r₂)] with r_k = (ε₀ₖ−1)/(ε₀ₖ+1).
pub fn entropy_residual_at_zero(e1: f64, e2: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return domain(format!("separation must be > 0, got {a}"));
    }
    let li = polylog(3, static_product(e1, e2)?)?;
    Ok(K_B / (16.0 * PI * a * a) * (ZETA3 - li))
}

/// Change of the l = 0 term when r∥(0) jumps to 1: −(k_BT/16πa²)[ζ(3) − Li₃(r₁r₂)].
pub fn zero_frequency_shift(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    Ok(-t * entropy_residual_at_zero(e1, e2, a)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Remainder {
    /// first order in β₁
    pub r1: f64,
    /// first order in β₂
    pub r2: f64,
    pub total: f64,
    /// rough size of the dropped O(β²) terms: |total|·max(β)/min(ε(iξ₁))
    pub second_order_estimate: f64,
    pub l_max: usize,
    /// β underflowed to zero at this temperature; the returned remainder is exactly 0
    pub underflow: bool,
}

// y-integrand of the first-order change of the l-th term per unit δε₁.
// From ∂r∥/∂ε = y(2y² − (2−ε)ζ²)/(s(εy+s)²) and ∂r⊥/∂ε = yζ²/(s(s+y)²).
fn first_order_integral(chi1: f64, chi2: f64, zeta: f64, tol: f64) -> Result<(f64, f64)> {
    let z2 = zeta * zeta;
    let e1 = 1.0 + chi1;
    let f = |u: f64| {
        let y = zeta + u;
        let ey = (-y).exp();
        let s = (y * y + z2 * chi1).sqrt();
        let rp2 = r_par(chi2, z2, y);
        let rs2 = r_perp(chi2, z2, y);
        let xp = r_par(chi1, z2, y) * rp2 * ey;
        let xs = r_perp(chi1, z2, y) * rs2 * ey;
        let d = e1 * y + s;
        let tm = ((2.0 - e1) * z2 - 2.0 * y * y) / (d * d) * rp2 / (1.0 - xp);
        let te = z2 / ((s + y) * (s + y)) * rs2 / (1.0 - xs);
        y * y * ey / s * (tm - te)
    };
    let upper = upper_cutoff(tol);
    let mut breaks = vec![0.0];
    let mut b = zeta;
    while b < 1.0 {
        breaks.push(b);
        b *= 4.0;
    }
    breaks.extend([1.0, 4.0, 12.0, upper]);
    let r = integrate_breaks(f, &breaks, &QuadOptions::new((tol * 0.1).max(1e-16)))?;
    Ok((r.value, r.abs_error))
}

/// R to first order in β/l by direct summation and quadrature.
pub fn remainder_r(study: &DcStudyConfig, t: f64, opts: &Options) -> Result<Remainder> {
    check_t(t)?;
    let (b1, b2) = study.beta(t)?;
    let underflow = (b1 == 0.0 && study.conductivity1.sigma_ref > 0.0) || (b2 == 0.0 && study.conductivity2.sigma_ref > 0.0);
    if b1 == 0.0 && b2 == 0.0 {
        return Ok(Remainder { r1: 0.0, r2: 0.0, total: 0.0, second_order_estimate: 0.0, l_max: 0, underflow });
    }
    let cfg = study.plain(t)?;
    let st = cfg.state();
    let pref = K_B * t / (8.0 * PI * cfg.a * cfg.a);
    let one_side = |beta: f64, first: &DielectricModel, second: &DielectricModel| -> Result<(f64, usize)> {
        if beta == 0.0 {
            return Ok((0.0, 0));
        }
        let term = |l: usize| -> Result<(f64, f64)> {
            let xi = st.xi(l);
            let c1 = chi_of(first, xi)?.ok_or(Error::InfinitePermittivity)?;
            let c2 = chi_of(second, xi)?.ok_or(Error::InfinitePermittivity)?;
            let (v, e) = first_order_integral(c1, c2, st.zeta(l), opts.tol)?;
            let w = beta / l as f64;
            Ok((w * v, w * e))
        };
        let (sum, l_max, _) = truncated_sum(st.tau, 0.0, opts, term)?;
        Ok((pref * sum, l_max))
    };
    let (r1, l1) = one_side(b1, &cfg.model1, &cfg.model2)?;
    let (r2, l2) = one_side(b2, &cfg.model2, &cfg.model1)?;
    let total = r1 + r2;
    let xi1 = st.xi(1);
    let eps_min = [&cfg.model1, &cfg.model2]
        .iter()
        .map(|m| chi_of(m, xi1).map(|c| 1.0 + c.unwrap_or(f64::INFINITY)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(Remainder {
        r1,
        r2,
        total,
        second_order_estimate: total.abs() * b1.max(b2) / eps_min,
        l_max: l1.max(l2),
        underflow,
    })
}

fn check_geometry(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) || !(t > 0.0) {
        return domain(format!("need a > 0 and T > 0, got a = {a}, T = {t}"));
    }
    Ok(matsubara::tau(a, t))
}

/// R⁽¹⁾ with the integrand frozen at τ = 0, summed over l in closed form:
/// −(k_BTβ₁r₂/(4πa²(ε₀₁+1)²)) Σ_n (r₁r₂)^{n−1}/n² [−ln(1 − e^{−nτ}) + nτ/(e^{nτ} − 1)].
pub fn remainder_static_sum(e1: f64, e2: f64, a: f64, t: f64, beta1: f64) -> Result<f64> {
    let tau = check_geometry(a, t)?;
    let x = static_product(e1, e2)?;
    let r2 = r_static(Some(e2 - 1.0));
    let mut sum = 0.0;
    let mut pow = 1.0;
    for n in 1..10_000 {
        let nt = n as f64 * tau;
        let bracket = -(-(-nt).exp_m1()).ln() + nt / nt.exp_m1();
        let term = pow / (n * n) as f64 * bracket;
        sum += term;
        pow *= x;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(-K_B * t * beta1 * r2 / (4.0 * PI * a * a * (e1 + 1.0).powi(2)) * sum)
}

/// Leading small-τ law: R⁽¹⁾ ≈ k_B Li₂(r₁r₂) Tβ₁ ln τ/(4πa²(ε₀₁² − 1)).
pub fn remainder_leading(e1: f64, e2: f64, a: f64, t: f64, beta1: f64) -> Result<f64> {
    let tau = check_geometry(a, t)?;
    let x = static_product(e1, e2)?;
    let r2 = r_static(Some(e2 - 1.0));
    // Li₂(x)/(ε₀₁² − 1) = r₂·(Li₂(x)/x)/(ε₀₁+1)², finite at ε₀₁ = 1
    let li_over_x = if x == 0.0 { 1.0 } else { polylog(2, x)? / x };
    Ok(K_B * r2 * li_over_x / (4.0 * PI * a * a * (e1 + 1.0).powi(2)) * t * beta1 * tau.ln())
}

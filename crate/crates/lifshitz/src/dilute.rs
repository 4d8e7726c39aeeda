//! Dilute plates, ε = 1 + η with η ≪ 1: free energy and pressure exact in τ
//! to third order in η, with their small-τ and large-τ forms.
//!
//! F = −(ħcτη₁η₂/256π²a³)[f1(τ) − (η₁+η₂)/2·f2(τ)] and likewise P with p1, p2
//! and a⁴. f_k = Σ'_l I_k(τl), and p_k = 2f_k − τf_k'.
//!
//! The closed forms are written in q = e^{−τ} and m = 1 − q so that nothing
//! overflows at large τ.

use crate::constants::{C, HBAR, K_B, ZETA3};
use crate::error::{config, domain, Result};
use crate::matsubara::tau;
use crate::specfunc::exp_integral_ei;
use crate::sum::pairwise;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Largest η accepted; past this the dropped fourth-order terms exceed 1e-3.
pub const MAX_ETA: f64 = 0.1;
/// Below this τ the closed forms are replaced by their τ³-truncated expansions.
pub const SMALL_TAU: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilutePair {
    pub eta1: f64,
    pub eta2: f64,
}

impl DilutePair {
    pub fn new(eta1: f64, eta2: f64) -> Result<Self> {
        for eta in [eta1, eta2] {
            if !(0.0..=MAX_ETA).contains(&eta) {
                return config(format!("dilute eta must lie in [0, {MAX_ETA}], got {eta}"));
            }
        }
        Ok(DilutePair { eta1, eta2 })
    }

    fn product(&self) -> f64 {
        self.eta1 * self.eta2
    }

    fn half_sum(&self) -> f64 {
        0.5 * (self.eta1 + self.eta2)
    }
}

fn check_zeta(zeta: f64) -> Result<()> {
    if !(zeta >= 0.0) {
        return domain(format!("zeta must be >= 0, got {zeta}"));
    }
    Ok(())
}

fn check_tau(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("tau must be > 0, got {t}"));
    }
    Ok(())
}

/// I1(ζ) = ∫_ζ^∞ e^{−y}(2y⁴ − 2ζ²y² + ζ⁴)/y³ dy.
pub fn i1(zeta: f64) -> Result<f64> {
    check_zeta(zeta)?;
    if zeta == 0.0 {
        return Ok(2.0);
    }
    let z = zeta;
    let z2 = z * z;
    Ok((-z).exp() * (2.0 + 2.0 * z + z2 / 2.0 - z2 * z / 2.0) + z2 * (2.0 - z2 / 2.0) * exp_integral_ei(-z)?)
}

/// I2(ζ) = ∫_ζ^∞ e^{−y}(2y⁶ − ζ²y⁴ − ζ⁴y² + ζ⁶)/y⁵ dy.
pub fn i2(zeta: f64) -> Result<f64> {
    check_zeta(zeta)?;
    if zeta == 0.0 {
        return Ok(2.0);
    }
    let z = zeta;
    let z2 = z * z;
    let poly = 2.0 + 2.0 * z - z2 / 4.0 + 5.0 * z2 * z / 12.0 + z2 * z2 / 24.0 - z2 * z2 * z / 24.0;
    Ok((-z).exp() * poly + z2 * (1.0 + z2 / 2.0 - z2 * z2 / 24.0) * exp_integral_ei(-z)?)
}

// Σ_{l≥1} w(τl, l)·Ei(−τl), stopped once terms are negligible and past the sign changes of w.
fn ei_sum(t: f64, w: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let mut terms = Vec::new();
    let mut partial = 0.0f64;
    let mut l = 1usize;
    loop {
        let lf = l as f64;
        let x = t * lf;
        let term = w(x, lf) * exp_integral_ei(-x)?;
        terms.push(term);
        partial += term;
        if x > 10.0 && term.abs() < 1e-16 * partial.abs() || term == 0.0 && x > 10.0 {
            break;
        }
        l += 1;
    }
    Ok(pairwise(&terms))
}

struct Q {
    q: f64,
    m: f64,
}

impl Q {
    fn new(t: f64) -> Self {
        Q { q: (-t).exp(), m: -(-t).exp_m1() }
    }

    // ((1+τ)e^τ − 1)/(e^τ − 1)²
    fn base(&self, t: f64) -> f64 {
        self.q * (1.0 + t - self.q) / (self.m * self.m)
    }

    // e^τ[(τ−1)e^{4τ} + 2(13τ−5)e^{3τ} + 66τe^{2τ} + 2(13τ+5)e^τ + τ + 1]/(e^τ−1)⁶
    fn sixth(&self, t: f64) -> f64 {
        let q = self.q;
        let poly = q * ((t - 1.0) + q * (2.0 * (13.0 * t - 5.0) + q * (66.0 * t + q * (2.0 * (13.0 * t + 5.0) + q * (t + 1.0)))));
        poly / self.m.powi(6)
    }
}

/// f1(τ) = Σ'_l I1(τl).
pub fn f1(t: f64) -> Result<f64> {
    check_tau(t)?;
    if t < SMALL_TAU {
        return Ok(46.0 / (15.0 * t) + ZETA3 * t * t / (2.0 * PI * PI) - 7.0 * t.powi(3) / 360.0);
    }
    let e = Q::new(t);
    let q = e.q;
    let fourth = t * t * q * ((1.0 - t) - 4.0 * t * q - (t + 1.0) * q * q) / (2.0 * e.m.powi(4));
    let s = ei_sum(t, |x, _| x * x * (2.0 - x * x / 2.0))?;
    Ok(1.0 + 2.0 * e.base(t) + fourth + s)
}

/// f2(τ) = Σ'_l I2(τl).
pub fn f2(t: f64) -> Result<f64> {
    check_tau(t)?;
    if t < SMALL_TAU {
        return Ok(338.0 / (105.0 * t) + ZETA3 * t * t / (4.0 * PI * PI) + t.powi(3) / 360.0);
    }
    let e = Q::new(t);
    let q = e.q;
    let fourth = t * t * q * ((5.0 * t - 3.0) + 20.0 * t * q + (5.0 * t + 3.0) * q * q) / (12.0 * e.m.powi(4));
    let s = ei_sum(t, |x, _| x * x * (1.0 + x * x / 2.0 - x.powi(4) / 24.0))?;
    Ok(1.0 + 2.0 * e.base(t) + fourth - t.powi(4) * e.sixth(t) / 24.0 + s)
}

/// p1(τ) = 2f1 − τf1'.
pub fn p1(t: f64) -> Result<f64> {
    check_tau(t)?;
    if t < SMALL_TAU {
        return Ok(46.0 / (5.0 * t) + 7.0 * t.powi(3) / 360.0);
    }
    let e = Q::new(t);
    let q = e.q;
    let fourth = t.powi(3) * q * (1.0 + 4.0 * q + q * q) / e.m.powi(4);
    let s = ei_sum(t, |_, l| l.powi(4))?;
    Ok(2.0 + 4.0 * e.base(t) + fourth + t.powi(4) * s)
}

/// p2(τ) = 2f2 − τf2'.
pub fn p2(t: f64) -> Result<f64> {
    check_tau(t)?;
    if t < SMALL_TAU {
        return Ok(338.0 / (35.0 * t) - t.powi(3) / 360.0);
    }
    let e = Q::new(t);
    let q = e.q;
    let fourth = t * t * q * ((2.0 * t - 3.0) + 8.0 * t * q + (2.0 * t + 3.0) * q * q) / (3.0 * e.m.powi(4));
    let s = ei_sum(t, |x, l| l.powi(4) * (1.0 - x * x / 6.0))?;
    Ok(2.0 + 4.0 * e.base(t) - fourth + t.powi(4) * e.sixth(t) / 6.0 - t.powi(4) * s)
}

fn check_geometry(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) || !(t > 0.0) {
        return domain(format!("need a > 0 and T > 0, got a = {a}, T = {t}"));
    }
    Ok(tau(a, t))
}

/// Free energy per unit area (J/m²), exact in τ.
pub fn free_energy_exact(pair: DilutePair, a: f64, t: f64) -> Result<f64> {
    let tau = check_geometry(a, t)?;
    if pair.product() == 0.0 {
        return Ok(0.0);
    }
    let pref = HBAR * C * tau * pair.product() / (256.0 * PI * PI * a.powi(3));
    Ok(-pref * (f1(tau)? - pair.half_sum() * f2(tau)?))
}

/// Pressure (Pa), exact in τ.
pub fn pressure_exact(pair: DilutePair, a: f64, t: f64) -> Result<f64> {
    let tau = check_geometry(a, t)?;
    if pair.product() == 0.0 {
        return Ok(0.0);
    }
    let pref = HBAR * C * tau * pair.product() / (256.0 * PI * PI * a.powi(4));
    Ok(-pref * (p1(tau)? - pair.half_sum() * p2(tau)?))
}

/// τ⁰ coefficient of the bracket: E(a) = −(ħcη₁η₂/256π²a³)·this.
pub fn energy_t0_bracket(pair: DilutePair) -> f64 {
    46.0 / 15.0 - pair.half_sum() * 338.0 / 105.0
}

/// E(a) for dilute plates.
pub fn energy_t0(pair: DilutePair, a: f64) -> f64 {
    -HBAR * C * pair.product() / (256.0 * PI * PI * a.powi(3)) * energy_t0_bracket(pair)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowTemperature {
    pub free_energy: f64,
    pub pressure: f64,
    pub entropy: f64,
}

/// Small-τ forms through τ⁴ (free energy, pressure) and τ³ (entropy).
pub fn asymptotics_low_t(pair: DilutePair, a: f64, t: f64) -> Result<LowTemperature> {
    if !(a > 0.0) || !(t >= 0.0) {
        return domain(format!("need a > 0 and T >= 0, got a = {a}, T = {t}"));
    }
    let tau = tau(a, t);
    if tau >= 0.5 {
        return domain(format!("low-temperature forms need tau < 0.5, got {tau}"));
    }
    let (p, h) = (pair.product(), pair.half_sum());
    let pi2 = PI * PI;
    let t3 = tau.powi(3);
    let t4 = tau.powi(4);
    let k = HBAR * C * p / (256.0 * pi2);
    let f_bracket = 46.0 / 15.0 + ZETA3 * t3 / (2.0 * pi2) - 7.0 * t4 / 360.0
        - h * (338.0 / 105.0 + ZETA3 * t3 / (4.0 * pi2) + t4 / 360.0);
    let p_bracket = 46.0 / 5.0 + 7.0 * t4 / 360.0 - h * (338.0 / 35.0 - t4 / 360.0);
    let s_pref = 3.0 * K_B * ZETA3 * p * tau * tau / (128.0 * PI.powi(3) * a * a);
    let s_bracket = 1.0 - 0.5 * h - (1.0 + h / 7.0) * 7.0 * pi2 * tau / (135.0 * ZETA3);
    Ok(LowTemperature {
        free_energy: -k / a.powi(3) * f_bracket,
        pressure: -k / a.powi(4) * p_bracket,
        entropy: s_pref * s_bracket,
    })
}

/// Large-τ limits (free energy, pressure): only the l = 0 term survives.
pub fn asymptotics_high_t(pair: DilutePair, a: f64, t: f64) -> Result<(f64, f64)> {
    check_geometry(a, t)?;
    let g = pair.product() * (1.0 - pair.half_sum());
    Ok((-K_B * t * g / (64.0 * PI * a * a), -K_B * t * g / (32.0 * PI * a.powi(3))))
}

//! Low-temperature expansion for plates with finite static permittivities,
//! the ideal-metal comparison, and the high-temperature polylog limits.
//!
//! ΔF = −(ħc/32π²a³)[c₃τ³ − C₄τ⁴ + O(τ⁵)] and ΔP = −(ħc/32π²a⁴)[C₄τ⁴ + O(τ⁵)],
//! where only ε₀₁ and ε₀₂ enter c₃ and C₄.

use crate::constants::{C, HBAR, K_B, ZETA3};
use crate::error::{domain, Result};
use crate::matsubara::tau;
use crate::specfunc::{artanh_over_z, polylog};
use serde::Serialize;
use std::f64::consts::PI;

/// Largest τ accepted by the low-temperature forms.
pub const MAX_LOW_TAU: f64 = 0.5;
/// Smallest τ accepted by the high-temperature forms.
pub const MIN_HIGH_TAU: f64 = 5.0;

fn check_eps(e1: f64, e2: f64) -> Result<()> {
    for e in [e1, e2] {
        if !(e >= 1.0) || !e.is_finite() {
            return domain(format!("static permittivity must be finite and >= 1, got {e}"));
        }
    }
    Ok(())
}

/// (ε₀₁+ε₀₂+2ε₀₁ε₀₂)(ε₀₁−1)(ε₀₂−1)/[(ε₀₁+1)(ε₀₂+1)(ε₀₁+ε₀₂)]
pub fn tau3_bracket(e1: f64, e2: f64) -> Result<f64> {
    check_eps(e1, e2)?;
    Ok((e1 + e2 + 2.0 * e1 * e2) * (e1 - 1.0) * (e2 - 1.0) / ((e1 + 1.0) * (e2 + 1.0) * (e1 + e2)))
}

/// Coefficient of τ³ inside the free-energy bracket: ζ(3)·B/(8π²).
pub fn tau3_coefficient(e1: f64, e2: f64) -> Result<f64> {
    Ok(ZETA3 * tau3_bracket(e1, e2)? / (8.0 * PI * PI))
}

/// TE part: 6× the x³ coefficient of Φ⊥.
fn k_perp(e1: f64, e2: f64) -> f64 {
    let (p, q) = (e1.sqrt(), e2.sqrt());
    1.0 - (e1 + e2 + p * q - e1 * e2) / (p + q)
}

/// TM part: 6× the x³ coefficient of Φ∥.
fn k_par(e1: f64, e2: f64) -> Result<f64> {
    let (p, q) = (e1.sqrt(), e2.sqrt());
    let s = e1 + e2;
    let g = p * q;
    let pr = e1 * e2;
    let d = p - q;
    // Artanh(z)/((√ε₀₁−√ε₀₂)√S) rewritten as artanh(z)/z / (g − S): finite at ε₀₁ = ε₀₂
    let z = s.sqrt() * d / (g - s);
    if !(z.abs() < 1.0) {
        return domain(format!("Artanh argument {z} outside (-1, 1)"));
    }
    let x = -s.powi(3) + pr * g * (5.0 * pr - 3.0 * s + 1.0) + g * d * d * (pr * g - g - s)
        - 3.0 * pr * pr * (e1 - 1.0) * (e2 - 1.0) * artanh_over_z(z) / (g - s);
    Ok(1.0 + x / ((p + q) * s * s))
}

/// x³ coefficient of Φ⊥(x) at small x.
pub fn phi_perp_x3_coefficient(e1: f64, e2: f64) -> Result<f64> {
    check_eps(e1, e2)?;
    Ok(k_perp(e1, e2) / 6.0)
}

/// x³ coefficient of Φ∥(x) at small x.
pub fn phi_par_x3_coefficient(e1: f64, e2: f64) -> Result<f64> {
    check_eps(e1, e2)?;
    Ok(k_par(e1, e2)? / 6.0)
}

/// C₄, the universal τ⁴ coefficient.
pub fn c4_coefficient(e1: f64, e2: f64) -> Result<f64> {
    check_eps(e1, e2)?;
    Ok((k_par(e1, e2)? + k_perp(e1, e2)) / 720.0)
}

/// C₄ for two plates of the same material.
pub fn c4_similar(e0: f64) -> Result<f64> {
    check_eps(e0, e0)?;
    let s = e0.sqrt();
    Ok((s - 1.0) * (e0 * e0 + e0 * s - 2.0) / 720.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticCoefficients {
    pub eps01: f64,
    pub eps02: f64,
    pub c4: f64,
    pub tau3_coeff: f64,
    /// E(a) in J/m², supplied by the caller
    pub energy_t0: f64,
}

impl AsymptoticCoefficients {
    pub fn new(eps01: f64, eps02: f64, energy_t0: f64) -> Result<Self> {
        Ok(AsymptoticCoefficients {
            eps01,
            eps02,
            c4: c4_coefficient(eps01, eps02)?,
            tau3_coeff: tau3_coefficient(eps01, eps02)?,
            energy_t0,
        })
    }

    /// α = 240·C₄
    pub fn alpha(&self) -> f64 {
        240.0 * self.c4
    }
}

fn low_tau(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) || !(t >= 0.0) {
        return domain(format!("need a > 0 and T >= 0, got a = {a}, T = {t}"));
    }
    let tau = tau(a, t);
    if tau >= MAX_LOW_TAU {
        return domain(format!("low-temperature forms need tau < {MAX_LOW_TAU}, got {tau:.4}"));
    }
    Ok(tau)
}

/// ΔF through τ⁴ (J/m²).
pub fn thermal_correction_low_t(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    let tau = low_tau(a, t)?;
    let bracket = tau3_coefficient(e1, e2)? * tau.powi(3) - c4_coefficient(e1, e2)? * tau.powi(4);
    Ok(-HBAR * C / (32.0 * PI * PI * a.powi(3)) * bracket)
}

/// E(a) + ΔF (J/m²).
pub fn free_energy_low_t(energy_t0: f64, e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    Ok(energy_t0 + thermal_correction_low_t(e1, e2, a, t)?)
}

/// ΔP through τ⁴ (Pa).
pub fn pressure_correction_low_t(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    let tau = low_tau(a, t)?;
    Ok(-HBAR * C / (32.0 * PI * PI * a.powi(4)) * c4_coefficient(e1, e2)? * tau.powi(4))
}

/// P₀(a) + ΔP (Pa).
pub fn pressure_low_t(p0: f64, e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    Ok(p0 + pressure_correction_low_t(e1, e2, a, t)?)
}

/// Entropy through τ³ (J/(m²·K)).
pub fn entropy_low_t(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    let tau = low_tau(a, t)?;
    check_eps(e1, e2)?;
    if e1 == 1.0 || e2 == 1.0 {
        return Ok(0.0);
    }
    let pref = 3.0 * K_B * ZETA3 * (e1 - 1.0) * (e2 - 1.0) / (64.0 * PI.powi(3) * a * a * (e1 + 1.0)) * tau * tau;
    let lead = (e1 + e2 + 2.0 * e1 * e2) / ((e2 + 1.0) * (e1 + e2));
    let corr = 32.0 * PI * PI * (e1 + 1.0) * c4_coefficient(e1, e2)? / (3.0 * ZETA3 * (e1 - 1.0) * (e2 - 1.0));
    Ok(pref * (lead - corr * tau))
}

/// Entropy through τ³ for two plates of the same material.
pub fn entropy_low_t_similar(e0: f64, a: f64, t: f64) -> Result<f64> {
    let tau = low_tau(a, t)?;
    check_eps(e0, e0)?;
    let s = e0.sqrt();
    let pref = 3.0 * K_B * ZETA3 * (e0 - 1.0).powi(2) / (64.0 * PI.powi(3) * a * a * (e0 + 1.0)) * tau * tau;
    let corr = 2.0 * PI * PI * (e0 + 1.0) * (e0 * s + 2.0 * e0 + 2.0 * s + 2.0) / (135.0 * ZETA3 * (s + 1.0).powi(2));
    Ok(pref * (1.0 - corr * tau))
}

/// Low-temperature entropy between ideal-metal plates (J/(m²·K)).
pub fn entropy_ideal_metal(a: f64, t: f64) -> Result<f64> {
    let tau = low_tau(a, t)?;
    Ok(3.0 * K_B * ZETA3 / (32.0 * PI.powi(3) * a * a) * tau * tau * (1.0 - 2.0 * PI * PI * tau / (135.0 * ZETA3)))
}

fn high_tau(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    check_eps(e1, e2)?;
    if !(a > 0.0) || !(t > 0.0) {
        return domain(format!("need a > 0 and T > 0, got a = {a}, T = {t}"));
    }
    let tau = tau(a, t);
    if tau < MIN_HIGH_TAU {
        return domain(format!("high-temperature forms need tau >= {MIN_HIGH_TAU}, got {tau:.4}"));
    }
    polylog(3, (e1 - 1.0) / (e1 + 1.0) * (e2 - 1.0) / (e2 + 1.0))
}

/// −(k_BT/16πa²)·Li₃(r₁r₂) (J/m²).
pub fn free_energy_high_t(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    let li = high_tau(e1, e2, a, t)?;
    Ok(-K_B * t / (16.0 * PI * a * a) * li)
}

/// −(k_BT/8πa³)·Li₃(r₁r₂) (Pa).
pub fn pressure_high_t(e1: f64, e2: f64, a: f64, t: f64) -> Result<f64> {
    let li = high_tau(e1, e2, a, t)?;
    Ok(-K_B * t / (8.0 * PI * a.powi(3)) * li)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matsubara::temperature_for_tau;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn similar_plates_reduce() {
        for e in [2.0, 3.84, 11.66, 80.0] {
            assert_relative_eq!(c4_coefficient(e, e).unwrap(), c4_similar(e).unwrap(), max_relative = 1e-12);
        }
        assert_eq!(c4_coefficient(1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn vacuum_coefficients_vanish() {
        assert_eq!(phi_perp_x3_coefficient(1.0, 1.0).unwrap(), 0.0);
        assert!(phi_par_x3_coefficient(1.0, 1.0).unwrap().abs() < 1e-15);
        assert_eq!(tau3_coefficient(1.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn seam_is_continuous() {
        for e in [2.0f64, 3.84, 11.66] {
            let s = e.sqrt();
            let near = (s + 1e-5).powi(2);
            let at = c4_coefficient(e, e).unwrap();
            assert_relative_eq!(c4_coefficient(e, near).unwrap(), at, max_relative = 1e-4);
            // first-order change is symmetric, so the average of both sides matches to second order
            let far = (s - 1e-5).powi(2);
            let mid = 0.5 * (c4_coefficient(e, near).unwrap() + c4_coefficient(e, far).unwrap());
            assert_relative_eq!(mid, c4_coefficient(e, e).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn dilute_limits() {
        // C₄ → η₁η₂[7/2880 + (η₁+η₂)/5760] and the τ³ term → η₁η₂ζ(3)(1 − (η₁+η₂)/4)/(16π²)
        let (h1, h2) = (1e-3, 2e-3);
        let c4 = c4_coefficient(1.0 + h1, 1.0 + h2).unwrap();
        assert_relative_eq!(c4, h1 * h2 * (7.0 / 2880.0 + (h1 + h2) / 5760.0), max_relative = 1e-5);
        let c3 = tau3_coefficient(1.0 + h1, 1.0 + h2).unwrap();
        assert_relative_eq!(c3, h1 * h2 * ZETA3 * (1.0 - (h1 + h2) / 4.0) / (16.0 * PI * PI), max_relative = 1e-5);
    }

    #[test]
    fn entropy_forms_agree() {
        let a = 4e-7;
        for e in [2.0, 3.84, 11.66] {
            for t in [0.5, 5.0, 40.0] {
                assert_relative_eq!(entropy_low_t(e, e, a, t).unwrap(), entropy_low_t_similar(e, a, t).unwrap(), max_relative = 1e-12);
            }
        }
        assert_eq!(entropy_low_t(11.66, 3.84, a, 0.0).unwrap(), 0.0);
        assert_eq!(entropy_ideal_metal(a, 0.0).unwrap(), 0.0);
        assert!(entropy_low_t(11.66, 3.84, a, 1e4).is_err());
    }

    #[test]
    fn entropy_from_free_energy() {
        use crate::diff::richardson;
        let (e1, e2, a) = (11.66, 3.84, 4e-7);
        let t = temperature_for_tau(a, 0.02);
        let d = richardson(|t| thermal_correction_low_t(e1, e2, a, t), t, 0.1 * t, 3).unwrap();
        assert_relative_eq!(-d.value, entropy_low_t(e1, e2, a, t).unwrap(), max_relative = 1e-8);
        let p = richardson(|a| thermal_correction_low_t(e1, e2, a, t), a, 0.01 * a, 3).unwrap();
        assert_relative_eq!(-p.value, pressure_correction_low_t(e1, e2, a, t).unwrap(), max_relative = 1e-8);
    }

    #[test]
    fn ideal_metal_ratio_is_not_one() {
        // the ε₀ → ∞ and τ → 0 limits do not commute: the ratio is 2(ε₀+1)/(ε₀−1)² at leading order
        let a = 1e-6;
        let t = temperature_for_tau(a, 1e-10);
        for e in [10.0f64, 100.0, 1e3, 1e4] {
            let r = entropy_ideal_metal(a, t).unwrap() / entropy_low_t(e, e, a, t).unwrap();
            assert!(r.is_finite() && (r - 1.0).abs() > 0.1);
            assert_relative_eq!(r, 2.0 * (e + 1.0) / (e - 1.0).powi(2), max_relative = 1e-3);
        }
    }

    #[test]
    fn high_t_limits() {
        let a = 5e-6;
        let t = temperature_for_tau(a, 10.0);
        assert_eq!(free_energy_high_t(1.0, 5.0, a, t).unwrap(), 0.0);
        let f = free_energy_high_t(1e12, 1e12, a, t).unwrap();
        assert_relative_eq!(f, -K_B * t * ZETA3 / (16.0 * PI * a * a), max_relative = 1e-9);
        assert_relative_eq!(pressure_high_t(11.66, 3.84, a, t).unwrap(), 2.0 / a * free_energy_high_t(11.66, 3.84, a, t).unwrap(), max_relative = 1e-14);
        assert!(free_energy_high_t(2.0, 2.0, a, 0.1 * t).is_err());
    }

    proptest! {
        #[test]
        fn c4_symmetric_and_positive(e1 in 1.0f64..100.0, e2 in 1.0f64..100.0) {
            let c = c4_coefficient(e1, e2).unwrap();
            prop_assert!(c >= -1e-15);
            let d = c4_coefficient(e2, e1).unwrap();
            prop_assert!((c - d).abs() <= 1e-12 * c.abs().max(1e-300));
            prop_assert!(tau3_coefficient(e1, e2).unwrap() >= 0.0);
        }

        #[test]
        fn entropy_nonnegative(e1 in 1.0f64..100.0, e2 in 1.0f64..100.0, frac in 0.0f64..1.0) {
            // the two-term series is only meaningful while its τ³ correction is below the τ² term
            let a = 4e-7;
            let lead = (e1 + e2 + 2.0 * e1 * e2) / ((e2 + 1.0) * (e1 + e2));
            let corr = 32.0 * PI * PI * (e1 + 1.0) * c4_coefficient(e1, e2).unwrap()
                / (3.0 * ZETA3 * (e1 - 1.0) * (e2 - 1.0));
            let tau_max = if corr > 0.0 { (lead / corr).min(0.05) } else { 0.05 };
            let t = temperature_for_tau(a, frac * tau_max);
            prop_assert!(entropy_low_t(e1, e2, a, t).unwrap() >= 0.0);
        }
    }
}

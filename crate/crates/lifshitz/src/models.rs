//! Permittivity along the imaginary frequency axis, ε(iξ).

use crate::constants::{HBAR, K_B};
use crate::error::{config, domain, Error, Result};
use crate::optics::TabulatedPermittivity;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// One Ninham–Parsegian term C/(1 + ξ²/ω²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Oscillator {
    pub strength: f64,
    pub omega: f64,
}

#[derive(Debug, Clone)]
pub enum DielectricModel {
    Constant { eps0: f64 },
    Dilute { eta: f64 },
    Oscillators(Vec<Oscillator>),
    Tabulated(Arc<TabulatedPermittivity>),
    /// `sigma0` in s⁻¹ (Gaussian units); adds 4πσ₀/ξ to the base value.
    DcAugmented { base: Box<DielectricModel>, sigma0: f64 },
}

/// Value of ε(iξ). `Infinite` only arises from a dc-conducting model at ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(f64),
    Infinite,
}

impl Permittivity {
    pub fn finite(self) -> Result<f64> {
        match self {
            Permittivity::Finite(e) => Ok(e),
            Permittivity::Infinite => Err(Error::InfinitePermittivity),
        }
    }
}

impl DielectricModel {
    pub fn constant(eps0: f64) -> Result<Self> {
        if !(eps0 >= 1.0) || !eps0.is_finite() {
            return config(format!("constant permittivity must be finite and >= 1, got {eps0}"));
        }
        Ok(DielectricModel::Constant { eps0 })
    }

    pub fn vacuum() -> Self {
        DielectricModel::Constant { eps0: 1.0 }
    }

    pub fn dilute(eta: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return config(format!("dilute eta must be >= 0, got {eta}"));
        }
        Ok(DielectricModel::Dilute { eta })
    }

    pub fn oscillators(terms: Vec<Oscillator>) -> Result<Self> {
        if terms.is_empty() {
            return config("oscillator model needs at least one term");
        }
        for t in &terms {
            if !(t.strength > 0.0 && t.omega > 0.0) || !t.strength.is_finite() || !t.omega.is_finite() {
                return config(format!("oscillator needs C > 0 and omega > 0, got {t:?}"));
            }
        }
        Ok(DielectricModel::Oscillators(terms))
    }

    pub fn tabulated(table: TabulatedPermittivity) -> Self {
        DielectricModel::Tabulated(Arc::new(table))
    }

    pub fn dc_augmented(base: DielectricModel, sigma0: f64) -> Result<Self> {
        if matches!(base, DielectricModel::DcAugmented { .. }) {
            return config("dc augmentation cannot be nested");
        }
        if !(sigma0 >= 0.0) || !sigma0.is_finite() {
            return config(format!("sigma0 must be >= 0, got {sigma0}"));
        }
        Ok(DielectricModel::DcAugmented { base: Box::new(base), sigma0 })
    }

    /// ε(iξ) for ξ ≥ 0 (rad/s).
    pub fn eval_eps(&self, xi: f64) -> Result<Permittivity> {
        if !(xi >= 0.0) {
            return domain(format!("imaginary frequency must be >= 0, got {xi}"));
        }
        Ok(match self {
            DielectricModel::Constant { eps0 } => Permittivity::Finite(*eps0),
            DielectricModel::Dilute { eta } => Permittivity::Finite(1.0 + eta),
            DielectricModel::Oscillators(terms) => Permittivity::Finite(1.0 + oscillator_sum(terms, xi)),
            DielectricModel::Tabulated(t) => Permittivity::Finite(t.eval(xi)?),
            DielectricModel::DcAugmented { base, sigma0 } => {
                let e = base.eval_eps(xi)?.finite()?;
                if *sigma0 == 0.0 {
                    Permittivity::Finite(e)
                } else if xi == 0.0 {
                    Permittivity::Infinite
                } else {
                    Permittivity::Finite(e + 4.0 * PI * sigma0 / xi)
                }
            }
        })
    }

    /// ε(iξ) − 1, computed without forming ε for the dilute and oscillator variants.
    pub fn eval_susceptibility(&self, xi: f64) -> Result<Option<f64>> {
        Ok(match self {
            DielectricModel::Dilute { eta } => Some(*eta),
            DielectricModel::Oscillators(terms) if xi >= 0.0 => Some(oscillator_sum(terms, xi)),
            _ => match self.eval_eps(xi)? {
                Permittivity::Finite(e) => Some(e - 1.0),
                Permittivity::Infinite => None,
            },
        })
    }

    /// ε₀ = ε(i·0); rejected for dc-augmented models.
    pub fn static_permittivity(&self) -> Result<f64> {
        if matches!(self, DielectricModel::DcAugmented { .. }) {
            return config("static permittivity of a dc-conducting model is infinite");
        }
        self.eval_eps(0.0)?.finite()
    }

    /// Frequencies (rad/s) where ε(iξ) changes appreciably; empty for constant models.
    pub fn frequency_scales(&self) -> Vec<f64> {
        match self {
            DielectricModel::Constant { .. } | DielectricModel::Dilute { .. } => Vec::new(),
            DielectricModel::Oscillators(terms) => terms.iter().map(|t| t.omega).collect(),
            DielectricModel::Tabulated(t) => t.frequency_scales(),
            DielectricModel::DcAugmented { base, .. } => base.frequency_scales(),
        }
    }

    pub fn is_dc_augmented(&self) -> bool {
        matches!(self, DielectricModel::DcAugmented { .. })
    }
}

fn oscillator_sum(terms: &[Oscillator], xi: f64) -> f64 {
    terms
        .iter()
        .map(|t| {
            let r = xi / t.omega;
            t.strength / (1.0 + r * r)
        })
        .sum()
}

/// σ₀(T) = σ_ref·e^{−b/T}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrheniusConductivity {
    pub sigma_ref: f64,
    pub b: f64,
}

impl ArrheniusConductivity {
    pub fn new(sigma_ref: f64, b: f64) -> Result<Self> {
        if !(sigma_ref >= 0.0 && b >= 0.0) || !sigma_ref.is_finite() || !b.is_finite() {
            return config(format!("Arrhenius law needs sigma_ref >= 0 and b >= 0, got {sigma_ref}, {b}"));
        }
        Ok(ArrheniusConductivity { sigma_ref, b })
    }

    pub fn sigma0(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            self.sigma_ref * (-self.b / t).exp()
        }
    }
}

/// β = 2ħσ₀/(k_B T).
pub fn conductivity_beta(sigma0: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("temperature must be > 0, got {t}"));
    }
    if !(sigma0 >= 0.0) {
        return domain(format!("sigma0 must be >= 0, got {sigma0}"));
    }
    Ok(2.0 * HBAR * sigma0 / (K_B * t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn eps(m: &DielectricModel, xi: f64) -> f64 {
        m.eval_eps(xi).unwrap().finite().unwrap()
    }

    #[test]
    fn oscillator_sum_rule() {
        let m = DielectricModel::oscillators(vec![Oscillator { strength: 2.5, omega: 1e16 }]).unwrap();
        assert_eq!(eps(&m, 0.0), 3.5);
        assert_eq!(m.static_permittivity().unwrap(), 3.5);
        assert_relative_eq!(eps(&m, 1e25), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn static_values() {
        assert_eq!(DielectricModel::constant(11.66).unwrap().static_permittivity().unwrap(), 11.66);
        assert_eq!(DielectricModel::constant(3.84).unwrap().static_permittivity().unwrap(), 3.84);
        assert_eq!(DielectricModel::dilute(0.01).unwrap().static_permittivity().unwrap(), 1.01);
        let dc = DielectricModel::dc_augmented(DielectricModel::constant(3.84).unwrap(), 1.0).unwrap();
        assert!(dc.static_permittivity().is_err());
        assert!(DielectricModel::constant(0.5).is_err());
    }

    #[test]
    fn dc_augmented_matsubara_shift() {
        let sigma0 = 20.0;
        let t = 300.0;
        let base = DielectricModel::constant(3.84).unwrap();
        let dc = DielectricModel::dc_augmented(base.clone(), sigma0).unwrap();
        let beta = conductivity_beta(sigma0, t).unwrap();
        assert_eq!(dc.eval_eps(0.0).unwrap(), Permittivity::Infinite);
        assert!(dc.eval_eps(0.0).unwrap().finite().is_err());
        for l in 1..6 {
            let xi = 2.0 * PI * K_B * t * l as f64 / HBAR;
            assert_relative_eq!(eps(&dc, xi) - eps(&base, xi), beta / l as f64, max_relative = 1e-9);
        }
        let off = DielectricModel::dc_augmented(base, 0.0).unwrap();
        assert_eq!(off.eval_eps(0.0).unwrap(), Permittivity::Finite(3.84));
    }

    #[test]
    fn beta_scaling() {
        assert_eq!(conductivity_beta(0.0, 10.0).unwrap(), 0.0);
        let b1 = conductivity_beta(5.0, 100.0).unwrap();
        assert_relative_eq!(conductivity_beta(5.0, 200.0).unwrap(), b1 / 2.0, max_relative = 1e-15);
        // σ₀ ≈ 20 s⁻¹ puts β(300 K) at the 1e-12 level quoted for SiO₂
        let b = conductivity_beta(20.0, 300.0).unwrap();
        assert!(b > 1e-13 && b < 1e-11);
        assert!(conductivity_beta(1.0, 0.0).is_err());
    }

    #[test]
    fn arrhenius_vanishes_at_zero() {
        let c = ArrheniusConductivity::new(1e3, 500.0).unwrap();
        assert_eq!(c.sigma0(0.0), 0.0);
        assert!(c.sigma0(1.0) > 0.0 && c.sigma0(1.0) < c.sigma0(2.0));
    }

    proptest! {
        #[test]
        fn dilute_equals_constant(eta in 0.0f64..0.1, xi in 0.0f64..1e18) {
            let d = DielectricModel::dilute(eta).unwrap();
            let c = DielectricModel::constant(1.0 + eta).unwrap();
            prop_assert_eq!(d.eval_eps(xi).unwrap(), c.eval_eps(xi).unwrap());
        }

        #[test]
        fn oscillators_decreasing_and_convex(c1 in 0.1f64..20.0, c2 in 0.1f64..5.0,
                                            w1 in 1e13f64..1e16, w2 in 1e14f64..1e17,
                                            x in 0.0f64..1e17, dx in 1e11f64..1e16) {
            let m = DielectricModel::oscillators(vec![
                Oscillator { strength: c1, omega: w1 },
                Oscillator { strength: c2, omega: w2 },
            ]).unwrap();
            let chi = |xi: f64| m.eval_susceptibility(xi).unwrap().unwrap();
            let e0 = chi(x);
            let e1 = chi(x + dx);
            prop_assert!(e1 < e0 && e1 >= 0.0);
            // convex in s = ξ²
            let s0 = x * x;
            let s1 = (x + dx) * (x + dx);
            let sm = 0.5 * (s0 + s1);
            prop_assert!(chi(sm.sqrt()) <= 0.5 * (e0 + e1) * (1.0 + 1e-14));
        }
    }
}

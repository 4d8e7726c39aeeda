//! Reference quantities computed without the library's closed forms.

use lifshitz::quad::{integrate_breaks, QuadOptions};
use lifshitz::constants::{K_B, ZETA3};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Tm,
    Te,
}

/// Reflection coefficient written straight from the Fresnel form with
/// k = √(y² + (ε−1)x²); no cancellation-free rearrangement.
fn fresnel(eps: f64, x: f64, y: f64, pol: Polarization) -> f64 {
    let k = (y * y + (eps - 1.0) * x * x).sqrt();
    match pol {
        Polarization::Tm => (eps * y - k) / (eps * y + k),
        Polarization::Te => (k - y) / (k + y),
    }
}

/// Φ(x) = ∫ₓ^∞ y² r₁r₂/(eʸ − r₁r₂) dy for static permittivities.
pub fn phi(x: f64, e1: f64, e2: f64, pol: Polarization) -> f64 {
    let f = |y: f64| {
        let rr = fresnel(e1, x, y, pol) * fresnel(e2, x, y, pol);
        y * y * rr / (y.exp() - rr)
    };
    let mut breaks = vec![x];
    for b in [2.0 * x, 4.0 * x, 10.0 * x, 1.0, 4.0, 16.0, 40.0, 80.0] {
        if b > *breaks.last().unwrap() {
            breaks.push(b);
        }
    }
    let opts = QuadOptions::new(1e-14).with_abs_tol(1e-19);
    integrate_breaks(f, &breaks, &opts).expect("Φ quadrature").value
}

/// Φ_TM(x) − 2Li₃(s) with s = r₁(0)r₂(0), integrated as one difference so
/// that small x does not drown in cancellation.
pub fn phi_tm_excess(x: f64, e1: f64, e2: f64) -> f64 {
    let s = (e1 - 1.0) / (e1 + 1.0) * (e2 - 1.0) / (e2 + 1.0);
    let f0 = |y: f64| y * y * s / (y.exp() - s);
    let diff = |y: f64| {
        let rr = fresnel(e1, x, y, Polarization::Tm) * fresnel(e2, x, y, Polarization::Tm);
        y * y * rr / (y.exp() - rr) - f0(y)
    };
    let mut breaks = vec![x];
    for b in [2.0 * x, 4.0 * x, 10.0 * x, 100.0 * x, 1.0, 4.0, 16.0, 40.0, 80.0] {
        if b > *breaks.last().unwrap() {
            breaks.push(b);
        }
    }
    let opts = QuadOptions::new(1e-10).with_abs_tol(1e-19);
    let outer = integrate_breaks(diff, &breaks, &opts).expect("Φ difference quadrature").value;
    let inner = integrate_breaks(f0, &[0.0, x], &opts).expect("Φ head quadrature").value;
    outer - inner
}

/// ∫₀^∞ t³/(e^{2πt} − 1) dt by quadrature (analytically 1/240).
pub fn bose_t3_integral() -> f64 {
    let opts = QuadOptions::new(1e-15).with_abs_tol(1e-20);
    integrate_breaks(|t: f64| t.powi(3) / (2.0 * PI * t).exp_m1(), &[0.0, 0.5, 2.0, 8.0, 20.0], &opts)
        .expect("Bose integral")
        .value
}

/// C₄ transcribed term by term, Artanh(·)/(√ε₀₁−√ε₀₂) evaluated directly.
/// Only meaningful away from ε₀₁ = ε₀₂.
pub fn c4_direct(e1: f64, e2: f64) -> f64 {
    let (p, q) = (e1.sqrt(), e2.sqrt());
    let s = e1 + e2;
    let g = (e1 * e2).sqrt();
    let pr = e1 * e2;
    let z = s.sqrt() * (p - q) / (g - s);
    let bracket = -s * s * (2.0 * s + g - pr) + pr * g * (5.0 * pr - 3.0 * s + 1.0) + g * (p - q).powi(2) * (pr * g - g - s)
        - 3.0 * pr * pr * (e1 - 1.0) * (e2 - 1.0) / ((p - q) * s.sqrt()) * z.atanh();
    (2.0 + bracket / ((p + q) * s * s)) / 720.0
}

/// Leading low-temperature entropy coefficient: S ≈ this·τ² (J/(m²·K)).
pub fn entropy_tau2_coefficient(e1: f64, e2: f64, a: f64) -> f64 {
    3.0 * K_B * ZETA3 * (e1 - 1.0) * (e2 - 1.0) * (e1 + e2 + 2.0 * e1 * e2)
        / (64.0 * PI.powi(3) * a * a * (e1 + 1.0) * (e2 + 1.0) * (e1 + e2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bose_integral() {
        assert_relative_eq!(bose_t3_integral(), 1.0 / 240.0, max_relative = 1e-13);
    }

    #[test]
    fn phi_at_vacuum_vanishes() {
        assert_eq!(phi(0.05, 1.0, 3.0, Polarization::Te), 0.0);
    }

    #[test]
    fn phi_tm_limit_is_polylog() {
        // at x → 0 the TM integrand reduces to 2·Li₃(r₁r₂)
        let (e1, e2): (f64, f64) = (3.0, 7.0);
        let s = (e1 - 1.0) / (e1 + 1.0) * (e2 - 1.0) / (e2 + 1.0);
        let li3: f64 = (1..200).map(|k| s.powi(k) / (k as f64).powi(3)).sum();
        assert_relative_eq!(phi(1e-7, e1, e2, Polarization::Tm), 2.0 * li3, max_relative = 1e-9);
    }

    #[test]
    fn direct_c4_similar_limit() {
        // approaching the seam the direct form tends to the one-material value
        let e0: f64 = 3.84;
        let s = e0.sqrt();
        let similar = (s - 1.0) * (e0 * e0 + e0 * s - 2.0) / 720.0;
        assert_relative_eq!(c4_direct(e0, e0 * 1.0001), similar, max_relative = 1e-3);
    }
}

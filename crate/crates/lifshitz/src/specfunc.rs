//! Special functions at real arguments: Ei on the negative axis, Li2/Li3 on
//! [-1, 1], artanh.

use crate::constants::{EULER_GAMMA, ZETA3};
use crate::error::{domain, Result};
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;

// Below this |x| the power series is used, above it the continued fraction.
const EI_SEAM: f64 = 1.0;

/// Exponential integral Ei(x) for x < 0.
///
/// ```
/// let v = lifshitz::specfunc::exp_integral_ei(-1.0).unwrap();
/// assert!((v + 0.219_383_934_395_520_3).abs() < 1e-15);
/// ```
pub fn exp_integral_ei(x: f64) -> Result<f64> {
    if !(x < 0.0) {
        return domain(format!("Ei(x) requires x < 0, got {x}"));
    }
    Ok(-e1(-x))
}

/// E1(t) = -Ei(-t) for t > 0.
fn e1(t: f64) -> f64 {
    if t < EI_SEAM {
        // E1(t) = -γ - ln t - Σ (-t)^k / (k k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            term *= -t / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < EPS * sum.abs() {
                break;
            }
        }
        -EULER_GAMMA - t.ln() - sum
    } else {
        // modified Lentz evaluation of the continued fraction
        let tiny = 1e-300;
        let mut b = t + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        h * (-t).exp()
    }
}

/// Polylogarithm Li_n(z) for n ∈ {2, 3} and -1 ≤ z ≤ 1.
///
/// ```
/// use lifshitz::specfunc::polylog;
/// let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
/// assert!((polylog(2, 1.0).unwrap() - pi2_6).abs() < 1e-15);
/// ```
pub fn polylog(n: u32, z: f64) -> Result<f64> {
    if n != 2 && n != 3 {
        return domain(format!("polylog order must be 2 or 3, got {n}"));
    }
    if !(-1.0..=1.0).contains(&z) {
        return domain(format!("polylog argument must lie in [-1, 1], got {z}"));
    }
    Ok(li(n, z))
}

fn li(n: u32, z: f64) -> f64 {
    if z.abs() <= 0.5 {
        li_series(n, z)
    } else if z > 0.0 {
        li_log_series(n, z)
    } else {
        // Li_n(-x) = 2^{1-n} Li_n(x²) - Li_n(x)
        let x = -z;
        2f64.powi(1 - n as i32) * li(n, x * x) - li(n, x)
    }
}

fn li_series(n: u32, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 1..200 {
        zk *= z;
        let kf = k as f64;
        let add = zk / kf.powi(n as i32);
        sum += add;
        if add.abs() <= EPS * sum.abs() * 0.25 {
            break;
        }
    }
    sum
}

// Bernoulli numbers B_2, B_4, ..., B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// ζ(s) for the integer arguments the logarithmic expansion needs (s ≤ 3, s ≠ 1).
fn zeta_int(s: i32) -> f64 {
    match s {
        3 => ZETA3,
        2 => PI * PI / 6.0,
        0 => -0.5,
        s if s < 0 => {
            let m = (-s) as usize;
            if m % 2 == 0 {
                0.0
            } else {
                // ζ(-m) = -B_{m+1}/(m+1)
                -BERNOULLI_EVEN[(m + 1) / 2 - 1] / (m + 1) as f64
            }
        }
        _ => unreachable!("zeta_int({s})"),
    }
}

/// Li_n(e^μ) = μ^{n-1}/(n-1)! [H_{n-1} - ln(-μ)] + Σ_{k≠n-1} ζ(n-k) μ^k/k!,
/// convergent for |μ| < 2π; used for z ∈ (0.5, 1].
fn li_log_series(n: u32, z: f64) -> f64 {
    let mu = z.ln();
    let n = n as i32;
    let mut sum = 0.0;
    let mut pow = 1.0; // μ^k / k!
    for k in 0..(n + 28) {
        if k > 0 {
            pow *= mu / k as f64;
        }
        if k == n - 1 {
            if mu != 0.0 {
                let harmonic: f64 = (1..n).map(|j| 1.0 / j as f64).sum();
                sum += pow * (harmonic - (-mu).ln());
            }
            continue;
        }
        sum += zeta_int(n - k) * pow;
    }
    sum
}

/// Inverse hyperbolic tangent, |z| < 1.
pub fn artanh(z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return domain(format!("artanh requires |z| < 1, got {z}"));
    }
    // evaluated on |z| so the result is exactly odd
    let a = z.abs();
    Ok(0.5 * (2.0 * a / (1.0 - a)).ln_1p().copysign(z))
}

/// artanh(z)/z, continuous at z = 0.
pub(crate) fn artanh_over_z(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        let z2 = z * z;
        1.0 + z2 * (1.0 / 3.0 + z2 * (1.0 / 5.0 + z2 * (1.0 / 7.0)))
    } else {
        z.atanh() / z
    }
}

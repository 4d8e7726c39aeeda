//! Physical constants (CODATA 2018 exact/recommended values, SI).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_2;
/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Tag written into output headers.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

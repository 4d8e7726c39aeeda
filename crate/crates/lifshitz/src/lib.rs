//! Thermal Casimir free energy, pressure and entropy between two thick
//! dielectric plates from the Lifshitz Matsubara sum, with the dilute,
//! low-temperature, high-temperature and dc-conductivity closed forms.

pub mod constants;
pub mod diff;
pub mod dilute;
mod error;
pub mod lowtemp;
pub mod matsubara;
pub mod models;
pub mod nernst;
pub mod optics;
pub mod quad;
pub mod specfunc;
pub mod sum;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/materials.md")]
pub mod materials {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/engine.md")]
pub mod engine {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/closed_forms.md")]
pub mod closed_forms {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/nernst.md")]
pub mod nernst_guide {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub mod readme {}

//! Acceptance checks for the `lifshitz` crate.
//!
//! Each of the thirteen criteria is a function returning a [`Check`] made of
//! one or more measured-versus-tolerance [`Part`]s. Reference values come
//! from oracles written here (raw Fresnel integrands, term-by-term closed
//! forms, coefficient fits) rather than from the library's own rearrangements.

pub mod fit;
pub mod oracles;

mod dilute;
mod engine;
mod lowtemp;
mod nernst;
mod optics;

use serde::Serialize;
use std::fmt;
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct Part {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Part {
    /// Passes when `measured ≤ tolerance` (NaN fails).
    pub fn at_most(label: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Part { label: label.into(), measured, tolerance, pass: measured <= tolerance }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub title: String,
    pub pass: bool,
    pub parts: Vec<Part>,
    pub notes: Vec<String>,
    pub seconds: f64,
    /// Set when the check could not run at all.
    pub error: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {verdict} {} ({:.1} s)", self.criterion, self.title, self.seconds)?;
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        for p in &self.parts {
            let mark = if p.pass { "ok" } else { "over" };
            write!(f, "; {} {:.3e} vs {:.1e} {mark}", p.label, p.measured, p.tolerance)?;
        }
        Ok(())
    }
}

pub(crate) type Outcome = lifshitz::Result<(Vec<Part>, Vec<String>)>;

fn timed(criterion: u8, title: &str, body: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let outcome = body();
    let seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok((parts, notes)) => Check {
            criterion,
            title: title.to_string(),
            pass: !parts.is_empty() && parts.iter().all(|p| p.pass),
            parts,
            notes,
            seconds,
            error: None,
        },
        Err(e) => Check {
            criterion,
            title: title.to_string(),
            pass: false,
            parts: Vec::new(),
            notes: Vec::new(),
            seconds,
            error: Some(e.to_string()),
        },
    }
}

/// Criterion numbers, titles and bodies, in order.
const CRITERIA: [(u8, &str, fn() -> Outcome); 13] = [
    (1, "dilute small-tau expansion", dilute::small_tau),
    (2, "dilute high-tau limit", dilute::high_tau),
    (3, "engine vs dilute closed form", dilute::engine_equivalence),
    (4, "pressure equals -dF/da", engine::thermodynamic_consistency),
    (5, "low-T asymptote vs engine, Si/SiO2 static", lowtemp::asymptote_gap),
    (6, "similar-plate C4 and seam continuity", lowtemp::similar_reduction),
    (7, "dilute reduction of C4", dilute::c4_reduction),
    (8, "entropy vanishes as tau^2", nernst::entropy_power_law),
    (9, "high-T polylog limits", engine::high_temperature),
    (10, "Phi x^3 coefficient fits", lowtemp::phi_coefficients),
    (11, "dc-conductivity entropy residual", nernst::dc_violation),
    (12, "Kramers-Kronig round trip", optics::kk_round_trip),
    (13, "thermal corrections increase with T", engine::monotonicity),
];

/// Named groups of criteria.
pub const SUITES: [(&str, &[u8]); 7] = [
    ("dilute", &[1, 2, 3, 7]),
    ("engine", &[4, 9]),
    ("lowtemp", &[5, 6, 10]),
    ("nernst", &[8, 11]),
    ("optics", &[12]),
    ("figures", &[13]),
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13]),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _)| *n)
}

/// Run one criterion by number (1–13).
pub fn run_criterion(n: u8) -> Option<Check> {
    CRITERIA.iter().find(|c| c.0 == n).map(|(n, title, body)| timed(*n, title, body))
}

/// Run a named suite; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<Check>> {
    let (_, ids) = SUITES.iter().find(|(n, _)| *n == name)?;
    Some(ids.iter().filter_map(|&n| run_criterion(n)).collect())
}

/// Relative difference |x − y|/|y|.
pub(crate) fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/validation.md")]
pub mod validation_guide {}

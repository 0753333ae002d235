//! Upper bounds on growth rates via minimal forbidden words.
//!
//! Avoiding every minimal forbidden word of length at most `ℓ` defines a
//! regular superset of the cube-free `P`-avoiding language, so the spectral
//! radius of its trimmed automaton bounds the growth rate from above, and
//! the bound can only drop as `ℓ` grows.

mod automaton;
mod forbidden;
mod spectral;

pub use automaton::{build_automaton, FactorAutomaton};
pub use forbidden::{minimal_forbidden, minimal_forbidden_with_guard, ForbiddenSet, MAX_CUTOFF};
pub use spectral::{growth_rate, GrowthEstimate, MAX_ITERATIONS};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::BinaryPattern;

/// Default cutoff.
pub const DEFAULT_CUTOFF: usize = 18;
/// Precision the pipeline iterates to, whatever looser tolerance is asked.
pub const PIPELINE_PRECISION: f64 = 1e-10;

/// Growth rates reported for the exponential patterns, as published upper
/// bounds.
pub const REFERENCE_UPPER: [(&str, f64); 7] = [
    ("xxyxxy", 1.098891),
    ("xxyxyy", 1.226850),
    ("xxyxyx", 1.138449),
    ("xxyyxx", 1.322304),
    ("xxyyxyx", 1.310975),
    ("xyxxyxy", 1.281612),
    ("xyxxyyxy", 1.348932),
];

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub pattern: BinaryPattern,
    pub cutoff: usize,
    pub eps: f64,
    pub forbidden_words: usize,
    pub states: usize,
    pub transitions: usize,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

/// Minimal forbidden words, trimmed automaton and eigenvalue bounds.
pub fn upper_bound_pipeline(p: &BinaryPattern, cutoff: usize, eps: f64) -> Result<PipelineReport> {
    if !(eps > 0.0) {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let m = minimal_forbidden(p, cutoff)?;
    let a = build_automaton(&m)?;
    let est = growth_rate(&a, eps.min(PIPELINE_PRECISION))?;
    Ok(PipelineReport {
        pattern: p.clone(),
        cutoff,
        eps,
        forbidden_words: m.len(),
        states: est.states,
        transitions: est.transitions,
        lower: est.lower,
        upper: est.upper,
        iterations: est.iterations,
    })
}

//! Binary pattern avoidance in binary cube-free words.

pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod dolverify;
pub mod error;
pub mod extend;
pub mod growth;
mod hash;
pub(crate) mod matching;
pub mod morphism;
pub mod pattern;
pub mod schema;
pub mod search;
pub mod word;

pub use error::{Error, Result};
pub use morphism::Morphism;
pub use pattern::{avoids_set, meets, meets_large_square, BinaryPattern, MatchWitness, Pattern};
pub use word::{RepetitionReport, Word};

/// Exact repetition exponent.
pub type Exponent = num_rational::Ratio<usize>;

pub type GrowthEstimateF64 = growth::GrowthEstimate<f64>;
pub type GrowthEstimateF32 = growth::GrowthEstimate<f32>;
pub type RateIntervalF64 = constructions::RateInterval<f64>;

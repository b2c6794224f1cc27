//! A maximality calculus for real algebraic varieties.
//!
//! Varieties are reduced to cohomological fingerprints ([`VarietyProfile`]);
//! constructions propagate maximality (equality in the Smith-Thom
//! inequality) and record a citation-bearing proof trace.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod generators;
pub mod motives;
pub mod poincare;
pub mod profiles;
pub mod rules;
pub mod session;

pub use error::{Error, Result};
pub use poincare::{BigradedSeries, GradedDims};
pub use profiles::{FactName, SmithThom, TriState, VarietyProfile};
pub use rules::RuleId;
pub use session::Session;

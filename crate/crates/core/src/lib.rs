//! Exact multigraded generating functions over free commutative monoids.
//!
//! Series are kept as rational product forms `∏ (1 - t^m)^{-n}` and expanded
//! on demand inside finite regions cut out by a positive grading functional.
//! Pushforward along integer monoid maps is available both as an exact fiber
//! sum and as monomial substitution, which lets projective bundle formulas be
//! checked against their assembly from factor series.

pub mod catalog;
pub mod dsl;
mod elimination;
pub mod error;
pub mod grading;
pub mod pushforward;
pub mod selftest;
pub mod series;

pub use error::{Error, Result};
pub use grading::{GradingFunctional, Multidegree, TruncationSpec};
pub use pushforward::MonoidMap;
pub use series::{ComparisonReport, ProductForm, TruncatedSeries};

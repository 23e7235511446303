//! Finite weighted pocsets and the median spaces they describe.
//!
//! A pocset is a finite set of halfspaces with an order-reversing involution
//! and positive wall weights; its points are the ultrafilters. On top of the
//! basic median geometry the crate provides rank and product decomposition,
//! barycentric subdivision, searches on group actions that return
//! re-verifiable certificates, and a calculus of eventually periodic chain
//! systems describing boundary points.

pub mod acceptance;
pub mod actions;
pub mod boundary;
pub mod budget;
pub mod cli;
pub mod core;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod random;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod subdivision;
pub mod verify;

pub use crate::budget::Budget;
pub use crate::core::{ConvexSet, HSet, Halfspace, PocsetBuilder, Point, WeightedPocset};
pub use crate::error::{Error, Result};
pub use crate::scalar::{Rational, Weight};

/// Pocset with exact arbitrary-precision weights.
pub type Pocset = WeightedPocset<Rational>;
/// Pocset with `i64` rational weights.
pub type Pocset64 = WeightedPocset<num_rational::Rational64>;
/// Pocset with `f64` weights; no exactness guarantee.
pub type PocsetF64 = WeightedPocset<f64>;
/// Pocset with `f32` weights; no exactness guarantee.
pub type PocsetF32 = WeightedPocset<f32>;
/// Chain system with exact weights.
pub type ChainSys = boundary::ChainSystem<Rational>;

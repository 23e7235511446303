//! Group actions given by words in total or window-restricted automorphisms.

pub mod action;
pub mod classify;
pub mod nesting;
pub mod orbits;
pub mod pingpong;
pub mod search;
pub mod separation;
pub mod word;

pub use action::{Action, PartialMap, PartialMapSpec};
pub use classify::{ClassificationReport, LinealPair};
pub use nesting::NestedPair;
pub use orbits::OrbitReport;
pub use pingpong::FreeCertificate;
pub use search::{FlipResult, Skewer};
pub use separation::{FacingTuple, ProductWitness, SectorResult};
pub use word::{Letter, Word};

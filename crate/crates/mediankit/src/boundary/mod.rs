//! Boundary points presented as eventually periodic chain systems: closures,
//! almost-containment, minimal classes, the graph of minimal classes and
//! transfer characters of shift maps.

pub mod dilworth;
pub mod graph;
pub mod random;
pub mod shift;
pub mod system;
pub mod ubs;

pub use dilworth::{chain_cover_links, max_antichain_brute, min_chain_cover};
pub use graph::{PosetElement, UbsGraph};
pub use shift::{ChiVector, ShiftMap};
pub use system::{Chain, ChainIx, ChainSystem, HeadEntry, Link, PeriodicRule, Range, Rel};
pub use ubs::{IndexSet, MinimalTail, Ubs};

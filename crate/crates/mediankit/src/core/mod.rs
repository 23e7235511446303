//! Finite weighted pocsets, their points, and median geometry.

pub mod geometry;
pub mod hset;
pub mod pocset;
pub mod point;

pub use geometry::ConvexSet;
pub use hset::HSet;
pub use pocset::{
    star, wall_of, Halfspace, PocsetBuilder, ValidationReport, Violation, Wall, WallIx,
    WeightedPocset,
};
pub use point::Point;

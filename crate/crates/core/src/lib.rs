//! Exact tilings of rectangles, hypercuboids and equilateral triangles, and
//! the Diophantine rescaling pipelines that turn them into integer-sided
//! tilings with certified bounds on the scale.

pub mod coords;
pub mod diophantine;
pub mod error;
pub mod generators;
pub mod integerize;
pub mod json;
pub mod numeric;
pub mod oracle;
pub mod svg;
pub mod tiling;

pub use error::{Error, Result};
pub use numeric::Rat;

//! Recursive orientation estimation on the circle with the 2D Bingham
//! distribution.

pub mod bingham;
pub mod cli;
pub mod error;
pub mod eval;
pub mod filter;
pub mod linalg;
pub mod s1group;
pub mod selftest;
pub mod specfun;

pub use bingham::{BinghamParams, CovMat2, UnitVec2};
pub use error::{BinghamError, Result, Stage};
pub use filter::{BinghamFilter, FilterState, RotationConvention};

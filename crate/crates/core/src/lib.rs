//! Exact tools for simultaneous approximation and linear forms in two
//! variables: explicit constructions, best-approximation traces and the
//! exponent inequalities that relate them.

pub mod approx;
pub mod cli;
pub mod construction;
pub mod error;
pub mod geometry;
pub mod num;
pub mod serde_rational;
pub mod target;
pub mod verify;

pub use error::Error;

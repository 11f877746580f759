//! Explicit points `Θ` with prescribed exponents, built level by level.

pub mod basis;
pub mod chain;
pub mod file;
pub mod heights;
pub mod params;
pub mod run;
pub mod schedule;

pub use params::{ConstructionParams, ExtremalFamily, FiniteParams, Inequality};
pub use run::{run_construction, run_construction_with, Certificate, ConstructionRun, RunOptions, SeedChoice};

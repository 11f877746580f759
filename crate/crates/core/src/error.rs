use num_bigint::BigInt;
use thiserror::Error;

use crate::construction::params::{ExtremalFamily, Inequality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("not a rational number: {0:?}")]
    Rational(String),
    #[error("not an integer triple: {0:?}")]
    Triple(String),
    #[error("malformed target literal {0:?} (expected sqrt:p,q | fib:depth | run:<file>#n,k | lit:a,b,radius)")]
    Target(String),
    #[error("malformed quadruple {0:?} (expected four comma-separated values, `inf` allowed)")]
    Quadruple(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the zero vector has no projective meaning")]
    ZeroTriple,
    #[error("triples are proportional; their wedge product vanishes")]
    ProportionalTriples,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error(
        "sqrt:{p},{q} does not give 1, alpha, beta linearly independent over Q (perfect square or dependent radicands)"
    )]
    PerfectSquareInput { p: u64, q: u64 },
    #[error("Fibonacci continued-fraction depth must be at least 5, got {0}")]
    DepthTooSmall(usize),
    #[error("index ({n},{k}) is not a point of the run")]
    IndexOutOfRun { n: usize, k: usize },
    #[error("negative radius")]
    NegativeRadius,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("H_max must be at least {min}, got {got}")]
    HmaxTooSmall { min: u64, got: u64 },
    #[error("H_max = {0} exceeds the supported search range")]
    HmaxTooLarge(u64),
    #[error("target radius is too coarse to certify the first best approximation")]
    TargetTooCoarse,
    #[error("rational dependence: triple ({x}, {y}, {z}) has semi-norm exactly 0")]
    RationalDependence { x: BigInt, y: BigInt, z: BigInt },
    #[error("target coordinates are too large for the fixed-point search kernel")]
    TargetOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: requires {violated}")]
    InvalidParams { violated: Inequality },
    #[error(
        "excluded extremal parameter family {family}: requires {violated}. \
         Jarník established these quadruples by other means; this construction does not produce them"
    )]
    ExcludedExtremalCase { family: ExtremalFamily, violated: Inequality },
    #[error("chain precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("initial height h1 = {given} too small: {reason}; smallest admissible h1 found is {suggested}")]
    InitialHeightTooSmall { given: BigInt, suggested: BigInt, reason: String },
    #[error("certificate violated: {0}")]
    CertificateViolation(String),
    #[error("size guard: level {level} needs about {digits} decimal digits per coordinate (limit {limit})")]
    DigitBudget { level: usize, digits: u64, limit: u64 },
    #[error("depth must be at least 1")]
    ZeroDepth,
}

impl ConstructionError {
    /// The inequality named by a parameter rejection, if any.
    pub fn violated(&self) -> Option<Inequality> {
        match self {
            ConstructionError::InvalidParams { violated }
            | ConstructionError::ExcludedExtremalCase { violated, .. } => Some(*violated),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Target(#[from] TargetError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

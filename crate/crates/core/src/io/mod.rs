//! JSON interchange formats and seeded instance generation.
//!
//! Output is compact canonical JSON (fixed key order, integers only) followed
//! by a single newline, so saved files compare byte-for-byte.

mod algebra_json;
mod generate;
mod problem_json;

use thiserror::Error;

use crate::algebra::{AlgebraError, AxiomReport};
use crate::csp::CspError;

pub use algebra_json::{load_algebra, load_algebra_unchecked, save_algebra, AlgebraFile};
pub use generate::{gen_random_problem, GenError};
pub use problem_json::{load_problem, parse_raw_problem, save_problem, save_raw_problem};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra fails its axioms:\n{0}")]
    AxiomViolation(AxiomReport),
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error(transparent)]
    Csp(#[from] CspError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Parse(e.to_string())
    }
}

impl From<AlgebraError> for FormatError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::AxiomViolation(report) => FormatError::AxiomViolation(report),
            other => FormatError::Algebra(other),
        }
    }
}

fn to_canonical<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

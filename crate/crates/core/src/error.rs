use std::path::PathBuf;

use thiserror::Error;

/// Errors from group construction and the permutation-group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection")]
    NotBijective,
    #[error("point {0} repeated within one permutation")]
    RepeatedPoint(usize),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Errors from character-table computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group of order {order} with {classes} classes exceeds the character cap")]
    CapExceeded { order: u64, classes: usize },
    #[error("class algebra failed to split into one-dimensional eigenspaces after {attempts} field choices")]
    SplitFailed { attempts: usize },
}

/// Errors from parsing group definition files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed cycle notation: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: point {point} repeated within one element")]
    RepeatedPoint { line: usize, point: usize },
    #[error("degree header {header} is smaller than the largest point {max_point}")]
    DegreeTooSmall { header: usize, max_point: usize },
    #[error("line {line}: bad header: {reason}")]
    BadHeader { line: usize, reason: String },
}

/// Errors from the verification harness.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("invalid corpus configuration: {0}")]
    Config(String),
}

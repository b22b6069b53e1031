use thiserror::Error;

use crate::report::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector does not lie in the subspace")]
    NotInSubspace,
    #[error("matrix is singular")]
    Singular,
    #[error("product of degree {degree} exceeds truncation degree {max}")]
    TruncationOverflow { degree: usize, max: usize },
    #[error("structure check `{check}` failed")]
    CheckFailed { check: String, witness: Option<Box<Witness>> },
    #[error("map is not a comodule morphism")]
    NotAComoduleMorphism(Option<Box<Witness>>),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("quiver has an oriented cycle; the full path space is infinite")]
    CyclicQuiver,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("quotient is not a weak bialgebra: `{check}` failed")]
    QuotientNotWeakBialgebra { check: String },
    #[error("formulaic structure check failed: {0}")]
    FormulaicCheckFailed(String),
    #[error("internal structure check failed: {0}")]
    InternalCheckFailed(String),
    #[error("action data invalid: {0}")]
    ActionDataInvalid(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}

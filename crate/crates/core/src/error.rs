use std::fmt;

use thiserror::Error;

/// A single failed category law, named by the offending morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawViolation {
    #[error("associativity fails for ({h} . {g}) . {f}")]
    Associativity { h: String, g: String, f: String },
    #[error("identity law fails for {f}")]
    IdentityLaw { f: String },
    #[error("composite {g} . {f} is undefined")]
    UndefinedComposite { g: String, f: String },
    #[error("composite {g} . {f} = {h} has the wrong source or target")]
    IllTypedComposite { g: String, f: String, h: String },
    #[error("composite {g} . {f} is declared twice with different values")]
    ConflictingComposite { g: String, f: String },
}

/// Which 2-cell of the mixed composition construction failed to be invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoCell {
    /// The counit of the first adjunction.
    Counit,
    /// The second left adjoint whiskered with the first unit, at the second right adjoint.
    WhiskeredUnit,
}

impl fmt::Display for TwoCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoCell::Counit => f.write_str("counit"),
            TwoCell::WhiskeredUnit => f.write_str("whiskered unit"),
        }
    }
}

/// Source or target side of a functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Source => f.write_str("source"),
            Side::Target => f.write_str("target"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid category: {}", join(.0))]
    InvalidCategory(Vec<LawViolation>),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidTransformation(String),
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("object {0} not found")]
    ObjectNotFound(String),
    #[error("unsupported weight class '{0}'")]
    UnsupportedClass(String),
    #[error("unsupported table pair ({psi}, {phi})")]
    UnsupportedPair { psi: String, phi: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("hypothesis failure: {cell} is not invertible at {object}")]
    HypothesisFailure { cell: TwoCell, object: String },
    #[error("precondition failure: {side} is not {class}-cocomplete (no colimit for {diagram})")]
    PreconditionFailure { side: Side, class: String, diagram: String },
    #[error("not a complete lattice: {0}")]
    NotCompleteLattice(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl LawViolation {
    /// Stable name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            LawViolation::Associativity { .. } => "Associativity",
            LawViolation::IdentityLaw { .. } => "IdentityLaw",
            LawViolation::UndefinedComposite { .. } => "UndefinedComposite",
            LawViolation::IllTypedComposite { .. } => "IllTypedComposite",
            LawViolation::ConflictingComposite { .. } => "ConflictingComposite",
        }
    }
}

impl Error {
    /// Stable name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "Parse",
            Error::InvalidCategory(_) => "InvalidCategory",
            Error::InvalidFunctor(_) => "InvalidFunctor",
            Error::InvalidTransformation(_) => "InvalidTransformation",
            Error::InvalidPresheaf(_) => "InvalidPresheaf",
            Error::InvalidPoset(_) => "InvalidPoset",
            Error::ObjectNotFound(_) => "ObjectNotFound",
            Error::UnsupportedClass(_) => "UnsupportedClass",
            Error::UnsupportedPair { .. } => "UnsupportedPair",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::HypothesisFailure { .. } => "HypothesisFailure",
            Error::PreconditionFailure { .. } => "PreconditionFailure",
            Error::NotCompleteLattice(_) => "NotCompleteLattice",
            Error::Io(_) => "Io",
        }
    }
}

fn join(violations: &[LawViolation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

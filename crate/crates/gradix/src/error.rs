use std::fmt;

/// Named invariants checked by the validators. The name appears in every
/// validation message so that callers can tell which axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    Associativity,
    Identity,
    Inverse,
    Composability,
    Connectivity,
    SizeBound,
    Cocycle,
    Normalization,
    ZeroFactor,
    MissingFactor,
    SupportInverseClosure,
    SupportCompositionClosure,
    SupportIdentity,
    DUniqueness,
    RUniqueness,
    EntryDegree,
    Field,
    Bilinearity,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Associativity => "associativity",
            Invariant::Identity => "identity",
            Invariant::Inverse => "inverse",
            Invariant::Composability => "composability",
            Invariant::Connectivity => "connectivity",
            Invariant::SizeBound => "size-bound",
            Invariant::Cocycle => "cocycle",
            Invariant::Normalization => "normalization",
            Invariant::ZeroFactor => "zero-factor",
            Invariant::MissingFactor => "missing-factor",
            Invariant::SupportInverseClosure => "support-inverse-closure",
            Invariant::SupportCompositionClosure => "support-composition-closure",
            Invariant::SupportIdentity => "support-identity",
            Invariant::DUniqueness => "d-uniqueness",
            Invariant::RUniqueness => "r-uniqueness",
            Invariant::EntryDegree => "entry-degree",
            Invariant::Field => "field",
            Invariant::Bilinearity => "bilinearity",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("validation failed [{invariant}]: {detail}")]
    Validation { invariant: Invariant, detail: String },
    #[error("argument error: {0}")]
    Argument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn validation(invariant: Invariant, detail: impl Into<String>) -> Self {
        Error::Validation { invariant, detail: detail.into() }
    }

    /// The violated invariant, when this is a validation failure.
    pub fn invariant(&self) -> Option<Invariant> {
        match self {
            Error::Validation { invariant, .. } => Some(*invariant),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt;

/// Machine-readable failure codes. The string form is stable and appears in
/// CLI output and JSON reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorCode {
    Syntax,
    UnknownKey,
    MissingField,
    DuplicateName,
    UndeclaredBasis,
    DegreeMismatch,
    InvalidRing,
    AsymmetricProduct,
    NonAssociative,
    BettiMismatch,
    EulerMismatch,
    P1Mismatch,
    SignatureMismatch,
    AcsInconsistent,
    HirzebruchCongruence,
    NotASpincLift,
    RingMismatch,
    DegreeOverflow,
    RelationMismatch,
    NonTopDegree,
    HalvingObstructed,
    SubstitutionIdentity,
    ClosedFormUnverified,
    NonIntegralResult,
    InsufficientRingData,
    MissingBetti,
    B1Nonzero,
    ChernNumberZero,
    UnknownBuiltin,
    InvalidParams,
    UnknownAcs,
    UnknownSpinLift,
    WrongDimension,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "syntax",
            ErrorCode::UnknownKey => "unknown-key",
            ErrorCode::MissingField => "missing-field",
            ErrorCode::DuplicateName => "duplicate-name",
            ErrorCode::UndeclaredBasis => "undeclared-basis",
            ErrorCode::DegreeMismatch => "degree-mismatch",
            ErrorCode::InvalidRing => "invalid-ring",
            ErrorCode::AsymmetricProduct => "asymmetric-product",
            ErrorCode::NonAssociative => "non-associative",
            ErrorCode::BettiMismatch => "betti-mismatch",
            ErrorCode::EulerMismatch => "euler-mismatch",
            ErrorCode::P1Mismatch => "p1-mismatch",
            ErrorCode::SignatureMismatch => "signature-mismatch",
            ErrorCode::AcsInconsistent => "acs-inconsistent",
            ErrorCode::HirzebruchCongruence => "hirzebruch-congruence",
            ErrorCode::NotASpincLift => "not-a-spinc-lift",
            ErrorCode::RingMismatch => "ring-mismatch",
            ErrorCode::DegreeOverflow => "degree-overflow",
            ErrorCode::RelationMismatch => "relation-mismatch",
            ErrorCode::NonTopDegree => "non-top-degree",
            ErrorCode::HalvingObstructed => "halving-obstructed",
            ErrorCode::SubstitutionIdentity => "substitution-identity",
            ErrorCode::ClosedFormUnverified => "closed-form-unverified",
            ErrorCode::NonIntegralResult => "non-integral-result",
            ErrorCode::InsufficientRingData => "insufficient-ring-data",
            ErrorCode::MissingBetti => "missing-betti",
            ErrorCode::B1Nonzero => "b1-nonzero",
            ErrorCode::ChernNumberZero => "chern-number-zero",
            ErrorCode::UnknownBuiltin => "unknown-builtin",
            ErrorCode::InvalidParams => "invalid-params",
            ErrorCode::UnknownAcs => "unknown-acs",
            ErrorCode::UnknownSpinLift => "unknown-spinc-lift",
            ErrorCode::WrongDimension => "wrong-dimension",
        }
    }

    /// Parse and validation failures, as opposed to failures of a computation
    /// on already-accepted data.
    pub fn is_input_error(self) -> bool {
        matches!(
            self,
            ErrorCode::Syntax
                | ErrorCode::UnknownKey
                | ErrorCode::MissingField
                | ErrorCode::DuplicateName
                | ErrorCode::UndeclaredBasis
                | ErrorCode::DegreeMismatch
                | ErrorCode::InvalidRing
                | ErrorCode::AsymmetricProduct
                | ErrorCode::NonAssociative
                | ErrorCode::BettiMismatch
                | ErrorCode::EulerMismatch
                | ErrorCode::P1Mismatch
                | ErrorCode::SignatureMismatch
                | ErrorCode::AcsInconsistent
                | ErrorCode::HirzebruchCongruence
                | ErrorCode::NotASpincLift
                | ErrorCode::UnknownBuiltin
                | ErrorCode::InvalidParams
                | ErrorCode::UnknownAcs
                | ErrorCode::UnknownSpinLift
        )
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// 1-based position in DSL source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct Error {
    pub code: ErrorCode,
    pub message: String,
    pub location: Option<Location>,
}

impl Error {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Error {
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn at(code: ErrorCode, location: Location, message: impl Into<String>) -> Self {
        Error {
            code,
            message: message.into(),
            location: Some(location),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(loc) = self.location {
            write!(f, "{}:{}: ", loc.line, loc.column)?;
        }
        write!(f, "{}: {}", self.code, self.message)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

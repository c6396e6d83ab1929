use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which of the construction theorems a built model failed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantCheck {
    ProjectionDegree,
    NamedSum,
    ExceptionalTotal,
    HeightFormula,
    BranchBounds,
    MapIdentities,
    CertificateIdentity,
}

impl std::fmt::Display for InvariantCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InvariantCheck::ProjectionDegree => "(1) deg h1 = deg h2 = 2n",
            InvariantCheck::NamedSum => "(2) sum of named intersections = 6n-2",
            InvariantCheck::ExceptionalTotal => "(3) P.D = 8n-2 and P.A00 = 2n",
            InvariantCheck::HeightFormula => "(4) P.A11 height formula",
            InvariantCheck::BranchBounds => "(5) branch count bounds",
            InvariantCheck::MapIdentities => "(6) map identities",
            InvariantCheck::CertificateIdentity => "certificate re-verification",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate Legendre parameter: a and b must avoid 0 and 1")]
    DegenerateLegendre,
    #[error("E_a and E_b are isomorphic (b lies in the j-orbit of a)")]
    IsomorphicFactors,
    #[error("point does not lie on the pencil cubic")]
    NotOnPencil,
    #[error("singular point of the pencil cubic")]
    SingularPoint,
    #[error("named section index ({0},{1}) out of range 1..=3")]
    BadSectionIndex(usize, usize),

    #[error("input {0} out of range")]
    NegativeInput(i64),

    #[error("section is constant; no branch polynomial")]
    ConstantSection,
    #[error("branch count has odd parity")]
    OddBranchParity,
    #[error("section coincides with A{0}{1}; refusing to compute a self-intersection")]
    SelfIntersectionRequest(usize, usize),
    #[error("could not classify fiber components: {0}")]
    ComponentClassificationFailure(String),
    #[error("quadruple has n = 0; section is one of the nine constant sections")]
    DegenerateSection,
    #[error("internal invariant violated: {check} ({detail})")]
    InternalInvariantViolation { check: InvariantCheck, detail: String },

    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that can only arise from a bug, never from user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalInvariantViolation { .. }
                | Error::OddBranchParity
                | Error::ComponentClassificationFailure(_)
                | Error::SingularPoint
        )
    }
}

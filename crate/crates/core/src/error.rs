use thiserror::Error;

/// Errors raised while building or checking lattice structures.
///
/// Element witnesses are carried as labels so the message is meaningful
/// without access to the lattice that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("`{x}` and `{y}` have no unique {bound}")]
    NotALattice {
        x: String,
        y: String,
        bound: &'static str,
    },
    #[error("the order has no global bottom or top")]
    NoBounds,
    #[error("size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: u128, limit: usize },
    #[error("`{x}` and `{y}` are members but their {op} `{witness}` is not")]
    NotClosed {
        x: String,
        y: String,
        witness: String,
        op: &'static str,
    },
    #[error("the {bound} element `{label}` is missing from the system")]
    MissingBound { bound: &'static str, label: String },
    #[error("not a {kind} operator: {law} fails at {witness}")]
    NotClosureOperator {
        kind: &'static str,
        law: &'static str,
        witness: String,
    },
    #[error("map is not sup-preserving: {0}")]
    NotSupPreserving(String),
    #[error("map is not inf-preserving: {0}")]
    NotInfPreserving(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("maps are not adjoint: {0}")]
    NotAdjoint(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("boundary condition violated: expected `{expected}`, got `{actual}`")]
    BoundaryViolation { expected: String, actual: String },
    #[error("all slots must live on the same host lattice")]
    HostMismatch,
    #[error("expected {expected} arguments, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("not a sublattice: {0}")]
    NotSublattice(String),
    #[error("lattice is not distributive: `{x}`, `{y}`, `{z}`")]
    NotDistributive { x: String, y: String, z: String },
    #[error("not a subdirect embedding: {0}")]
    NotSubdirect(String),
    #[error("lattice does not carry a product structure")]
    NotAProduct,
    #[error("token `{0}` has no assigned map")]
    UnmappedToken(String),
    #[error("concept list is not complete: {0}")]
    NotComplete(String),
    #[error("context is not binary: token `{0}`")]
    NotBinary(String),
    #[error("missing cell at object `{object}`, attribute `{attribute}`")]
    MissingCell { object: String, attribute: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::Cycle(..) => "CycleError",
            Error::NotALattice { .. } => "NotALattice",
            Error::NoBounds => "NoBounds",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::NotClosed { .. } => "NotClosed",
            Error::MissingBound { .. } => "MissingBound",
            Error::NotClosureOperator { .. } => "NotClosureOperator",
            Error::NotSupPreserving(_) => "NotSupPreserving",
            Error::NotInfPreserving(_) => "NotInfPreserving",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::NotAdjoint(_) => "NotAdjoint",
            Error::NotIso(_) => "NotIso",
            Error::BoundaryViolation { .. } => "BoundaryViolation",
            Error::HostMismatch => "HostMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::NotSublattice(_) => "NotSublattice",
            Error::NotDistributive { .. } => "NotDistributive",
            Error::NotSubdirect(_) => "NotSubdirect",
            Error::NotAProduct => "NotAProduct",
            Error::UnmappedToken(_) => "UnmappedToken",
            Error::NotComplete(_) => "NotComplete",
            Error::NotBinary(_) => "NotBinary",
            Error::MissingCell { .. } => "MissingCell",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }

    /// True for failures to read or parse input, as opposed to inputs that
    /// parse but violate a mathematical requirement.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io(_)
                | Error::Parse(_)
                | Error::DuplicateLabel(_)
                | Error::UnknownLabel(_)
                | Error::MissingCell { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

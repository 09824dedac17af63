use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("phi is zero; the construction requires a regular element")]
    ZeroPhi,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty generator list")]
    EmptyInput,
    #[error("input cochain is not a cocycle")]
    NotACocycle,
    #[error("certificate does not expand to 1")]
    InvalidCertificate,
    #[error("lambda is not a common zero of phi, phi_1, phi_2")]
    NotACommonZero,
    #[error("element is not in kernel-parameter form: {0}")]
    NotKernelForm(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("relation {0} does not reduce to zero")]
    RelationFails(usize),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{0}` is an unfilled template")]
    IncompleteTemplate(String),
    #[error("verification depth {0} is below the minimum of 4")]
    InvalidDepth(usize),
    #[error("the instance is not smooth")]
    NotSmooth,
    #[error("invalid automorphism generator: {0}")]
    InvalidGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

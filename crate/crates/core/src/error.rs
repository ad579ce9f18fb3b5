use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group order {order} exceeds the bound {max}")]
    OrderBound { order: usize, max: usize },
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("not contained: {0}")]
    NotContained(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown subgroup class label `{0}`")]
    BadLabel(String),
    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: String, ring: String },
    #[error("map is not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("group `{0}` is not a recorded square G x G")]
    NotAProductGroup(String),
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("bad ring: {0}")]
    Ring(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Stable machine-readable code, used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) | Error::BadLabel(_) => "E_PARSE",
            Error::OrderBound { .. } => "E_ORDER_BOUND",
            Error::Ring(_) | Error::NotInvertible { .. } => "E_RING",
            Error::ResourceBound(_) => "E_RESOURCE",
            _ => "E_INTERNAL",
        }
    }
}

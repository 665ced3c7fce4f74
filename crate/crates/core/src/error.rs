use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("{0} is not a subgroup of the ambient group")]
    NotContained(&'static str),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("operation undefined on the trivial group")]
    TrivialGroup,
    #[error("maximal class is only defined for order p^n with n >= 3 (got p^{0})")]
    OrderTooSmallForMaximalClass(u32),
    #[error("enumeration bound exceeded: order {order} > bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("upper central series stalled before reaching the group (non-nilpotent input)")]
    SeriesStalled,
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("collection exceeded the step budget of {0}")]
    CollectionBudget(usize),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("catalog is missing entries of order {0}")]
    CatalogMissingOrder(usize),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("cycle notation parse error: {0}")]
    Parse(String),
    #[error("enumeration cap exceeded: more than {0} element products")]
    CapExceeded(u64),
    #[error("group order {order} exceeds cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid element id {0}")]
    InvalidId(u32),
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("catalog verification failed for {group}/{label}: {detail}")]
    CatalogVerification { group: String, label: String, detail: String },
    #[error("group spec file: {0}")]
    SpecFile(String),
    #[error("wreath exponent mismatch: {0} vs {1}")]
    ExponentMismatch(usize, usize),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("family does not cover the group: element {0} is uncovered")]
    NotACover(String),
    #[error("unknown lemma id {0}")]
    UnknownLemma(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

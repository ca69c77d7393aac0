use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("universe must have between 1 and {max} worlds, got {got}")]
    UniverseSize { got: usize, max: usize },
    #[error("invalid world labels: {0}")]
    InvalidLabels(String),
    #[error("world {world} is outside a universe of {size} worlds")]
    WorldOutOfRange { world: usize, size: usize },
    #[error("non-contingent issue {0}: issues must be neither empty nor the whole universe")]
    NonContingentIssue(String),
    #[error("agenda is not closed under complement: {0} has no complement")]
    NotComplementClosed(String),
    #[error("agenda is empty")]
    EmptyAgenda,
    #[error("duplicate issue name {0:?}")]
    DuplicateName(String),
    #[error("unknown issue {0:?}")]
    IssueNotInAgenda(String),
    #[error("{what}: {got} exceeds the limit of {limit}")]
    LimitExceeded { what: &'static str, got: usize, limit: usize },
    #[error("negated set is not a subset of the base set")]
    NotASubset,
    #[error("sub-agenda selection is not closed under complement")]
    NotASubAgenda,
    #[error("invalid mass function: {0}")]
    InvalidMass(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("rule expects {expected} individuals, profile has {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("profile value {0} is not on the rule's 1/{1} grid")]
    OffGrid(String, u32),
    #[error("rule is not systematic: {0}")]
    NotSystematic(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("too many atoms: {got} (at most {max})")]
    TooManyAtoms { got: usize, max: usize },
}

impl Error {
    pub(crate) fn limit(what: &'static str, got: usize, limit: usize) -> Self {
        Error::LimitExceeded { what, got, limit }
    }
}

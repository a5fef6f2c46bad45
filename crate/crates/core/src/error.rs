use thiserror::Error;

use crate::monoid::MonoidKind;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("element {element} is not valid for monoid {kind}")]
    KindMismatch { kind: MonoidKind, element: String },

    #[error("closed balls of {0} are infinite; enumeration is not defined")]
    UnboundedBall(MonoidKind),

    #[error("operation `{op}` is not supported on monoid {kind}")]
    UnsupportedMonoid { op: &'static str, kind: MonoidKind },

    #[error("alphabets are not disjoint: symbol `{0}` is shared")]
    NonDisjointAlphabets(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("exact language enumeration unavailable: {0}")]
    ExactnessUnavailable(String),

    #[error("oracle budget exceeded: {0}")]
    OracleBudgetExceeded(String),

    #[error("generator variant precondition failed: {0}")]
    VariantPreconditionFailed(String),

    #[error("required recoding conditions could not be verified: {0}")]
    ConditionsUnverified(String),

    #[error(
        "overlap condition violated at ({g}, {h}): coordinate {gm} decodes to both `{a}` and `{b}`"
    )]
    OverlapViolation {
        g: String,
        h: String,
        gm: String,
        a: String,
        b: String,
    },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("fixture `{0}` requires an explicit bound")]
    MissingBound(String),

    #[error("spec is not {m}-step at the tested budget: witness ({u}, {w}, {v})")]
    NotMStep {
        m: usize,
        u: String,
        w: String,
        v: String,
    },

    #[error("source step {step} exceeds the code window length {window}")]
    StepExceedsWindow { step: usize, window: usize },

    #[error("no finite coordinate set covers the forbidden patterns after expansion")]
    InfiniteMemory,

    #[error("{file}:{line}: {production}: {message}")]
    Parse {
        file: String,
        line: usize,
        production: &'static str,
        message: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

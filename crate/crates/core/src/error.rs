use thiserror::Error;

use crate::io::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("element index {index} out of range for a poset of {size} elements")]
    ElementOutOfRange { index: usize, size: usize },

    /// The relation pairs close up into a cycle; the smallest offending cycle
    /// is reported, starting and ending at the same element.
    #[error("order relation is not antisymmetric: cycle {}", .cycle.join(" < "))]
    CycleDetected { cycle: Vec<String> },

    #[error("poset has {count} elements, more than the cap of {cap}")]
    TooManyElements { count: usize, cap: usize },

    #[error("{what} has more than {limit} members")]
    TooLarge { what: &'static str, limit: usize },

    #[error("monotone map belongs to a different base poset")]
    BaseMismatch,

    #[error("support {support:#x} is not an up-set of the base poset")]
    NotAnUpSet { support: u64 },

    #[error("{lemma} violated: {counterexample}")]
    LemmaViolation {
        lemma: &'static str,
        counterexample: String,
    },

    #[error("no element p with lambda_p equal to kernel top {kernel_top}")]
    NoWitness { kernel_top: String },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// True for errors caused by a size cap rather than bad input.
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::TooManyElements { .. } | Error::TooLarge { .. })
    }

    pub fn is_lemma_failure(&self) -> bool {
        matches!(self, Error::LemmaViolation { .. } | Error::NoWitness { .. })
    }
}

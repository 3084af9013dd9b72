use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by zero in a coefficient")]
    DivisionByZero,

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("input is not homogeneous ({0}); homogenize the labels or generators first")]
    Inhomogeneous(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("no label given for vertex `{0}`")]
    MissingVertexLabel(String),

    #[error("edge e{} does not lie on cycle {}", .edge + 1, .cycle + 1)]
    EdgeNotOnCycle { cycle: usize, edge: usize },

    #[error("edge e{} is not an interior edge", .0 + 1)]
    EdgeNotInterior(usize),

    #[error("removal step no longer applies to this graph state")]
    StaleStep,

    #[error("no cycle can be split off")]
    NoSplittableCycle,

    #[error("vector is not in the kernel of the boundary matrix")]
    NotInKernel,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

impl Error {
    /// Errors caused by malformed input text rather than by the mathematics.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidRing(_)
                | Error::UnknownVariable(_)
                | Error::Syntax { .. }
                | Error::DivisionByZero
                | Error::Format { .. }
                | Error::InvalidGraph(_)
                | Error::MissingVertexLabel(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

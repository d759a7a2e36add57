use std::io;

use coloring_games::graph::ParseError;
use coloring_games::oriented_path::PathError;
use coloring_games::{GraphError, PositionError, ReductionError, RulesetError, SequentialError, SolveError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or input files.
    #[error("{0}")]
    Usage(String),
    /// A size, memory or time budget ran out.
    #[error("{0}")]
    Budget(String),
    /// An oracle suite found a disagreement.
    #[error("{0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        })*
    };
}

usage_from!(GraphError, ParseError, PositionError, RulesetError);

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            SolveError::ForeignPosition => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::BoundTooLarge { .. } | PathError::Overflow { .. } => CliError::Budget(e.to_string()),
            PathError::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SequentialError> for CliError {
    fn from(e: SequentialError) -> Self {
        match e {
            SequentialError::TooLarge { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::TooLarge { .. } => CliError::Budget(e.to_string()),
            ReductionError::Solve(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

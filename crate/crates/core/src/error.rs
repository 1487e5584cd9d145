use thiserror::Error;

use crate::engine::Action;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("unsupported formatVersion {0}")]
    Version(u32),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("illegal action {action}: {reason}")]
    IllegalAction { action: Action, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// `step` is the index of the offending action in the script.
    #[error("step {step}: {source}")]
    Illegal {
        step: usize,
        #[source]
        source: EngineError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("schedule infeasible at turn {turn}, step {step}: {reason}")]
    ScheduleInfeasible {
        turn: u32,
        step: usize,
        reason: String,
    },
    #[error("value {0} needs no carrier buffs")]
    NoMinionNeeded(u64),
    #[error("scripted line desynchronized at step {step}: {reason}")]
    Desync { step: usize, reason: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

//! Partition game to perfect-information Hearthstone: a rules engine for the
//! card subset, a compiler from partition instances to game positions with a
//! scripted line of play, and solvers that check the two games agree.

pub mod cards;
pub mod engine;
pub mod error;
pub mod par;
pub mod reduction;
pub mod solver;

pub use cards::{card_database, CardId, CardSpec};
pub use engine::{GameConfig, GameState, Outcome, Player};
pub use error::{ConfigError, EngineError, ReductionError, ReplayError};

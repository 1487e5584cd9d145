//! Deterministic rules engine for the card subset.

mod action;
mod config;
mod event;
mod hash;
mod replay;
mod rules;
mod state;

pub use action::{Action, CharRef};
pub use config::{
    GameConfig, HeroConfig, MinionConfig, MinionFlag, Phase, PlayerConfig, FORMAT_VERSION,
};
pub use event::{CharSnapshot, Event, EventKind, EventSink};
pub use hash::state_hash;
pub use replay::{replay, Replay};
pub use rules::{
    apply, apply_in_place, apply_with, attack_defenders, is_legal, legal_actions, outcome_of,
    snapshot, spell_targets,
};
pub use state::{
    Deck, GameState, HeroState, MinionInstance, Outcome, Player, PlayerState, Weapon,
    DEFAULT_TURN_LIMIT, HERO_MAX_HEALTH, MAX_BOARD, MAX_HAND, MAX_MANA,
};

#[cfg(test)]
mod tests;

use crate::error::ReplayError;

use super::action::Action;
use super::config::GameConfig;
use super::event::Event;
use super::rules;
use super::state::GameState;

#[derive(Clone, Debug)]
pub struct Replay {
    pub state: GameState,
    pub events: Vec<Event>,
}

/// Runs `script` from the config's initial position, checking every action.
/// On failure the error carries the index of the offending action.
pub fn replay(config: &GameConfig, script: &[Action]) -> Result<Replay, ReplayError> {
    let mut events = Vec::new();
    let mut state = config.to_state_with(&mut events)?;
    for (step, &action) in script.iter().enumerate() {
        state = rules::apply_with(&state, action, &mut events)
            .map_err(|source| ReplayError::Illegal { step, source })?;
    }
    Ok(Replay { state, events })
}

//! Search restricted to the line's decision points.

use std::collections::HashMap;

use crate::engine::{state_hash, Action, GameConfig, GameState, Outcome, Player};
use crate::error::ReductionError;
use crate::reduction::{advance, Choice, Halt, ScriptedLine};

use super::minimax::{SolveResult, Verdict};

struct Skeleton<'a> {
    line: &'a ScriptedLine,
    memo: HashMap<(usize, u64), bool>,
    nodes: u64,
    hits: u64,
}

impl Skeleton<'_> {
    /// Whether the friendly player wins from `state` at step `pc`, with the
    /// remaining decisions taken optimally by their owners. Filler steps are
    /// played verbatim; every ending other than a friendly win counts as a loss.
    fn solve(
        &mut self,
        mut state: GameState,
        pc: usize,
        choices: &mut Vec<Option<Choice>>,
    ) -> Result<bool, ReductionError> {
        self.nodes += 1;
        match advance(self.line, &mut state, pc, choices, |_, _, _| {})? {
            Halt::Done => Ok(state.outcome == Outcome::FriendlyWins),
            Halt::Decision { pc, decision } => {
                let key = (decision, state_hash(&state));
                if let Some(&v) = self.memo.get(&key) {
                    self.hits += 1;
                    return Ok(v);
                }
                let maximize = self.line.decisions[decision].player == Player::Friendly;
                let mut result = !maximize;
                for c in [Choice::X, Choice::Y] {
                    choices[decision] = Some(c);
                    let v = self.solve(state.clone(), pc, choices)?;
                    choices[decision] = None;
                    if v == maximize {
                        result = maximize;
                        break;
                    }
                }
                self.memo.insert(key, result);
                Ok(result)
            }
        }
    }
}

/// Skeleton value (friendly wins?) of continuing the line from `state` at
/// step `pc` with the given partial choice vector.
pub(crate) fn branch_value(
    line: &ScriptedLine,
    state: GameState,
    pc: usize,
    choices: &mut Vec<Option<Choice>>,
) -> Result<bool, ReductionError> {
    let mut sk = Skeleton {
        line,
        memo: HashMap::new(),
        nodes: 0,
        hits: 0,
    };
    sk.solve(state, pc, choices)
}

/// Solves the choice skeleton of a compiled line. The principal variation is
/// the scripted play under one optimal choice vector (see [`best_choices`]).
pub fn skeleton_solve(
    config: &GameConfig,
    line: &ScriptedLine,
) -> Result<SolveResult, ReductionError> {
    let state = config.to_state()?;
    let mut sk = Skeleton {
        line,
        memo: HashMap::new(),
        nodes: 0,
        hits: 0,
    };
    let mut choices = vec![None; line.decisions.len()];
    let win = sk.solve(state, 0, &mut choices)?;
    let (choices, _) = best_choices(config, line)?;
    let pv = crate::reduction::materialize(config, line, &choices)?;
    Ok(SolveResult {
        verdict: if win { Verdict::Win } else { Verdict::Loss },
        principal_variation: pv,
        nodes: sk.nodes,
        tt_hits: sk.hits,
    })
}

/// One optimal choice vector: each decision's owner picks a branch that
/// keeps the skeleton value, preferring x. Returns the vector and whether it
/// ends in a friendly win.
pub fn best_choices(
    config: &GameConfig,
    line: &ScriptedLine,
) -> Result<(Vec<Choice>, bool), ReductionError> {
    let mut sk = Skeleton {
        line,
        memo: HashMap::new(),
        nodes: 0,
        hits: 0,
    };
    let mut state = config.to_state()?;
    let mut choices: Vec<Option<Choice>> = vec![None; line.decisions.len()];
    let mut pc = 0;
    loop {
        match advance(line, &mut state, pc, &choices, |_, _, _| {})? {
            Halt::Done => break,
            Halt::Decision { pc: at, decision } => {
                let maximize = line.decisions[decision].player == Player::Friendly;
                let mut pick = Choice::X;
                for c in [Choice::X, Choice::Y] {
                    choices[decision] = Some(c);
                    let v = sk.solve(state.clone(), at, &mut choices)?;
                    if v == maximize {
                        pick = c;
                        break;
                    }
                }
                choices[decision] = Some(pick);
                pc = at;
            }
        }
    }
    let win = state.outcome == Outcome::FriendlyWins;
    // decisions the game never reached default to x
    Ok((
        choices
            .into_iter()
            .map(|c| c.unwrap_or(Choice::X))
            .collect(),
        win,
    ))
}

/// Actions of the line under `choices`, each with its step index and
/// pre-state.
pub fn trace_line(
    config: &GameConfig,
    line: &ScriptedLine,
    choices: &[Choice],
) -> Result<(Vec<(usize, GameState, Action)>, GameState), ReductionError> {
    let mut state = config.to_state()?;
    let chosen: Vec<Option<Choice>> = choices.iter().copied().map(Some).collect();
    let mut out = Vec::new();
    advance(line, &mut state, 0, &chosen, |pc, s, a| {
        out.push((pc, s.clone(), a))
    })?;
    Ok((out, state))
}

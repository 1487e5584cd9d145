//! The compiler's intended line of play.
//!
//! A line is a flat list of symbolic steps. Steps refer to cards by id and to
//! characters by position relative to the right edge of a board, and are
//! resolved against the live position when the line is played. Steps that
//! depend on a partition choice carry a guard `(decision, choice)` and are
//! skipped unless that choice was taken; the first guarded step of a decision
//! is where the choice is made.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cards::{CardId, CardKind};
use crate::engine::{self, Action, CharRef, GameState, Player};
use crate::error::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Choice {
    X,
    Y,
}

impl Choice {
    pub fn pick(self, pair: (u64, u64)) -> u64 {
        match self {
            Choice::X => pair.0,
            Choice::Y => pair.1,
        }
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Choice::X => "x",
            Choice::Y => "y",
        })
    }
}

/// Parses strings like `"xyyx"`.
pub fn parse_choices(s: &str) -> Result<Vec<Choice>, ReductionError> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c.to_ascii_lowercase() {
            'x' => Ok(Choice::X),
            'y' => Ok(Choice::Y),
            other => Err(ReductionError::InvalidInstance(format!(
                "bad choice character {other:?}"
            ))),
        })
        .collect()
}

pub fn format_choices(choices: &[Choice]) -> String {
    choices.iter().map(|c| c.to_string()).collect()
}

/// A character, relative to the player taking the step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    OwnHero,
    OpponentHero,
    /// 0 is the rightmost minion.
    OwnFromRight(usize),
    OpponentFromRight(usize),
    /// Leftmost opponent minion with this card id.
    OpponentCard(CardId),
}

impl Target {
    pub fn resolve(self, state: &GameState, me: Player) -> Option<CharRef> {
        let from_right = |side: Player, k: usize| {
            let len = state.player(side).board.len();
            (k < len).then(|| CharRef::minion(side, len - 1 - k))
        };
        match self {
            Target::OwnHero => Some(CharRef::hero(me)),
            Target::OpponentHero => Some(CharRef::hero(me.opponent())),
            Target::OwnFromRight(k) => from_right(me, k),
            Target::OpponentFromRight(k) => from_right(me.opponent(), k),
            Target::OpponentCard(card) => state
                .find_minion(me.opponent(), card)
                .map(|slot| CharRef::minion(me.opponent(), slot)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// Minions always go to the rightmost slot.
    Play {
        card: CardId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<Target>,
    },
    Attack {
        attacker: Target,
        defender: Target,
    },
    EndTurn,
}

/// What a forcing argument protects. Used to pick spot-check sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForceTag {
    FrostNova,
    CarrierSummon,
    DecisionSpell,
    DecisionAttack,
    Finisher,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Guard {
    pub decision: usize,
    pub choice: Choice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineStep {
    pub turn: u32,
    pub step: Step,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<Guard>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<ForceTag>,
    /// Skipped, ending the line, when not legal.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub optional: bool,
}

/// One side of a decision as shown to users.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub turn: u32,
    pub choice: Choice,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub turn: u32,
    /// Friendly decisions maximize, enemy decisions minimize.
    pub player: Player,
    pub x: Annotation,
    pub y: Annotation,
    /// Carrier attack after Charge for each option, 10·v + 2 on the
    /// normalized values.
    pub attack_x: u64,
    pub attack_y: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScriptedLine {
    pub format_version: u32,
    /// Added to every value of a pair containing a zero (see
    /// `PartitionInstance::normalized`).
    pub shift: u64,
    pub decisions: Vec<Decision>,
    pub steps: Vec<LineStep>,
}

impl ScriptedLine {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("line serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<ScriptedLine, ReductionError> {
        serde_json::from_str(s)
            .map_err(|e| ReductionError::InvalidInstance(format!("malformed line: {e}")))
    }

    /// Index of the step at which each decision is taken.
    pub fn decision_sites(&self) -> Vec<usize> {
        let mut sites = vec![usize::MAX; self.decisions.len()];
        for (i, s) in self.steps.iter().enumerate() {
            if let Some(g) = s.guard {
                if sites[g.decision] == usize::MAX {
                    sites[g.decision] = i;
                }
            }
        }
        sites
    }
}

/// Resolves one symbolic step to a concrete action in `state`.
pub fn resolve_step(state: &GameState, step: &Step) -> Option<Action> {
    let me = state.active;
    match *step {
        Step::Play { card, target } => {
            let p = state.player(me);
            let hand = p.hand.iter().position(|&c| c == card)?;
            let target = match target {
                Some(t) => Some(t.resolve(state, me)?),
                None => None,
            };
            let position = (card.spec().kind == CardKind::Minion).then_some(p.board.len());
            Some(Action::PlayCard {
                hand,
                target,
                position,
            })
        }
        Step::Attack { attacker, defender } => Some(Action::Attack {
            attacker: attacker.resolve(state, me)?,
            defender: defender.resolve(state, me)?,
        }),
        Step::EndTurn => Some(Action::EndTurn),
    }
}

/// Where a walk of the line stopped.
pub enum Halt {
    /// The game ended, the line ran out, or an optional step was illegal.
    Done,
    /// Step `pc` is the first step of an undecided decision.
    Decision { pc: usize, decision: usize },
}

/// Plays the line from step `pc` until it needs an undecided choice or ends.
/// `choices[d]` is `None` for decisions not yet taken. Every action is
/// legality-checked; a non-optional step that fails to resolve or is illegal
/// is a desync. `on_action` sees the step index and pre-state of each action.
pub fn advance(
    line: &ScriptedLine,
    state: &mut GameState,
    mut pc: usize,
    choices: &[Option<Choice>],
    mut on_action: impl FnMut(usize, &GameState, Action),
) -> Result<Halt, ReductionError> {
    while pc < line.steps.len() {
        if state.outcome.is_over() {
            return Ok(Halt::Done);
        }
        let ls = &line.steps[pc];
        if let Some(g) = ls.guard {
            match choices.get(g.decision).copied().flatten() {
                None => {
                    return Ok(Halt::Decision {
                        pc,
                        decision: g.decision,
                    })
                }
                Some(c) if c != g.choice => {
                    pc += 1;
                    continue;
                }
                Some(_) => {}
            }
        }
        let action = resolve_step(state, &ls.step).filter(|a| engine::is_legal(state, a));
        match action {
            Some(a) => {
                on_action(pc, state, a);
                engine::apply_in_place(state, a, &mut ());
            }
            None if ls.optional => return Ok(Halt::Done),
            None => {
                return Err(ReductionError::Desync {
                    step: pc,
                    reason: format!("turn {}: cannot perform {:?}", ls.turn, ls.step),
                })
            }
        }
        pc += 1;
    }
    Ok(Halt::Done)
}

/// Concrete actions of the line under a full choice vector, stopping early
/// if the game ends.
pub fn materialize(
    config: &engine::GameConfig,
    line: &ScriptedLine,
    choices: &[Choice],
) -> Result<Vec<Action>, ReductionError> {
    if choices.len() != line.decisions.len() {
        return Err(ReductionError::InvalidInstance(format!(
            "expected {} choices, got {}",
            line.decisions.len(),
            choices.len()
        )));
    }
    let mut state = config.to_state()?;
    let chosen: Vec<Option<Choice>> = choices.iter().copied().map(Some).collect();
    let mut actions = Vec::new();
    advance(line, &mut state, 0, &chosen, |_, _, a| actions.push(a))?;
    Ok(actions)
}

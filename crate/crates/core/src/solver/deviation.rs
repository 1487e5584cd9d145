//! Probes the scripted line for profitable deviations.
//!
//! At each checked step every legal alternative to the scripted action is
//! tried. An alternative is
//!
//! * `ScriptedDominates` when replaying the next few scripted steps from it
//!   lands on a position the scripted line itself passes through,
//! * `Refuted` when the prover shows the deviating side cannot force a
//!   better outcome than the scripted line gives them,
//! * `Unresolved` otherwise (budget ran out before a proof).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::engine::{self, state_hash, Action, GameConfig, GameState, Outcome, Player};
use crate::error::ReductionError;
use crate::reduction::{format_choices, resolve_step, Choice, ForceTag, ScriptedLine};

use super::minimax::{prove, Budget};
use super::search::{child, ordered_moves, Goal, Tri};
use super::skeleton::{best_choices, branch_value, trace_line};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Probe {
    /// Plies.
    pub depth: u32,
    /// Per deviation.
    pub nodes: u64,
    /// Scripted steps replayed after a deviation when looking for a transposition.
    pub resync: usize,
}

impl Default for Probe {
    fn default() -> Probe {
        Probe {
            depth: 256,
            nodes: 200_000,
            resync: 8,
        }
    }
}

/// Which scripted steps to probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sites {
    /// Steps carrying a forcing tag.
    Tagged,
    All,
    /// Explicit step indices into the line.
    Steps(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub probe: Probe,
    pub sites: Sites,
    /// Restrict to these turns; empty means every turn.
    pub turns: Vec<u32>,
    /// Decision vector to follow; the skeleton-optimal one if `None`.
    pub choices: Option<Vec<Choice>>,
}

impl Default for CheckOptions {
    /// Tagged steps of the opening turn, where every punishment is short
    /// enough for the default budget.
    fn default() -> CheckOptions {
        CheckOptions {
            probe: Probe::default(),
            sites: Sites::Tagged,
            turns: vec![1],
            choices: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviationStatus {
    ScriptedDominates,
    Refuted,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Deviation {
    pub action: Action,
    pub status: DeviationStatus,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StepReport {
    pub step: usize,
    pub turn: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<ForceTag>,
    pub player: Player,
    pub scripted: Action,
    /// Worst status over the alternatives.
    pub status: DeviationStatus,
    pub deviations: Vec<Deviation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeviationReport {
    pub choices: String,
    pub steps: Vec<StepReport>,
    pub refuted: usize,
    pub dominated: usize,
    pub unresolved: usize,
}

impl DeviationReport {
    pub fn unresolved_steps(&self) -> impl Iterator<Item = &StepReport> {
        self.steps
            .iter()
            .filter(|s| s.status == DeviationStatus::Unresolved)
    }

    pub fn find(&self, step: usize, action: &Action) -> Option<&Deviation> {
        self.steps
            .iter()
            .filter(|s| s.step == step)
            .flat_map(|s| &s.deviations)
            .find(|d| &d.action == action)
    }
}

/// The question whose "no" answer refutes a deviation by `who`: could they
/// force something better than the scripted line hands them?
fn refutation_goal(scripted: Outcome, who: Player) -> Goal {
    match scripted.winner() {
        Some(w) if w != who => Goal::AtLeastDraw,
        _ => Goal::Win,
    }
}

struct Ctx<'a> {
    line: &'a ScriptedLine,
    trace: &'a [(usize, GameState, Action)],
    on_line: HashSet<u64>,
    outcome: Outcome,
    probe: Probe,
}

impl Ctx<'_> {
    /// Replays up to `probe.resync` scripted steps from the deviation point
    /// on, resolved afresh, looking for a position the line also reaches.
    /// Steps that no longer resolve are skipped: the deviation may already
    /// have performed them in another order.
    fn rejoins(&self, from: usize, mut s: GameState) -> bool {
        if self.on_line.contains(&state_hash(&s)) {
            return true;
        }
        // the trace already reflects the chosen guards
        for &(pc, _, _) in self.trace.iter().skip(from).take(self.probe.resync) {
            let Some(a) =
                resolve_step(&s, &self.line.steps[pc].step).filter(|a| engine::is_legal(&s, a))
            else {
                continue;
            };
            engine::apply_in_place(&mut s, a, &mut ());
            if self.on_line.contains(&state_hash(&s)) {
                return true;
            }
        }
        false
    }

    fn judge(&self, at: usize, pre: &GameState, a: Action) -> Deviation {
        let s = child(pre, a);
        let (status, nodes) = self.judge_state(at, pre.active, s);
        Deviation {
            action: a,
            status,
            nodes,
        }
    }

    fn judge_state(&self, at: usize, who: Player, s: GameState) -> (DeviationStatus, u64) {
        if self.rejoins(at, s.clone()) {
            return (DeviationStatus::ScriptedDominates, 0);
        }
        let budget = Budget {
            max_nodes: self.probe.nodes,
            max_depth: self.probe.depth,
            use_table: true,
        };
        let (r, nodes) = prove(&s, who, refutation_goal(self.outcome, who), budget);
        let status = match r {
            Tri::No => DeviationStatus::Refuted,
            // a deviation that is genuinely better is reported, not hidden
            Tri::Yes | Tri::Unknown => DeviationStatus::Unresolved,
        };
        (status, nodes)
    }
}

fn context<'a>(
    line: &'a ScriptedLine,
    trace: &'a [(usize, GameState, Action)],
    end: &GameState,
    probe: Probe,
) -> Ctx<'a> {
    let mut on_line: HashSet<u64> = trace.iter().map(|(_, s, _)| state_hash(s)).collect();
    on_line.insert(state_hash(end));
    Ctx {
        line,
        trace,
        on_line,
        outcome: end.outcome,
        probe,
    }
}

/// The opening action of the untaken branch of decision `d`, and whether the
/// skeleton says friendly wins after it.
fn other_branch(
    line: &ScriptedLine,
    choices: &[Choice],
    d: usize,
    pc: usize,
    pre: &GameState,
) -> Result<Option<(Action, bool)>, ReductionError> {
    let flip = match choices[d] {
        Choice::X => Choice::Y,
        Choice::Y => Choice::X,
    };
    let Some(first) = line
        .steps
        .iter()
        .find(|s| s.guard.is_some_and(|g| g.decision == d && g.choice == flip))
    else {
        return Ok(None);
    };
    let Some(action) = resolve_step(pre, &first.step).filter(|a| engine::is_legal(pre, a)) else {
        return Ok(None);
    };
    let mut partial: Vec<Option<Choice>> = choices.iter().copied().map(Some).collect();
    for c in partial.iter_mut().skip(d) {
        *c = None;
    }
    partial[d] = Some(flip);
    let wins = branch_value(line, pre.clone(), pc, &mut partial)?;
    Ok(Some((action, wins)))
}

fn resolve_choices(
    config: &GameConfig,
    line: &ScriptedLine,
    choices: &Option<Vec<Choice>>,
) -> Result<Vec<Choice>, ReductionError> {
    match choices {
        Some(c) => Ok(c.clone()),
        None => Ok(best_choices(config, line)?.0),
    }
}

/// Judges a multi-action deviation that starts in place of scripted step
/// `step`. The status is relative to the player making the first action.
/// Returns `None` if the line never reaches `step` or an action is illegal.
pub fn check_deviation(
    config: &GameConfig,
    line: &ScriptedLine,
    choices: Option<Vec<Choice>>,
    step: usize,
    actions: &[Action],
    probe: Probe,
) -> Result<Option<DeviationStatus>, ReductionError> {
    let choices = resolve_choices(config, line, &choices)?;
    let (trace, end) = trace_line(config, line, &choices)?;
    let Some(at) = trace.iter().position(|t| t.0 == step) else {
        return Ok(None);
    };
    let ctx = context(line, &trace, &end, probe);
    let mut s = trace[at].1.clone();
    let who = s.active;
    for a in actions {
        if !engine::is_legal(&s, a) {
            return Ok(None);
        }
        engine::apply_in_place(&mut s, *a, &mut ());
    }
    Ok(Some(ctx.judge_state(at, who, s).0))
}

/// Probes the selected steps of `line` for deviations.
pub fn deviation_check(
    config: &GameConfig,
    line: &ScriptedLine,
    opts: &CheckOptions,
) -> Result<DeviationReport, ReductionError> {
    let choices = resolve_choices(config, line, &opts.choices)?;
    let (trace, end) = trace_line(config, line, &choices)?;
    let ctx = context(line, &trace, &end, opts.probe);

    let selected = |pc: usize| {
        let ls = &line.steps[pc];
        let site = match &opts.sites {
            Sites::Tagged => ls.tag.is_some(),
            Sites::All => true,
            Sites::Steps(v) => v.contains(&pc),
        };
        site && (opts.turns.is_empty() || opts.turns.contains(&ls.turn))
    };

    let sites = line.decision_sites();
    let friendly_wins = end.outcome == Outcome::FriendlyWins;
    let mut steps = Vec::new();
    for (i, (pc, pre, scripted)) in trace.iter().enumerate() {
        if !selected(*pc) {
            continue;
        }
        // at a decision site the other branch is judged by the skeleton
        let other = match sites.iter().position(|&s| s == *pc) {
            Some(d) => other_branch(line, &choices, d, *pc, pre)?,
            None => None,
        };
        let alts: Vec<Action> = ordered_moves(pre)
            .into_iter()
            .filter(|a| a != scripted)
            .collect();
        let deviations = crate::par::par_map(&alts, |&a| match other {
            Some((action, wins)) if action == a => {
                // no better for whoever owns the decision
                let no_better = match pre.active {
                    Player::Friendly => !wins || friendly_wins,
                    Player::Enemy => wins || !friendly_wins,
                };
                Deviation {
                    action: a,
                    status: if no_better {
                        DeviationStatus::ScriptedDominates
                    } else {
                        DeviationStatus::Unresolved
                    },
                    nodes: 0,
                }
            }
            _ => ctx.judge(i, pre, a),
        });
        let status = deviations
            .iter()
            .map(|d| d.status)
            .max()
            .unwrap_or(DeviationStatus::ScriptedDominates);
        steps.push(StepReport {
            step: *pc,
            turn: line.steps[*pc].turn,
            tag: line.steps[*pc].tag,
            player: pre.active,
            scripted: *scripted,
            status,
            deviations,
        });
    }
    let count = |st: DeviationStatus| {
        steps
            .iter()
            .flat_map(|s: &StepReport| &s.deviations)
            .filter(|d| d.status == st)
            .count()
    };
    Ok(DeviationReport {
        choices: format_choices(&choices),
        refuted: count(DeviationStatus::Refuted),
        dominated: count(DeviationStatus::ScriptedDominates),
        unresolved: count(DeviationStatus::Unresolved),
        steps,
    })
}

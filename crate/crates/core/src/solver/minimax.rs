use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::engine::{self, Action, GameState, Player};

use super::search::{child, Goal, ProofTable, Prover, Tri};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Win,
    Loss,
    Draw,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Budget {
    pub max_nodes: u64,
    /// In plies.
    pub max_depth: u32,
    /// Off only for audit runs that distrust digest collisions.
    pub use_table: bool,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_nodes: 2_000_000,
            max_depth: 64,
            use_table: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResult {
    pub verdict: Verdict,
    pub principal_variation: Vec<Action>,
    pub nodes: u64,
    pub tt_hits: u64,
}

struct Session {
    table: ProofTable,
    nodes: AtomicU64,
    stop: AtomicBool,
    budget: Budget,
}

impl Session {
    fn new(budget: Budget) -> Session {
        Session {
            table: ProofTable::new(budget.use_table),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            budget,
        }
    }

    fn prover(&self, player: Player, goal: Goal) -> Prover<'_> {
        Prover {
            player,
            goal,
            table: &self.table,
            nodes: &self.nodes,
            max_nodes: self.budget.max_nodes,
            stop: &self.stop,
        }
    }

    /// Iterative deepening (doubling horizon) until the question settles.
    fn ask(&self, state: &GameState, player: Player, goal: Goal) -> (Tri, Option<Action>) {
        let p = self.prover(player, goal);
        let mut depth = 4.min(self.budget.max_depth);
        loop {
            let r = p.prove_root(state, depth);
            let out_of_nodes = self.nodes.load(Ordering::Relaxed) >= self.budget.max_nodes;
            if r.0 != Tri::Unknown || depth >= self.budget.max_depth || out_of_nodes {
                return r;
            }
            depth = (depth * 2).min(self.budget.max_depth);
        }
    }

    /// Walks a line that witnesses the settled answer `want`: the side that
    /// makes the answer true picks a child with the same answer, the other
    /// side (all of whose moves agree) takes its first move.
    fn principal_variation(
        &self,
        state: &GameState,
        player: Player,
        goal: Goal,
        want: bool,
    ) -> Vec<Action> {
        let p = self.prover(player, goal);
        let mut pv = Vec::new();
        let mut s = state.clone();
        while !s.outcome.is_over() && pv.len() < 256 {
            let moves = super::search::ordered_moves(&s);
            let pick = if (s.active == player) == want {
                moves
                    .iter()
                    .copied()
                    .find(|&a| p.prove(&child(&s, a), self.budget.max_depth) == to_tri(want))
            } else {
                moves.first().copied()
            };
            match pick {
                Some(a) => {
                    engine::apply_in_place(&mut s, a, &mut ());
                    pv.push(a);
                }
                None => break,
            }
        }
        pv
    }
}

fn to_tri(b: bool) -> Tri {
    if b {
        Tri::Yes
    } else {
        Tri::No
    }
}

/// Exact value for the player to move, within the budget.
pub fn minimax(state: &GameState, budget: Budget) -> SolveResult {
    let session = Session::new(budget);
    let me = state.active;
    let (win, _) = session.ask(state, me, Goal::Win);
    let (verdict, goal, want) = match win {
        Tri::Yes => (Verdict::Win, Goal::Win, true),
        Tri::Unknown => (Verdict::Unknown, Goal::Win, true),
        Tri::No => match session.ask(state, me, Goal::AtLeastDraw).0 {
            Tri::Yes => (Verdict::Draw, Goal::AtLeastDraw, true),
            Tri::No => (Verdict::Loss, Goal::AtLeastDraw, false),
            Tri::Unknown => (Verdict::Unknown, Goal::AtLeastDraw, true),
        },
    };
    let pv = if verdict == Verdict::Unknown {
        Vec::new()
    } else {
        session.principal_variation(state, me, goal, want)
    };
    SolveResult {
        verdict,
        principal_variation: pv,
        nodes: session.nodes.load(Ordering::Relaxed),
        tt_hits: session.table.hits(),
    }
}

/// Whether `player` can force `goal` from `state`, within the budget.
pub fn prove(state: &GameState, player: Player, goal: Goal, budget: Budget) -> (Tri, u64) {
    let session = Session::new(budget);
    let r = session.ask(state, player, goal).0;
    (r, session.nodes.load(Ordering::Relaxed))
}

/// Plain minimax without memoization, pruning or move deduplication. Values
/// are from the root mover's side: -1 loss, 0 draw, 1 win; `None` if some
/// line is still open at `depth` plies.
pub fn exhaustive_value(state: &GameState, depth: u32) -> Option<i8> {
    fn go(s: &GameState, me: Player, depth: u32) -> Option<i8> {
        if s.outcome.is_over() {
            return Some(match s.outcome.winner() {
                Some(w) if w == me => 1,
                Some(_) => -1,
                None => 0,
            });
        }
        if depth == 0 {
            return None;
        }
        let mut best: Option<i8> = None;
        for a in engine::legal_actions(s) {
            let v = go(&child(s, a), me, depth - 1)?;
            best = Some(match best {
                None => v,
                Some(b) if s.active == me => b.max(v),
                Some(b) => b.min(v),
            });
        }
        best
    }
    go(state, state.active, depth)
}

pub fn verdict_of(value: i8) -> Verdict {
    match value {
        1 => Verdict::Win,
        0 => Verdict::Draw,
        _ => Verdict::Loss,
    }
}

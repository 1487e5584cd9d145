//! Bounded AND/OR proof search over engine positions.
//!
//! Each search asks one yes/no question about a fixed root player: can they
//! force an outcome at least as good as `goal`? Their own moves are OR nodes
//! and the opponent's are AND nodes. Yes and No answers are exact facts about
//! the position (they only arise from terminal positions), so they are cached
//! regardless of the depth at which they were found. An Unknown caused by the
//! horizon is cached with its depth, so shallower re-asks return at once;
//! one caused by the node budget or a stop request is never cached. Asking the question twice, for "win" and for
//! "at least a draw", is alpha-beta with null windows around the two
//! boundaries of the loss < draw < win scale.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use dashmap::DashMap;

use crate::engine::{self, state_hash, Action, GameState, Outcome, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Goal {
    AtLeastDraw,
    Win,
}

impl Goal {
    pub fn met_by(self, outcome: Outcome, player: Player) -> bool {
        match (self, outcome.winner()) {
            (_, Some(w)) => w == player,
            (Goal::AtLeastDraw, None) => outcome == Outcome::Draw,
            (Goal::Win, None) => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    Proven(bool),
    /// Still open after a search with this many plies left.
    Open(u32),
}

type Key = (u64, Player, Goal);

/// Shared memo keyed by position digest. Lossy use is fine: a missing entry
/// only costs time.
#[derive(Default)]
pub struct ProofTable {
    map: DashMap<Key, Entry>,
    enabled: bool,
    hits: AtomicU64,
}

impl ProofTable {
    pub fn new(enabled: bool) -> ProofTable {
        ProofTable {
            map: DashMap::new(),
            enabled,
            hits: AtomicU64::new(0),
        }
    }

    /// The cached answer if it settles a search with `depth` plies left.
    fn get(&self, key: &Key, depth: u32) -> Option<Tri> {
        if !self.enabled {
            return None;
        }
        let v = match *self.map.get(key)? {
            Entry::Proven(true) => Tri::Yes,
            Entry::Proven(false) => Tri::No,
            Entry::Open(d) if d >= depth => Tri::Unknown,
            Entry::Open(_) => return None,
        };
        self.hits.fetch_add(1, Ordering::Relaxed);
        Some(v)
    }

    fn put(&self, key: Key, v: bool) {
        if self.enabled {
            self.map.insert(key, Entry::Proven(v));
        }
    }

    fn put_open(&self, key: Key, depth: u32) {
        if self.enabled {
            self.map
                .entry(key)
                .and_modify(|e| {
                    if let Entry::Open(d) = e {
                        *d = (*d).max(depth);
                    }
                })
                .or_insert(Entry::Open(depth));
        }
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

pub struct Prover<'a> {
    pub player: Player,
    pub goal: Goal,
    pub table: &'a ProofTable,
    pub nodes: &'a AtomicU64,
    pub max_nodes: u64,
    pub stop: &'a AtomicBool,
}

/// Legal moves with duplicate card plays removed (same card, same target,
/// same slot), attacks first and EndTurn last.
pub fn ordered_moves(state: &GameState) -> Vec<Action> {
    let hand = &state.active_player().hand;
    let mut seen = Vec::new();
    let mut attacks = Vec::new();
    let mut plays = Vec::new();
    let mut end = Vec::new();
    for a in engine::legal_actions(state) {
        match a {
            Action::Attack { .. } => attacks.push(a),
            Action::PlayCard {
                hand: i,
                target,
                position,
            } => {
                let key = (hand[i], target, position);
                if !seen.contains(&key) {
                    seen.push(key);
                    plays.push(a);
                }
            }
            Action::EndTurn => end.push(a),
        }
    }
    attacks.extend(plays);
    attacks.extend(end);
    attacks
}

pub fn child(state: &GameState, a: Action) -> GameState {
    let mut s = state.clone();
    engine::apply_in_place(&mut s, a, &mut ());
    s
}

impl Prover<'_> {
    fn exhausted(&self) -> bool {
        self.stop.load(Ordering::Relaxed) || self.nodes.load(Ordering::Relaxed) >= self.max_nodes
    }

    pub fn prove(&self, state: &GameState, depth: u32) -> Tri {
        if state.outcome.is_over() {
            return if self.goal.met_by(state.outcome, self.player) {
                Tri::Yes
            } else {
                Tri::No
            };
        }
        let key = (state_hash(state), self.player, self.goal);
        if let Some(v) = self.table.get(&key, depth) {
            return v;
        }
        if depth == 0 || self.exhausted() {
            return Tri::Unknown;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let or_node = state.active == self.player;
        let mut unknown = false;
        for a in ordered_moves(state) {
            match self.prove(&child(state, a), depth - 1) {
                Tri::Yes if or_node => {
                    self.table.put(key, true);
                    return Tri::Yes;
                }
                Tri::No if !or_node => {
                    self.table.put(key, false);
                    return Tri::No;
                }
                Tri::Unknown => unknown = true,
                _ => {}
            }
        }
        if unknown {
            if !self.exhausted() {
                self.table.put_open(key, depth);
            }
            return Tri::Unknown;
        }
        self.table.put(key, !or_node);
        if or_node {
            Tri::No
        } else {
            Tri::Yes
        }
    }

    /// Root expansion with children searched in parallel. Returns the answer
    /// and, for a Yes at an OR root, the proving move.
    pub fn prove_root(&self, state: &GameState, depth: u32) -> (Tri, Option<Action>) {
        if state.outcome.is_over() || depth == 0 {
            return (self.prove(state, depth), None);
        }
        let or_node = state.active == self.player;
        let moves = ordered_moves(state);
        let results = crate::par::par_map(&moves, |&a| {
            let r = self.prove(&child(state, a), depth - 1);
            let decisive = (or_node && r == Tri::Yes) || (!or_node && r == Tri::No);
            if decisive {
                self.stop.store(true, Ordering::Relaxed);
            }
            r
        });
        self.stop.store(false, Ordering::Relaxed);
        let decisive = if or_node { Tri::Yes } else { Tri::No };
        if let Some(i) = results.iter().position(|&r| r == decisive) {
            let key = (state_hash(state), self.player, self.goal);
            self.table.put(key, or_node);
            return (decisive, or_node.then(|| moves[i]));
        }
        if results.contains(&Tri::Unknown) {
            return (Tri::Unknown, None);
        }
        (if or_node { Tri::No } else { Tri::Yes }, None)
    }
}

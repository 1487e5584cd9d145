use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cards::{CardId, Tribe};

use super::hash::{mix, mix_words};

pub const MAX_BOARD: usize = 7;
pub const MAX_HAND: usize = 10;
pub const MAX_MANA: u32 = 10;
pub const HERO_MAX_HEALTH: i32 = 30;
pub const DEFAULT_TURN_LIMIT: u32 = 500;

/// Seat at the table. The friendly player is seat 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Player {
    Friendly = 0,
    Enemy = 1,
}

impl Player {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::Friendly => Player::Enemy,
            Player::Enemy => Player::Friendly,
        }
    }

    pub fn from_index(i: usize) -> Option<Player> {
        match i {
            0 => Some(Player::Friendly),
            1 => Some(Player::Enemy),
            _ => None,
        }
    }
}

impl From<Player> for u8 {
    fn from(p: Player) -> u8 {
        p as u8
    }
}

impl TryFrom<u8> for Player {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Player::from_index(v as usize)
            .ok_or_else(|| format!("player index must be 0 or 1, got {v}"))
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Friendly => f.write_str("friendly"),
            Player::Enemy => f.write_str("enemy"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ongoing,
    FriendlyWins,
    EnemyWins,
    Draw,
}

impl Outcome {
    pub fn is_over(self) -> bool {
        self != Outcome::Ongoing
    }

    /// The winner, if any.
    pub fn winner(self) -> Option<Player> {
        match self {
            Outcome::FriendlyWins => Some(Player::Friendly),
            Outcome::EnemyWins => Some(Player::Enemy),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinionInstance {
    pub card: CardId,
    pub attack: u32,
    pub health: i32,
    pub max_health: i32,
    pub tribe: Tribe,
    pub taunt: bool,
    pub frozen: bool,
    /// Entered play (or changed sides) this turn.
    pub exhausted: bool,
    pub has_charge: bool,
    pub attacked_this_turn: bool,
    /// Unique per game; not part of the position identity.
    pub uid: u32,
}

impl MinionInstance {
    pub fn is_damaged(&self) -> bool {
        self.health < self.max_health
    }

    pub fn can_attack(&self) -> bool {
        !self.frozen
            && !self.attacked_this_turn
            && self.attack >= 1
            && (!self.exhausted || self.has_charge)
    }

    pub(crate) fn position_hash(&self, side: Player, slot: usize) -> u64 {
        let flags = (self.taunt as u64)
            | (self.frozen as u64) << 1
            | (self.exhausted as u64) << 2
            | (self.has_charge as u64) << 3
            | (self.attacked_this_turn as u64) << 4;
        mix_words(&[
            4,
            side as u64,
            slot as u64,
            self.card.index() as u64,
            self.attack as u64,
            self.health as i64 as u64,
            self.max_health as i64 as u64,
            self.tribe as u64,
            flags,
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weapon {
    pub attack: u32,
    pub durability: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeroState {
    pub health: i32,
    pub max_health: i32,
    pub weapon: Option<Weapon>,
    pub attacked_this_turn: bool,
    pub frozen: bool,
    pub mana_crystals: u32,
    pub mana_available: u32,
    pub fatigue_counter: u32,
}

impl HeroState {
    pub fn attack(&self) -> u32 {
        self.weapon.map_or(0, |w| w.attack)
    }

    pub fn can_attack(&self) -> bool {
        self.weapon
            .is_some_and(|w| w.attack >= 1 && w.durability >= 1)
            && !self.attacked_this_turn
            && !self.frozen
            && self.health > 0
    }
}

/// An ordered deck shared between all states of one game; only the read
/// position moves.
#[derive(Clone, Debug)]
pub struct Deck {
    data: Arc<DeckData>,
    pos: usize,
}

#[derive(Debug)]
struct DeckData {
    cards: Vec<CardId>,
    // suffix[i] digests cards[i..]
    suffix: Vec<u64>,
}

impl Deck {
    pub fn new(cards: Vec<CardId>) -> Deck {
        let mut suffix = vec![0u64; cards.len() + 1];
        suffix[cards.len()] = mix(0x0dec_0000_0000_0000);
        for i in (0..cards.len()).rev() {
            suffix[i] = mix(suffix[i + 1] ^ (cards[i].index() as u64 + 1));
        }
        Deck {
            data: Arc::new(DeckData { cards, suffix }),
            pos: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.data.cards.len() - self.pos
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn top(&self) -> Option<CardId> {
        self.data.cards.get(self.pos).copied()
    }

    pub(crate) fn pop(&mut self) -> Option<CardId> {
        let c = self.top()?;
        self.pos += 1;
        Some(c)
    }

    /// Remaining cards, top first.
    pub fn cards(&self) -> &[CardId] {
        &self.data.cards[self.pos..]
    }

    pub(crate) fn digest(&self) -> u64 {
        self.data.suffix[self.pos]
    }
}

impl PartialEq for Deck {
    fn eq(&self, other: &Self) -> bool {
        self.cards() == other.cards()
    }
}

impl Eq for Deck {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerState {
    pub hero: HeroState,
    pub deck: Deck,
    pub hand: Vec<CardId>,
    pub board: Vec<MinionInstance>,
    /// Cards that left play: cast spells, dead minions, broken weapons, burned draws.
    pub removed: u32,
}

impl PlayerState {
    /// Number of card instances this player currently holds in any zone.
    pub fn card_count(&self) -> u64 {
        self.deck.len() as u64
            + self.hand.len() as u64
            + self.board.len() as u64
            + self.hero.weapon.is_some() as u64
            + self.removed as u64
    }

    /// Whether the minion in `slot` sits next to a Wee Spellstopper.
    pub fn is_spell_immune(&self, slot: usize) -> bool {
        let is_stopper = |i: usize| {
            self.board
                .get(i)
                .is_some_and(|m| m.card == CardId::WeeSpellstopper)
        };
        (slot > 0 && is_stopper(slot - 1)) || is_stopper(slot + 1)
    }
}

/// A complete game position.
#[derive(Clone, Debug)]
pub struct GameState {
    pub players: [PlayerState; 2],
    pub active: Player,
    pub turn: u32,
    pub outcome: Outcome,
    pub turn_limit: u32,
    pub(crate) next_uid: u32,
    /// Number of events emitted so far.
    pub event_cursor: u64,
}

impl GameState {
    pub fn player(&self, p: Player) -> &PlayerState {
        &self.players[p.index()]
    }

    pub fn player_mut(&mut self, p: Player) -> &mut PlayerState {
        &mut self.players[p.index()]
    }

    pub fn active_player(&self) -> &PlayerState {
        self.player(self.active)
    }

    /// Total card instances across both players; constant over a game.
    pub fn card_count(&self) -> u64 {
        self.players.iter().map(PlayerState::card_count).sum()
    }

    pub fn minion(&self, side: Player, slot: usize) -> Option<&MinionInstance> {
        self.player(side).board.get(slot)
    }

    /// Slot of the first minion of `card` on `side`'s board.
    pub fn find_minion(&self, side: Player, card: CardId) -> Option<usize> {
        self.player(side).board.iter().position(|m| m.card == card)
    }
}

/// Positional equality: everything except uids and the event cursor.
impl PartialEq for GameState {
    fn eq(&self, other: &Self) -> bool {
        fn strip(b: &[MinionInstance]) -> Vec<MinionInstance> {
            b.iter()
                .map(|m| MinionInstance {
                    uid: 0,
                    ..m.clone()
                })
                .collect()
        }
        self.active == other.active
            && self.turn == other.turn
            && self.outcome == other.outcome
            && self.turn_limit == other.turn_limit
            && self.players.iter().zip(other.players.iter()).all(|(a, b)| {
                let mut ha = a.hand.clone();
                let mut hb = b.hand.clone();
                ha.sort();
                hb.sort();
                a.hero == b.hero
                    && a.deck == b.deck
                    && ha == hb
                    && a.removed == b.removed
                    && strip(&a.board) == strip(&b.board)
            })
    }
}

impl Eq for GameState {}

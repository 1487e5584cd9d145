//! Serializable starting positions.

use serde::{Deserialize, Serialize};

use crate::cards::{CardId, CardKind, Keyword};
use crate::error::ConfigError;

use super::event::EventSink;
use super::rules;
use super::state::{
    Deck, GameState, HeroState, MinionInstance, Outcome, Player, PlayerState, Weapon,
    DEFAULT_TURN_LIMIT, HERO_MAX_HEALTH, MAX_BOARD, MAX_HAND, MAX_MANA,
};

pub const FORMAT_VERSION: u32 = 1;

fn format_version() -> u32 {
    FORMAT_VERSION
}

fn default_max_health() -> i32 {
    HERO_MAX_HEALTH
}

fn default_turn_limit() -> u32 {
    DEFAULT_TURN_LIMIT
}

fn default_turn() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HeroConfig {
    pub health: i32,
    #[serde(default = "default_max_health")]
    pub max_health: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weapon: Option<Weapon>,
    pub mana_crystals: u32,
    /// Only meaningful with [`Phase::Main`]; defaults to the crystal count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mana: Option<u32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub fatigue: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    pub frozen: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub attacked: bool,
}

fn is_zero(v: &u32) -> bool {
    *v == 0
}

fn is_false(v: &bool) -> bool {
    !*v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinionFlag {
    Taunt,
    Frozen,
    Exhausted,
    Charge,
    Attacked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MinionConfig {
    pub card: CardId,
    /// Overrides the card's printed stats when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attack: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub health: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_health: Option<i32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<MinionFlag>,
}

impl MinionConfig {
    pub fn new(card: CardId) -> MinionConfig {
        MinionConfig {
            card,
            attack: None,
            health: None,
            max_health: None,
            flags: Vec::new(),
        }
    }

    pub fn stats(mut self, attack: u32, health: i32) -> MinionConfig {
        self.attack = Some(attack);
        self.health = Some(health);
        self.max_health = Some(health);
        self
    }

    pub fn flag(mut self, flag: MinionFlag) -> MinionConfig {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PlayerConfig {
    pub hero: HeroConfig,
    #[serde(default)]
    pub deck: Vec<CardId>,
    #[serde(default)]
    pub hand: Vec<CardId>,
    #[serde(default)]
    pub board: Vec<MinionConfig>,
}

/// Whether loading a config starts the active player's turn (mana refill and
/// draw) or drops straight into their main phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    #[default]
    Start,
    Main,
}

fn is_start(p: &Phase) -> bool {
    *p == Phase::Start
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GameConfig {
    #[serde(default = "format_version")]
    pub format_version: u32,
    pub players: [PlayerConfig; 2],
    pub active: Player,
    #[serde(default = "default_turn")]
    pub turn: u32,
    #[serde(default = "default_turn_limit")]
    pub turn_limit: u32,
    #[serde(default, skip_serializing_if = "is_start")]
    pub phase: Phase,
}

impl GameConfig {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<GameConfig, ConfigError> {
        let cfg: GameConfig =
            serde_json::from_str(s).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.format_version != FORMAT_VERSION {
            return Err(ConfigError::Version(self.format_version));
        }
        if self.turn == 0 {
            return Err(ConfigError::Invalid("turn must be >= 1".into()));
        }
        for (i, p) in self.players.iter().enumerate() {
            if p.board.len() > MAX_BOARD {
                return Err(ConfigError::Invalid(format!(
                    "player {i} board exceeds {MAX_BOARD} minions"
                )));
            }
            if p.hand.len() > MAX_HAND {
                return Err(ConfigError::Invalid(format!(
                    "player {i} hand exceeds {MAX_HAND} cards"
                )));
            }
            if p.hero.mana_crystals > MAX_MANA || p.hero.mana.is_some_and(|m| m > MAX_MANA) {
                return Err(ConfigError::Invalid(format!(
                    "player {i} mana exceeds {MAX_MANA}"
                )));
            }
            if p.hero.health > p.hero.max_health {
                return Err(ConfigError::Invalid(format!(
                    "player {i} hero health exceeds max"
                )));
            }
            for m in &p.board {
                let spec = m.card.spec();
                if spec.kind != CardKind::Minion {
                    return Err(ConfigError::Invalid(format!("{} is not a minion", m.card)));
                }
                let health = m
                    .health
                    .unwrap_or(spec.health_or_durability.unwrap_or(1) as i32);
                let max = m
                    .max_health
                    .unwrap_or(health.max(spec.health_or_durability.unwrap_or(1) as i32));
                if health < 1 || health > max {
                    return Err(ConfigError::Invalid(format!(
                        "{} has invalid health {health}/{max}",
                        m.card
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds the initial position. With [`Phase::Start`] the active player's
    /// turn begins: crystals refill and one card is drawn.
    pub fn to_state(&self) -> Result<GameState, ConfigError> {
        self.to_state_with(&mut ())
    }

    /// Like [`GameConfig::to_state`] but records the opening events.
    pub fn to_state_with<S: EventSink + ?Sized>(
        &self,
        sink: &mut S,
    ) -> Result<GameState, ConfigError> {
        self.validate()?;
        let mut next_uid = 1;
        let mut players = self.players.iter().map(|p| {
            let board = p
                .board
                .iter()
                .map(|m| {
                    let spec = m.card.spec();
                    let base_health = spec.health_or_durability.unwrap_or(1) as i32;
                    let health = m.health.unwrap_or(base_health);
                    let max_health = m.max_health.unwrap_or(health.max(base_health));
                    let uid = next_uid;
                    next_uid += 1;
                    MinionInstance {
                        card: m.card,
                        attack: m.attack.unwrap_or(spec.attack.unwrap_or(0)),
                        health,
                        max_health,
                        tribe: spec.tribe,
                        taunt: m.flags.contains(&MinionFlag::Taunt)
                            || spec.has_keyword(Keyword::Taunt),
                        frozen: m.flags.contains(&MinionFlag::Frozen),
                        exhausted: m.flags.contains(&MinionFlag::Exhausted),
                        has_charge: m.flags.contains(&MinionFlag::Charge)
                            || spec.has_keyword(Keyword::Charge),
                        attacked_this_turn: m.flags.contains(&MinionFlag::Attacked),
                        uid,
                    }
                })
                .collect();
            PlayerState {
                hero: HeroState {
                    health: p.hero.health,
                    max_health: p.hero.max_health,
                    weapon: p.hero.weapon,
                    attacked_this_turn: p.hero.attacked,
                    frozen: p.hero.frozen,
                    mana_crystals: p.hero.mana_crystals,
                    mana_available: p.hero.mana.unwrap_or(p.hero.mana_crystals),
                    fatigue_counter: p.hero.fatigue,
                },
                deck: Deck::new(p.deck.clone()),
                hand: p.hand.clone(),
                board,
                removed: 0,
            }
        });
        let players = [players.next().unwrap(), players.next().unwrap()];
        let mut state = GameState {
            players,
            active: self.active,
            turn: self.turn,
            outcome: Outcome::Ongoing,
            turn_limit: self.turn_limit,
            next_uid,
            event_cursor: 0,
        };
        state.outcome = rules::outcome_of(&state);
        if self.phase == Phase::Start && !state.outcome.is_over() {
            rules::begin_turn(&mut state, sink);
        }
        Ok(state)
    }

    /// Snapshot of a live position in main phase. Removed-card counters and
    /// uids are not represented.
    pub fn from_state(state: &GameState) -> GameConfig {
        let players = [Player::Friendly, Player::Enemy].map(|side| {
            let p = state.player(side);
            PlayerConfig {
                hero: HeroConfig {
                    health: p.hero.health,
                    max_health: p.hero.max_health,
                    weapon: p.hero.weapon,
                    mana_crystals: p.hero.mana_crystals,
                    mana: Some(p.hero.mana_available),
                    fatigue: p.hero.fatigue_counter,
                    frozen: p.hero.frozen,
                    attacked: p.hero.attacked_this_turn,
                },
                deck: p.deck.cards().to_vec(),
                hand: p.hand.clone(),
                board: p
                    .board
                    .iter()
                    .map(|m| {
                        let mut flags = Vec::new();
                        for (on, f) in [
                            (m.taunt, MinionFlag::Taunt),
                            (m.frozen, MinionFlag::Frozen),
                            (m.exhausted, MinionFlag::Exhausted),
                            (m.has_charge, MinionFlag::Charge),
                            (m.attacked_this_turn, MinionFlag::Attacked),
                        ] {
                            if on {
                                flags.push(f);
                            }
                        }
                        MinionConfig {
                            card: m.card,
                            attack: Some(m.attack),
                            health: Some(m.health),
                            max_health: Some(m.max_health),
                            flags,
                        }
                    })
                    .collect(),
            }
        });
        GameConfig {
            format_version: FORMAT_VERSION,
            players,
            active: state.active,
            turn: state.turn,
            turn_limit: state.turn_limit,
            phase: Phase::Main,
        }
    }
}

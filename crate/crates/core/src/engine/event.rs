use serde::{Deserialize, Serialize};

use crate::cards::CardId;

use super::state::{Outcome, Player};

/// A character as it looked when an event fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CharSnapshot {
    pub side: Player,
    /// `None` for heroes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub card: Option<CardId>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub uid: Option<u32>,
    pub attack: u32,
    pub health: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum EventKind {
    TurnStart {
        player: Player,
    },
    TurnEnd {
        player: Player,
    },
    Draw {
        player: Player,
        card: CardId,
    },
    Burn {
        player: Player,
        card: CardId,
    },
    Fatigue {
        player: Player,
        damage: u32,
    },
    CardPlayed {
        player: Player,
        card: CardId,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        target: Option<CharSnapshot>,
    },
    Summon {
        player: Player,
        card: CardId,
        uid: u32,
        position: usize,
    },
    Equip {
        player: Player,
        attack: u32,
        durability: u32,
    },
    WeaponBroken {
        player: Player,
    },
    Attack {
        attacker: CharSnapshot,
        defender: CharSnapshot,
    },
    Damage {
        target: CharSnapshot,
        amount: u32,
    },
    Heal {
        target: CharSnapshot,
        amount: u32,
    },
    Buff {
        target: CharSnapshot,
    },
    Freeze {
        target: CharSnapshot,
    },
    ControlChanged {
        target: CharSnapshot,
        to: Player,
        position: usize,
    },
    Death {
        minion: CharSnapshot,
    },
    Trigger {
        player: Player,
        card: CardId,
    },
    ManaGained {
        player: Player,
        available: u32,
    },
    GameOver {
        outcome: Outcome,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub step: u64,
    pub turn: u32,
    #[serde(flatten)]
    pub kind: EventKind,
}

/// Receives events as rules resolve.
pub trait EventSink {
    fn emit(&mut self, event: Event);
}

/// Discards everything; used by the solvers.
impl EventSink for () {
    fn emit(&mut self, _event: Event) {}
}

impl EventSink for Vec<Event> {
    fn emit(&mut self, event: Event) {
        self.push(event);
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::state::Player;

/// Reference to a character in the current position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharRef {
    Minion { side: Player, slot: usize },
    Hero { hero: Player },
}

impl CharRef {
    pub fn hero(p: Player) -> CharRef {
        CharRef::Hero { hero: p }
    }

    pub fn minion(side: Player, slot: usize) -> CharRef {
        CharRef::Minion { side, slot }
    }

    pub fn side(self) -> Player {
        match self {
            CharRef::Minion { side, .. } => side,
            CharRef::Hero { hero } => hero,
        }
    }
}

impl fmt::Display for CharRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharRef::Minion { side, slot } => write!(f, "{side}[{slot}]"),
            CharRef::Hero { hero } => write!(f, "{hero} hero"),
        }
    }
}

/// One atomic decision of the active player.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ActionJson", into = "ActionJson")]
pub enum Action {
    PlayCard {
        hand: usize,
        target: Option<CharRef>,
        position: Option<usize>,
    },
    Attack {
        attacker: CharRef,
        defender: CharRef,
    },
    EndTurn,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::PlayCard {
                hand,
                target,
                position,
            } => {
                write!(f, "play hand[{hand}]")?;
                if let Some(t) = target {
                    write!(f, " -> {t}")?;
                }
                if let Some(p) = position {
                    write!(f, " @{p}")?;
                }
                Ok(())
            }
            Action::Attack { attacker, defender } => write!(f, "attack {attacker} -> {defender}"),
            Action::EndTurn => f.write_str("end turn"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlayJson {
    hand: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<CharRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttackJson {
    attacker: CharRef,
    defender: CharRef,
}

#[derive(Serialize, Deserialize, Default)]
struct ActionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    play: Option<PlayJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    attack: Option<AttackJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<bool>,
}

impl TryFrom<ActionJson> for Action {
    type Error = String;

    fn try_from(j: ActionJson) -> Result<Self, Self::Error> {
        match (j.play, j.attack, j.end) {
            (Some(p), None, None) => Ok(Action::PlayCard {
                hand: p.hand,
                target: p.target,
                position: p.position,
            }),
            (None, Some(a), None) => Ok(Action::Attack {
                attacker: a.attacker,
                defender: a.defender,
            }),
            (None, None, Some(true)) => Ok(Action::EndTurn),
            _ => Err("action must have exactly one of `play`, `attack`, or `end: true`".into()),
        }
    }
}

impl From<Action> for ActionJson {
    fn from(a: Action) -> ActionJson {
        match a {
            Action::PlayCard {
                hand,
                target,
                position,
            } => ActionJson {
                play: Some(PlayJson {
                    hand,
                    target,
                    position,
                }),
                ..Default::default()
            },
            Action::Attack { attacker, defender } => ActionJson {
                attack: Some(AttackJson { attacker, defender }),
                ..Default::default()
            },
            Action::EndTurn => ActionJson {
                end: Some(true),
                ..Default::default()
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let a = Action::PlayCard {
            hand: 2,
            target: Some(CharRef::minion(Player::Enemy, 4)),
            position: None,
        };
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"play":{"hand":2,"target":{"side":1,"slot":4}}}"#
        );
        let b: Action =
            serde_json::from_str(r#"{"attack":{"attacker":{"hero":0},"defender":{"hero":1}}}"#)
                .unwrap();
        assert_eq!(
            b,
            Action::Attack {
                attacker: CharRef::hero(Player::Friendly),
                defender: CharRef::hero(Player::Enemy)
            }
        );
        let c: Action = serde_json::from_str(r#"{"end":true}"#).unwrap();
        assert_eq!(c, Action::EndTurn);
        assert!(serde_json::from_str::<Action>(r#"{"end":false}"#).is_err());
        assert!(serde_json::from_str::<Action>(r#"{}"#).is_err());
    }
}

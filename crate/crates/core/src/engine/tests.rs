use super::*;
use crate::cards::CardId::{self, *};
use crate::error::EngineError;

fn hero(health: i32) -> HeroConfig {
    HeroConfig {
        health,
        max_health: HERO_MAX_HEALTH,
        weapon: None,
        mana_crystals: 10,
        mana: None,
        fatigue: 0,
        frozen: false,
        attacked: false,
    }
}

fn side(health: i32, hand: &[CardId], board: Vec<MinionConfig>) -> PlayerConfig {
    PlayerConfig {
        hero: hero(health),
        deck: vec![LightsJustice; 5],
        hand: hand.to_vec(),
        board,
    }
}

fn main_phase(friendly: PlayerConfig, enemy: PlayerConfig) -> GameState {
    GameConfig {
        format_version: FORMAT_VERSION,
        players: [friendly, enemy],
        active: Player::Friendly,
        turn: 1,
        turn_limit: DEFAULT_TURN_LIMIT,
        phase: Phase::Main,
    }
    .to_state()
    .unwrap()
}

fn m(card: CardId) -> MinionConfig {
    MinionConfig::new(card)
}

fn play(hand: usize, target: Option<CharRef>) -> Action {
    Action::PlayCard {
        hand,
        target,
        position: None,
    }
}

const F: Player = Player::Friendly;
const E: Player = Player::Enemy;

#[test]
fn frozen_board_has_no_attacks() {
    let s = main_phase(
        side(
            1,
            &[FrostNova],
            vec![
                m(WeeSpellstopper).flag(MinionFlag::Frozen),
                m(GadgetzanAuctioneer).flag(MinionFlag::Frozen),
            ],
        ),
        side(1, &[], vec![m(LeperGnome)]),
    );
    assert!(legal_actions(&s)
        .iter()
        .all(|a| !matches!(a, Action::Attack { .. })));
}

#[test]
fn taunt_restricts_defenders() {
    let s = main_phase(
        side(1, &[], vec![m(GadgetzanAuctioneer)]),
        side(
            1,
            &[],
            vec![m(LeperGnome).flag(MinionFlag::Taunt), m(WeeSpellstopper)],
        ),
    );
    let attacks: Vec<_> = legal_actions(&s)
        .into_iter()
        .filter_map(|a| match a {
            Action::Attack { defender, .. } => Some(defender),
            _ => None,
        })
        .collect();
    assert_eq!(attacks, vec![CharRef::minion(E, 0)]);
}

#[test]
fn charge_reaches_only_the_unprotected_watcher() {
    let board = vec![
        m(WeeSpellstopper),
        m(WeeSpellstopper),
        m(MistressOfMixtures),
        m(WeeSpellstopper),
        m(WeeSpellstopper),
        m(GadgetzanAuctioneer),
        m(FloatingWatcher),
    ];
    let s = main_phase(
        side(1, &[Charge, ShadowWordDeath], board),
        side(1, &[], vec![]),
    );
    let s = {
        // lift the watcher to 10 attack so Shadow Word: Death applies too
        let mut cfg = GameConfig::from_state(&s);
        cfg.players[0].board[6] = m(FloatingWatcher).stats(10, 10);
        cfg.to_state().unwrap()
    };
    let targets: Vec<_> = legal_actions(&s)
        .into_iter()
        .filter_map(|a| match a {
            Action::PlayCard {
                target: Some(t), ..
            } => Some(t),
            _ => None,
        })
        .collect();
    assert_eq!(targets, vec![CharRef::minion(F, 6), CharRef::minion(F, 6)]);
}

#[test]
fn spellstopper_itself_is_targetable_when_alone() {
    let s = main_phase(
        side(1, &[Backstab], vec![]),
        side(1, &[], vec![m(WeeSpellstopper), m(LeperGnome)]),
    );
    let targets = spell_targets(&s, F, Backstab.spec().effect).unwrap();
    assert_eq!(targets, vec![CharRef::minion(E, 0)]);
}

#[test]
fn watcher_trades_into_leper() {
    let s = main_phase(
        side(
            10,
            &[],
            vec![m(FloatingWatcher).stats(12, 10).flag(MinionFlag::Charge)],
        ),
        side(
            1,
            &[],
            vec![m(LeperGnome).stats(1000, 196).flag(MinionFlag::Taunt)],
        ),
    );
    let s = apply(
        &s,
        Action::Attack {
            attacker: CharRef::minion(F, 0),
            defender: CharRef::minion(E, 0),
        },
    )
    .unwrap();
    assert!(s.player(F).board.is_empty());
    assert_eq!(s.player(E).board[0].health, 184);
}

#[test]
fn backstab_doubles_gahzrilla() {
    let s = main_phase(
        side(10, &[Backstab], vec![m(Gahzrilla).stats(10, 13)]),
        side(1, &[], vec![]),
    );
    let s = apply(&s, play(0, Some(CharRef::minion(F, 0)))).unwrap();
    let g = &s.player(F).board[0];
    assert_eq!((g.attack, g.health, g.max_health), (20, 11, 13));
}

#[test]
fn mortal_coil_kill_with_auctioneer_draws_two() {
    let s = main_phase(
        side(
            10,
            &[MortalCoil],
            vec![m(GadgetzanAuctioneer), m(NoviceEngineer)],
        ),
        side(1, &[], vec![]),
    );
    let s = apply(&s, play(0, Some(CharRef::minion(F, 1)))).unwrap();
    assert_eq!(s.player(F).hand.len(), 2);
    assert_eq!(s.player(F).board.len(), 1);
    assert_eq!(s.player(F).deck.len(), 3);
}

#[test]
fn mind_control_needs_board_space() {
    let s = main_phase(
        side(10, &[MindControl], vec![m(LeperGnome); 7]),
        side(1, &[], vec![m(MistressOfMixtures)]),
    );
    let a = play(0, Some(CharRef::minion(E, 0)));
    assert!(matches!(
        apply(&s, a),
        Err(EngineError::IllegalAction { .. })
    ));
}

#[test]
fn fatigue_and_burn() {
    let mut f = side(10, &[], vec![]);
    f.deck.clear();
    let mut e = side(10, &[Innervate; 10], vec![]);
    e.deck = vec![Gahzrilla];
    let s = main_phase(f, e);
    // enemy draws into a full hand: burned
    let s = apply(&s, Action::EndTurn).unwrap();
    assert_eq!(s.player(E).hand.len(), 10);
    assert!(s.player(E).deck.is_empty());
    assert_eq!(s.player(E).removed, 1);
    // friendly draws from an empty deck: fatigue 1
    let s = apply(&s, Action::EndTurn).unwrap();
    let h = &s.player(F).hero;
    assert_eq!((h.health, h.fatigue_counter), (9, 1));
    let s = apply(&apply(&s, Action::EndTurn).unwrap(), Action::EndTurn).unwrap();
    assert_eq!(s.player(F).hero.health, 7);
}

#[test]
fn freeze_lasts_one_owner_turn() {
    let s = main_phase(
        side(10, &[FrostNova], vec![]),
        side(10, &[], vec![m(LeperGnome)]),
    );
    let s = apply(&s, play(0, None)).unwrap();
    assert!(s.player(E).board[0].frozen);
    let s = apply(&s, Action::EndTurn).unwrap();
    assert!(legal_actions(&s)
        .iter()
        .all(|a| !matches!(a, Action::Attack { .. })));
    let s = apply(&s, Action::EndTurn).unwrap();
    let s = apply(&s, Action::EndTurn).unwrap();
    assert!(legal_actions(&s)
        .iter()
        .any(|a| matches!(a, Action::Attack { .. })));
}

#[test]
fn leper_deathrattle_outcomes() {
    // friendly hero at 6 survives the deathrattle, then the weapon finishes
    let mut f = side(
        6,
        &[],
        vec![m(Gahzrilla).stats(8, 20).flag(MinionFlag::Charge)],
    );
    f.hero.weapon = Some(Weapon {
        attack: 1,
        durability: 4,
    });
    let s = main_phase(
        f,
        side(
            1,
            &[],
            vec![m(LeperGnome).stats(1000, 8).flag(MinionFlag::Taunt)],
        ),
    );
    let mut log = Vec::new();
    let s = apply_with(
        &s,
        Action::Attack {
            attacker: CharRef::minion(F, 0),
            defender: CharRef::minion(E, 0),
        },
        &mut log,
    )
    .unwrap();
    assert_eq!(s.player(F).hero.health, 4);
    assert_eq!(s.outcome, Outcome::Ongoing);
    let s = apply(
        &s,
        Action::Attack {
            attacker: CharRef::hero(F),
            defender: CharRef::hero(E),
        },
    )
    .unwrap();
    assert_eq!(s.outcome, Outcome::FriendlyWins);
    assert!(legal_actions(&s).is_empty());

    // at 1 health the deathrattle is lethal
    let s = main_phase(
        side(
            1,
            &[],
            vec![m(Gahzrilla).stats(8, 20).flag(MinionFlag::Charge)],
        ),
        side(
            1,
            &[],
            vec![m(LeperGnome).stats(1000, 8).flag(MinionFlag::Taunt)],
        ),
    );
    let s = apply(
        &s,
        Action::Attack {
            attacker: CharRef::minion(F, 0),
            defender: CharRef::minion(E, 0),
        },
    )
    .unwrap();
    assert_eq!(s.outcome, Outcome::EnemyWins);
}

#[test]
fn simultaneous_hero_deaths_draw() {
    // friendly Leper Gnome dies to an enemy Leper Gnome: both deathrattles hit
    let s = main_phase(
        side(2, &[], vec![m(LeperGnome).flag(MinionFlag::Charge)]),
        side(2, &[], vec![m(LeperGnome)]),
    );
    let s = apply(
        &s,
        Action::Attack {
            attacker: CharRef::minion(F, 0),
            defender: CharRef::minion(E, 0),
        },
    )
    .unwrap();
    assert_eq!(s.outcome, Outcome::Draw);
}

#[test]
fn gahzrilla_doubles_in_combat() {
    let s = main_phase(
        side(10, &[], vec![m(LeperGnome).flag(MinionFlag::Charge)]),
        side(10, &[], vec![m(Gahzrilla)]),
    );
    let s = apply(
        &s,
        Action::Attack {
            attacker: CharRef::minion(F, 0),
            defender: CharRef::minion(E, 0),
        },
    )
    .unwrap();
    let g = &s.player(E).board[0];
    assert_eq!((g.attack, g.health), (12, 7));
    // Leper Gnome died and hit the enemy hero
    assert_eq!(s.player(E).hero.health, 8);
}

#[test]
fn weapon_swing_costs_durability_and_replacement_destroys() {
    let mut f = side(10, &[LightsJustice], vec![]);
    f.hero.weapon = Some(Weapon {
        attack: 1,
        durability: 1,
    });
    let s = main_phase(f, side(10, &[], vec![]));
    let s = apply(
        &s,
        Action::Attack {
            attacker: CharRef::hero(F),
            defender: CharRef::hero(E),
        },
    )
    .unwrap();
    assert_eq!(s.player(E).hero.health, 9);
    assert!(s.player(F).hero.weapon.is_none());
    assert_eq!(s.player(F).removed, 1);
    let s = apply(&s, play(0, None)).unwrap();
    assert_eq!(
        s.player(F).hero.weapon,
        Some(Weapon {
            attack: 1,
            durability: 4
        })
    );
    assert!(!s.player(F).hero.can_attack());
}

#[test]
fn innervate_caps_at_ten() {
    let s = main_phase(side(10, &[Innervate], vec![]), side(10, &[], vec![]));
    let s = apply(&s, play(0, None)).unwrap();
    assert_eq!(s.player(F).hero.mana_available, 10);
}

#[test]
fn hash_is_order_sensitive_on_board() {
    let a = main_phase(
        side(10, &[], vec![m(LeperGnome), m(Gahzrilla)]),
        side(10, &[], vec![]),
    );
    let b = main_phase(
        side(10, &[], vec![m(Gahzrilla), m(LeperGnome)]),
        side(10, &[], vec![]),
    );
    assert_eq!(state_hash(&a), state_hash(&a.clone()));
    assert_ne!(state_hash(&a), state_hash(&b));
    assert_ne!(a, b);
}

#[test]
fn hash_ignores_hand_order() {
    let a = main_phase(
        side(10, &[Innervate, Charge], vec![]),
        side(10, &[], vec![]),
    );
    let b = main_phase(
        side(10, &[Charge, Innervate], vec![]),
        side(10, &[], vec![]),
    );
    assert_eq!(a, b);
    assert_eq!(state_hash(&a), state_hash(&b));
}

#[test]
fn hash_traversal_order_independent() {
    let s = main_phase(
        side(
            7,
            &[Innervate, Charge, Backstab],
            vec![m(LeperGnome), m(Gahzrilla)],
        ),
        side(9, &[FrostNova], vec![m(WeeSpellstopper)]),
    );
    let mut keys = hash::component_keys(&s);
    let forward = keys.iter().fold(0u64, |a, k| a ^ k);
    keys.reverse();
    let backward = keys.iter().fold(0u64, |a, k| a ^ k);
    assert_eq!(forward, backward);
    assert_eq!(forward, state_hash(&s));
}

#[test]
fn empty_replay_echoes_initial_state() {
    let cfg = GameConfig::from_state(&main_phase(side(10, &[], vec![]), side(10, &[], vec![])));
    let r = replay(&cfg, &[]).unwrap();
    assert_eq!(r.state, cfg.to_state().unwrap());
    assert!(r.events.is_empty());
}

#[test]
fn config_round_trips() {
    let s = main_phase(
        side(
            7,
            &[Innervate, Charge],
            vec![
                m(LeperGnome).flag(MinionFlag::Taunt),
                m(Gahzrilla).stats(10, 13),
            ],
        ),
        side(
            9,
            &[FrostNova],
            vec![m(WeeSpellstopper).flag(MinionFlag::Frozen)],
        ),
    );
    let cfg = GameConfig::from_state(&s);
    let back = GameConfig::from_json(&cfg.to_json()).unwrap();
    assert_eq!(back, cfg);
    assert_eq!(back.to_state().unwrap(), s);
}

#[test]
fn start_phase_refills_and_draws() {
    let mut cfg = GameConfig::from_state(&main_phase(side(10, &[], vec![]), side(10, &[], vec![])));
    cfg.phase = Phase::Start;
    cfg.players[0].hero.mana_crystals = 3;
    cfg.players[0].hero.mana = Some(0);
    let s = cfg.to_state().unwrap();
    assert_eq!(s.player(F).hero.mana_available, 4);
    assert_eq!(s.player(F).hand, vec![LightsJustice]);
}

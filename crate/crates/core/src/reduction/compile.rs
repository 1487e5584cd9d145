use crate::cards::CardId::{self, *};
use crate::engine::{
    GameConfig, HeroConfig, MinionConfig, MinionFlag, Phase, Player, PlayerConfig, Weapon,
    DEFAULT_TURN_LIMIT, FORMAT_VERSION, HERO_MAX_HEALTH, MAX_MANA,
};
use crate::error::ReductionError;

use super::buffs::{synthesize_beast_buffs, synthesize_demon_buffs, BuffStep, DoublingMode};
use super::instance::{big_attack, leper_health, PartitionInstance};
use super::line::{
    materialize, Annotation, Choice, Decision, ForceTag, Guard, ScriptedLine, Step, Target,
};
use super::schedule::{TurnBuilder, TurnSchedule};

/// Spare Light's Justice at the bottom of each deck, covering the draws
/// after the line ends.
const TRAILING_PADDING: usize = 2;
/// Mortal Coils the enemy spends on the stolen demon so Backstab can never
/// target it and one Flash Heal cannot undo that.
const COILS: usize = 6;

#[derive(Clone, Debug)]
pub struct Compiled {
    pub config: GameConfig,
    pub line: ScriptedLine,
    /// The instance actually encoded (see `PartitionInstance::normalized`).
    pub encoded: PartitionInstance,
}

const LEPER: Target = Target::OpponentCard(LeperGnome);
const OWN_RIGHT: Target = Target::OwnFromRight(0);

fn attack_leper(attacker: Target) -> Step {
    Step::Attack {
        attacker,
        defender: LEPER,
    }
}

fn play(card: CardId, target: Target) -> Step {
    Step::Play {
        card,
        target: Some(target),
    }
}

/// Steal the minion the opponent kept last turn and send it into the Leper
/// Gnome, then refill the draw chain with an Engineer that is coiled away.
fn steal_survivor(b: &mut TurnBuilder) -> Result<(), ReductionError> {
    b.play(MindControl, 0, Some(Target::OpponentFromRight(0)), None)?;
    b.play(Charge, 0, Some(OWN_RIGHT), None)?;
    b.action(
        attack_leper(OWN_RIGHT),
        Some(ForceTag::DecisionAttack),
        false,
    );
    b.play(NoviceEngineer, 0, None, None)?;
    b.play(MortalCoil, 1, Some(OWN_RIGHT), None)?;
    Ok(())
}

fn play_buffs(
    b: &mut TurnBuilder,
    steps: &[BuffStep],
    target: Target,
    beast: bool,
) -> Result<(), ReductionError> {
    for &s in steps {
        for &card in s.cards() {
            let extra = u32::from(beast && card == MarkOfYShaarj);
            b.play(card, extra, Some(target), None)?;
        }
    }
    Ok(())
}

/// Friendly choice turn: demon carrier for x, beast carrier for y, with
/// Charge and Shadow Word: Death deciding which one hits the Leper Gnome.
fn friendly_choice_turn(
    turn: u32,
    decision: usize,
    (x, y): (u64, u64),
    steal: bool,
    seed: bool,
) -> Result<TurnSchedule, ReductionError> {
    let mut b = TurnBuilder::new(turn);
    if steal {
        steal_survivor(&mut b)?;
    }
    b.play(FloatingWatcher, 0, None, Some(ForceTag::CarrierSummon))?;
    play_buffs(&mut b, &synthesize_demon_buffs(x)?.steps, OWN_RIGHT, false)?;
    b.draw_held(&[Charge, ShadowWordDeath])?;
    let gx = Guard {
        decision,
        choice: Choice::X,
    };
    let gy = Guard {
        decision,
        choice: Choice::Y,
    };
    b.play_held(
        vec![
            (gx, vec![play(Charge, OWN_RIGHT), attack_leper(OWN_RIGHT)]),
            (gy, vec![play(ShadowWordDeath, OWN_RIGHT)]),
        ],
        Some(ForceTag::DecisionSpell),
    )?;
    b.play(Gahzrilla, 0, None, Some(ForceTag::CarrierSummon))?;
    play_buffs(
        &mut b,
        &synthesize_beast_buffs(y, DoublingMode::Blessed)?.steps,
        OWN_RIGHT,
        true,
    )?;
    b.play_held(
        vec![
            (gx, vec![play(ShadowWordDeath, OWN_RIGHT)]),
            (gy, vec![play(Charge, OWN_RIGHT), attack_leper(OWN_RIGHT)]),
        ],
        Some(ForceTag::DecisionSpell),
    )?;
    if seed {
        // 7-attack demon for the enemy to finish next turn
        b.play(FloatingWatcher, 0, None, Some(ForceTag::CarrierSummon))?;
        b.play(Demonfuse, 0, Some(OWN_RIGHT), None)?;
    }
    b.play(FrostNova, 0, None, Some(ForceTag::FrostNova))?;
    b.close()
}

/// Enemy choice turn: finish the friendly demon to 10·x and steal it, build
/// a beast to 10·y, then kill one of the two with Shadow Word: Death.
fn enemy_choice_turn(
    turn: u32,
    decision: usize,
    (x, y): (u64, u64),
) -> Result<TurnSchedule, ReductionError> {
    let mut b = TurnBuilder::new(turn);
    let theirs = Target::OpponentFromRight(0);
    // the seed already received the first Demonfuse
    let demon = synthesize_demon_buffs(x)?;
    play_buffs(&mut b, &demon.steps[1..], theirs, false)?;
    for _ in 0..COILS {
        b.play(MortalCoil, 0, Some(theirs), None)?;
    }
    b.play(MindControl, 0, Some(theirs), None)?;
    b.play(Gahzrilla, 0, None, Some(ForceTag::CarrierSummon))?;
    play_buffs(
        &mut b,
        &synthesize_beast_buffs(y, DoublingMode::Backstab)?.steps,
        OWN_RIGHT,
        true,
    )?;
    b.draw_held(&[ShadowWordDeath])?;
    b.play_held(
        vec![
            // killing the beast keeps x
            (
                Guard {
                    decision,
                    choice: Choice::X,
                },
                vec![play(ShadowWordDeath, OWN_RIGHT)],
            ),
            (
                Guard {
                    decision,
                    choice: Choice::Y,
                },
                vec![play(ShadowWordDeath, Target::OwnFromRight(1))],
            ),
        ],
        Some(ForceTag::DecisionSpell),
    )?;
    b.play(FrostNova, 0, None, Some(ForceTag::FrostNova))?;
    b.close()
}

fn pass_turn(turn: u32) -> Result<TurnSchedule, ReductionError> {
    let mut b = TurnBuilder::new(turn);
    b.play(FrostNova, 0, None, Some(ForceTag::FrostNova))?;
    b.close()
}

/// Last friendly turn: an 8-attack Gahz'rilla kills the Leper Gnome iff it
/// has exactly 8 health left, after which the hero swings for the win.
fn verify_turn(turn: u32, steal: bool) -> Result<TurnSchedule, ReductionError> {
    let mut b = TurnBuilder::new(turn);
    if steal {
        steal_survivor(&mut b)?;
    }
    b.play(Gahzrilla, 0, None, Some(ForceTag::CarrierSummon))?;
    b.play(FlashHeal, 0, Some(Target::OwnHero), None)?;
    b.play(Charge, 0, Some(OWN_RIGHT), None)?;
    b.action(
        attack_leper(OWN_RIGHT),
        Some(ForceTag::DecisionAttack),
        false,
    );
    b.action(
        Step::Attack {
            attacker: Target::OwnHero,
            defender: Target::OpponentHero,
        },
        Some(ForceTag::Finisher),
        true,
    );
    Ok(b.finish())
}

fn hero() -> HeroConfig {
    HeroConfig {
        health: 1,
        max_health: HERO_MAX_HEALTH,
        weapon: Some(Weapon {
            attack: 1,
            durability: 4,
        }),
        mana_crystals: MAX_MANA,
        mana: None,
        fatigue: 0,
        frozen: false,
        attacked: false,
    }
}

fn to_i32(v: u64, what: &str) -> Result<i32, ReductionError> {
    i32::try_from(v)
        .map_err(|_| ReductionError::InvalidInstance(format!("{what} {v} is too large")))
}

/// The fixed opening battlefield with the given decks.
pub fn initial_config(
    leper_health: u64,
    big_attack: u64,
    friendly_deck: Vec<CardId>,
    enemy_deck: Vec<CardId>,
) -> Result<GameConfig, ReductionError> {
    let h = to_i32(leper_health, "Leper Gnome health")?;
    let l = to_i32(big_attack, "attack")? as u32;
    let frozen = |c: CardId| MinionConfig::new(c).flag(MinionFlag::Frozen);
    let friendly = PlayerConfig {
        hero: hero(),
        deck: friendly_deck,
        hand: Vec::new(),
        board: vec![
            frozen(WeeSpellstopper),
            frozen(WeeSpellstopper),
            frozen(MistressOfMixtures),
            frozen(WeeSpellstopper),
            frozen(WeeSpellstopper),
            frozen(GadgetzanAuctioneer)
                .stats(l, 4)
                .flag(MinionFlag::Taunt),
        ],
    };
    let enemy = PlayerConfig {
        hero: hero(),
        deck: enemy_deck,
        hand: Vec::new(),
        board: vec![
            MinionConfig::new(LeperGnome)
                .stats(l, h)
                .flag(MinionFlag::Taunt),
            MinionConfig::new(WeeSpellstopper),
            MinionConfig::new(WeeSpellstopper),
            MinionConfig::new(GadgetzanAuctioneer),
        ],
    };
    Ok(GameConfig {
        format_version: FORMAT_VERSION,
        players: [friendly, enemy],
        active: Player::Friendly,
        turn: 1,
        turn_limit: DEFAULT_TURN_LIMIT,
        phase: Phase::Start,
    })
}

/// Compiles a partition game into a starting position and scripted line.
/// Turn i plays choice i; the turn after the last choice (or after an enemy
/// pass turn when n is odd) checks whether the Leper Gnome has exactly 8
/// health left.
pub fn compile(inst: &PartitionInstance) -> Result<Compiled, ReductionError> {
    inst.validate()?;
    let (enc, shift) = inst.normalized();
    let n = enc.n();
    let mut friendly_deck = Vec::new();
    let mut enemy_deck = Vec::new();
    let mut steps = Vec::new();
    let mut decisions = Vec::new();

    for (i, (&pair, &orig)) in enc.pairs.iter().zip(&inst.pairs).enumerate() {
        let turn = i as u32 + 1;
        let friendly = i % 2 == 0;
        decisions.push(Decision {
            turn,
            player: if friendly {
                Player::Friendly
            } else {
                Player::Enemy
            },
            x: Annotation {
                turn,
                choice: Choice::X,
                value: orig.0,
            },
            y: Annotation {
                turn,
                choice: Choice::Y,
                value: orig.1,
            },
            attack_x: 10 * pair.0 + 2,
            attack_y: 10 * pair.1 + 2,
        });
        let sched = if friendly {
            friendly_choice_turn(turn, i, pair, i > 0, i + 1 < n)?
        } else {
            enemy_choice_turn(turn, i, pair)?
        };
        let deck = if friendly {
            &mut friendly_deck
        } else {
            &mut enemy_deck
        };
        deck.extend(sched.deck);
        steps.extend(sched.steps);
    }
    let mut turn = n as u32 + 1;
    if n % 2 == 1 {
        let sched = pass_turn(turn)?;
        enemy_deck.extend(sched.deck);
        steps.extend(sched.steps);
        turn += 1;
    }
    let sched = verify_turn(turn, n % 2 == 0)?;
    friendly_deck.extend(sched.deck);
    steps.extend(sched.steps);
    friendly_deck.extend([LightsJustice; TRAILING_PADDING]);
    enemy_deck.extend([LightsJustice; TRAILING_PADDING]);

    let config = initial_config(
        leper_health(&enc),
        big_attack(&enc),
        friendly_deck,
        enemy_deck,
    )?;
    let line = ScriptedLine {
        format_version: FORMAT_VERSION,
        shift,
        decisions,
        steps,
    };
    // the schedule model must agree with the engine on both extreme lines
    for c in [Choice::X, Choice::Y] {
        materialize(&config, &line, &vec![c; n])?;
    }
    Ok(Compiled {
        config,
        line,
        encoded: enc,
    })
}

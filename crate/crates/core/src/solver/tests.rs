use super::*;
use crate::cards::CardId::*;
use crate::engine::{
    Action, CharRef, GameConfig, HeroConfig, MinionConfig, MinionFlag, Phase, Player, PlayerConfig,
    DEFAULT_TURN_LIMIT, FORMAT_VERSION, HERO_MAX_HEALTH,
};
use crate::reduction::{compile, ForceTag, PartitionInstance};

fn side(health: i32, board: Vec<MinionConfig>) -> PlayerConfig {
    PlayerConfig {
        hero: HeroConfig {
            health,
            max_health: HERO_MAX_HEALTH,
            weapon: None,
            mana_crystals: 10,
            mana: None,
            fatigue: 0,
            frozen: false,
            attacked: false,
        },
        deck: vec![LightsJustice; 3],
        hand: Vec::new(),
        board,
    }
}

fn position(friendly: PlayerConfig, enemy: PlayerConfig) -> crate::GameState {
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

fn small() -> Budget {
    Budget {
        max_nodes: 100_000,
        max_depth: 32,
        use_table: true,
    }
}

#[test]
fn lethal_on_board_is_a_win() {
    let s = position(
        side(5, vec![MinionConfig::new(WeeSpellstopper)]),
        side(1, vec![]),
    );
    let r = minimax(&s, small());
    assert_eq!(r.verdict, Verdict::Win);
    assert!(matches!(r.principal_variation[0], Action::Attack { .. }));
}

#[test]
fn facing_lethal_with_no_answer_is_a_loss() {
    let s = position(
        side(1, vec![]),
        side(30, vec![MinionConfig::new(LeperGnome).stats(50, 50)]),
    );
    let r = minimax(&s, small());
    assert_eq!(r.verdict, Verdict::Loss);
    assert_eq!(r.principal_variation.first(), Some(&Action::EndTurn));
}

#[test]
fn draws_are_not_wins() {
    // nothing can attack before the turn limit runs out
    let mut s = position(side(1, vec![]), side(1, vec![]));
    s.turn_limit = 1;
    assert_eq!(minimax(&s, small()).verdict, Verdict::Draw);
    assert_eq!(prove(&s, Player::Friendly, Goal::Win, small()).0, Tri::No);
    assert_eq!(
        prove(&s, Player::Friendly, Goal::AtLeastDraw, small()).0,
        Tri::Yes
    );
}

#[test]
fn unknown_only_when_budget_runs_out() {
    let s = position(side(1, vec![]), side(30, vec![]));
    let tight = Budget {
        max_nodes: 1,
        max_depth: 1,
        use_table: true,
    };
    assert_eq!(minimax(&s, tight).verdict, Verdict::Unknown);
}

#[test]
fn table_toggle_does_not_change_verdicts() {
    let s = position(
        side(3, vec![MinionConfig::new(WeeSpellstopper)]),
        side(
            2,
            vec![MinionConfig::new(LeperGnome).flag(MinionFlag::Taunt)],
        ),
    );
    let with = minimax(&s, small()).verdict;
    let without = minimax(
        &s,
        Budget {
            use_table: false,
            ..small()
        },
    )
    .verdict;
    assert_eq!(with, without);
}

#[test]
fn skeleton_examples() {
    let cases = [
        (PartitionInstance::worked_example(), Verdict::Win),
        (PartitionInstance::new(vec![(1, 2)], 3), Verdict::Loss),
        (PartitionInstance::new(vec![(0, 0)], 0), Verdict::Win),
    ];
    for (inst, want) in cases {
        let c = compile(&inst).unwrap();
        let r = skeleton_solve(&c.config, &c.line).unwrap();
        assert_eq!(r.verdict, want, "{inst:?}");
        assert_eq!(r.verdict == Verdict::Win, oracle_left_wins(&inst));
    }
}

#[test]
fn best_choices_follow_the_oracle() {
    let c = compile(&PartitionInstance::worked_example()).unwrap();
    let (choices, win) = best_choices(&c.config, &c.line).unwrap();
    assert!(win);
    let sum = ChoiceVector(choices).sum(&PartitionInstance::worked_example());
    assert_eq!(sum, 18);
}

fn first_site(line: &crate::reduction::ScriptedLine, turn: u32, tag: ForceTag) -> usize {
    line.steps
        .iter()
        .position(|s| s.turn == turn && s.tag == Some(tag))
        .unwrap()
}

#[test]
fn opening_turn_deviations() {
    let c = compile(&PartitionInstance::worked_example()).unwrap();
    let report = deviation_check(&c.config, &c.line, &CheckOptions::default()).unwrap();
    assert_eq!(report.unresolved, 0, "{report:#?}");

    let nova = first_site(&c.line, 1, ForceTag::FrostNova);
    assert_eq!(
        report.find(nova, &Action::EndTurn).unwrap().status,
        DeviationStatus::Refuted
    );

    let summon = first_site(&c.line, 1, ForceTag::CarrierSummon);
    let step = report.steps.iter().find(|s| s.step == summon).unwrap();
    let Action::PlayCard { hand, .. } = step.scripted else {
        panic!("summon site is not a card play");
    };
    let leftmost = Action::PlayCard {
        hand,
        target: None,
        position: Some(0),
    };
    assert_eq!(
        report.find(summon, &leftmost).unwrap().status,
        DeviationStatus::Refuted
    );
    // playing the Innervate first and the Watcher afterwards transposes
    assert!(step
        .deviations
        .iter()
        .any(|d| d.status == DeviationStatus::ScriptedDominates));
}

#[test]
fn charge_and_death_on_one_carrier_is_refuted() {
    let c = compile(&PartitionInstance::worked_example()).unwrap();
    let choices = crate::reduction::parse_choices("xyyx").unwrap();
    let (trace, _) = trace_line(&c.config, &c.line, &choices).unwrap();
    let attack = first_site(&c.line, 1, ForceTag::DecisionAttack);
    let (_, pre, _) = trace.iter().find(|t| t.0 == attack).unwrap();
    let hand = &pre.player(Player::Friendly).hand;
    let innervate = hand.iter().position(|&c| c == Innervate).unwrap();
    let mut after = hand.clone();
    after.remove(innervate);
    let death = after.iter().position(|&c| c == ShadowWordDeath).unwrap();
    let watcher = CharRef::minion(
        Player::Friendly,
        pre.player(Player::Friendly).board.len() - 1,
    );
    let actions = [
        Action::PlayCard {
            hand: innervate,
            target: None,
            position: None,
        },
        Action::PlayCard {
            hand: death,
            target: Some(watcher),
            position: None,
        },
    ];
    let status = check_deviation(
        &c.config,
        &c.line,
        Some(choices),
        attack,
        &actions,
        Probe::default(),
    )
    .unwrap();
    assert_eq!(status, Some(DeviationStatus::Refuted));
}

#[test]
fn exhaustive_agrees_on_a_tiny_position() {
    let mut s = position(
        side(2, vec![MinionConfig::new(WeeSpellstopper)]),
        side(2, vec![MinionConfig::new(LeperGnome)]),
    );
    s.turn_limit = 2;
    let v = exhaustive_value(&s, 6).expect("settles within six plies");
    assert_eq!(
        minimax(
            &s,
            Budget {
                max_depth: 6,
                ..small()
            }
        )
        .verdict,
        verdict_of(v)
    );
}

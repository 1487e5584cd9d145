use proptest::prelude::*;

use hsreduce::cards::CardId::{self, *};
use hsreduce::engine::{
    self, state_hash, GameConfig, GameState, HeroConfig, MinionConfig, Phase, Player, PlayerConfig,
    FORMAT_VERSION, HERO_MAX_HEALTH, MAX_BOARD, MAX_HAND, MAX_MANA,
};
use hsreduce::reduction::{
    compile, leper_health, step_bound, synthesize_beast_buffs, synthesize_demon_buffs, Choice,
    DoublingMode, ForceTag, PartitionInstance,
};
use hsreduce::solver::{
    exhaustive_value, minimax, oracle_left_wins, trace_line, verdict_of, Budget,
};

fn small_instance() -> impl Strategy<Value = PartitionInstance> {
    (prop::collection::vec((0u64..=2, 0u64..=2), 1..=3), 0u64..=6)
        .prop_map(|(pairs, t)| PartitionInstance::new(pairs, t))
}

fn choices(n: usize) -> impl Strategy<Value = Vec<Choice>> {
    prop::collection::vec(prop_oneof![Just(Choice::X), Just(Choice::Y)], n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn oracle_ignores_order_within_pairs(
        pairs in prop::collection::vec((0u64..=9, 0u64..=9), 1..=8),
        t in 0u64..=60,
        flips in prop::collection::vec(any::<bool>(), 8),
    ) {
        let inst = PartitionInstance::new(pairs.clone(), t);
        let swapped = PartitionInstance::new(
            pairs.iter().zip(&flips).map(|(&(x, y), &f)| if f { (y, x) } else { (x, y) }).collect(),
            t,
        );
        prop_assert_eq!(oracle_left_wins(&inst), oracle_left_wins(&swapped));
    }

    #[test]
    fn compile_is_deterministic(inst in small_instance()) {
        let a = compile(&inst).unwrap();
        let b = compile(&inst).unwrap();
        prop_assert_eq!(a.config.to_json(), b.config.to_json());
        prop_assert_eq!(a.line.to_json(), b.line.to_json());
    }

    #[test]
    fn scripted_lines_stay_legal_and_count_down(
        (inst, picks) in small_instance().prop_flat_map(|i| { let n = i.n(); (Just(i), choices(n)) })
    ) {
        let c = compile(&inst).unwrap();
        let (trace, end) = trace_line(&c.config, &c.line, &picks).unwrap();
        let enc = &c.encoded;
        let spent: i64 = enc.pairs.iter().zip(&picks).map(|(&p, ch)| 10 * ch.pick(p) as i64 + 2).sum();
        let left = leper_health(enc) as i64 - spent;
        let verify = c.line.steps.iter().rposition(|s| s.tag == Some(ForceTag::DecisionAttack)).unwrap();
        match trace.iter().find(|t| t.0 == verify) {
            Some((_, pre, _)) => {
                let slot = pre.find_minion(Player::Enemy, LeperGnome).unwrap();
                let hp = pre.player(Player::Enemy).board[slot].health as i64;
                prop_assert_eq!(hp, left);
                prop_assert!(hp % 10 == 8, "remainder {hp} is not 10k+8");
            }
            None => {
                prop_assert!(left <= 0, "line stopped early with {left} health left");
                prop_assert!(end.outcome.is_over());
            }
        }
    }

    #[test]
    fn buff_sequences_respect_the_step_bound(v in 1u64..64) {
        for seq in [
            synthesize_demon_buffs(v).unwrap(),
            synthesize_beast_buffs(v, DoublingMode::Blessed).unwrap(),
            synthesize_beast_buffs(v, DoublingMode::Backstab).unwrap(),
        ] {
            prop_assert!(seq.len() <= step_bound(v));
        }
    }
}

fn legal_walk(config: &GameConfig, picks: &[usize]) -> Result<(), TestCaseError> {
    let mut s = config.to_state().unwrap();
    let totals: Vec<u64> = s.players.iter().map(|p| p.card_count()).collect();
    for &k in picks {
        if s.outcome.is_over() {
            break;
        }
        let moves = engine::legal_actions(&s);
        let a = moves[k % moves.len()];
        let next = engine::apply(&s, a).unwrap();
        prop_assert_eq!(
            state_hash(&next),
            state_hash(&engine::apply(&s, a).unwrap())
        );
        for (p, &total) in next.players.iter().zip(&totals) {
            prop_assert_eq!(p.card_count(), total);
            prop_assert!(p.board.len() <= MAX_BOARD);
            prop_assert!(p.hand.len() <= MAX_HAND);
            prop_assert!(p.hero.mana_available <= MAX_MANA);
            prop_assert!(p.board.iter().all(|m| m.health > 0));
        }
        s = next;
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_walks_keep_invariants(
        inst in small_instance(),
        picks in prop::collection::vec(any::<usize>(), 0..200),
    ) {
        legal_walk(&compile(&inst).unwrap().config, &picks)?;
    }
}

const POOL: [CardId; 6] = [
    WeeSpellstopper,
    LeperGnome,
    MistressOfMixtures,
    FloatingWatcher,
    Gahzrilla,
    NoviceEngineer,
];
const SPELLS: [CardId; 6] = [
    Backstab,
    Charge,
    FrostNova,
    MortalCoil,
    FlashHeal,
    ShadowWordDeath,
];

fn micro_side(health: i32, board: &[usize], hand: &[usize]) -> PlayerConfig {
    PlayerConfig {
        hero: HeroConfig {
            health,
            max_health: HERO_MAX_HEALTH,
            weapon: None,
            mana_crystals: MAX_MANA,
            mana: None,
            fatigue: 0,
            frozen: false,
            attacked: false,
        },
        deck: vec![],
        hand: hand.iter().map(|&i| SPELLS[i]).collect(),
        board: board.iter().map(|&i| MinionConfig::new(POOL[i])).collect(),
    }
}

fn micro_position() -> impl Strategy<Value = GameState> {
    (
        1i32..=4,
        prop::collection::vec(0..POOL.len(), 0..=2),
        prop::collection::vec(0..SPELLS.len(), 0..=1),
        1i32..=4,
        prop::collection::vec(0..POOL.len(), 0..=2),
    )
        .prop_map(|(fh, fb, hand, eh, eb)| {
            GameConfig {
                format_version: FORMAT_VERSION,
                players: [micro_side(fh, &fb, &hand), micro_side(eh, &eb, &[])],
                active: Player::Friendly,
                turn: 1,
                turn_limit: 1,
                phase: Phase::Main,
            }
            .to_state()
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn memoized_search_matches_exhaustive(s in micro_position()) {
        if let Some(v) = exhaustive_value(&s, 6) {
            let budget = Budget { max_nodes: 1_000_000, max_depth: 6, use_table: true };
            prop_assert_eq!(minimax(&s, budget).verdict, verdict_of(v));
        }
    }
}

use super::*;
use crate::cards::CardId;
use crate::engine::{replay, EventKind, Outcome, Player};

fn leper_trace(events: &[crate::engine::Event], start: i64) -> Vec<i64> {
    let mut trace = vec![start];
    for e in events {
        if let EventKind::Damage { target, .. } = &e.kind {
            if target.card == Some(CardId::LeperGnome) && target.side == Player::Enemy {
                trace.push(target.health as i64);
            }
        }
    }
    trace
}

#[test]
fn worked_example_trace() {
    let c = compile(&PartitionInstance::worked_example()).unwrap();
    let choices = parse_choices("xyyx").unwrap();
    let script = materialize(&c.config, &c.line, &choices).unwrap();
    let r = replay(&c.config, &script).unwrap();
    assert_eq!(leper_trace(&r.events, 196), vec![196, 184, 152, 90, 8, 0]);
    assert_eq!(r.state.outcome, Outcome::FriendlyWins);
}

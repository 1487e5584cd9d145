//! Position digests.
//!
//! The digest is the XOR of one 64-bit key per state component (hero, deck
//! remainder, hand card counts, each occupied board slot, turn data). Keys
//! include the component's side and slot, so board order is significant, while
//! the XOR makes the result independent of the order in which components are
//! visited. Hands are hashed as multisets since hand order has no effect on play.
//!
//! Keys come from splitmix64 over the component's fields, so digests are the
//! same on every platform. For two distinct positions the collision
//! probability is about 2^-64; a search over N distinct positions collides with
//! probability about N^2 / 2^65.

use super::state::{GameState, Player};

const SEED: u64 = 0x5eed_4ea7_b0a7_d1ce;

pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn mix_words(words: &[u64]) -> u64 {
    words.iter().fold(SEED, |h, &w| mix(h ^ w))
}

/// All component keys of `state`, in a fixed traversal order.
pub(crate) fn component_keys(state: &GameState) -> Vec<u64> {
    let mut keys = Vec::with_capacity(32);
    for side in [Player::Friendly, Player::Enemy] {
        let p = state.player(side);
        let s = side as u64;
        let h = &p.hero;
        let (wa, wd) = h.weapon.map_or((u64::MAX, u64::MAX), |w| {
            (w.attack as u64, w.durability as u64)
        });
        keys.push(mix_words(&[
            1,
            s,
            h.health as i64 as u64,
            h.max_health as i64 as u64,
            wa,
            wd,
            h.attacked_this_turn as u64 | (h.frozen as u64) << 1,
            h.mana_crystals as u64,
            h.mana_available as u64,
            h.fatigue_counter as u64,
        ]));
        keys.push(mix_words(&[2, s, p.deck.digest()]));
        let mut counts = [0u64; crate::cards::CARD_COUNT];
        for c in &p.hand {
            counts[c.index()] += 1;
        }
        for (card, &n) in counts.iter().enumerate() {
            if n > 0 {
                keys.push(mix_words(&[3, s, card as u64, n]));
            }
        }
        for (slot, m) in p.board.iter().enumerate() {
            keys.push(m.position_hash(side, slot));
        }
        keys.push(mix_words(&[5, s, p.removed as u64]));
    }
    keys.push(mix_words(&[
        6,
        state.active as u64,
        state.turn as u64,
        state.outcome as u64,
        state.turn_limit as u64,
    ]));
    keys
}

/// 64-bit digest of a position. Equal positions (see `GameState`'s `PartialEq`)
/// always digest equal.
pub fn state_hash(state: &GameState) -> u64 {
    component_keys(state).into_iter().fold(0, |acc, k| acc ^ k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix_is_a_bijection_on_samples() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..10_000u64 {
            assert!(seen.insert(mix(i)));
        }
    }

    #[test]
    fn word_order_matters_inside_a_component() {
        assert_ne!(mix_words(&[1, 2]), mix_words(&[2, 1]));
    }
}

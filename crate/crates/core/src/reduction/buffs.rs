//! Buff programs that lift a carrier's attack to exactly 10·v.
//!
//! Both carriers first reach 10 (two Demonfuse on a 4-attack Floating
//! Watcher, two Marks on a 6-attack Gahz'rilla). The remaining bits of v are
//! then consumed high to low: every bit doubles, and a 1 bit also adds 10
//! with five Marks. The result has at most 2 + 6·⌊log₂ v⌋ steps.

use serde::{Deserialize, Serialize};

use crate::cards::CardId;
use crate::error::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuffStep {
    Demonfuse,
    Mark,
    BlessedChampion,
    Backstab,
    /// Flash Heal on the carrier followed by Backstab. One step.
    HealThenBackstab,
}

impl BuffStep {
    pub fn cards(self) -> &'static [CardId] {
        match self {
            BuffStep::Demonfuse => &[CardId::Demonfuse],
            BuffStep::Mark => &[CardId::MarkOfYShaarj],
            BuffStep::BlessedChampion => &[CardId::BlessedChampion],
            BuffStep::Backstab => &[CardId::Backstab],
            BuffStep::HealThenBackstab => &[CardId::FlashHeal, CardId::Backstab],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    Demon,
    Beast,
}

impl Carrier {
    pub fn card(self) -> CardId {
        match self {
            Carrier::Demon => CardId::FloatingWatcher,
            Carrier::Beast => CardId::Gahzrilla,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DoublingMode {
    Blessed,
    Backstab,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuffSequence {
    pub carrier: Carrier,
    pub steps: Vec<BuffStep>,
}

impl BuffSequence {
    pub fn cards(&self) -> Vec<CardId> {
        self.steps
            .iter()
            .flat_map(|s| s.cards().iter().copied())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Upper bound on the number of steps for value `v`.
pub fn step_bound(v: u64) -> usize {
    2 + 6 * v.ilog2() as usize
}

fn expand(v: u64, mut steps: Vec<BuffStep>, mode: DoublingMode) -> Vec<BuffStep> {
    // health bookkeeping for the Backstab chain: only undamaged targets
    let mut damaged = false;
    for bit in (0..v.ilog2()).rev() {
        match mode {
            DoublingMode::Blessed => steps.push(BuffStep::BlessedChampion),
            DoublingMode::Backstab => {
                steps.push(if damaged {
                    BuffStep::HealThenBackstab
                } else {
                    BuffStep::Backstab
                });
                damaged = true;
            }
        }
        if v >> bit & 1 == 1 {
            steps.extend([BuffStep::Mark; 5]);
        }
    }
    steps
}

pub fn synthesize_demon_buffs(v: u64) -> Result<BuffSequence, ReductionError> {
    if v == 0 {
        return Err(ReductionError::NoMinionNeeded(v));
    }
    Ok(BuffSequence {
        carrier: Carrier::Demon,
        steps: expand(v, vec![BuffStep::Demonfuse; 2], DoublingMode::Blessed),
    })
}

pub fn synthesize_beast_buffs(v: u64, mode: DoublingMode) -> Result<BuffSequence, ReductionError> {
    if v == 0 {
        return Err(ReductionError::NoMinionNeeded(v));
    }
    Ok(BuffSequence {
        carrier: Carrier::Beast,
        steps: expand(v, vec![BuffStep::Mark; 2], mode),
    })
}

#[cfg(test)]
mod tests {
    use super::BuffStep::*;
    use super::*;

    #[test]
    fn documented_sequences() {
        assert_eq!(
            synthesize_demon_buffs(1).unwrap().steps,
            vec![Demonfuse, Demonfuse]
        );
        assert_eq!(
            synthesize_demon_buffs(5).unwrap().steps,
            vec![
                Demonfuse,
                Demonfuse,
                BlessedChampion,
                BlessedChampion,
                Mark,
                Mark,
                Mark,
                Mark,
                Mark
            ]
        );
        assert_eq!(
            synthesize_demon_buffs(4).unwrap().steps,
            vec![Demonfuse, Demonfuse, BlessedChampion, BlessedChampion]
        );
        assert_eq!(
            synthesize_beast_buffs(6, DoublingMode::Blessed)
                .unwrap()
                .steps,
            vec![
                Mark,
                Mark,
                BlessedChampion,
                Mark,
                Mark,
                Mark,
                Mark,
                Mark,
                BlessedChampion
            ]
        );
        assert_eq!(
            synthesize_beast_buffs(8, DoublingMode::Backstab)
                .unwrap()
                .cards(),
            vec![
                CardId::MarkOfYShaarj,
                CardId::MarkOfYShaarj,
                CardId::Backstab,
                CardId::FlashHeal,
                CardId::Backstab,
                CardId::FlashHeal,
                CardId::Backstab
            ]
        );
        assert_eq!(
            synthesize_beast_buffs(1, DoublingMode::Blessed)
                .unwrap()
                .steps,
            vec![Mark, Mark]
        );
    }

    #[test]
    fn zero_needs_no_minion() {
        assert_eq!(
            synthesize_demon_buffs(0),
            Err(ReductionError::NoMinionNeeded(0))
        );
    }
}

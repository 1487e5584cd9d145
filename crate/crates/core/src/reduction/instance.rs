use serde::{Deserialize, Serialize};

use crate::error::ReductionError;

/// A partition game: Left picks `x_1` or `y_1`, Right picks `x_2` or `y_2`,
/// and so on. Left wins iff the picks sum to exactly `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionInstance {
    pub pairs: Vec<(u64, u64)>,
    pub target: u64,
}

impl PartitionInstance {
    pub fn new(pairs: Vec<(u64, u64)>, target: u64) -> PartitionInstance {
        PartitionInstance { pairs, target }
    }

    /// The worked example: (1,2) (4,3) (5,6) (8,8), T = 18.
    pub fn worked_example() -> PartitionInstance {
        PartitionInstance::new(vec![(1, 2), (4, 3), (5, 6), (8, 8)], 18)
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.pairs.is_empty() {
            return Err(ReductionError::InvalidInstance(
                "need at least one pair (n >= 1)".into(),
            ));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<PartitionInstance, ReductionError> {
        let inst: PartitionInstance =
            serde_json::from_str(s).map_err(|e| ReductionError::InvalidInstance(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn max_value(&self) -> u64 {
        self.pairs.iter().map(|&(x, y)| x.max(y)).max().unwrap_or(0)
    }

    /// Shifts every pair containing a zero up by one on both sides and raises
    /// the target by the same total. Every choice vector keeps its standing
    /// relative to the target, so the game value is unchanged, and afterwards
    /// every carrier has a positive value to be buffed to.
    pub fn normalized(&self) -> (PartitionInstance, u64) {
        let mut shift = 0;
        let pairs = self
            .pairs
            .iter()
            .map(|&(x, y)| {
                if x == 0 || y == 0 {
                    shift += 1;
                    (x + 1, y + 1)
                } else {
                    (x, y)
                }
            })
            .collect();
        (PartitionInstance::new(pairs, self.target + shift), shift)
    }
}

/// Leper Gnome health, 10T + 2n + 8.
pub fn leper_health(inst: &PartitionInstance) -> u64 {
    10 * inst.target + 2 * inst.n() as u64 + 8
}

/// Attack of the Leper Gnome and of the friendly Auctioneer: large enough to
/// one-shot any carrier, never below 1000.
pub fn big_attack(inst: &PartitionInstance) -> u64 {
    (20 * inst.max_value() + 100).max(1000)
}

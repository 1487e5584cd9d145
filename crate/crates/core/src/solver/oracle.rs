//! Ground truth for the partition game.

use std::collections::HashMap;

use crate::reduction::{Choice, PartitionInstance};

/// Whether Left (choosing at even indices) forces the picks to sum to
/// exactly the target. Memoized on (index, running sum).
pub fn oracle_left_wins(inst: &PartitionInstance) -> bool {
    fn go(
        inst: &PartitionInstance,
        i: usize,
        sum: u64,
        memo: &mut HashMap<(usize, u64), bool>,
    ) -> bool {
        if i == inst.pairs.len() {
            return sum == inst.target;
        }
        if sum > inst.target {
            // values are non-negative
            return false;
        }
        if let Some(&v) = memo.get(&(i, sum)) {
            return v;
        }
        let (x, y) = inst.pairs[i];
        let a = go(inst, i + 1, sum + x, memo);
        let b = go(inst, i + 1, sum + y, memo);
        let v = if i % 2 == 0 { a || b } else { a && b };
        memo.insert((i, sum), v);
        v
    }
    go(inst, 0, 0, &mut HashMap::new())
}

/// Independent check: evaluate all 2^n leaves, then fold level by level.
pub fn naive_left_wins(inst: &PartitionInstance) -> bool {
    let n = inst.pairs.len();
    // leaf index bit (n-1-i) holds choice i, 1 meaning y
    let mut level: Vec<bool> = (0..1usize << n)
        .map(|leaf| {
            let sum: u64 = (0..n)
                .map(|i| {
                    let (x, y) = inst.pairs[i];
                    if leaf >> (n - 1 - i) & 1 == 1 {
                        y
                    } else {
                        x
                    }
                })
                .sum();
            sum == inst.target
        })
        .collect();
    for i in (0..n).rev() {
        level = level
            .chunks(2)
            .map(|c| {
                if i % 2 == 0 {
                    c[0] || c[1]
                } else {
                    c[0] && c[1]
                }
            })
            .collect();
    }
    level[0]
}

/// A full sequence of picks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceVector(pub Vec<Choice>);

impl ChoiceVector {
    pub fn sum(&self, inst: &PartitionInstance) -> u64 {
        self.0
            .iter()
            .zip(&inst.pairs)
            .map(|(c, &p)| c.pick(p))
            .sum()
    }

    /// k in H − Σ(10cᵢ + 2) = 10k + 8, i.e. T − sum. Negative when the
    /// picks overshoot.
    pub fn remainder_index(&self, inst: &PartitionInstance) -> i128 {
        inst.target as i128 - self.sum(inst) as i128
    }

    /// All 2^n vectors in lexicographic order (x before y).
    pub fn all(n: usize) -> impl Iterator<Item = ChoiceVector> {
        (0..1usize << n).map(move |bits| {
            ChoiceVector(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 1 {
                            Choice::Y
                        } else {
                            Choice::X
                        }
                    })
                    .collect(),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let example = PartitionInstance::worked_example();
        assert!(oracle_left_wins(&example));
        assert!(naive_left_wins(&example));
        assert!(oracle_left_wins(&PartitionInstance::new(vec![(0, 0)], 0)));
        assert!(!oracle_left_wins(&PartitionInstance::new(vec![(1, 2)], 3)));
        assert!(!naive_left_wins(&PartitionInstance::new(vec![(1, 2)], 3)));
    }

    #[test]
    fn remainder_of_example_line() {
        let example = PartitionInstance::worked_example();
        let v = ChoiceVector(crate::reduction::parse_choices("xyyx").unwrap());
        assert_eq!(v.sum(&example), 18);
        assert_eq!(v.remainder_index(&example), 0);
        assert_eq!(ChoiceVector::all(3).count(), 8);
    }
}

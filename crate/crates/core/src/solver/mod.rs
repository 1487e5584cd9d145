//! Solvers: the partition-game oracle, proof search over engine positions,
//! the decision skeleton of compiled lines, and deviation probes.

mod deviation;
mod minimax;
mod oracle;
mod search;
mod skeleton;

pub use deviation::{
    check_deviation, deviation_check, CheckOptions, Deviation, DeviationReport, DeviationStatus,
    Probe, Sites, StepReport,
};
pub use minimax::{exhaustive_value, minimax, prove, verdict_of, Budget, SolveResult, Verdict};
pub use oracle::{naive_left_wins, oracle_left_wins, ChoiceVector};
pub use search::{child, ordered_moves, Goal, ProofTable, Prover, Tri};
pub use skeleton::{best_choices, skeleton_solve, trace_line};

#[cfg(test)]
mod tests;

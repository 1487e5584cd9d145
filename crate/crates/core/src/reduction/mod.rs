//! Partition game to Hearthstone compiler.

mod buffs;
mod compile;
mod instance;
mod line;
mod schedule;

pub use buffs::{
    step_bound, synthesize_beast_buffs, synthesize_demon_buffs, BuffSequence, BuffStep, Carrier,
    DoublingMode,
};
pub use compile::{compile, initial_config, Compiled};
pub use instance::{big_attack, leper_health, PartitionInstance};
pub use line::{
    advance, format_choices, materialize, parse_choices, resolve_step, Annotation, Choice,
    Decision, ForceTag, Guard, Halt, LineStep, ScriptedLine, Step, Target,
};
pub use schedule::{draws_of, schedule_turn, TurnBuilder, TurnSchedule};

#[cfg(test)]
mod tests;

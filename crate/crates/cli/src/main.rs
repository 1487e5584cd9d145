mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hsreduce::error::ReductionError;

use commands::{CompileArgs, ReplayArgs, SimulateArgs, SolveArgs, VerifyArgs};
use manifest::Recorder;

const INPUT_ERROR: u8 = 2;
const INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hsreduce",
    version,
    about = "Partition games compiled to Hearthstone positions"
)]
struct Cli {
    /// Write the run manifest here instead of to stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an instance into a config and its scripted line.
    Compile(CompileArgs),
    /// Check the compiled game against the partition oracle.
    Verify(VerifyArgs),
    /// Run an action script and print the event log.
    Replay(ReplayArgs),
    /// Materialize the scripted line for a choice vector.
    Simulate(SimulateArgs),
    Solve(SolveArgs),
    #[command(subcommand)]
    Cards(CardsCommand),
}

#[derive(Subcommand)]
enum CardsCommand {
    /// Print the card table.
    Dump,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<ReductionError>() {
        Some(ReductionError::ScheduleInfeasible { .. }) => INFEASIBLE,
        _ => INPUT_ERROR,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut rec, run): (
        Recorder,
        Box<dyn FnOnce(&mut Recorder) -> anyhow::Result<u8>>,
    ) = match &cli.command {
        Command::Compile(a) => (
            Recorder::new("compile", vec![a.instance.clone()], a),
            Box::new(|r| commands::cmd_compile(a, r)),
        ),
        Command::Verify(a) => {
            let mut inputs = vec![a.instance.clone()];
            inputs.extend(a.config_override.clone());
            (
                Recorder::new("verify", inputs, a),
                Box::new(|r| commands::cmd_verify(a, r)),
            )
        }
        Command::Replay(a) => (
            Recorder::new("replay", vec![a.config.clone(), a.script.clone()], a),
            Box::new(|r| commands::cmd_replay(a, r)),
        ),
        Command::Simulate(a) => (
            Recorder::new("simulate", vec![a.instance.clone()], a),
            Box::new(|r| commands::cmd_simulate(a, r)),
        ),
        Command::Solve(a) => (
            Recorder::new("solve", vec![a.input.clone()], a),
            Box::new(|r| commands::cmd_solve(a, r)),
        ),
        Command::Cards(CardsCommand::Dump) => (
            Recorder::new("cards dump", vec![], serde_json::Value::Null),
            Box::new(|_| {
                print!("{}", hsreduce::cards::dump_json());
                Ok(0)
            }),
        ),
    };

    let code = match run(&mut rec) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    };

    // compile keeps its manifest next to the artifacts
    let manifest_path = match (&cli.manifest, &cli.command) {
        (Some(p), _) => Some(p.clone()),
        (None, Command::Compile(a)) if code == 0 => Some(a.out.join("manifest.json")),
        _ => None,
    };
    if let Err(e) = rec.finish(code).emit(manifest_path.as_deref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(INPUT_ERROR);
    }
    ExitCode::from(code)
}

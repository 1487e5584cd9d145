use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use hsreduce::engine::{self, Action, GameConfig, HeroConfig, MinionConfig, FORMAT_VERSION};
use hsreduce::error::ReductionError;
use hsreduce::reduction::{compile, format_choices, materialize, parse_choices, PartitionInstance};
use hsreduce::solver::{
    deviation_check, minimax, oracle_left_wins, skeleton_solve, Budget, CheckOptions, Probe,
    Verdict,
};

use crate::manifest::{config_hash, Recorder};

/// Exit statuses other than success and input errors.
pub const VERIFY_FAILED: u8 = 1;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_instance(path: &Path) -> Result<PartitionInstance> {
    Ok(PartitionInstance::from_json(&read(path)?)?)
}

fn read_config(path: &Path) -> Result<GameConfig> {
    Ok(GameConfig::from_json(&read(path)?)?)
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn print_json(v: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompileArgs {
    pub instance: PathBuf,
    /// Directory receiving config.json, line.json and manifest.json.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub turn_limit: Option<u32>,
}

pub fn cmd_compile(args: &CompileArgs, rec: &mut Recorder) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let mut c = compile(&inst)?;
    if let Some(t) = args.turn_limit {
        c.config.turn_limit = t;
    }
    let config = c.config.to_json();
    rec.config_hash = Some(config_hash(&config));
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write(&args.out.join("config.json"), &config)?;
    write(&args.out.join("line.json"), &c.line.to_json())?;
    Ok(0)
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyArgs {
    pub instance: PathBuf,
    /// Solve this config instead of the compiled one, still against the
    /// compiled line and the instance's oracle.
    #[arg(long)]
    pub config_override: Option<PathBuf>,
    /// Node budget per probed deviation.
    #[arg(long, default_value_t = Probe::default().nodes)]
    pub max_nodes: u64,
    /// Ply budget per probed deviation.
    #[arg(long, default_value_t = Probe::default().depth)]
    pub max_depth: u32,
    #[arg(long)]
    pub allow_unresolved: bool,
    #[arg(long)]
    pub turn_limit: Option<u32>,
    /// Probe tagged steps of every turn, not just the opening one.
    #[arg(long)]
    pub all_turns: bool,
    /// Write the full deviation report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

pub fn cmd_verify(args: &VerifyArgs, rec: &mut Recorder) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let compiled = compile(&inst)?;
    let mut config = match &args.config_override {
        Some(p) => read_config(p)?,
        None => compiled.config.clone(),
    };
    if let Some(t) = args.turn_limit {
        config.turn_limit = t;
    }
    rec.config_hash = Some(config_hash(&config.to_json()));

    let oracle = oracle_left_wins(&inst);
    // a tampered config may knock the line off its script
    let skeleton = match skeleton_solve(&config, &compiled.line) {
        Ok(r) => r.verdict,
        Err(ReductionError::Desync { .. }) => Verdict::Unknown,
        Err(e) => return Err(e.into()),
    };
    let matched = skeleton != Verdict::Unknown && (skeleton == Verdict::Win) == oracle;

    let opts = CheckOptions {
        probe: Probe {
            nodes: args.max_nodes,
            depth: args.max_depth,
            ..Probe::default()
        },
        turns: if args.all_turns {
            vec![]
        } else {
            CheckOptions::default().turns
        },
        ..CheckOptions::default()
    };
    let report = if skeleton == Verdict::Unknown {
        None
    } else {
        Some(deviation_check(&config, &compiled.line, &opts)?)
    };
    if let (Some(path), Some(r)) = (&args.report, &report) {
        let mut body = serde_json::to_string_pretty(&json!({
            "formatVersion": FORMAT_VERSION,
            "report": r,
        }))?;
        body.push('\n');
        write(path, &body)?;
    }
    let (refuted, unresolved) = report
        .as_ref()
        .map_or((0, 0), |r| (r.refuted, r.unresolved));

    print_json(&json!({
        "formatVersion": FORMAT_VERSION,
        "instance": inst,
        "oracle": oracle,
        "skeleton": skeleton,
        "match": matched,
        "choices": report.as_ref().map(|r| r.choices.clone()),
        "deviations": { "refuted": refuted, "unresolved": unresolved },
    }))?;
    let ok = matched && (unresolved == 0 || args.allow_unresolved);
    Ok(if ok { 0 } else { VERIFY_FAILED })
}

/// Accepts a bare action list or the versioned wrapper `simulate` writes.
#[derive(Deserialize)]
#[serde(untagged)]
enum ScriptFile {
    Wrapped {
        #[serde(rename = "formatVersion")]
        _format_version: u32,
        actions: Vec<Action>,
    },
    Bare(Vec<Action>),
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReplayArgs {
    pub config: PathBuf,
    pub script: PathBuf,
    /// Add a board snapshot after every action.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Snapshot {
    index: usize,
    action: Action,
    turn: u32,
    heroes: [HeroConfig; 2],
    boards: [Vec<MinionConfig>; 2],
}

/// Streams the event log as JSON lines. Returns the index of the first
/// illegal action, if any.
fn stream(config: &GameConfig, script: &[Action], trace: bool) -> Result<Option<usize>> {
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    writeln!(
        out,
        "{}",
        json!({
            "formatVersion": FORMAT_VERSION,
            "configHash": config_hash(&config.to_json()),
            "actions": script.len(),
        })
    )?;
    let mut events = Vec::new();
    let mut state = config.to_state_with(&mut events)?;
    let flush = |events: &mut Vec<engine::Event>, out: &mut dyn Write| -> Result<()> {
        for e in events.drain(..) {
            writeln!(out, "{}", serde_json::to_string(&e)?)?;
        }
        Ok(())
    };
    flush(&mut events, &mut out)?;
    for (index, &action) in script.iter().enumerate() {
        match engine::apply_with(&state, action, &mut events) {
            Ok(next) => state = next,
            Err(e) => {
                flush(&mut events, &mut out)?;
                out.flush()?;
                eprintln!("error: step {index}: {e}");
                return Ok(Some(index));
            }
        }
        flush(&mut events, &mut out)?;
        if trace {
            let c = GameConfig::from_state(&state);
            let [f, e] = c.players;
            let snap = Snapshot {
                index,
                action,
                turn: state.turn,
                heroes: [f.hero, e.hero],
                boards: [f.board, e.board],
            };
            writeln!(out, "{}", json!({ "trace": snap }))?;
        }
    }
    out.flush()?;
    Ok(None)
}

pub fn cmd_replay(args: &ReplayArgs, rec: &mut Recorder) -> Result<u8> {
    let config = read_config(&args.config)?;
    rec.config_hash = Some(config_hash(&config.to_json()));
    let script = match serde_json::from_str(&read(&args.script)?)
        .with_context(|| format!("malformed script {}", args.script.display()))?
    {
        ScriptFile::Wrapped { actions, .. } | ScriptFile::Bare(actions) => actions,
    };
    Ok(match stream(&config, &script, args.trace)? {
        Some(_) => VERIFY_FAILED,
        None => 0,
    })
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimulateArgs {
    pub instance: PathBuf,
    /// One letter per pair, e.g. "xyyx".
    #[arg(long)]
    pub choices: String,
    /// Print the event log instead of the action script.
    #[arg(long)]
    pub events: bool,
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub turn_limit: Option<u32>,
}

pub fn cmd_simulate(args: &SimulateArgs, rec: &mut Recorder) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let choices = parse_choices(&args.choices)?;
    let mut c = compile(&inst)?;
    if let Some(t) = args.turn_limit {
        c.config.turn_limit = t;
    }
    rec.config_hash = Some(config_hash(&c.config.to_json()));
    let script = materialize(&c.config, &c.line, &choices)?;
    if args.events || args.trace {
        stream(&c.config, &script, args.trace)?;
    } else {
        print_json(&json!({
            "formatVersion": FORMAT_VERSION,
            "choices": format_choices(&choices),
            "actions": script,
        }))?;
    }
    Ok(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Branch only at the decision points of the scripted line.
    Skeleton,
    /// Unrestricted search from the initial position.
    Full,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveArgs {
    /// A partition instance, or for `--mode full` also a game config.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Skeleton)]
    pub mode: Mode,
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = Budget::default().max_depth)]
    pub max_depth: u32,
    /// Disable the transposition table.
    #[arg(long)]
    pub no_table: bool,
    #[arg(long)]
    pub turn_limit: Option<u32>,
}

pub fn cmd_solve(args: &SolveArgs, rec: &mut Recorder) -> Result<u8> {
    let text = read(&args.input)?;
    let (mut config, line) = match PartitionInstance::from_json(&text) {
        Ok(inst) => {
            let c = compile(&inst)?;
            (c.config, Some(c.line))
        }
        Err(_) if args.mode == Mode::Full => (GameConfig::from_json(&text)?, None),
        Err(e) => return Err(e.into()),
    };
    if let Some(t) = args.turn_limit {
        config.turn_limit = t;
    }
    rec.config_hash = Some(config_hash(&config.to_json()));
    let result = match (args.mode, line) {
        (Mode::Skeleton, Some(line)) => skeleton_solve(&config, &line)?,
        _ => minimax(
            &config.to_state()?,
            Budget {
                max_nodes: args.max_nodes,
                max_depth: args.max_depth,
                use_table: !args.no_table,
            },
        ),
    };
    print_json(&json!({
        "formatVersion": FORMAT_VERSION,
        "mode": args.mode,
        "result": result,
    }))?;
    Ok(0)
}

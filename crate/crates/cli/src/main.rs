//! `regexmend`: check, match, compare, sample, mutate and repair extended
//! regexes from the command line.
//!
//! Exit codes: 0 success, 1 a well-formed negative answer (no match, not
//! equivalent, invalid, unrepaired), 2 usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use regexmend::corpus::{load_benchmark, make_invalid_pairs, run_harness, HarnessOptions};
use regexmend::engine::DEFAULT_MAX_LEN;
use regexmend::syncorr::{ExternalTool, RepairInput, ToolRole};
use regexmend::{fitness, parse, transregex, validate, Alphabet, Engine, ExampleSet, RepairConfig, Regex};

#[derive(Parser)]
#[command(name = "regexmend", version, about = "Example-guided regex repair")]
struct Cli {
    /// Alphabet as a literal list of characters (default: printable ASCII).
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print "valid" or "invalid".
    Check { regex: String },
    /// Whether the regex matches the whole string.
    Match { regex: String, string: String },
    /// Language equivalence of two regexes.
    Equiv { left: String, right: String },
    /// Fitness of a regex against an examples file.
    Fitness { regex: String, examples: PathBuf },
    /// Sample positive and negative examples from a regex.
    Gen {
        regex: String,
        #[arg(long, default_value_t = 10)]
        pos: usize,
        #[arg(long, default_value_t = 10)]
        neg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Produce invalid mutants of the regexes in a file (one per line).
    Mutate {
        targets: PathBuf,
        #[arg(long, default_value_t = 1)]
        per: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Repair a regex (or a description, via a synthesizer) against examples.
    Repair(RepairArgs),
    /// Run the repair harness over a JSON-lines benchmark.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ToolArgs {
    /// Command that turns a description into a regex.
    #[arg(long)]
    synthesizer: Option<String>,
    /// Repairer to try when the search fails.
    #[arg(long)]
    fallback: Option<String>,
    #[arg(long, default_value_t = ExternalTool::DEFAULT_TIMEOUT_MS)]
    tool_timeout_ms: u64,
    /// JSON file with RepairConfig fields; missing fields take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RepairArgs {
    #[arg(long, required_unless_present = "description", conflicts_with = "description")]
    regex: Option<String>,
    #[arg(long)]
    description: Option<String>,
    #[arg(long)]
    examples: PathBuf,
    /// Ground truth; adds `success_vs_target` to the report.
    #[arg(long)]
    target: Option<String>,
    #[command(flatten)]
    tools: ToolArgs,
}

#[derive(Args)]
struct BenchArgs {
    records: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    pos: usize,
    #[arg(long, default_value_t = 10)]
    neg: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Count consistent results as successes without checking equivalence.
    #[arg(long)]
    consistency_only: bool,
    /// Print an aligned table instead of JSON.
    #[arg(long)]
    table: bool,
    #[command(flatten)]
    tools: ToolArgs,
}

enum Verdict {
    Yes,
    No,
}

/// Write to stdout; a reader that went away early is not an error.
fn out(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    out(&format!("{}\n", serde_json::to_string(value)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_examples(path: &Path, engine: &Engine) -> Result<ExampleSet> {
    let ex: ExampleSet =
        serde_json::from_str(&read(path)?).with_context(|| format!("bad examples file {}", path.display()))?;
    ex.check_alphabet(engine.alphabet())?;
    Ok(ex)
}

fn load_config(path: Option<&Path>) -> Result<RepairConfig> {
    let cfg = match path {
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("bad config {}", p.display()))?,
        None => RepairConfig::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn tools(args: &ToolArgs) -> Result<(Option<ExternalTool>, Option<ExternalTool>)> {
    if args.tool_timeout_ms == 0 {
        bail!("--tool-timeout-ms must be positive");
    }
    let make = |role, cmd: &Option<String>| {
        cmd.as_ref()
            .map(|c| ExternalTool::new(role, c.clone()).with_timeout_ms(args.tool_timeout_ms))
    };
    Ok((make(ToolRole::Synthesizer, &args.synthesizer), make(ToolRole::Repairer, &args.fallback)))
}

fn regex(engine: &Engine, text: &str) -> Result<Regex> {
    parse(text, engine.alphabet()).map_err(|e| anyhow!("{text:?}: {e}"))
}

fn run(cli: Cli) -> Result<Verdict> {
    let alphabet = match &cli.alphabet {
        Some(chars) => Alphabet::new(chars.chars())?,
        None => Alphabet::printable_ascii(),
    };
    let config_path = match &cli.command {
        Command::Repair(a) => a.tools.config.as_deref(),
        Command::Bench(a) => a.tools.config.as_deref(),
        _ => None,
    };
    let cfg = load_config(config_path)?;
    let engine = Engine::new(alphabet, cfg.engine.clone());

    match cli.command {
        Command::Check { regex } => {
            let ok = validate(&regex, engine.alphabet());
            out(if ok { "valid\n" } else { "invalid\n" })?;
            Ok(if ok { Verdict::Yes } else { Verdict::No })
        }
        Command::Match { regex: r, string } => {
            let r = regex(&engine, &r)?;
            if let Some(c) = engine.alphabet().first_foreign(&string) {
                bail!("string uses {c:?}, which is not in the alphabet");
            }
            let m = engine.matches(&r, &string)?;
            emit(&serde_json::json!({ "matches": m }))?;
            Ok(if m { Verdict::Yes } else { Verdict::No })
        }
        Command::Equiv { left, right } => {
            let eq = engine.equivalent(&regex(&engine, &left)?, &regex(&engine, &right)?)?;
            emit(&serde_json::json!({ "equivalent": eq }))?;
            Ok(if eq { Verdict::Yes } else { Verdict::No })
        }
        Command::Fitness { regex: r, examples } => {
            let r = regex(&engine, &r)?;
            let ex = load_examples(&examples, &engine)?;
            emit(&fitness(&engine, &r, &ex)?)?;
            Ok(Verdict::Yes)
        }
        Command::Gen { regex: r, pos, neg, seed, max_len } => {
            let r = regex(&engine, &r)?;
            let positive = engine.sample_positive(&r, pos, max_len, seed)?;
            let negative = engine.sample_negative(&r, neg, max_len, seed)?;
            emit(&ExampleSet::new(positive, negative)?)?;
            Ok(Verdict::Yes)
        }
        Command::Mutate { targets, per, seed } => {
            let text = read(&targets)?;
            let targets: Vec<String> = text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect();
            for t in &targets {
                regex(&engine, t)?;
            }
            emit(&make_invalid_pairs(&targets, per, seed, engine.alphabet()))?;
            Ok(Verdict::Yes)
        }
        Command::Repair(args) => {
            let ex = load_examples(&args.examples, &engine)?;
            let (synth, fallback) = tools(&args.tools)?;
            let input = match (&args.regex, &args.description) {
                (Some(r), _) => RepairInput::Candidate(regex(&engine, r)?),
                (None, Some(d)) => RepairInput::Description(d.clone()),
                (None, None) => bail!("either --regex or --description is required"),
            };
            let target = args.target.as_deref().map(|t| regex(&engine, t)).transpose()?;
            let mut report = transregex(&engine, &input, &ex, synth.as_ref(), fallback.as_ref(), &cfg)?;
            if let Some(t) = &target {
                report.classify(&engine, t, &ex)?;
            }
            emit(&report)?;
            Ok(if report.outcome.repaired().is_some() {
                Verdict::Yes
            } else {
                Verdict::No
            })
        }
        Command::Bench(args) => {
            let load = load_benchmark(&engine, &args.records)?;
            for s in &load.skipped {
                eprintln!("skipped line {}: {}", s.line, s.reason);
            }
            if load.records.is_empty() {
                bail!("no usable records in {}", args.records.display());
            }
            let (synth, fallback) = tools(&args.tools)?;
            let opts = HarnessOptions {
                k_pos: args.pos,
                k_neg: args.neg,
                max_len: args.max_len,
                seed: args.seed,
                consistency_only: args.consistency_only,
            };
            let report = run_harness(&engine, &load.records, &cfg, synth.as_ref(), fallback.as_ref(), &opts);
            if args.table {
                out(&report.to_table())?;
            } else {
                emit(&report)?;
            }
            Ok(Verdict::Yes)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("REGEXMEND_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| anyhow!("REGEXMEND_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| run(cli)) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! `rank74`: build, inspect, certify and count cobordism complexes.
//!
//! Exit status: 0 success or witness, 1 usage or input error, 2 definitive
//! negative (no witness, fixture mismatch), 3 inconclusive within bounds.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rank74::census::{
    convergence_fit, enumeration_table, growth_constants, monte_carlo, recurrence_table, CensusPattern, Property,
    Semantics, RNG_NAME,
};
use rank74::certificates::{
    exp_rank_report, mesoscopic_replay, yyy_position, z2_certificate, MesoBounds, Z2Bounds, Z2Outcome,
};
use rank74::cobordism::{canonicalize, close_up, Word};
use rank74::complex::{group_presentation, ValidationMode};
use rank74::fixtures::golden_for;
use rank74::rgraph::r_graph;

const SUCCESS: u8 = 0;
const USAGE: u8 = 1;
const NEGATIVE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "rank74", version, about = "Cobordism complexes of rank 7/4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close up a word: presentation JSON, validation report, group presentation.
    Build {
        #[command(flatten)]
        input: WordInput,
        #[command(flatten)]
        out: Output,
    },
    /// The cylinder graph R of a word's body.
    Rgraph {
        #[command(flatten)]
        input: WordInput,
        /// Compare against the bundled golden graph; exit 2 on mismatch.
        #[arg(long)]
        fixture: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a flat torus, exponential rank or mesoscopic rank witness.
    Certify {
        #[command(flatten)]
        input: WordInput,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Longest R-graph cycle tried in the torus search.
        #[arg(long, default_value_t = Z2Bounds::default().max_cycle)]
        max_cycle: usize,
        /// Longest boundary circle in the annulus graph.
        #[arg(long = "annulus-L", default_value_t = MesoBounds::default().annulus_len)]
        annulus_len: usize,
        /// Node budget of the annulus graph.
        #[arg(long, default_value_t = MesoBounds::default().node_budget)]
        node_budget: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Exact counts |E_n|, |E'_n|, |E''_n| for n = 1..n_max.
    Census {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Y00Y00, Y0*Y0* or omega0.
        #[arg(long, default_value = "Y00Y00")]
        pattern: CensusPattern,
        #[arg(long, value_enum, default_value_t = Mode::Recurrence)]
        mode: Mode,
        /// Containment semantics for enumeration mode.
        #[arg(long, default_value = "representative")]
        semantics: Semantics,
        #[command(flatten)]
        out: Output,
    },
    /// Monte Carlo estimate over uniformly random classes of length n.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// z2, exprank, exprank-patterns, exprank-pattern-a, meso or contains:<pattern>[:<semantics>].
        #[arg(long)]
        property: Property,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WordInput {
    /// Dot-separated generators, e.g. X01.Y00.
    #[arg(long)]
    word: Option<String>,
    /// File holding the word.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl WordInput {
    fn read(&self) -> Result<Word> {
        let text = match (&self.word, &self.input) {
            (Some(w), _) => w.clone(),
            (None, Some(p)) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            (None, None) => bail!("one of --word or --input is required"),
        };
        text.trim().parse::<Word>().with_context(|| format!("parsing word {:?}", text.trim()))
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Z2,
    Exprank,
    Meso,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Recurrence,
    Enumeration,
}

/// Everything that determines a run; serialized into every report.
#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<Kind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_cycle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    annulus_len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    node_budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rng: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    property: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    semantics: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixture: Option<bool>,
    format: Format,
}

impl RunConfig {
    fn with_input(command: &'static str, input: &WordInput, format: Format) -> Self {
        RunConfig { command, word: input.word.clone(), input: input.input.clone(), format, ..Default::default() }
    }
}

fn report(config: &RunConfig, result: Value) -> Value {
    json!({
        "versions": { "rank74": rank74::VERSION, "rank74-cli": env!("CARGO_PKG_VERSION") },
        "config": config,
        "result": result,
    })
}

fn emit(out: &Output, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: &Output, v: &Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(v)?)
}

fn format_of(out: &Output, allowed: &[Format], default: Format) -> Result<Format> {
    let f = out.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("--format {} is not available for this command", serde_json::to_value(f)?.as_str().unwrap_or("?"));
    }
    Ok(f)
}

fn build(input: &WordInput, out: &Output) -> Result<u8> {
    let format = format_of(out, &[Format::Json], Format::Json)?;
    let w = input.read()?;
    let closed = close_up(&w)?;
    let validation = closed.validate(ValidationMode::Closed);
    let group = group_presentation(&closed)?;
    let config = RunConfig::with_input("build", input, format);
    emit_json(
        out,
        &report(
            &config,
            json!({
                "word": w.to_string(),
                "presentation": closed.to_json(),
                "validation": validation,
                "valid": validation.is_valid(),
                "group": group,
            }),
        ),
    )?;
    Ok(if validation.is_valid() { SUCCESS } else { NEGATIVE })
}

fn rgraph(input: &WordInput, fixture: bool, out: &Output) -> Result<u8> {
    let format = format_of(out, &[Format::Dot, Format::Json], Format::Dot)?;
    let w = input.read()?;
    let g = r_graph(&w)?;
    let mut status = SUCCESS;
    let mut comparison = Value::Null;
    if fixture {
        let Some(golden) = golden_for(&w) else { bail!("no golden graph for {w}") };
        let pass = golden.matches(&g);
        if !pass {
            eprintln!("R({w}) does not match the golden graph");
            status = NEGATIVE;
        }
        comparison = json!({ "pass": pass, "expected": golden.edges, "found": g.edge_multiset() });
    }
    match format {
        Format::Dot => emit(out, &g.to_dot())?,
        _ => {
            let mut config = RunConfig::with_input("rgraph", input, format);
            config.fixture = Some(fixture);
            emit_json(out, &report(&config, json!({ "graph": g.to_json(), "fixture": comparison })))?;
        }
    }
    Ok(status)
}

fn certify(input: &WordInput, kind: Kind, z2: Z2Bounds, meso: MesoBounds, out: &Output) -> Result<u8> {
    let format = format_of(out, &[Format::Json], Format::Json)?;
    let w = input.read()?;
    let mut config = RunConfig::with_input("certify", input, format);
    config.kind = Some(kind);
    let (status, result) = match kind {
        Kind::Z2 => {
            config.max_cycle = Some(z2.max_cycle);
            match z2_certificate(&w, &z2) {
                Z2Outcome::Witness(t) => (SUCCESS, json!({ "status": "witness", "witness": t })),
                Z2Outcome::Inconclusive { bounds } => (INCONCLUSIVE, json!({ "status": "inconclusive", "bounds": bounds })),
            }
        }
        Kind::Exprank => {
            let r = exp_rank_report(&w);
            let status = if r.witness.is_some() { SUCCESS } else { NEGATIVE };
            let label = if status == SUCCESS { "witness" } else { "none" };
            (status, json!({ "status": label, "report": r }))
        }
        Kind::Meso => {
            config.annulus_len = Some(meso.annulus_len);
            config.node_budget = Some(meso.node_budget);
            if yyy_position(&w).is_none() {
                let reason = format!("{} has no three cyclically consecutive Y", canonicalize(&w));
                (NEGATIVE, json!({ "status": "none", "reason": reason }))
            } else {
                match mesoscopic_replay(&w, &meso) {
                    Some(m) if m.checks.all() => (SUCCESS, json!({ "status": "witness", "witness": m })),
                    Some(m) => (INCONCLUSIVE, json!({ "status": "inconclusive", "bounds": meso, "partial": m })),
                    None => (INCONCLUSIVE, json!({ "status": "inconclusive", "bounds": meso })),
                }
            }
        }
    };
    emit_json(out, &report(&config, result))?;
    Ok(status)
}

fn census(n_max: usize, pattern: CensusPattern, mode: Mode, semantics: Semantics, out: &Output) -> Result<u8> {
    let format = format_of(out, &[Format::Csv, Format::Json], Format::Csv)?;
    let table = match mode {
        Mode::Recurrence => recurrence_table(n_max, pattern)?,
        Mode::Enumeration => enumeration_table(n_max, pattern, semantics)?,
    };
    let config = RunConfig {
        command: "census",
        n_max: Some(n_max),
        pattern: Some(pattern.to_string()),
        mode: Some(mode),
        semantics: (mode == Mode::Enumeration).then(|| semantics.to_string()),
        format,
        ..Default::default()
    };
    match format {
        Format::Csv => {
            let header = format!("# rank74 {}\n# config {}\n", rank74::VERSION, serde_json::to_string(&config)?);
            emit(out, &(header + &table.to_csv()))?;
        }
        _ => {
            let fit = convergence_fit(&table, None).ok();
            let growth = (mode == Mode::Recurrence).then(|| growth_constants(pattern));
            emit_json(out, &report(&config, json!({ "table": table, "growth": growth, "fit": fit })))?;
        }
    }
    Ok(SUCCESS)
}

fn sample(n: usize, trials: u64, property: Property, seed: u64, out: &Output) -> Result<u8> {
    let format = format_of(out, &[Format::Json], Format::Json)?;
    let estimate = monte_carlo(n, trials, property, seed)?;
    let config = RunConfig {
        command: "sample",
        n: Some(n),
        trials: Some(trials),
        seed: Some(seed),
        rng: Some(RNG_NAME),
        property: Some(property.to_string()),
        format,
        ..Default::default()
    };
    emit_json(out, &report(&config, serde_json::to_value(&estimate)?))?;
    Ok(SUCCESS)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Build { input, out } => build(&input, &out),
        Command::Rgraph { input, fixture, out } => rgraph(&input, fixture, &out),
        Command::Certify { input, kind, max_cycle, annulus_len, node_budget, out } => {
            let z2 = Z2Bounds { max_cycle, ..Z2Bounds::default() };
            certify(&input, kind, z2, MesoBounds { annulus_len, node_budget }, &out)
        }
        Command::Census { n_max, pattern, mode, semantics, out } => census(n_max, pattern, mode, semantics, &out),
        Command::Sample { n, trials, property, seed, out } => sample(n, trials, property, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { SUCCESS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

//! `mstd`: every library operation as a subcommand, reporting JSON (default)
//! or a two-column table.
//!
//! Exit status: 0 on success, 1 on domain or capacity errors (and failed
//! `reproduce` claims), 2 on usage errors.

use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use mstd_core::primes::{self, PrimeTuple};
use mstd_core::reproduce::{self, Overrides};
use mstd_core::search::{self, Objective, SearchConfig};
use mstd_core::sequences::{self, DEFAULT_CERTIFY_BUDGET};
use mstd_core::sets::{Arith, DEFAULT_DIAMETER_CAP};
use mstd_core::MstdError;

mod cli;
mod input;

use cli::{Cli, Command, FilterArg, Format, MinimalObjective, ModeArg, ObjectiveArg, PrimesCommand};
use input::{parse_sequence, resolve_set};

/// A usage error: bad or missing input. Exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Defaults read from `--config`; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    format: Option<Format>,
    seed: Option<u64>,
    threads: Option<usize>,
    budget: Option<u64>,
    diameter_cap: Option<u64>,
}

struct RunConfig {
    format: Format,
    seed: u64,
    budget: Option<u64>,
    arith: Arith,
}

fn load_config(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Usage(format!("bad config {}: {}", path.display(), e.message())).into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<MstdError>() {
        Some(MstdError::Parse(_)) => 2,
        _ => 1,
    }
}

/// Returns whether the command succeeded (a failed claim is not an error).
fn run(cli: Cli) -> anyhow::Result<bool> {
    let file = match &cli.global.config {
        Some(p) => load_config(p)?,
        None => FileConfig::default(),
    };
    let g = &cli.global;
    if let Some(threads) = g.threads.or(file.threads) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let cfg = RunConfig {
        format: g.format.or(file.format).unwrap_or(Format::Json),
        seed: g.seed.or(file.seed).unwrap_or(0),
        budget: g.budget.or(file.budget),
        arith: Arith::with_diameter_cap(g.diameter_cap.or(file.diameter_cap).unwrap_or(DEFAULT_DIAMETER_CAP)),
    };

    let mut ok = true;
    let out = match cli.command {
        Command::Classify(i) => json(cfg.arith.classify(&resolve_set(&i)?)?),
        Command::Sumset(i) => json(cfg.arith.sumset(&resolve_set(&i)?)?),
        Command::Diffset(i) => json(cfg.arith.diffset(&resolve_set(&i)?)?),
        Command::Expand { input, power } => json(cfg.arith.base_expansion(&resolve_set(&input)?, power)?),
        Command::Append { input, element } => json(cfg.arith.append_analysis(&resolve_set(&input)?, element)?),
        Command::Search(a) => {
            let ground = resolve_set(&a.input)?;
            let mut sc = match a.mode {
                ModeArg::Exhaustive => SearchConfig::exhaustive(ground),
                ModeArg::MonteCarlo => {
                    let samples = a.samples.ok_or_else(|| Usage("--mode monte-carlo needs --samples".into()))?;
                    SearchConfig::monte_carlo(ground, samples, cfg.seed)
                }
            };
            let (lo, hi) = (a.min_size.unwrap_or(sc.min_size), a.max_size.unwrap_or(sc.ground.len()));
            sc = sc
                .sizes(lo, hi)
                .objective(match a.objective {
                    ObjectiveArg::FirstHit => Objective::FirstHit,
                    ObjectiveArg::CountAll => Objective::CountAll,
                    ObjectiveArg::MinimizeMaxElement => Objective::MinimizeMaxElement,
                    ObjectiveArg::MinimizeDiameter => Objective::MinimizeDiameter,
                })
                .prune(a.prune);
            if let Some(b) = cfg.budget {
                sc = sc.budget(b);
            }
            if let Some(cap) = a.hit_cap {
                sc.hit_cap = cap;
            }
            if sc.min_size > sc.max_size {
                return Err(Usage(format!("--min-size {} exceeds --max-size {}", sc.min_size, sc.max_size)).into());
            }
            let report = match a.filter {
                FilterArg::Mstd => search::exhaustive_search(&sc)?,
                FilterArg::Special => search::special_search(&sc)?,
            };
            json(report)
        }
        Command::Density { n, samples } => json(search::monte_carlo_density(n, samples, cfg.seed)?),
        Command::Minimal { input, objective } => {
            let objective = match objective {
                MinimalObjective::MaxElement => Objective::MinimizeMaxElement,
                MinimalObjective::Diameter => Objective::MinimizeDiameter,
            };
            let budget = cfg.budget.unwrap_or(search::DEFAULT_BUDGET);
            json(search::minimal_mstd_in(&resolve_set(&input)?, objective, budget)?)
        }
        Command::Certify { seq, r, upto } => {
            let spec = parse_sequence(&seq)?;
            json(sequences::certify_no_mstd(&spec, r, upto, cfg.budget.unwrap_or(DEFAULT_CERTIFY_BUDGET))?)
        }
        Command::CertifyFinite { seq, s, upto } => {
            let spec = parse_sequence(&seq)?;
            json(sequences::certify_finitely_many(&spec, s, upto, cfg.budget.unwrap_or(DEFAULT_CERTIFY_BUDGET))?)
        }
        Command::VerifyBound { input, element, r } => {
            json(sequences::verify_difference_bound(&resolve_set(&input)?, element, r)?)
        }
        Command::Primes(p) => primes_command(p)?,
        Command::Reproduce { id, samples } => {
            let r = reproduce::reproduce(&id, Overrides { samples, seed: cli.global.seed.or(file.seed) })?;
            ok = r.pass;
            json(r)
        }
    };
    emit(&out, cfg.format);
    Ok(ok)
}

fn tuple(text: &str) -> anyhow::Result<PrimeTuple> {
    text.parse::<PrimeTuple>().map_err(|e| Usage(e.to_string()).into())
}

fn primes_command(p: PrimesCommand) -> anyhow::Result<Rendered> {
    Ok(match p {
        PrimesCommand::Admissible { offsets } => json(primes::is_admissible(&tuple(&offsets)?)),
        PrimesCommand::Series { offsets, tol } => json(primes::singular_series(&tuple(&offsets)?, tol)?),
        PrimesCommand::Match { offsets, upto, cap } => json(primes::match_tuple_capped(
            &tuple(&offsets)?,
            upto,
            cap.unwrap_or(primes::DEFAULT_MATCH_CAP),
        )?),
        PrimesCommand::Ap { length, bound, max_last } => json(primes::find_prime_ap_within(
            length,
            bound,
            max_last.unwrap_or(primes::DEFAULT_AP_MAX_LAST_TERM),
        )?),
        PrimesCommand::Mstd { upto, cap } => json(primes::prime_mstd_sets(upto, cap)?),
    })
}

/// A report rendered straight from the library type, so JSON output keeps
/// its field order.
struct Rendered {
    text: String,
    value: Value,
}

fn json<T: Serialize>(v: T) -> Rendered {
    let text = serde_json::to_string(&v).expect("reports serialize");
    let value = serde_json::from_str(&text).expect("valid json");
    Rendered { text, value }
}

fn emit(r: &Rendered, format: Format) {
    match format {
        Format::Json => println!("{}", r.text),
        Format::Table => match &r.value {
            Value::Object(map) => {
                let width = map.keys().map(String::len).max().unwrap_or(0);
                for (k, val) in map {
                    let shown = match val {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    println!("{k:<width$}  {shown}");
                }
            }
            other => println!("{other}"),
        },
    }
}

//! `ecn`: classify rulesets, evaluate positions, build tables, run the
//! verification suite and start the HTTP service.

mod cache;

use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use ecn_core::formulas::Predicate;
use ecn_core::reductions::catalog;
use ecn_core::verify::{
    default_bound, overall_status, verify_all, verify_reduction, verify_with, Coverage, ReportFormat, SuiteOptions,
    SweepMode, VerifyOptions,
};
use ecn_core::{
    apply_move, classify, Budget, Error, Position, PredicateId, Resolution, Resolver, Ruleset, Status,
    VerificationReport,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ecn", version, about = "Extended circular nim solver and formula checker")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Largest dense table or oracle box, in entries.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.max_entries)]
    budget: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Target {
    /// Ruleset, e.g. "ECN(6_{1,2},3)".
    #[arg(long, short)]
    ruleset: String,
    /// Pile heights, e.g. "1,2,0,3".
    #[arg(long, short)]
    pos: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Bin,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Raw,
    Orbit,
}

#[derive(Subcommand)]
enum Command {
    /// How a ruleset is solved.
    Classify {
        #[arg(long, short, required_unless_present = "all")]
        ruleset: Option<String>,
        /// Every ECN ruleset with 4 <= m <= max-m.
        #[arg(long, conflicts_with = "ruleset")]
        all: bool,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
    },
    /// Outcome of a position and how it was decided.
    Eval(Target),
    /// Legal moves, one per distinct successor.
    Moves {
        #[command(flatten)]
        target: Target,
        /// Print at most this many.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// A winning move, if the position is N.
    Best(Target),
    /// Grundy value.
    Grundy(Target),
    /// Dense Grundy table for all heights up to a bound.
    Table {
        #[arg(long, short)]
        ruleset: String,
        #[arg(long, short)]
        bound: u64,
        #[arg(long, value_enum, default_value = "bin")]
        format: TableFormat,
        /// Output file; CSV defaults to stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Cache directory for built tables.
        #[arg(long, env = "ECN_TABLE_CACHE")]
        cache_dir: Option<PathBuf>,
    },
    /// Check predicates and reductions against the oracle.
    Verify {
        #[arg(long, short, required_unless_present = "all")]
        ruleset: Option<String>,
        /// Check this predicate instead of the classified one.
        #[arg(long, requires = "ruleset")]
        predicate: Option<String>,
        /// The whole suite.
        #[arg(long, conflicts_with_all = ["ruleset", "predicate"])]
        all: bool,
        #[arg(long, short)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        #[arg(long, value_enum, default_value = "raw")]
        mode: Mode,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Session idle lifetime in seconds.
        #[arg(long, default_value_t = 3600)]
        session_ttl: u64,
        /// Allowed CORS origin; any origin when omitted.
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
    Verify,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::InvalidRuleset(_) | Error::Arity { .. } | Error::InvalidPredicate(_) => {
                Failure::Usage(e.to_string())
            }
            e if e.is_budget() => Failure::Budget(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Out = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}\nRaise --budget or lower the heights.");
            ExitCode::from(3)
        }
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(json: bool, value: serde_json::Value, human: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("json value"));
    } else {
        println!("{}", human());
    }
}

fn target(t: &Target) -> Result<(Ruleset, Position), Failure> {
    let r: Ruleset = t.ruleset.parse()?;
    let p: Position = t.pos.parse()?;
    r.check_position(&p)?;
    Ok((r, p))
}

fn run(cli: &Cli) -> Out {
    let budget = Budget::new(cli.budget);
    let mut resolver = Resolver::new(budget);
    match &cli.command {
        Command::Classify { ruleset, all, max_m } => {
            let rows = match ruleset {
                Some(r) if !all => {
                    let r: Ruleset = r.parse()?;
                    let res = classify(&r)?;
                    vec![(r, res)]
                }
                _ => catalog(*max_m)?,
            };
            let value = if rows.len() == 1 && !all {
                json!({ "ruleset": rows[0].0, "resolution": rows[0].1 })
            } else {
                json!(rows.iter().map(|(r, res)| json!({ "ruleset": r, "resolution": res })).collect::<Vec<_>>())
            };
            emit(cli.json, value, || {
                rows.iter().map(|(r, res)| format!("{r}: {res}")).collect::<Vec<_>>().join("\n")
            });
        }
        Command::Eval(t) => {
            let (r, p) = target(t)?;
            let (outcome, method) = resolver.outcome(&r, &p)?;
            // The witness is the rotation or reflection the closed form matched.
            let witness = match resolver.resolution(&r)? {
                Resolution::Predicate(id) => Predicate::new(id)?.eval(&p)?.witness,
                _ => None,
            };
            let mut value = json!({ "outcome": outcome, "method": method });
            if let Some(w) = witness {
                value["witness"] = json!(w.to_string());
            }
            emit(cli.json, value, || {
                let mut s = format!("{outcome}  method={method}");
                if let Some(w) = witness {
                    s.push_str(&format!("  witness={w}"));
                }
                s
            });
        }
        Command::Moves { target: t, limit } => {
            let (r, p) = target(t)?;
            let succ = r.successors(&p)?;
            let shown = &succ[..limit.map_or(succ.len(), |l| l.min(succ.len()))];
            let mut moves = Vec::new();
            for next in shown {
                moves.push((ecn_core::Move::between(&p, next)?, next));
            }
            let value = json!({
                "total": succ.len(),
                "moves": moves.iter().map(|(mv, next)| json!({
                    "face": mv.support().indices().collect::<Vec<_>>(),
                    "removals": mv.removals(),
                    "result": next,
                })).collect::<Vec<_>>(),
            });
            emit(cli.json, value, || {
                let mut lines: Vec<String> = moves.iter().map(|(mv, next)| format!("{mv}  -> {next}")).collect();
                if shown.len() < succ.len() {
                    lines.push(format!("... {} of {} shown", shown.len(), succ.len()));
                }
                lines.join("\n")
            });
        }
        Command::Best(t) => {
            let (r, p) = target(t)?;
            match resolver.winning_move(&r, &p)? {
                Some(mv) => {
                    let next = apply_move(&p, &mv)?;
                    let value = json!({
                        "outcome": "N",
                        "move": { "face": mv.support().indices().collect::<Vec<_>>(), "removals": mv.removals() },
                        "position": next,
                    });
                    emit(cli.json, value, || format!("{mv}  -> {next}"));
                }
                None => emit(cli.json, json!({ "outcome": "P" }), || "position is P".into()),
            }
        }
        Command::Grundy(t) => {
            let (r, p) = target(t)?;
            let g = resolver.grundy(&r, &p)?;
            emit(cli.json, json!(g), || g.to_string());
        }
        Command::Table { ruleset, bound, format, out, cache_dir } => {
            let r: Ruleset = ruleset.parse()?;
            let bytes = cache::table_bytes(&r, *bound, budget, *format, cache_dir.as_deref())?;
            match (out, format) {
                (Some(path), _) => {
                    fs::write(path, &bytes)?;
                    if !cli.json {
                        eprintln!("wrote {} bytes to {}", bytes.len(), path.display());
                    }
                }
                (None, TableFormat::Csv) => std::io::stdout().write_all(&bytes)?,
                (None, TableFormat::Bin) => {
                    return Err(Failure::Usage("binary tables need --out".into()));
                }
            }
        }
        Command::Verify {
            ruleset,
            predicate,
            all,
            bound,
            max_m,
            mode,
            format,
            out,
        } => {
            let mode = match mode {
                Mode::Raw => SweepMode::Raw,
                Mode::Orbit => SweepMode::Orbit,
            };
            let reports = if *all {
                verify_all(&SuiteOptions {
                    bound: *bound,
                    max_m: *max_m,
                    mode,
                    budget,
                    ..SuiteOptions::default()
                })?
            } else {
                let r: Ruleset = ruleset.as_deref().expect("clap requires --ruleset").parse()?;
                vec![verify_one(&r, predicate.as_deref(), *bound, mode, budget)?]
            };
            let text = match (format, cli.json) {
                (Some(OutFormat::Csv), _) => ecn_core::export_report(&reports, ReportFormat::Csv),
                (Some(OutFormat::Json), _) | (None, true) => ecn_core::export_report(&reports, ReportFormat::Json),
                (None, false) => human_reports(&reports),
            };
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}{}", if text.ends_with('\n') { "" } else { "\n" }),
            }
            match overall_status(&reports) {
                Status::Pass => {}
                Status::Fail => return Err(Failure::Verify),
                Status::Incomplete => {
                    let notes: Vec<String> = reports
                        .iter()
                        .filter(|r| r.status == Status::Incomplete)
                        .map(|r| format!("{}: {}", r.ruleset, r.note.as_deref().unwrap_or("incomplete")))
                        .collect();
                    return Err(Failure::Budget(notes.join("; ")));
                }
            }
        }
        Command::Serve { addr, session_ttl, cors_origin } => {
            let config = ecn_service::Config {
                budget,
                session_ttl: Duration::from_secs(*session_ttl),
                cors_origin: cors_origin.clone(),
            };
            let rt = tokio::runtime::Runtime::new()?;
            eprintln!("listening on http://{addr}");
            rt.block_on(ecn_service::serve(*addr, config))?;
        }
    }
    Ok(())
}

fn verify_one(
    r: &Ruleset,
    predicate: Option<&str>,
    bound: Option<u64>,
    mode: SweepMode,
    budget: Budget,
) -> Result<VerificationReport, Failure> {
    let opts = |coverage| VerifyOptions {
        bound: bound.unwrap_or_else(|| default_bound(r, coverage)),
        mode,
        mismatch_cap: VerifyOptions::DEFAULT_MISMATCH_CAP,
        budget,
    };
    let pred = match predicate {
        Some(id) => Some(id.parse::<PredicateId>()?),
        None => match classify(r)? {
            Resolution::Predicate(id) => Some(id),
            Resolution::Unsolved => {
                return Err(Failure::Usage(format!(
                    "{r} has no closed form to verify; pass --predicate to test one"
                )))
            }
            _ => None,
        },
    };
    Ok(match pred {
        Some(id) => verify_with(r, &Predicate::new(id)?, opts(Coverage::Verified)).with_coverage(Coverage::Verified),
        None => verify_reduction(r, opts(Coverage::Reduced)).with_coverage(Coverage::Reduced),
    })
}

fn human_reports(reports: &[VerificationReport]) -> String {
    let mut lines: Vec<String> = reports
        .iter()
        .map(|r| {
            let mut s = format!(
                "{:<10} {:<22} {:<40} B={} {:>8} positions {:>4} mismatches {:.2}s",
                r.status.to_string(),
                r.ruleset.to_string(),
                r.check,
                r.bound,
                r.positions_checked,
                r.mismatch_count,
                r.wall_time_s
            );
            if let Some(m) = r.mismatches.first() {
                s.push_str(&format!("  first: ({}) claim {} oracle {}", m.position, m.claim, m.oracle));
            }
            if let Some(n) = &r.note {
                s.push_str(&format!("  [{n}]"));
            }
            s
        })
        .collect();
    lines.push(format!("overall: {}", overall_status(reports)));
    lines.join("\n")
}

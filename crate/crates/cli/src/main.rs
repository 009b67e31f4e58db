mod report;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bochert::catalog::{builtin, GroupSpec};
use bochert::mindeg::{min_degree, MethodChoice};
use bochert::verify::{
    check_jordan_with, counts_suite, laws_suite, mathieu_bound_table, trace_bound, Bound,
    SuiteOptions, TraceOptions, PUBLISHED_ROWS,
};
use bochert::{Error, GroupHandle};

use report::{Header, Suite};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bochert",
    version,
    about = "Minimal degree computations and bound checks for permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Worker threads for parallel searches and suites.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Largest group order scanned exhaustively, and largest conjugate orbit built.
    #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Record wall-clock time in the JSON report (otherwise `elapsed_ms` is 0).
    #[arg(long)]
    timing: bool,
    /// Print every check, not only failures.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, order, transitivity degree and minimal degree of a group.
    Info {
        /// `catalog:NAME` or `file:PATH`.
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a seeded property suite.
    Verify {
        /// `catalog:NAME` or `file:PATH`.
        group: String,
        #[arg(value_enum)]
        suite: SuiteChoice,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Replay one of the minimal degree bounds on a group.
    Trace {
        /// `catalog:NAME` or `file:PATH`.
        group: String,
        /// 2.2 (m ≥ 2t−2), 3.1 (m ≥ n/4), 3.2 (m ≥ n/3) or 3.3 (n−3 ≤ 2m).
        theorem: String,
        /// Pick witnesses at random from this seed instead of the least ones.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal degrees and lower bounds for M11, M12, M23 and M24.
    Table {
        #[command(flatten)]
        common: Common,
    },
    /// Compute the minimal degree and a witness.
    Mindeg {
        /// `catalog:NAME` or `file:PATH`.
        group: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteChoice {
    Laws,
    Counts,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exhaustive,
    Backtrack,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Exhaustive => MethodChoice::Exhaustive,
            MethodArg::Backtrack => MethodChoice::Backtrack,
        }
    }
}

enum Theorem {
    Jordan,
    Bound(Bound),
}

fn parse_theorem(s: &str) -> Result<Theorem, Error> {
    Ok(match s {
        "2.2" | "jordan" => Theorem::Jordan,
        "3.1" | "quarter" => Theorem::Bound(Bound::Quarter),
        "3.2" | "third" => Theorem::Bound(Bound::Third),
        "3.3" | "half" => Theorem::Bound(Bound::Half),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown theorem {s:?}; expected 2.2, 3.1, 3.2 or 3.3"
            )))
        }
    })
}

/// What a command produced, ready to print and serialize.
struct Outcome {
    command: &'static str,
    header: Header,
    suites: Vec<Suite>,
    seed: u64,
    warnings: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Info { common, .. }
        | Command::Verify { common, .. }
        | Command::Trace { common, .. }
        | Command::Table { common }
        | Command::Mindeg { common, .. } => common.clone(),
    };
    let start = Instant::now();
    let outcome = match run(cli.command, &common) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let elapsed = if common.timing {
        start.elapsed().as_millis()
    } else {
        0
    };
    // A closed stdout (e.g. piped into `head`) is not an error.
    let _ = io::stdout().write_all(render(&outcome, common.verbose).as_bytes());
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(path) = &common.json {
        let doc = report::document(
            outcome.command,
            &outcome.header,
            &outcome.suites,
            outcome.seed,
            elapsed,
        );
        let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
        if let Err(e) = fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    if outcome.suites.iter().any(|s| s.failures() > 0) {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OrderCapExceeded { .. } | Error::OrbitCapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn build(spec: &str) -> Result<GroupHandle, Error> {
    GroupSpec::parse(spec)?.build()
}

fn run(command: Command, common: &Common) -> Result<Outcome, Error> {
    let jobs = common.jobs as usize;
    let orbit_cap = usize::try_from(common.cap).unwrap_or(usize::MAX);
    let trace_opts = |seed: Option<u64>| TraceOptions {
        method: MethodChoice::Auto,
        order_cap: common.cap,
        orbit_cap,
        jobs,
        seed,
    };
    match command {
        Command::Info { group, .. } => {
            let handle = build(&group)?;
            let min = min_degree(&handle, MethodChoice::Auto, common.cap, jobs)?;
            Ok(Outcome {
                command: "info",
                header: Header::of(&handle, Some(min)),
                suites: Vec::new(),
                seed: 0,
                warnings: Vec::new(),
            })
        }
        Command::Mindeg { group, method, .. } => {
            let handle = build(&group)?;
            let min = min_degree(&handle, method.into(), common.cap, jobs)?;
            Ok(Outcome {
                command: "mindeg",
                header: Header::of(&handle, Some(min)),
                suites: vec![report::mindeg_suite(min)],
                seed: 0,
                warnings: Vec::new(),
            })
        }
        Command::Verify {
            group,
            suite,
            samples,
            seed,
            ..
        } => {
            let handle = build(&group)?;
            let opts = SuiteOptions {
                samples,
                seed,
                jobs,
                orbit_cap,
            };
            let mut suites = Vec::new();
            if matches!(suite, SuiteChoice::Laws | SuiteChoice::All) {
                suites.push(report::suite_from_report(laws_suite(&handle, &opts)?));
            }
            if matches!(suite, SuiteChoice::Counts | SuiteChoice::All) {
                suites.push(report::suite_from_report(counts_suite(&handle, &opts)?));
            }
            let min = min_degree(&handle, MethodChoice::Auto, common.cap, jobs)?;
            Ok(Outcome {
                command: "verify",
                header: Header::of(&handle, Some(min)),
                suites,
                seed,
                warnings: Vec::new(),
            })
        }
        Command::Trace {
            group,
            theorem,
            seed,
            ..
        } => {
            let theorem = parse_theorem(&theorem)?;
            let handle = build(&group)?;
            let opts = trace_opts(seed);
            let suite = match theorem {
                Theorem::Jordan => {
                    report::jordan_suite(check_jordan_with(&handle, &opts)?, seed.is_some())
                }
                Theorem::Bound(b) => {
                    report::trace_suite(trace_bound(&handle, b, &opts)?, seed.is_some())
                }
            };
            let warnings = suite
                .notes
                .iter()
                .filter(|n| n.starts_with("construction degenerate"))
                .cloned()
                .collect();
            let min = min_degree(&handle, MethodChoice::Auto, common.cap, jobs)?;
            Ok(Outcome {
                command: "trace",
                header: Header::of(&handle, Some(min)),
                suites: vec![suite],
                seed: seed.unwrap_or(0),
                warnings,
            })
        }
        Command::Table { .. } => {
            let handles = PUBLISHED_ROWS
                .iter()
                .map(|(name, ..)| GroupHandle::new(builtin(name)?))
                .collect::<Result<Vec<_>, Error>>()?;
            let refs: Vec<&GroupHandle> = handles.iter().collect();
            let rows = mathieu_bound_table(&refs, &trace_opts(None))?;
            Ok(Outcome {
                command: "table",
                header: Header {
                    group: "M11,M12,M23,M24".into(),
                    n: 0,
                    order: String::new(),
                    t: None,
                    m: None,
                    method: None,
                },
                suites: vec![report::table_suite(rows)],
                seed: 0,
                warnings: Vec::new(),
            })
        }
    }
}

fn render(o: &Outcome, verbose: bool) -> String {
    let mut out = String::new();
    let h = &o.header;
    if o.command == "table" {
        line(
            &mut out,
            format_args!(
                "{:<6} {:>3} {:>2} {:>3} {:>6}",
                "group", "n", "t", "m", "bound"
            ),
        );
        if let Some(rows) = o.suites[0].details.as_array() {
            for r in rows {
                line(
                    &mut out,
                    format_args!(
                        "{:<6} {:>3} {:>2} {:>3} {:>6}",
                        r["group"].as_str().unwrap_or(""),
                        r["n"].as_u64().unwrap_or(0),
                        r["t"].as_u64().unwrap_or(0),
                        r["m"].as_u64().unwrap_or(0),
                        r["bound"].as_u64().unwrap_or(0)
                    ),
                );
            }
        }
    } else {
        line(&mut out, format_args!("group: {}", h.group));
        line(&mut out, format_args!("degree n: {}", h.n));
        line(&mut out, format_args!("order: {}", h.order));
        if let Some(t) = h.t {
            line(&mut out, format_args!("transitivity t: {t}"));
        }
        if let (Some(m), Some(method)) = (h.m, &h.method) {
            line(&mut out, format_args!("minimal degree m: {m} ({method})"));
        }
    }
    for s in &o.suites {
        if s.name == "mindeg" {
            let d = &s.details;
            line(
                &mut out,
                format_args!("witness: {}", d["witness"].as_str().unwrap_or("")),
            );
            line(
                &mut out,
                format_args!("elements visited: {}", d["elements_visited"]),
            );
            line(
                &mut out,
                format_args!("nodes pruned: {}", d["nodes_pruned"]),
            );
            continue;
        }
        out.push('\n');
        line(
            &mut out,
            format_args!(
                "suite {}: {} checks, {} failed{}",
                s.name,
                s.checks.len(),
                s.failures(),
                if s.applicable { "" } else { " (inapplicable)" }
            ),
        );
        if s.name == "trace" {
            render_trace_details(&mut out, &s.details);
        }
        for c in &s.checks {
            if verbose || !c.pass || s.name == "trace" {
                line(&mut out, format_args!("  {c}"));
            }
        }
        for n in &s.notes {
            line(&mut out, format_args!("  note: {n}"));
        }
    }
    out
}

fn line(out: &mut String, args: std::fmt::Arguments<'_>) {
    out.write_fmt(args).expect("writing to a String");
    out.push('\n');
}

fn render_trace_details(out: &mut String, d: &serde_json::Value) {
    if let Some(obj) = d.as_object() {
        for key in [
            "statement",
            "u",
            "v",
            "h",
            "alpha",
            "beta",
            "case",
            "N",
            "r",
        ] {
            if let Some(v) = obj.get(key).filter(|v| !v.is_null()) {
                match v.as_str() {
                    Some(s) => line(out, format_args!("  {key}: {s}")),
                    None => line(out, format_args!("  {key}: {v}")),
                }
            }
        }
        if let Some(sizes) = obj.get("sizes").and_then(|s| s.as_object()) {
            let shown: Vec<String> = sizes
                .iter()
                .filter(|(_, v)| !v.is_null())
                .map(|(k, v)| format!("|{k}| = {v}"))
                .collect();
            if !shown.is_empty() {
                line(out, format_args!("  sizes: {}", shown.join(", ")));
            }
        }
        if let Some(derived) = obj.get("derived").and_then(|s| s.as_object()) {
            let shown: Vec<String> = derived
                .iter()
                .map(|(k, v)| format!("{k} = {}", v.as_str().map_or(v.to_string(), String::from)))
                .collect();
            line(out, format_args!("  derived: {}", shown.join(", ")));
        }
    }
}

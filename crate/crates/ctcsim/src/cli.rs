//! Batch command-line frontend: `parse`, `run`, `solve`, `sweep`, `corpus`.
//!
//! Exit codes: 0 success; 1 usage or I/O error; 2 parse/validation error;
//! 3 runtime fault, step-limit overrun, or domain budget exceeded; 4 empty
//! fixed-point set under `--expect-nonempty`.
//!
//! JSON output is canonical: keys sorted, and no timing fields unless
//! `--deterministic false`, so identical invocations produce byte-identical
//! bytes (including under `--parallel`).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::corpus::{self, CorpusId};
use crate::dsl::{self, Program};
use crate::interpreter::{
    consistency_of, run_traced, ConsistencyResult, Limits, ReceivedAssignment, RunRecord,
    DEFAULT_MAX_STEPS,
};
use crate::numtheory;
use crate::solver::{self, SolveError, SolveOptions, SolveReport, DEFAULT_DOMAIN_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;
pub const EXIT_EMPTY: i32 = 4;

/// Environment variable overriding the default step limit. Flags override
/// the environment.
pub const MAX_STEPS_ENV: &str = "CTCSIM_MAX_STEPS";

#[derive(Debug, Parser)]
#[command(
    name = "ctcsim",
    about = "Simulate and analyze programs with time-travel registers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a .ctc file.
    Parse {
        /// Path to the program source.
        file: PathBuf,
    },
    /// Run a program once with a fixed received assignment.
    Run(RunArgs),
    /// Enumerate all self-consistent received assignments.
    Solve(SolveArgs),
    /// Solve a range of inputs and emit one CSV row per input.
    Sweep(SweepArgs),
    /// Inspect the bundled programs.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Bundled program id (brun1|brun2|brun3) or a .ctc path.
    #[arg(long)]
    program: String,
    /// Input N (2 <= N <= 2^31).
    #[arg(long)]
    n: i64,
    /// Received values, e.g. `tt=3` or `tt=7,flag=1`.
    #[arg(long, default_value = "")]
    received: String,
    /// Step budget for the forward run [env: CTCSIM_MAX_STEPS].
    #[arg(long)]
    max_steps: Option<u64>,
    /// Write one line per executed statement to stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = RunFormat::Table)]
    format: RunFormat,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Bundled program id (brun1|brun2|brun3) or a .ctc path.
    #[arg(long)]
    program: String,
    /// Input N (2 <= N <= 2^31).
    #[arg(long)]
    n: i64,
    #[arg(long, value_enum, default_value_t = SolveFormat::Table)]
    format: SolveFormat,
    /// Step budget for each forward run [env: CTCSIM_MAX_STEPS].
    #[arg(long)]
    max_steps: Option<u64>,
    /// Cap on the enumerated candidate count.
    #[arg(long, default_value_t = DEFAULT_DOMAIN_BUDGET)]
    domain_budget: u64,
    /// Evaluate candidates on a thread pool (output is identical).
    #[arg(long)]
    parallel: bool,
    /// Exit 4 when the fixed-point set is empty.
    #[arg(long)]
    expect_nonempty: bool,
    /// Suppress timing fields so output is byte-reproducible.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    deterministic: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Bundled program id (brun1|brun2|brun3) or a .ctc path.
    #[arg(long)]
    program: String,
    /// First input, inclusive (>= 2).
    #[arg(long)]
    from: i64,
    /// Last input, inclusive.
    #[arg(long)]
    to: i64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Evaluate candidates on a thread pool (output is identical).
    #[arg(long)]
    parallel: bool,
    /// Step budget for each forward run [env: CTCSIM_MAX_STEPS].
    #[arg(long)]
    max_steps: Option<u64>,
    /// Cap on the enumerated candidate count.
    #[arg(long, default_value_t = DEFAULT_DOMAIN_BUDGET)]
    domain_budget: u64,
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// List the bundled program ids and titles.
    List,
    /// Print a bundled program's source.
    Show { id: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RunFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveFormat {
    Table,
    Json,
    Csv,
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Parse { file } => cmd_parse(&file),
        Command::Run(args) => cmd_run(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Corpus { command } => match command {
            CorpusCommand::List => cmd_corpus_list(),
            CorpusCommand::Show { id } => cmd_corpus_show(&id),
        },
    }
}

fn effective_limits(flag: Option<u64>) -> Limits {
    let max_steps = flag
        .or_else(|| std::env::var(MAX_STEPS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_MAX_STEPS);
    Limits { max_steps: max_steps.max(1) }
}

/// Resolve a program reference: bundled id first, then a source path.
fn load_program(program_ref: &str) -> Result<Program, i32> {
    if let Ok(entry) = corpus::get_by_name(program_ref) {
        return Ok(entry.program());
    }
    let path = Path::new(program_ref);
    let source = match fs::read_to_string(path) {
        Ok(source) => source,
        Err(err) => {
            eprintln!("error: cannot read `{}`: {err}", path.display());
            return Err(EXIT_USAGE);
        }
    };
    match dsl::parse(&source) {
        Ok(program) => Ok(program),
        Err(err) => {
            eprintln!("error: {}: {err}", path.display());
            Err(EXIT_PARSE)
        }
    }
}

fn cmd_parse(file: &Path) -> i32 {
    let source = match fs::read_to_string(file) {
        Ok(source) => source,
        Err(err) => {
            eprintln!("error: cannot read `{}`: {err}", file.display());
            return EXIT_USAGE;
        }
    };
    match dsl::parse(&source) {
        Ok(program) => {
            println!("OK {}", program.name);
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {}: {err}", file.display());
            EXIT_PARSE
        }
    }
}

fn parse_received(raw: &str) -> Result<ReceivedAssignment, String> {
    let mut values = BTreeMap::new();
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(ReceivedAssignment::default());
    }
    for part in raw.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("malformed received entry `{part}`: expected name=value"))?;
        let name = name.trim();
        let value = value.trim();
        if name.is_empty() {
            return Err(format!("malformed received entry `{part}`: empty register name"));
        }
        let value: i64 = value
            .parse()
            .map_err(|_| format!("malformed received entry `{part}`: `{value}` is not an integer"))?;
        if values.insert(name.to_string(), value).is_some() {
            return Err(format!("register `{name}` given twice in --received"));
        }
    }
    Ok(ReceivedAssignment::new(values))
}

fn cmd_run(args: &RunArgs) -> i32 {
    let program = match load_program(&args.program) {
        Ok(program) => program,
        Err(code) => return code,
    };
    let received = match parse_received(&args.received) {
        Ok(received) => received,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let limits = effective_limits(args.max_steps);

    let mut stderr = std::io::stderr();
    let trace: Option<&mut dyn Write> = if args.trace { Some(&mut stderr) } else { None };
    let record = match run_traced(&program, args.n, &received, &limits, trace) {
        Ok(record) => record,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    let verdict = consistency_of(&record, &received, &program);

    match args.format {
        RunFormat::Table => print_run_table(&program, args.n, &received, &record, &verdict),
        RunFormat::Json => {
            let value = json!({
                "program": program.name,
                "n": args.n,
                "received": received,
                "max_steps": limits.max_steps,
                "record": serde_json::to_value(&record).expect("record serializes"),
                "verdict": serde_json::to_value(&verdict).expect("verdict serializes"),
            });
            println!("{}", to_canonical_json(&value));
        }
    }

    if record.status.is_halted() {
        EXIT_OK
    } else {
        EXIT_RUNTIME
    }
}

fn print_run_table(
    program: &Program,
    n: i64,
    received: &ReceivedAssignment,
    record: &RunRecord,
    verdict: &ConsistencyResult,
) {
    println!("program: {}", program.name);
    println!("n: {n}");
    println!("received: {}", received.render(program));
    println!("status: {}", record.status);
    println!("steps: {}", record.steps);
    let outputs: Vec<String> = record.outputs.iter().map(|v| v.to_string()).collect();
    println!("outputs: [{}]", outputs.join(", "));
    for (register, sent) in &record.sends {
        let sent: Vec<String> = sent.iter().map(|v| v.to_string()).collect();
        println!("sends {register}: [{}]", sent.join(", "));
    }
    let counts: Vec<String> =
        record.label_counts.iter().map(|(label, count)| format!("{label}={count}")).collect();
    println!("label counts: {}", counts.join(" "));
    if !verdict.conflicting_sends.is_empty() {
        println!("conflicting sends: {}", verdict.conflicting_sends.join(", "));
    }
    println!("verdict: {verdict}");
}

fn cmd_solve(args: &SolveArgs) -> i32 {
    let program = match load_program(&args.program) {
        Ok(program) => program,
        Err(code) => return code,
    };
    let options = SolveOptions {
        limits: effective_limits(args.max_steps),
        domain_budget: args.domain_budget,
        parallel: args.parallel,
    };
    let report = match solver::solve(&program, args.n, &options) {
        Ok(report) => report,
        Err(err @ SolveError::DomainTooLarge { .. }) => {
            eprintln!("error: {err}");
            return EXIT_RUNTIME;
        }
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };

    match args.format {
        SolveFormat::Table => print_solve_table(&program, &report, args.deterministic),
        SolveFormat::Json => {
            println!("{}", to_canonical_json(&solve_json(&report, &options, args.deterministic)));
        }
        SolveFormat::Csv => {
            println!("{}", sweep_header());
            println!("{}", sweep_row(&report).to_csv());
        }
    }

    if args.expect_nonempty && report.fixed_points.is_empty() {
        EXIT_EMPTY
    } else {
        EXIT_OK
    }
}

fn print_solve_table(program: &Program, report: &SolveReport, deterministic: bool) {
    println!("program: {}", report.program_name);
    println!("n: {}", report.n);
    println!("candidates tried: {}", report.candidates_tried);
    println!("faults: {}", report.faults);
    println!("fixed points: {}", report.fixed_points.len());
    for fp in &report.fixed_points {
        let outputs: Vec<String> = fp.record.outputs.iter().map(|v| v.to_string()).collect();
        println!(
            "  {}  output [{}]  {}  loop_iterations {}",
            fp.received.render(program),
            outputs.join(", "),
            fp.classification,
            fp.record.loop_iterations()
        );
    }
    println!("claim divergences: {}", report.claim_divergences.len());
    for divergence in &report.claim_divergences {
        println!("  - {divergence}");
    }
    if !deterministic {
        println!("wall time: {:.3} ms", report.wall_time.as_secs_f64() * 1e3);
    }
}

fn solve_json(report: &SolveReport, options: &SolveOptions, deterministic: bool) -> Value {
    let fixed_points: Vec<Value> = report
        .fixed_points
        .iter()
        .map(|fp| serde_json::to_value(fp).expect("fixed point serializes"))
        .collect();
    let divergences: Vec<Value> =
        report.claim_divergences.iter().map(|d| Value::String(d.text.clone())).collect();
    let mut value = json!({
        "program": report.program_name,
        "n": report.n,
        "max_steps": options.limits.max_steps,
        "domain_budget": options.domain_budget,
        "candidates_tried": report.candidates_tried,
        "faults": report.faults,
        "fixed_points": fixed_points,
        "claim_divergences": divergences,
    });
    if !deterministic {
        value["wall_time_ms"] = json!(report.wall_time.as_secs_f64() * 1e3);
    }
    value
}

/// One row of a sweep: the solve result for a single input, flattened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub n: i64,
    pub program: String,
    pub fixedpoint_count: usize,
    /// First output of each fixed point, ascending, semicolon-joined.
    pub outputs: String,
    /// Classifications aligned with `outputs`.
    pub classifications: String,
    /// LOOP-label execution counts aligned with `outputs`.
    pub loop_iterations: String,
    pub divergences: usize,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.program,
            self.fixedpoint_count,
            self.outputs,
            self.classifications,
            self.loop_iterations,
            self.divergences
        )
    }
}

pub fn sweep_header() -> &'static str {
    "n,program,fixedpoint_count,outputs,classifications,loop_iterations,divergences"
}

fn sweep_row(report: &SolveReport) -> SweepRow {
    let mut cells: Vec<(i64, String, u64)> = report
        .fixed_points
        .iter()
        .map(|fp| {
            let output = fp.record.outputs.first().copied().unwrap_or(0);
            (output, fp.classification.to_string(), fp.record.loop_iterations())
        })
        .collect();
    cells.sort();
    SweepRow {
        n: report.n,
        program: report.program_name.clone(),
        fixedpoint_count: report.fixed_points.len(),
        outputs: cells.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(";"),
        classifications: cells.iter().map(|c| c.1.clone()).collect::<Vec<_>>().join(";"),
        loop_iterations: cells.iter().map(|c| c.2.to_string()).collect::<Vec<_>>().join(";"),
        divergences: report.claim_divergences.len(),
    }
}

fn cmd_sweep(args: &SweepArgs) -> i32 {
    if args.from < 2 || args.from > args.to {
        eprintln!("error: bad range: need 2 <= from <= to, got {}..{}", args.from, args.to);
        return EXIT_USAGE;
    }
    let program = match load_program(&args.program) {
        Ok(program) => program,
        Err(code) => return code,
    };
    let options = SolveOptions {
        limits: effective_limits(args.max_steps),
        domain_budget: args.domain_budget,
        parallel: args.parallel,
    };

    let mut rows = Vec::new();
    let mut total_fixed_points = 0usize;
    let mut total_divergences = 0usize;
    let mut max_loop_prime: Option<u64> = None;
    let mut max_loop_composite: Option<u64> = None;
    for n in args.from..=args.to {
        let report = match solver::solve(&program, n, &options) {
            Ok(report) => report,
            Err(err) => {
                eprintln!("error: n={n}: {err}");
                // No partial output file is left behind.
                return match err {
                    SolveError::DomainTooLarge { .. } => EXIT_RUNTIME,
                    _ => EXIT_USAGE,
                };
            }
        };
        total_fixed_points += report.fixed_points.len();
        total_divergences += report.claim_divergences.len();
        let is_prime = numtheory::factor_view(n).expect("n >= 2").is_prime;
        let slot = if is_prime { &mut max_loop_prime } else { &mut max_loop_composite };
        for fp in &report.fixed_points {
            let iterations = fp.record.loop_iterations();
            *slot = Some(slot.map_or(iterations, |current| current.max(iterations)));
        }
        rows.push(sweep_row(&report));
    }

    let mut csv = String::with_capacity(rows.len() * 32);
    csv.push_str(sweep_header());
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }

    let fmt_max = |slot: Option<u64>| slot.map_or_else(|| "n/a".to_string(), |v| v.to_string());
    let summary = format!(
        "sweep: {} n in [{}, {}] ({} rows)\n\
         total fixed points: {total_fixed_points}\n\
         total divergences: {total_divergences}\n\
         max loop iterations (primes): {}\n\
         max loop iterations (composites): {}",
        program.name,
        args.from,
        args.to,
        rows.len(),
        fmt_max(max_loop_prime),
        fmt_max(max_loop_composite),
    );

    match &args.out {
        Some(path) => {
            if let Err(err) = fs::write(path, csv) {
                eprintln!("error: cannot write `{}`: {err}", path.display());
                let _ = fs::remove_file(path);
                return EXIT_USAGE;
            }
            println!("{summary}");
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => {
            print!("{csv}");
            eprintln!("{summary}");
        }
    }
    EXIT_OK
}

fn cmd_corpus_list() -> i32 {
    for entry in corpus::list() {
        println!("{}  {}", entry.id.name(), entry.title);
    }
    EXIT_OK
}

fn cmd_corpus_show(id: &str) -> i32 {
    match id.parse::<CorpusId>() {
        Ok(id) => {
            print!("{}", corpus::get(id).source);
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

/// Render with sorted keys at every level. `serde_json`'s default map is
/// ordered, so serializing through `Value` canonicalizes the key order.
fn to_canonical_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("json renders")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn received_spec_roundtrip() {
        let r = parse_received("tt=3,flag=0").unwrap();
        assert_eq!(r.get("tt"), Some(3));
        assert_eq!(r.get("flag"), Some(0));
        let r = parse_received(" tt = -1 ").unwrap();
        assert_eq!(r.get("tt"), Some(-1));
        assert_eq!(parse_received("").unwrap(), ReceivedAssignment::default());
    }

    #[test]
    fn received_spec_errors() {
        assert!(parse_received("tt").is_err());
        assert!(parse_received("tt=abc").is_err());
        assert!(parse_received("=3").is_err());
        assert!(parse_received("tt=1,tt=2").is_err());
    }

    #[test]
    fn sweep_row_renders_aligned_columns() {
        let program = corpus::get(CorpusId::Brun3).program();
        let report = solver::solve(&program, 15, &SolveOptions::default()).unwrap();
        let row = sweep_row(&report);
        assert_eq!(row.outputs, "3;5;15");
        assert_eq!(row.classifications, "nontrivial_factor;nontrivial_factor;trivial_self");
        assert_eq!(row.loop_iterations, "0;0;0");
        assert_eq!(row.divergences, 1);
        assert_eq!(row.to_csv(), "15,brun3,3,3;5;15,nontrivial_factor;nontrivial_factor;trivial_self,0;0;0,1");
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let value = json!({"zeta": 1, "alpha": {"nested_z": 1, "nested_a": 2}});
        let text = to_canonical_json(&value);
        let alpha = text.find("\"alpha\"").unwrap();
        let zeta = text.find("\"zeta\"").unwrap();
        assert!(alpha < zeta);
        let nested_a = text.find("\"nested_a\"").unwrap();
        let nested_z = text.find("\"nested_z\"").unwrap();
        assert!(nested_a < nested_z);
    }
}

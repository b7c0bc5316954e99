//! Subcommand dispatch for the `degree-forge` executable.
//!
//! Exit status: 0 on success or pass, 1 when a verification fails, 2 on usage,
//! parameter, parse or guard errors.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degree_forge::bounds::{evaluate, inequality_sweep, BoundId, BoundParams, InequalityId};
use degree_forge::constructions::{build, ConstructionKind, ConstructionSpec};
use degree_forge::family::{degree_sequence, UniformFamily};
use degree_forge::format::{parse_family, write_family};
use degree_forge::grid::Grid;
use degree_forge::search::{
    conjecture_probe, max_degree_profile, verify_theorem, ProbeId, Restrict, SearchOptions, Verdict,
};
use degree_forge::shadows::{
    cross_check, cross_inequalities, kk_min_shadow, shadow, CrossPair, CrossParams,
};
use degree_forge::transforms::{make_shifted, saturate, shift_ij, SaturationMode};
use degree_forge::transversal::{check_basis_lemmas, transversal_report};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "degree-forge",
    version,
    about = "Degree bounds for intersecting set families"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Add `wall_time_ms` to reports. Timed reports are not reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Family file; `-` or omitted reads standard input.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Workers {
    #[arg(long, env = "DEGREE_FORGE_WORKERS", default_value_t = 1)]
    pub workers: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named family and write it in family text format.
    Construct {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Star centre, ℓ, t, r or segment length; not used by `triangle`.
        #[arg(long)]
        param: Option<u64>,
    },
    /// Degree sequence of a family.
    Degrees {
        #[command(flatten)]
        input: Input,
    },
    /// Shift a family: to a shifted family, or once with `--i` and `--j`.
    Shift {
        #[command(flatten)]
        input: Input,
        #[arg(long, requires = "j")]
        i: Option<u32>,
        #[arg(long, requires = "i")]
        j: Option<u32>,
    },
    /// Extend a t-intersecting family until nothing can be added.
    Saturate {
        #[arg(long)]
        t: u32,
        #[arg(long, default_value = "lex_greedy")]
        mode: String,
        #[command(flatten)]
        input: Input,
    },
    /// t-transversals, basis, covering number and basis checks.
    Transversal {
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        input: Input,
    },
    /// ℓ-shadow of a family against the least possible shadow.
    Shadow {
        #[arg(long)]
        ell: u32,
        #[command(flatten)]
        input: Input,
    },
    /// Cross-intersection checks for two families on the same ground set.
    Crosscheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Evaluate one bound at a parameter point.
    Bounds {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        point: Point,
    },
    /// Check an auxiliary inequality over a parameter grid.
    Sweep {
        #[arg(long)]
        id: String,
        /// Grid such as `k=3..12,n=6k-9..6k+30`; defaults to the id's range.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Per-index degree maxima over all maximal t-intersecting families.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, default_value = "all")]
        restrict: String,
        /// Also count isomorphism classes (n ≤ 12).
        #[arg(long)]
        classes: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Check a bound against exhaustive search.
    Verify {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        workers: Workers,
    },
    /// Report evidence on an open statement; never fails.
    Probe {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        #[command(flatten)]
        workers: Workers,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Point {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    /// Covering number, for PROP51.
    #[arg(long)]
    pub i: Option<u32>,
}

impl Point {
    fn params(self) -> BoundParams {
        BoundParams {
            n: self.n,
            k: self.k,
            t: self.t,
            ell: self.ell,
            i: self.i,
        }
    }
}

/// What a subcommand produced.
#[derive(Debug)]
pub enum Output {
    Family(UniformFamily),
    Report(Value),
}

/// A finished run: the output and whether its checks passed.
#[derive(Debug)]
pub struct Run {
    pub output: Output,
    pub passed: bool,
}

/// Any failure before a report exists. Always exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_input(input: &Input) -> Result<UniformFamily, UsageError> {
    let text = match input.input.as_deref() {
        None => read_stdin()?,
        Some(p) if p == Path::new("-") => read_stdin()?,
        Some(p) => read_file(p)?,
    };
    Ok(parse_family(&text)?)
}

fn read_stdin() -> Result<String, UsageError> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text)?;
    Ok(text)
}

fn read_file(p: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))
}

fn read_family(p: &Path) -> Result<UniformFamily, UsageError> {
    parse_family(&read_file(p)?).map_err(|e| UsageError(format!("{}: {e}", p.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn ok(output: Output) -> Result<Run, UsageError> {
    Ok(Run {
        output,
        passed: true,
    })
}

/// Validates paths, then runs the subcommand.
pub fn dispatch(config: &RunConfig) -> Result<Run, UsageError> {
    for p in input_paths(&config.command) {
        if !p.is_file() {
            return Err(UsageError(format!("{}: no such file", p.display())));
        }
    }
    match &config.command {
        Command::Construct { kind, n, k, param } => {
            let kind: ConstructionKind = kind.parse()?;
            let spec = match (kind, param) {
                (ConstructionKind::Triangle, _) => ConstructionSpec::triangle(*n, *k),
                (_, Some(p)) => ConstructionSpec::new(kind, *n, *k, *p),
                (_, None) => return Err(UsageError(format!("{kind} needs --param"))),
            };
            ok(Output::Family(build(&spec)?))
        }
        Command::Degrees { input } => {
            let f = read_input(input)?;
            let ds = degree_sequence(&f);
            let sorted: Vec<Value> = ds
                .sorted
                .iter()
                .map(|(v, d)| json!({"vertex": v, "degree": d}))
                .collect();
            ok(Output::Report(json!({
                "n": f.n(),
                "k": f.k(),
                "size": f.len(),
                "degrees": ds.values(),
                "sorted": sorted,
            })))
        }
        Command::Shift { input, i, j } => {
            let f = read_input(input)?;
            let g = match (i, j) {
                (Some(i), Some(j)) => shift_ij(&f, *i, *j)?,
                _ => make_shifted(&f),
            };
            ok(Output::Family(g))
        }
        Command::Saturate { t, mode, input } => {
            let mode: SaturationMode = mode.parse()?;
            let f = read_input(input)?;
            ok(Output::Family(saturate(&f, *t, mode)?))
        }
        Command::Transversal { t, input } => {
            let f = read_input(input)?;
            let report = transversal_report(&f, *t)?;
            let lemmas = check_basis_lemmas(&f, *t)?;
            ok(Output::Report(json!({
                "t": report.t,
                "tau": report.tau,
                "basis": report.basis,
                "transversals": report.transversals.len(),
                "checks": lemmas,
            })))
        }
        Command::Shadow { ell, input } => {
            let f = read_input(input)?;
            let s = shadow(&f, *ell)?;
            let least = kk_min_shadow(f.n(), f.k(), f.len() as u64, *ell)?;
            let passed = s.len() as u64 >= least;
            Ok(Run {
                output: Output::Report(json!({
                    "ell": ell,
                    "size": f.len(),
                    "shadow_size": s.len(),
                    "least_shadow": least,
                    "ok": passed,
                    "shadow": write_family(&s),
                })),
                passed,
            })
        }
        Command::Crosscheck { a, b, d, r } => {
            let pair = CrossPair::new(read_family(a)?, read_family(b)?)?;
            let report = cross_check(&pair)?;
            let checks = cross_inequalities(&pair, CrossParams { d: *d, r: *r });
            let passed = report.daykin.as_ref().is_none_or(|d| d.ok)
                && report.lex_transfer_ok.unwrap_or(true)
                && checks.iter().all(|c| c.holds != Some(false));
            let mut v = to_value(&report);
            v["inequalities"] = to_value(&checks);
            Ok(Run {
                output: Output::Report(v),
                passed,
            })
        }
        Command::Bounds { id, point } => {
            let id: BoundId = id.parse()?;
            ok(Output::Report(to_value(&evaluate(id, point.params())?)))
        }
        Command::Sweep { id, grid } => {
            let id: InequalityId = id.parse()?;
            let grid = Grid::parse(grid.as_deref().unwrap_or(id.default_grid()))?;
            let report = inequality_sweep(id, &grid)?;
            Ok(Run {
                passed: report.pass,
                output: Output::Report(to_value(&report)),
            })
        }
        Command::Search {
            n,
            k,
            t,
            restrict,
            classes,
            workers,
        } => {
            let restrict: Restrict = restrict.parse()?;
            let opts = SearchOptions {
                workers: workers.workers,
                classes: *classes,
            };
            let report = max_degree_profile(*n, *k, *t, restrict, opts)?;
            Ok(Run {
                passed: report.witnesses_verified,
                output: Output::Report(to_value(&report)),
            })
        }
        Command::Verify { id, point, workers } => {
            let id: BoundId = id.parse()?;
            let opts = SearchOptions {
                workers: workers.workers,
                classes: false,
            };
            let report = verify_theorem(id, point.params(), opts)?;
            Ok(Run {
                passed: report.verdict != Verdict::Fail,
                output: Output::Report(to_value(&report)),
            })
        }
        Command::Probe {
            id,
            n,
            k,
            t,
            ell,
            workers,
        } => {
            let id: ProbeId = id.parse()?;
            let opts = SearchOptions {
                workers: workers.workers,
                classes: false,
            };
            ok(Output::Report(to_value(&conjecture_probe(
                id, *n, *k, *t, *ell, opts,
            )?)))
        }
    }
}

fn single(i: &Input) -> Vec<&Path> {
    i.input
        .as_deref()
        .filter(|p| *p != Path::new("-"))
        .into_iter()
        .collect()
}

fn input_paths(command: &Command) -> Vec<&Path> {
    match command {
        Command::Degrees { input }
        | Command::Shift { input, .. }
        | Command::Saturate { input, .. }
        | Command::Transversal { input, .. }
        | Command::Shadow { input, .. } => single(input),
        Command::Crosscheck { a, b, .. } => vec![a.as_path(), b.as_path()],
        _ => Vec::new(),
    }
}

/// Serializes a report. JSON keys come out sorted and nothing is a float.
pub fn emit_report(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Csv => emit_csv(report),
        Format::Text => emit_text(report),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn leaves(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match v {
        Value::Object(m) => {
            for (key, child) in m {
                leaves(&join(key), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                leaves(&join(&i.to_string()), child, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

/// Search reports become an `i,max_degree` table; anything else a
/// `field,value` listing of its leaves.
fn emit_csv(report: &Value) -> String {
    let mut s = String::new();
    if let Some(Value::Object(table)) = report.get("per_index_max") {
        s.push_str("i,max_degree\n");
        let mut rows: Vec<(usize, String)> = table
            .iter()
            .map(|(i, m)| (i.parse().unwrap_or(0), scalar(&m["value"])))
            .collect();
        rows.sort();
        for (i, value) in rows {
            let _ = writeln!(s, "{i},{value}");
        }
        return s;
    }
    s.push_str("field,value\n");
    let mut rows = Vec::new();
    leaves("", report, &mut rows);
    for (k, v) in rows {
        let _ = writeln!(s, "{},{}", csv_field(&k), csv_field(&v));
    }
    s
}

fn emit_text(report: &Value) -> String {
    let mut rows = Vec::new();
    leaves("", report, &mut rows);
    let mut s = String::new();
    for (k, v) in rows {
        if v.contains('\n') {
            let _ = writeln!(s, "{k}:");
            for line in v.lines() {
                let _ = writeln!(s, "  {line}");
            }
        } else {
            let _ = writeln!(s, "{k}: {v}");
        }
    }
    s
}

/// Runs a parsed command line, writing output and diagnostics; returns the exit status.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let start = Instant::now();
    match dispatch(config) {
        Ok(run) => finish(config, run, start, stdout, stderr),
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Emits a finished run and maps its verdict to an exit status.
pub fn finish(
    config: &RunConfig,
    run: Run,
    start: Instant,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let text = match run.output {
        Output::Family(f) => write_family(&f),
        Output::Report(mut v) => {
            if config.timing {
                if let Value::Object(m) = &mut v {
                    let ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
                    m.insert("wall_time_ms".into(), Value::from(ms));
                }
            }
            emit_report(&v, config.format)
        }
    };
    let written = match &config.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    if run.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

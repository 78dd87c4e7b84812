//! The `fmes` command line.

pub mod config;
pub mod expr;
pub mod suites;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fmes_core::arith::fmt_rational;
use fmes_core::balanced::phi_inverse_lc;
use fmes_core::mzv::eds_dim;
use fmes_core::qseries::g_series_lc;
use fmes_core::quotient::{IdealKind, Quotient};
use fmes_core::{AWord, LinComb};
use serde::Serialize;
use thiserror::Error;

use config::{FileConfig, Settings, CONFIG_ENV};
use expr::{parse, Expr, ExprError, Operator};
use suites::{CheckRecord, Status, SuiteOptions};

pub const SCHEMA_VERSION: u32 = 1;

/// Cutoff for expression commands when no weight is configured.
pub const DEFAULT_EXPR_CUTOFF: u32 = 12;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

impl From<fmes_core::Error> for CliError {
    fn from(e: fmes_core::Error) -> Self {
        match e {
            fmes_core::Error::Resource { .. } => CliError::Resource(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Expr(ExprError::Core(fmes_core::Error::Resource { .. })) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fmes", version, about = "Exact algebra of formal multiple Eisenstein series")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML config file; also read from FMES_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Print results in the balanced alphabet b0, b1, ...
    #[arg(long, global = true)]
    pub balanced: bool,
    /// Weight cutoff.
    #[arg(long, global = true)]
    pub max_weight: Option<u32>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest weight for which an echelon basis may be built.
    #[arg(long, global = true)]
    pub echelon_max_weight: Option<u32>,
    #[arg(long, global = true)]
    pub max_memory_mb: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    #[value(name = "D")]
    D,
    #[value(name = "W")]
    W,
    #[value(name = "omega")]
    Omega,
    #[value(name = "delta")]
    Delta,
    #[value(name = "t")]
    T,
}

impl OpArg {
    fn operator(self) -> Operator {
        match self {
            OpArg::D => Operator::D,
            OpArg::W => Operator::W,
            OpArg::Omega => Operator::Omega,
            OpArg::Delta => Operator::Delta,
            OpArg::T => Operator::T,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NfIdeal {
    Fmes,
    Zf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimIdeal {
    Fmes,
    Zf,
    Eds,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression.
    Eval { expr: String },
    /// Stuffle product of two expressions.
    Mul { left: String, right: String },
    /// Apply the swap involution.
    Swap { expr: String },
    /// Apply a derivation.
    Derive {
        #[arg(long, value_enum)]
        op: OpArg,
        expr: String,
    },
    /// Normal form modulo the swap ideal (fmes) or the formal zeta ideal (zf).
    Nf {
        #[arg(long, value_enum)]
        ideal: NfIdeal,
        expr: String,
    },
    /// Table of graded dimensions.
    Dims {
        #[arg(long, value_enum)]
        ideal: DimIdeal,
    },
    /// q-expansion of the realization of an expression.
    Qexpand {
        #[arg(long)]
        order: Option<usize>,
        expr: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Inspect, build or clear the echelon cache.
    Cache {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        clear: bool,
        #[arg(long, conflicts_with = "clear")]
        stats: bool,
        /// Build swap and formal zeta bases up to this weight.
        #[arg(long, conflicts_with = "clear")]
        build: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_PASS, stdout, stderr: String::new() }
    }

    fn error(e: &CliError) -> Self {
        Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn settings(g: &GlobalArgs) -> Result<Settings, CliError> {
    let path = g.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let file = match path {
        Some(p) => FileConfig::load(&p)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        max_weight: g.max_weight,
        q_order: None,
        cache_dir: g.cache_dir.clone(),
        threads: g.threads,
        echelon_max_weight: g.echelon_max_weight,
        max_memory_mb: g.max_memory_mb,
    };
    Ok(Settings::resolve(file, flags))
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let s = settings(&cli.global)?;
    let g = &cli.global;
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        Format::Text
    };
    if !Quotient::configure_global(s.cache_dir.clone(), s.echelon_max_weight) {
        log::debug!("quotient already configured in this process");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(s.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(&cli.command, &s, format, g.balanced))
}

fn expr_cutoff(s: &Settings) -> u32 {
    s.max_weight.unwrap_or(DEFAULT_EXPR_CUTOFF)
}

fn table_weight(s: &Settings) -> u32 {
    s.max_weight.unwrap_or(6)
}

fn evaluate(text: &str, s: &Settings) -> Result<LinComb<AWord>, CliError> {
    Ok(parse(text)?.evaluate(expr_cutoff(s))?)
}

fn apply(op: Operator, text: &str, s: &Settings) -> Result<LinComb<AWord>, CliError> {
    Ok(Expr::Apply(op, Box::new(parse(text)?)).evaluate(expr_cutoff(s))?)
}

fn dispatch(cmd: &Command, s: &Settings, format: Format, balanced: bool) -> Result<Outcome, CliError> {
    match cmd {
        Command::Eval { expr } => Ok(Outcome::ok(print_lc(&evaluate(expr, s)?, format, balanced))),
        Command::Mul { left, right } => {
            let e = Expr::Mul(Box::new(parse(left)?), Box::new(parse(right)?));
            Ok(Outcome::ok(print_lc(&e.evaluate(expr_cutoff(s))?, format, balanced)))
        }
        Command::Swap { expr } => Ok(Outcome::ok(print_lc(&apply(Operator::Swap, expr, s)?, format, balanced))),
        Command::Derive { op, expr } => Ok(Outcome::ok(print_lc(&apply(op.operator(), expr, s)?, format, balanced))),
        Command::Nf { ideal, expr } => {
            let x = evaluate(expr, s)?;
            let cutoff = expr_cutoff(s);
            s.admit(x.max_weight().unwrap_or(0))?;
            let kind = match ideal {
                NfIdeal::Fmes => IdealKind::SwapIdeal,
                NfIdeal::Zf => IdealKind::Combined,
            };
            let nf = Quotient::global().normal_form(&x, kind, cutoff)?;
            Ok(Outcome::ok(print_lc(&nf, format, balanced)))
        }
        Command::Dims { ideal } => dims(*ideal, table_weight(s), s, format),
        Command::Qexpand { order, expr } => {
            let x = evaluate(expr, s)?;
            let series = g_series_lc(&x, order.unwrap_or(s.q_order));
            let coeffs: Vec<String> = series.coeffs().iter().map(fmt_rational).collect();
            let out = match format {
                Format::Json => to_json(&coeffs),
                Format::Csv => {
                    let rows = coeffs.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.clone()]);
                    csv_table(&["n", "coeff"], rows)?
                }
                Format::Text => coeffs.iter().enumerate().map(|(n, c)| format!("{n}: {c}\n")).collect(),
            };
            Ok(Outcome::ok(out))
        }
        Command::Verify { suite } => verify(suite, s, format),
        Command::Cache { dir, clear, stats, build } => {
            let dir = dir
                .clone()
                .or_else(|| s.cache_dir.clone())
                .ok_or_else(|| CliError::Usage("cache needs --dir".into()))?;
            cache(&dir, *clear, *stats, *build, s, format)
        }
    }
}

#[derive(Serialize)]
struct Term {
    word: String,
    coeff: String,
}

fn print_lc(x: &LinComb<AWord>, format: Format, balanced: bool) -> String {
    let terms: Vec<Term> = if balanced {
        phi_inverse_lc(x).iter().map(|(w, c)| Term { word: w.to_string(), coeff: fmt_rational(c) }).collect()
    } else {
        x.iter().map(|(w, c)| Term { word: w.to_string(), coeff: fmt_rational(c) }).collect()
    };
    match format {
        Format::Json => to_json(&serde_json::json!({ "schema_version": SCHEMA_VERSION, "terms": terms })),
        Format::Csv => csv_table(&["word", "coeff"], terms.iter().map(|t| vec![t.word.clone(), t.coeff.clone()]))
            .unwrap_or_default(),
        Format::Text if balanced => format!("{}\n", phi_inverse_lc(x)),
        Format::Text => format!("{x}\n"),
    }
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

#[derive(Serialize)]
struct DimRow {
    weight: u32,
    dim: usize,
}

fn dims(ideal: DimIdeal, max_weight: u32, s: &Settings, format: Format) -> Result<Outcome, CliError> {
    let (name, kind) = match ideal {
        DimIdeal::Fmes => ("fmes", Some(IdealKind::SwapIdeal)),
        DimIdeal::Zf => ("zf", Some(IdealKind::Combined)),
        DimIdeal::Eds => ("eds", None),
    };
    if kind.is_some() {
        s.admit(max_weight)?;
    }
    let rows = (0..=max_weight)
        .map(|k| {
            let dim = match kind {
                Some(kind) => Quotient::global().dim(kind, k)?,
                None => eds_dim(k),
            };
            Ok(DimRow { weight: k, dim })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let out = match format {
        Format::Json => to_json(&serde_json::json!({ "schema_version": SCHEMA_VERSION, "ideal": name, "dims": rows })),
        Format::Csv => {
            csv_table(&["weight", "dim"], rows.iter().map(|r| vec![r.weight.to_string(), r.dim.to_string()]))?
        }
        Format::Text => rows.iter().map(|r| format!("{} {}\n", r.weight, r.dim)).collect(),
    };
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    finding: usize,
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    schema_version: u32,
    suite: &'a str,
    max_weight: u32,
    q_order: usize,
    passed: bool,
    summary: Summary,
    elapsed_ms: u64,
    checks: &'a [CheckRecord],
}

fn verify(suite: &str, s: &Settings, format: Format) -> Result<Outcome, CliError> {
    if !suites::is_suite(suite) {
        return Err(CliError::Usage(format!(
            "unknown suite `{suite}`; expected one of {} or all",
            suites::SUITES.join(", ")
        )));
    }
    let options = SuiteOptions { max_weight: table_weight(s), q_order: s.q_order };
    let names = suites::expand(suite);
    for n in &names {
        s.admit(suites::echelon_weight(n, &options))?;
    }
    let start = Instant::now();
    let records = suites::run(&names, &options)?;
    let count = |st: Status| records.iter().filter(|r| r.status == st).count();
    let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), finding: count(Status::Finding) };
    let passed = summary.fail == 0;
    let out = match format {
        Format::Json => to_json(&SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite,
            max_weight: options.max_weight,
            q_order: options.q_order,
            passed,
            elapsed_ms: start.elapsed().as_millis() as u64,
            summary,
            checks: &records,
        }),
        Format::Csv => csv_table(
            &["id", "anchor", "status", "weight", "residual", "elapsed_ms"],
            records.iter().map(|r| {
                vec![
                    r.id.clone(),
                    r.anchor.clone(),
                    status_word(r.status).into(),
                    r.weight.to_string(),
                    r.residual.clone(),
                    r.elapsed_ms.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut t = String::new();
            for r in &records {
                let _ = write!(t, "{:<7} {}", status_word(r.status), r.id);
                if !r.residual.is_empty() {
                    let _ = write!(t, ": {}", r.residual);
                }
                t.push('\n');
            }
            let _ = writeln!(t, "{} passed, {} failed, {} findings", summary.pass, summary.fail, summary.finding);
            t
        }
    };
    Ok(Outcome { code: if passed { EXIT_PASS } else { EXIT_CHECK_FAILURE }, stdout: out, stderr: String::new() })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Finding => "finding",
    }
}

#[derive(Serialize)]
struct CacheEntry {
    file: String,
    bytes: u64,
    kind: String,
    weight: String,
    rank: String,
}

fn cache_entries(dir: &std::path::Path) -> Result<Vec<CacheEntry>, CliError> {
    let mut out = Vec::new();
    let rd = match fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(CliError::Usage(format!("{}: {e}", dir.display()))),
    };
    for entry in rd {
        let entry = entry.map_err(|e| CliError::Usage(e.to_string()))?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("basis") {
            continue;
        }
        let text = fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let field = |key: &str| {
            text.lines()
                .take(6)
                .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
                .unwrap_or("?")
                .to_string()
        };
        out.push(CacheEntry {
            file: entry.file_name().to_string_lossy().into_owned(),
            bytes: text.len() as u64,
            kind: field("kind"),
            weight: field("weight"),
            rank: field("rank"),
        });
    }
    out.sort_by(|a, b| a.file.cmp(&b.file));
    Ok(out)
}

fn cache(
    dir: &std::path::Path,
    clear: bool,
    _stats: bool,
    build: Option<u32>,
    s: &Settings,
    format: Format,
) -> Result<Outcome, CliError> {
    if clear {
        let entries = cache_entries(dir)?;
        for e in &entries {
            fs::remove_file(dir.join(&e.file)).map_err(|err| CliError::Usage(format!("{}: {err}", e.file)))?;
        }
        return Ok(Outcome::ok(format!("removed {} files from {}\n", entries.len(), dir.display())));
    }
    if let Some(k) = build {
        s.admit(k)?;
        let q = Quotient::new(Some(dir.to_path_buf())).with_max_weight(s.echelon_max_weight);
        for w in 0..=k {
            q.basis(IdealKind::SwapIdeal, w)?;
            q.basis(IdealKind::Combined, w)?;
        }
    }
    let entries = cache_entries(dir)?;
    let out = match format {
        Format::Json => to_json(&serde_json::json!({ "schema_version": SCHEMA_VERSION, "files": entries })),
        Format::Csv => csv_table(
            &["file", "bytes", "kind", "weight", "rank"],
            entries
                .iter()
                .map(|e| vec![e.file.clone(), e.bytes.to_string(), e.kind.clone(), e.weight.clone(), e.rank.clone()]),
        )?,
        Format::Text => entries
            .iter()
            .map(|e| format!("{} {} bytes, {} weight {} rank {}\n", e.file, e.bytes, e.kind, e.weight, e.rank))
            .collect(),
    };
    Ok(Outcome::ok(out))
}

//! Library half of the `zetakit` command: argument parsing, the five
//! commands and output rendering. `main.rs` only wires up the process.

pub mod config;
pub mod literal;
pub mod record;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zetakit::exec::map_ordered;
use zetakit::finite_sums::FiniteSumMode;
use zetakit::numeric::c;
use zetakit::param_zeta::{z_value_with, ZEvalMethod, DEFAULT_SERIES_TERMS};
use zetakit::polylog::{Polylog, PolylogMethod};
use zetakit::series::{convergence_report, zeta_via_series, PartialSumTrace, SeriesKind, SeriesSpec};
use zetakit::zero_lab::{ratio_scan_with, scan_points, DEFAULT_SCAN_K, MAX_SCAN_K};
use zetakit::{ComplexVal, Execution};

use config::Presets;
use literal::{format_complex, format_real, parse_complex};
use record::{Cell, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;

/// Name of the environment variable capping worker threads.
pub const THREADS_ENV: &str = "ZETAKIT_THREADS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(zetakit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math(e) if e.is_non_convergence() => EXIT_NONCONVERGENCE,
            CliError::Math(_) => EXIT_MATH,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<zetakit::Error> for CliError {
    fn from(e: zetakit::Error) -> Self {
        CliError::Math(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "zetakit", version, about = "Zeta series, polylogarithms and the Abel-parametrized zeta")]
pub struct Cli {
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// File of key=value lines presetting option defaults
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// zeta(s) from one of the globally convergent series
    Zeta(ZetaArgs),
    /// Li_s(x) on the principal branch
    Polylog(PolylogArgs),
    /// Z(s, x) at a point or over a real grid of x
    Zee(ZeeArgs),
    /// Tail-integral ratio scan at x = 1 - 10^-k
    RatioScan(RatioScanArgs),
    /// Partial-sum traces of all five series side by side
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: ComplexVal,
    /// this_paper, hasse, ser, blagouchine or knopp [default: this_paper]
    #[arg(long, value_parser = parse_series)]
    pub series: Option<SeriesKind>,
    /// Maximum number of series terms [default: 64]
    #[arg(long)]
    pub terms: Option<usize>,
    /// How each finite sum is evaluated [default: auto]
    #[arg(long, value_enum)]
    pub term_mode: Option<TermMode>,
    /// Stop after three consecutive terms below this size [default: 1e-12]
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Emit the partial-sum trace as rows
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct PolylogArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: ComplexVal,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x: ComplexVal,
    /// [default: auto]
    #[arg(long, value_enum)]
    pub method: Option<PolyMethodArg>,
}

#[derive(Args, Debug)]
pub struct ZeeArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: ComplexVal,
    /// Single (complex) x
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "x_grid", required_unless_present = "x_grid")]
    pub x: Option<ComplexVal>,
    /// Real grid start:stop:count, endpoints included
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub x_grid: Option<Grid>,
    /// [default: auto]
    #[arg(long, value_enum)]
    pub method: Option<ZMethodArg>,
    /// Truncation of the series method [default: 200]
    #[arg(long)]
    pub terms: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RatioScanArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s0: ComplexVal,
    /// kmin:kmax for x = 1 - 10^-k, k <= 12 [default: 2:8]
    #[arg(long)]
    pub k_range: Option<String>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: ComplexVal,
    /// Terms per series [default: 64]
    #[arg(long)]
    pub terms: Option<usize>,
    /// [default: auto]
    #[arg(long, value_enum)]
    pub term_mode: Option<TermMode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TermMode {
    Direct,
    Integral,
    Auto,
}

impl From<TermMode> for FiniteSumMode {
    fn from(m: TermMode) -> Self {
        match m {
            TermMode::Direct => FiniteSumMode::Direct,
            TermMode::Integral => FiniteSumMode::Integral,
            TermMode::Auto => FiniteSumMode::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum PolyMethodArg {
    PowerSeries,
    AppellIntegral,
    LogSeries,
    Inversion,
    Eulerian,
    Auto,
}

impl From<PolyMethodArg> for PolylogMethod {
    fn from(m: PolyMethodArg) -> Self {
        match m {
            PolyMethodArg::PowerSeries => PolylogMethod::PowerSeries,
            PolyMethodArg::AppellIntegral => PolylogMethod::AppellIntegral,
            PolyMethodArg::LogSeries => PolylogMethod::LogSeries,
            PolyMethodArg::Inversion => PolylogMethod::Inversion,
            PolyMethodArg::Eulerian => PolylogMethod::Eulerian,
            PolyMethodArg::Auto => PolylogMethod::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ZMethodArg {
    Series,
    Integral,
    ClosedForm,
    Auto,
}

impl From<ZMethodArg> for ZEvalMethod {
    fn from(m: ZMethodArg) -> Self {
        match m {
            ZMethodArg::Series => ZEvalMethod::Series,
            ZMethodArg::Integral => ZEvalMethod::Integral,
            ZMethodArg::ClosedForm => ZEvalMethod::ClosedForm,
            ZMethodArg::Auto => ZEvalMethod::Auto,
        }
    }
}

fn parse_series(t: &str) -> Result<SeriesKind, String> {
    SeriesKind::parse(t).ok_or_else(|| {
        let names: Vec<&str> = SeriesKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown series {t:?}; expected one of {}", names.join(", "))
    })
}

/// Real sample points of `--x-grid`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// `start:stop:count` with both endpoints included.
pub fn parse_grid(t: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = t.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("invalid grid {t:?}; expected start:stop:count"));
    };
    let real = |p: &str| p.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    let (Some(a), Some(b)) = (real(a), real(b)) else {
        return Err(format!("invalid grid bounds in {t:?}"));
    };
    let n: usize = n.trim().parse().map_err(|_| format!("invalid grid count in {t:?}"))?;
    match n {
        0 => Err("grid count must be positive".into()),
        1 => Ok(Grid(vec![a])),
        _ => Ok(Grid((0..n).map(|j| a + (b - a) * j as f64 / (n - 1) as f64).collect())),
    }
}

pub fn parse_k_range(t: &str) -> Result<(u32, u32), String> {
    let (a, b) = t.split_once(':').ok_or_else(|| format!("invalid k-range {t:?}; expected kmin:kmax"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("invalid kmin in {t:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("invalid kmax in {t:?}"))?;
    if a == 0 || a > b {
        return Err(format!("k-range {t:?} must satisfy 1 <= kmin <= kmax"));
    }
    if b > MAX_SCAN_K {
        return Err(format!("k = {b} refused: scans stop at k = {MAX_SCAN_K}"));
    }
    Ok((a, b))
}

fn parse_positive(t: &str) -> Result<f64, String> {
    t.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite() && *v > 0.0)
        .ok_or_else(|| format!("expected a positive real, got {t:?}"))
}

fn parse_count(t: &str) -> Result<usize, String> {
    t.trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("expected a positive integer, got {t:?}"))
}

fn parse_enum<T: ValueEnum>(t: &str) -> Result<T, String> {
    T::from_str(t.trim(), false)
}

/// Flag, else preset, else module default. Flags are re-validated so a
/// preset cannot slip past a check the flag would have hit.
fn resolve<T>(
    flag: Option<T>,
    presets: &Presets,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
    default: T,
) -> Result<T, CliError> {
    match flag {
        Some(v) => Ok(v),
        None => match presets.get(key) {
            Some(text) => parse(text).map_err(|m| CliError::Usage(format!("config {key}: {m}"))),
            None => Ok(default),
        },
    }
}

fn check_flag<T: Copy>(v: Option<T>, ok: impl Fn(T) -> bool, what: &str) -> Result<(), CliError> {
    match v {
        Some(x) if !ok(x) => Err(CliError::Usage(format!("{what} must be positive"))),
        _ => Ok(()),
    }
}

/// What a finished command prints.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `argv` (program name first) and run the command.
pub fn run<I, T>(argv: I, exec: Execution) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli, exec) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("zetakit: {e}\n"),
        },
    }
}

/// Worker setting from `ZETAKIT_THREADS`: None leaves the default pool.
pub fn threads_from_env(value: Option<&str>) -> Result<Option<usize>, String> {
    match value {
        None => Ok(None),
        Some(t) => parse_count(t)
            .map(Some)
            .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {t:?}")),
    }
}

pub fn execute(cli: &Cli, exec: Execution) -> Result<String, CliError> {
    let presets = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            Presets::parse(&text).map_err(CliError::Usage)?
        }
        None => Presets::default(),
    };
    let format = resolve(cli.format, &presets, "format", parse_enum, Format::Csv)?;
    let out = match &cli.command {
        Command::Zeta(a) => cmd_zeta(a, &presets, exec)?,
        Command::Polylog(a) => cmd_polylog(a, &presets)?,
        Command::Zee(a) => cmd_zee(a, &presets, exec)?,
        Command::RatioScan(a) => cmd_ratio_scan(a, &presets, exec)?,
        Command::Compare(a) => cmd_compare(a, &presets, exec)?,
    };
    render(&out, format).map_err(|e| CliError::Usage(format!("output: {e}")))
}

/// Reports of one command and how CSV lays them out.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub reports: Vec<Report>,
    /// JSON is an array even for a single report.
    pub many: bool,
}

impl CommandOutput {
    fn one(r: Report) -> Self {
        CommandOutput {
            reports: vec![r],
            many: false,
        }
    }
}

/// CSV: summary (if any) then a blank line then rows; several reports
/// share one header. JSON: one `OutputRecord`, or an array of them.
pub fn render(out: &CommandOutput, format: Format) -> Result<String, Box<dyn std::error::Error>> {
    match format {
        Format::Json => {
            let recs: Vec<_> = out.reports.iter().map(Report::to_record).collect();
            let mut text = if out.many {
                serde_json::to_string_pretty(&recs)?
            } else {
                serde_json::to_string_pretty(&recs[0])?
            };
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut text = String::new();
            let first = &out.reports[0];
            if !first.summary.is_empty() {
                text.push_str(&first.summary_csv()?);
                text.push('\n');
            }
            let mut merged = first.clone();
            for r in &out.reports[1..] {
                merged.rows.extend(r.rows.iter().cloned());
            }
            text.push_str(&merged.rows_csv()?);
            Ok(text)
        }
    }
}

fn series_spec(
    kind: SeriesKind,
    terms: Option<usize>,
    mode: Option<TermMode>,
    presets: &Presets,
    exec: Execution,
) -> Result<(SeriesSpec, usize, TermMode), CliError> {
    check_flag(terms, |n| n > 0, "terms")?;
    let terms = resolve(terms, presets, "terms", parse_count, SeriesSpec::DEFAULT_MAX_TERMS)?;
    let mode = resolve(mode, presets, "term-mode", parse_enum, TermMode::Auto)?;
    let spec = SeriesSpec::new(kind)
        .with_max_terms(terms)
        .with_term_mode(mode.into())
        .with_execution(exec);
    Ok((spec, terms, mode))
}

fn mode_name(m: TermMode) -> String {
    m.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn trace_rows(report: &mut Report, trace: &PartialSumTrace, prefix: Option<&str>) {
    for r in &trace.rows {
        let mut row = Vec::with_capacity(6);
        if let Some(p) = prefix {
            row.push(Cell::Text(p.to_string()));
        }
        row.extend([
            Cell::Int(r.n as i64),
            Cell::Complex(r.term),
            Cell::Complex(r.partial),
            Cell::real(r.predicted_term_magnitude),
            Cell::Real(r.ratio),
        ]);
        report.push_row(row);
    }
}

const TRACE_COLUMNS: [&str; 5] = ["n", "term", "partial", "predicted_term_magnitude", "ratio"];

pub fn cmd_zeta(a: &ZetaArgs, presets: &Presets, exec: Execution) -> Result<CommandOutput, CliError> {
    let kind = resolve(a.series, presets, "series", parse_series, SeriesKind::ThisPaper)?;
    check_flag(a.tol, |t: f64| t.is_finite() && t > 0.0, "tol")?;
    let tol = resolve(a.tol, presets, "tol", parse_positive, SeriesSpec::DEFAULT_TARGET_TOL)?;
    let (spec, terms, mode) = series_spec(kind, a.terms, a.term_mode, presets, exec)?;
    let spec = spec.with_target_tol(tol);
    let res = zeta_via_series(a.s, &spec)?;

    let summary = vec![
        ("s".to_string(), Cell::Complex(a.s)),
        ("series".to_string(), Cell::Text(kind.name().into())),
        ("value".to_string(), Cell::Complex(res.value)),
        ("raw_sum".to_string(), Cell::Complex(res.raw_sum)),
        ("tail".to_string(), Cell::Complex(res.tail)),
        ("tail_error".to_string(), Cell::real(res.tail_error)),
        ("terms_used".to_string(), Cell::Int(res.trace.rows.len() as i64)),
    ];
    let base = |cols: &[&str]| {
        Report::new("zeta", cols)
            .input("s", format_complex(a.s))
            .input("series", kind.name())
            .input("terms", terms.to_string())
            .input("term_mode", mode_name(mode))
            .input("tol", format_real(tol))
            .input("trace", a.trace.to_string())
    };
    let report = if a.trace {
        let mut r = base(&TRACE_COLUMNS);
        trace_rows(&mut r, &res.trace, None);
        r.summary = summary;
        r
    } else {
        let names: Vec<&str> = summary.iter().map(|(k, _)| k.as_str()).collect();
        let mut r = base(&names);
        r.push_row(summary.iter().map(|(_, v)| v.clone()).collect());
        r
    };
    Ok(CommandOutput::one(report))
}

pub fn cmd_polylog(a: &PolylogArgs, presets: &Presets) -> Result<CommandOutput, CliError> {
    let method = resolve(a.method, presets, "method", parse_enum, PolyMethodArg::Auto)?;
    let (value, used) = Polylog::new(a.s).eval_with_method(a.x, method.into())?;
    let mut r = Report::new("polylog", &["s", "x", "value", "method"])
        .input("s", format_complex(a.s))
        .input("x", format_complex(a.x))
        .input("method", PolylogMethod::from(method).name());
    r.push_row(vec![
        Cell::Complex(a.s),
        Cell::Complex(a.x),
        Cell::Complex(value),
        Cell::Text(used.name().into()),
    ]);
    Ok(CommandOutput::one(r))
}

pub fn cmd_zee(a: &ZeeArgs, presets: &Presets, exec: Execution) -> Result<CommandOutput, CliError> {
    let method = resolve(a.method, presets, "method", parse_enum, ZMethodArg::Auto)?;
    check_flag(a.terms, |n| n > 0, "terms")?;
    let terms = resolve(a.terms, presets, "terms", parse_count, DEFAULT_SERIES_TERMS)?;
    let (xs, x_input): (Vec<ComplexVal>, (&str, String)) = match (&a.x, &a.x_grid) {
        (Some(x), _) => (vec![*x], ("x", format_complex(*x))),
        (None, Some(Grid(g))) => {
            let text = g.iter().map(|v| format_real(*v)).collect::<Vec<_>>().join(" ");
            (g.iter().map(|&v| c(v, 0.0)).collect(), ("x_grid", text))
        }
        (None, None) => return Err(CliError::Usage("one of --x or --x-grid is required".into())),
    };
    let m: ZEvalMethod = method.into();
    // rows in parallel, each row's own work sequential
    let values = map_ordered(exec, &xs, |&x| z_value_with(a.s, x, m, terms, Execution::Sequential));
    let mut r = Report::new("zee", &["x", "z", "method", "error_estimate"])
        .input("s", format_complex(a.s))
        .input(x_input.0, x_input.1)
        .input("method", m.name())
        .input("terms", terms.to_string());
    for (x, v) in xs.iter().zip(values) {
        let v = v?;
        r.push_row(vec![
            Cell::Complex(*x),
            Cell::Complex(v.value),
            Cell::Text(v.method.name().into()),
            Cell::real(v.error_estimate),
        ]);
    }
    Ok(CommandOutput::one(r))
}

pub fn cmd_ratio_scan(a: &RatioScanArgs, presets: &Presets, exec: Execution) -> Result<CommandOutput, CliError> {
    let default = format!("{}:{}", DEFAULT_SCAN_K.0, DEFAULT_SCAN_K.1);
    let text = resolve(a.k_range.clone(), presets, "k-range", |t| Ok(t.to_string()), default)?;
    let (kmin, kmax) = parse_k_range(&text).map_err(CliError::Usage)?;
    let xs = scan_points(kmin, kmax)?;
    let rows = ratio_scan_with(a.s0, &xs, exec)?;
    let mut r = Report::new(
        "ratio-scan",
        &["k", "x", "num_abs", "den_abs", "ratio", "predicted_factor", "target"],
    )
    .input("s0", format_complex(a.s0))
    .input("k_range", format!("{kmin}:{kmax}"));
    for (k, row) in (kmin..=kmax).zip(rows) {
        r.push_row(vec![
            Cell::Int(k as i64),
            Cell::real(row.x),
            Cell::real(row.num_abs),
            Cell::real(row.den_abs),
            Cell::Real(row.ratio),
            Cell::real(row.predicted_factor),
            Cell::real(row.target),
        ]);
    }
    Ok(CommandOutput::one(r))
}

pub fn cmd_compare(a: &CompareArgs, presets: &Presets, exec: Execution) -> Result<CommandOutput, CliError> {
    let mut reports = Vec::with_capacity(SeriesKind::ALL.len());
    let mut cols = vec!["series"];
    cols.extend(TRACE_COLUMNS);
    for kind in SeriesKind::ALL {
        let (spec, terms, mut mode) = series_spec(kind, a.terms, a.term_mode, presets, exec)?;
        // the whole requested length, no early stop
        let spec = spec.with_target_tol(0.0);
        let trace = match convergence_report(a.s, &spec) {
            // Ser and Blagouchine sum at order s - 1, which can leave the
            // half-plane the integral form needs; those fall back to auto
            Err(zetakit::Error::Domain(_)) if mode == TermMode::Integral => {
                mode = TermMode::Auto;
                convergence_report(a.s, &spec.with_term_mode(FiniteSumMode::Auto))?
            }
            r => r?,
        };
        let mut r = Report::new("compare", &cols)
            .input("s", format_complex(a.s))
            .input("series", kind.name())
            .input("terms", terms.to_string())
            .input("term_mode", mode_name(mode));
        trace_rows(&mut r, &trace, Some(kind.name()));
        reports.push(r);
    }
    Ok(CommandOutput { reports, many: true })
}

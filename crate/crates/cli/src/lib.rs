//! Library side of the `frechet` command: curve file parsing, witness
//! output and command dispatch.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use frechet_core::bench::{gen_curve, run_bench, BenchConfig, CurveKind};
use frechet_core::fmt::{format_g17, format_sig};
use frechet_core::selftest::{run_selftest, SelfTestConfig};
use frechet_core::{
    closed_distance_with, frechet_open, witness_coupling, Algorithm, Counters, CyclicCoupling,
    FrechetError, Metric, PointSeq,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or an unparseable file.
    Usage(String),
    /// Well-formed but unusable input data.
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<FrechetError> for CliError {
    fn from(e: FrechetError) -> Self {
        match e {
            FrechetError::Internal(_) => CliError::Internal(e.to_string()),
            FrechetError::InvalidArgument(_) | FrechetError::Unknown { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parses one point per line. Fields are separated by commas and/or
/// whitespace; blank lines and lines starting with `#` are skipped. Every
/// data line must have as many fields as the first one.
///
/// Values are not checked for finiteness here.
pub fn parse_points(text: &str) -> Result<(usize, Vec<f64>), ParseError> {
    let mut dim = None;
    let mut coords = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError {
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let expected = *dim.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(err(format!(
                "expected {expected} fields, found {}",
                fields.len()
            )));
        }
        for f in fields {
            coords.push(
                f.parse::<f64>()
                    .map_err(|_| err(format!("not a number: {f:?}")))?,
            );
        }
    }
    match dim {
        Some(d) => Ok((d, coords)),
        None => Err(ParseError {
            line: text.lines().count().max(1),
            message: "no data lines".into(),
        }),
    }
}

/// Writes one point per line, comma separated, with 17 significant digits.
pub fn write_points(seq: &PointSeq) -> String {
    let mut out = String::new();
    for p in seq.points() {
        let fields: Vec<_> = p.iter().map(|&x| format_g17(x)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct CurveFile {
    pub path: PathBuf,
    pub points: PointSeq,
    pub dim: usize,
}

pub fn load_curve(path: &Path) -> CliResult<CurveFile> {
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let line = 1 + e.as_bytes()[..e.utf8_error().valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count();
        CliError::Usage(format!("{}: line {line}: invalid UTF-8", path.display()))
    })?;
    let (dim, coords) =
        parse_points(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let points = PointSeq::from_flat(dim, coords)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(CurveFile {
        path: path.to_path_buf(),
        points,
        dim,
    })
}

/// Witness document:
///
/// ```text
/// # closed discrete frechet witness
/// length <distance>
/// anchor <a> <b>
/// pairs <count>
/// <a> <b>
/// ...
/// ```
///
/// Indices are 0-based positions in the two input files; the pair list is
/// cyclic and starts at the anchor.
pub fn format_witness(w: &CyclicCoupling) -> String {
    let (a, b) = w.anchor();
    let mut out = format!(
        "# closed discrete frechet witness\nlength {}\nanchor {a} {b}\npairs {}\n",
        format_g17(w.length),
        w.pairs.len()
    );
    for (x, y) in &w.pairs {
        out.push_str(&format!("{x} {y}\n"));
    }
    out
}

/// Reads a witness document back into a coupling.
pub fn parse_witness(text: &str) -> Result<CyclicCoupling, ParseError> {
    let mut length = None;
    let mut count = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: &str| ParseError {
            line: idx + 1,
            message: m.into(),
        };
        let mut it = line.split_whitespace();
        let head = it.next().unwrap_or_default();
        let rest: Vec<&str> = it.collect();
        match (head, rest.as_slice()) {
            ("length", [x]) => length = Some(x.parse::<f64>().map_err(|_| err("bad length"))?),
            ("anchor", [_, _]) => {}
            ("pairs", [c]) => count = Some(c.parse::<usize>().map_err(|_| err("bad count"))?),
            (a, [b]) => pairs.push((
                a.parse().map_err(|_| err("bad index"))?,
                b.parse().map_err(|_| err("bad index"))?,
            )),
            _ => return Err(err("unrecognized line")),
        }
    }
    let end = text.lines().count().max(1);
    let length = length.ok_or(ParseError {
        line: end,
        message: "missing length".into(),
    })?;
    if count != Some(pairs.len()) {
        return Err(ParseError {
            line: end,
            message: "pair count mismatch".into(),
        });
    }
    Ok(CyclicCoupling { pairs, length })
}

#[derive(Debug, Parser)]
#[command(
    name = "frechet",
    version,
    about = "Discrete Fréchet distance for open and closed curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed (cyclic) distance between two curve files.
    Closed(ClosedArgs),
    /// Open distance between two curve files.
    Open(OpenArgs),
    /// Write a generated curve.
    Gen(GenArgs),
    /// Time the fast algorithms on generated curves.
    Bench(BenchArgs),
    /// Randomized oracle and invariant checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ClosedArgs {
    pub file_a: PathBuf,
    pub file_b: PathBuf,
    #[arg(long, default_value = "logstar")]
    pub algorithm: Algorithm,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    /// Write a witness coupling to this file.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Print operation counters to stderr (or into the JSON record).
    #[arg(long)]
    pub stats: bool,
    #[arg(long)]
    pub json: bool,
    /// Significant digits for the printed distance (default 17).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: Option<u8>,
}

#[derive(Debug, Args)]
pub struct OpenArgs {
    pub file_a: PathBuf,
    pub file_b: PathBuf,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: Option<u8>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "sort,logstar,two-epoch")]
    pub algorithms: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output file; stdout when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value = "noisy-polygon")]
    pub kind: String,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 8)]
    pub max_size: usize,
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn metric(name: &str) -> CliResult<Metric> {
    Ok(name.parse::<Metric>()?)
}

fn load_pair(a: &Path, b: &Path) -> CliResult<(PointSeq, PointSeq)> {
    let a = load_curve(a)?;
    let b = load_curve(b)?;
    if a.dim != b.dim {
        return Err(CliError::Input(format!(
            "{} has dimension {} but {} has dimension {}",
            a.path.display(),
            a.dim,
            b.path.display(),
            b.dim
        )));
    }
    Ok((a.points, b.points))
}

fn print_distance(out: &mut dyn Write, d: f64, precision: Option<u8>) -> io::Result<()> {
    let text = match precision {
        Some(p) => format_sig(d, p as usize),
        None => format_g17(d),
    };
    writeln!(out, "{text}")
}

fn write_out(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Input(format!("write failed: {e}"))
}

fn cmd_closed(args: ClosedArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let metric = metric(&args.metric)?;
    let (u, v) = load_pair(&args.file_a, &args.file_b)?;
    let mut counters = Counters::new();
    let d = closed_distance_with(&u, &v, &metric, args.algorithm, &mut counters)?;
    if let Some(path) = &args.witness {
        let w = witness_coupling(&u, &v, &metric, d)?;
        write_out(Some(path), &format_witness(&w), out)?;
    }
    if args.json {
        let mut record = serde_json::json!({
            "algorithm": args.algorithm.id(),
            "metric": metric.name(),
            "m": u.len(),
            "n": v.len(),
            "distance": d,
        });
        if args.stats {
            record["counters"] =
                serde_json::to_value(&counters).map_err(|e| CliError::Internal(e.to_string()))?;
        }
        writeln!(out, "{record}").map_err(io_err)?;
        return Ok(());
    }
    if args.stats {
        let stats =
            serde_json::to_string(&counters).map_err(|e| CliError::Internal(e.to_string()))?;
        writeln!(err, "{stats}").map_err(io_err)?;
    }
    print_distance(out, d, args.precision).map_err(io_err)
}

fn cmd_open(args: OpenArgs, out: &mut dyn Write) -> CliResult<()> {
    let metric = metric(&args.metric)?;
    let (u, v) = load_pair(&args.file_a, &args.file_b)?;
    let d = frechet_open(&u, &v, &metric)?;
    if args.json {
        let record = serde_json::json!({
            "metric": metric.name(),
            "m": u.len(),
            "n": v.len(),
            "distance": d,
        });
        writeln!(out, "{record}").map_err(io_err)
    } else {
        print_distance(out, d, args.precision).map_err(io_err)
    }
}

fn cmd_gen(args: GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let kind: CurveKind = args.kind.parse()?;
    let seq = gen_curve(kind, args.n, args.seed)?;
    let text = format!(
        "# {} n={} seed={}\n{}",
        kind.id(),
        args.n,
        args.seed,
        write_points(&seq)
    );
    write_out(args.output.as_deref(), &text, out)
}

fn cmd_bench(args: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mut config = BenchConfig::new(&args.sizes, &args.algorithms, args.reps, args.seed)?;
    config.kind = args.kind.parse()?;
    config.metric = metric(&args.metric)?;
    let report = run_bench(&config)?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    let csv = String::from_utf8(csv).map_err(|e| CliError::Internal(e.to_string()))?;
    write_out(args.csv.as_deref(), &csv, out)?;
    for (alg, size, ns) in report.medians() {
        writeln!(
            err,
            "{:>10} n={size:<6} median {:.3} ms",
            alg.id(),
            ns as f64 / 1e6
        )
        .map_err(io_err)?;
    }
    Ok(())
}

fn cmd_selftest(args: SelftestArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.max_size == 0 || args.cases == 0 {
        return Err(CliError::Usage(
            "--max-size and --cases must be positive".into(),
        ));
    }
    let config = SelfTestConfig {
        max_size: args.max_size,
        cases: args.cases,
        seed: args.seed,
        ..SelfTestConfig::default()
    };
    let report = run_selftest(&config)?;
    for c in &report.checks {
        let status = if c.failed == 0 { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[{status}] {}: {} passed, {} failed",
            c.name, c.passed, c.failed
        )
        .map_err(io_err)?;
        if let Some(f) = &c.first_failure {
            writeln!(out, "       first failure: {f}").map_err(io_err)?;
        }
    }
    if report.all_passed() {
        writeln!(out, "selftest passed").map_err(io_err)?;
        Ok(())
    } else {
        Err(CliError::Internal("selftest failed".into()))
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Closed(a) => cmd_closed(a, out, err),
        Command::Open(a) => cmd_open(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::Selftest(a) => cmd_selftest(a, out),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "frechet: {e}");
            e.exit_code()
        }
    }
}

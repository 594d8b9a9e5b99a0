//! Thin command-line front end over the library.
//!
//! Subcommands: `threshold`, `sweep`, `de-trace`, `bound`, `penalty`. Every
//! command writes a [`Table`] as CSV (default) or JSON, to stdout or
//! `--output`. Numeric options resolve as flag > config file > default; the
//! sweep seed additionally falls back to the `CSA_SEED` environment
//! variable before the built-in default. Exit status: 0 success, 2 bad
//! usage or validation, 1 runtime failure.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use csa::de::{self, DeSettings};
use csa::mc::{self, Protocol};
use csa::report::{self, Table};
use csa::seed::substream;
use csa::{power_penalty_db, CodeParams};

const DEFAULT_SEED: u64 = 1;
const DEFAULT_FRAMES: usize = 1000;
const DEFAULT_I_MAX: usize = 20;
const DEFAULT_BRACKET_LO: f64 = 0.01;
const DEFAULT_BRACKET_HI: f64 = 2.0;
const DEFAULT_TOL: f64 = 1e-4;
const SEED_ENV_VAR: &str = "CSA_SEED";

#[derive(Parser)]
#[command(
    name = "csa",
    version,
    about = "Coded slotted ALOHA: density-evolution analysis and Monte Carlo throughput simulation"
)]
struct Cli {
    /// Flat key = value config file; flags override its entries.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Worker threads for Monte Carlo (default: all cores). Results do not
    /// depend on this.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate IC convergence thresholds G* for (n,k) codes by bisection.
    Threshold(ThresholdArgs),
    /// Sweep throughput over an offered-load grid, simulated or asymptotic.
    Sweep(SweepArgs),
    /// Record the density-evolution iteration (i, p_i, q_i) at one load.
    #[command(name = "de-trace")]
    DeTrace(DeTraceArgs),
    /// Print the single-parity-check threshold bound 1/(k+1).
    Bound(BoundArgs),
    /// Print the average power penalty 10 log10(n/k) in dB.
    Penalty(PenaltyArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write here instead of stdout (for --fig4: a directory).
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, value_name = "FMT")]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
struct ThresholdArgs {
    /// (n,k) pairs such as 4,2. May instead come from --fig3 or the
    /// config key `codes`.
    #[arg(value_name = "N,K")]
    codes: Vec<String>,

    /// Analyze the stock comparison set (2,1) (4,2) (6,4) (7,4).
    #[arg(long, conflicts_with = "codes")]
    fig3: bool,

    /// Bisection bracket, lower end [default: 0.01].
    #[arg(long, value_name = "G")]
    bracket_lo: Option<f64>,

    /// Bisection bracket, upper end [default: 2.0].
    #[arg(long, value_name = "G")]
    bracket_hi: Option<f64>,

    /// Bracket width at which bisection stops [default: 1e-4].
    #[arg(long, value_name = "TOL")]
    tol: Option<f64>,

    /// Density-evolution iteration cap per probe [default: 5000].
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,

    /// Convergence target for p [default: 1e-10].
    #[arg(long, value_name = "EPS")]
    epsilon: Option<f64>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Scheme to evaluate.
    #[arg(long, value_enum)]
    protocol: Option<ProtocolArg>,

    /// (n,k) code for thma/csa, e.g. 7,4.
    #[arg(long, value_name = "N,K")]
    code: Option<String>,

    /// Equivalent slot count per simulated frame.
    #[arg(long, value_name = "N")]
    n_sa: Option<usize>,

    /// Evaluate the infinite-frame limit instead of simulating.
    #[arg(long)]
    asymptotic: bool,

    /// Load grid: comma list `0.1,0.2,0.4` or range `start:stop:step`.
    #[arg(long, value_name = "GRID")]
    g_grid: Option<String>,

    /// Simulated frames per grid point [default: 1000].
    #[arg(long, value_name = "N")]
    frames: Option<usize>,

    /// Cancellation sweep budget per frame [default: 20].
    #[arg(long, value_name = "N")]
    i_max: Option<usize>,

    /// Master seed [default: $CSA_SEED, else 1].
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    /// Emit the stock nine-curve comparison (sa, thma, csa(7,4), each at
    /// n_sa 100, 400, and asymptotic) as one file per curve under
    /// --output (default directory: fig4).
    #[arg(
        long,
        conflicts_with_all = ["protocol", "code", "n_sa", "asymptotic", "g_grid"]
    )]
    fig4: bool,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DeTraceArgs {
    /// (n,k) code, e.g. 4,2.
    #[arg(long, value_name = "N,K")]
    code: Option<String>,

    /// Offered load to trace at.
    #[arg(long, value_name = "G")]
    g: Option<f64>,

    /// Iteration cap [default: 5000].
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,

    /// Convergence target for p [default: 1e-10].
    #[arg(long, value_name = "EPS")]
    epsilon: Option<f64>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BoundArgs {
    /// Data-unit counts k to bound, each at least 1.
    #[arg(value_name = "K", required = true)]
    ks: Vec<u32>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct PenaltyArgs {
    /// (n,k) pairs such as 4,2; n = k is allowed and costs 0 dB.
    #[arg(value_name = "N,K", required = true)]
    codes: Vec<String>,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProtocolArg {
    Sa,
    Thma,
    Csa,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

type CmdResult<T> = Result<T, Failure>;

impl From<csa::Error> for Failure {
    fn from(e: csa::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CmdResult<()> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let jobs = match cli.jobs {
        Some(j) => Some(j),
        None => cfg.get_parsed::<usize>("jobs")?,
    };
    let command = cli.command;
    let work = move || dispatch(command, &cfg);
    match jobs {
        None => work(),
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::Runtime(format!("cannot build thread pool: {e}")))?
            .install(work),
    }
}

fn dispatch(command: Command, cfg: &FileConfig) -> CmdResult<()> {
    match command {
        Command::Threshold(args) => cmd_threshold(args, cfg),
        Command::Sweep(args) => cmd_sweep(args, cfg),
        Command::DeTrace(args) => cmd_de_trace(args, cfg),
        Command::Bound(args) => cmd_bound(args, cfg),
        Command::Penalty(args) => cmd_penalty(args, cfg),
    }
}

// ---------------------------------------------------------------- threshold

fn cmd_threshold(args: ThresholdArgs, cfg: &FileConfig) -> CmdResult<()> {
    let codes: Vec<CodeParams> = if args.fig3 {
        [(2, 1), (4, 2), (6, 4), (7, 4)]
            .into_iter()
            .map(|(n, k)| CodeParams::new(n, k))
            .collect::<Result<_, _>>()?
    } else {
        let specs: Vec<String> = if !args.codes.is_empty() {
            args.codes.clone()
        } else {
            cfg.get_str("codes")
                .map(|s| {
                    s.split([' ', ';'])
                        .filter(|t| !t.is_empty())
                        .map(str::to_string)
                        .collect()
                })
                .unwrap_or_default()
        };
        if specs.is_empty() {
            return Err(usage(
                "at least one (n,k) pair is required: positional N,K arguments, \
                 --fig3, or the config key `codes`",
            ));
        }
        specs
            .iter()
            .map(|s| parse_code_pair(s).and_then(|(n, k)| CodeParams::new(n, k).map_err(Into::into)))
            .collect::<CmdResult<_>>()?
    };

    let bracket_lo = resolve(args.bracket_lo, cfg.get_parsed("bracket-lo")?, DEFAULT_BRACKET_LO);
    let bracket_hi = resolve(args.bracket_hi, cfg.get_parsed("bracket-hi")?, DEFAULT_BRACKET_HI);
    let tol = resolve(args.tol, cfg.get_parsed("tol")?, DEFAULT_TOL);
    let settings = DeSettings {
        max_iter: resolve(args.max_iter, cfg.get_parsed("max-iter")?, DeSettings::default().max_iter),
        epsilon: resolve(args.epsilon, cfg.get_parsed("epsilon")?, DeSettings::default().epsilon),
    };

    struct Row {
        code: CodeParams,
        g_star: f64,
    }
    let mut rows = Vec::with_capacity(codes.len());
    for code in codes {
        let r = de::threshold(code, bracket_lo, bracket_hi, tol, settings)?;
        rows.push(Row { code, g_star: r.g_star });
    }
    rows.sort_by(|a, b| {
        a.code
            .power_penalty_db()
            .total_cmp(&b.code.power_penalty_db())
            .then_with(|| (a.code.n(), a.code.k()).cmp(&(b.code.n(), b.code.k())))
    });

    let mut table = Table::new(&["n", "k", "rate", "delta_p_db", "g_star", "spc_bound"]);
    push_common_meta(&mut table, "threshold");
    table.push_meta(
        "codes",
        rows.iter()
            .map(|r| format!("{},{}", r.code.n(), r.code.k()))
            .collect::<Vec<_>>()
            .join(" "),
    );
    table.push_meta("bracket_lo", bracket_lo);
    table.push_meta("bracket_hi", bracket_hi);
    table.push_meta("tol", tol);
    table.push_meta("max_iter", settings.max_iter);
    table.push_meta("epsilon", settings.epsilon);
    for r in &rows {
        table.push_row(vec![
            Value::from(r.code.n()),
            Value::from(r.code.k()),
            Value::from(r.code.rate()),
            Value::from(r.code.power_penalty_db()),
            Value::from(r.g_star),
            if r.code.is_single_parity_check() {
                Value::from(de::spc_bound(r.code.k()))
            } else {
                Value::Null
            },
        ]);
    }
    write_table(&table, args.out.output.as_deref(), &args.out, cfg)
}

// -------------------------------------------------------------------- sweep

fn cmd_sweep(args: SweepArgs, cfg: &FileConfig) -> CmdResult<()> {
    let frames = resolve(args.frames, cfg.get_parsed("frames")?, DEFAULT_FRAMES);
    let i_max = resolve(args.i_max, cfg.get_parsed("i-max")?, DEFAULT_I_MAX);
    let seed = resolve_seed(args.seed, cfg)?;
    let format = resolve_format(&args.out, cfg)?;

    if args.fig4 {
        let dir = args
            .out
            .output
            .clone()
            .or_else(|| cfg.get_str("output").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("fig4"));
        return run_fig4(&dir, format, frames, i_max, seed);
    }

    let protocol_arg = match args.protocol {
        Some(p) => p,
        None => match cfg.get_str("protocol") {
            Some(s) => ProtocolArg::from_str(s, true)
                .map_err(|_| usage(format!("config key 'protocol': unknown value '{s}'")))?,
            None => return Err(usage("--protocol is required (sa, thma, or csa)")),
        },
    };
    let code_spec = args.code.clone().or_else(|| cfg.get_str("code").map(str::to_string));
    let protocol = match protocol_arg {
        ProtocolArg::Sa => {
            if code_spec.is_some() {
                return Err(usage("--code is not accepted for protocol sa"));
            }
            Protocol::Sa
        }
        ProtocolArg::Thma | ProtocolArg::Csa => {
            let spec = code_spec
                .ok_or_else(|| usage("--code N,K is required for coded protocols"))?;
            let (n, k) = parse_code_pair(&spec)?;
            let code = CodeParams::new(n, k)?;
            match protocol_arg {
                ProtocolArg::Thma => Protocol::Thma(code),
                _ => Protocol::Csa(code),
            }
        }
    };

    let asymptotic = args.asymptotic
        || matches!(cfg.get_str("asymptotic"), Some(s) if parse_bool(s, "asymptotic")?);
    let n_sa = match args.n_sa {
        Some(v) => Some(v),
        None => cfg.get_parsed::<usize>("n-sa")?,
    };
    let grid_spec = args
        .g_grid
        .clone()
        .or_else(|| cfg.get_str("g-grid").map(str::to_string))
        .ok_or_else(|| usage("--g-grid is required (comma list or start:stop:step)"))?;
    let grid = parse_grid(&grid_spec)?;

    let stats = match (asymptotic, n_sa) {
        (true, Some(_)) => {
            return Err(usage("--asymptotic and --n-sa are mutually exclusive"));
        }
        (false, None) => {
            return Err(usage("one of --n-sa or --asymptotic is required"));
        }
        (true, None) => mc::asymptotic_sweep(protocol, &grid, i_max)?,
        (false, Some(n_sa)) => mc::sweep(protocol, n_sa, &grid, frames, i_max, seed)?,
    };

    let mut table = report::sweep_table(&stats);
    push_common_meta(&mut table, "sweep");
    push_sweep_meta(&mut table, protocol, n_sa, &grid_spec, frames, i_max, seed, asymptotic);
    write_table(&table, args.out.output.as_deref(), &args.out, cfg)
}

#[allow(clippy::too_many_arguments)]
fn push_sweep_meta(
    table: &mut Table,
    protocol: Protocol,
    n_sa: Option<usize>,
    grid_spec: &str,
    frames: usize,
    i_max: usize,
    seed: u64,
    asymptotic: bool,
) {
    let (n, k) = protocol.splitting();
    table.push_meta("protocol", protocol.label());
    table.push_meta("n", n);
    table.push_meta("k", k);
    match n_sa {
        Some(v) => table.push_meta("n_sa", v),
        None => table.push_meta("n_sa", "inf"),
    }
    table.push_meta("g_grid", grid_spec);
    table.push_meta("frames", if asymptotic { 0 } else { frames });
    table.push_meta("i_max", i_max);
    table.push_meta("seed", if asymptotic { 0 } else { seed });
}

fn run_fig4(dir: &Path, format: Format, frames: usize, i_max: usize, seed: u64) -> CmdResult<()> {
    let code = CodeParams::new(7, 4).expect("(7,4) is valid");
    let grid = parse_grid("0.05:1.4:0.05").expect("preset grid is valid");
    let grid_spec = "0.05:1.4:0.05";
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let protocols = [Protocol::Sa, Protocol::Thma(code), Protocol::Csa(code)];
    let mut curve = 0u64;
    for protocol in protocols {
        for n_sa in [Some(100), Some(400), None] {
            let curve_seed = substream(seed, curve);
            curve += 1;
            let (stats, asymptotic) = match n_sa {
                Some(v) => (mc::sweep(protocol, v, &grid, frames, i_max, curve_seed)?, false),
                None => (mc::asymptotic_sweep(protocol, &grid, i_max)?, true),
            };
            let mut table = report::sweep_table(&stats);
            push_common_meta(&mut table, "sweep");
            table.push_meta("preset", "fig4");
            push_sweep_meta(
                &mut table,
                protocol,
                n_sa,
                grid_spec,
                frames,
                i_max,
                curve_seed,
                asymptotic,
            );
            let suffix = match n_sa {
                Some(v) => format!("nsa{v}"),
                None => "asymptotic".to_string(),
            };
            let path = dir.join(format!(
                "{}_{}.{}",
                protocol.label(),
                suffix,
                format.extension()
            ));
            write_to_path(&table, &path, format)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- de-trace

fn cmd_de_trace(args: DeTraceArgs, cfg: &FileConfig) -> CmdResult<()> {
    let spec = args
        .code
        .clone()
        .or_else(|| cfg.get_str("code").map(str::to_string))
        .ok_or_else(|| usage("--code N,K is required"))?;
    let (n, k) = parse_code_pair(&spec)?;
    let code = CodeParams::new(n, k)?;
    let g = match args.g {
        Some(g) => g,
        None => cfg
            .get_parsed::<f64>("g")?
            .ok_or_else(|| usage("--g is required"))?,
    };
    let settings = DeSettings {
        max_iter: resolve(args.max_iter, cfg.get_parsed("max-iter")?, DeSettings::default().max_iter),
        epsilon: resolve(args.epsilon, cfg.get_parsed("epsilon")?, DeSettings::default().epsilon),
    };
    let trace = de::de_run(g, code, settings)?;

    let mut table = Table::new(&["i", "p", "q"]);
    push_common_meta(&mut table, "de-trace");
    table.push_meta("n", code.n());
    table.push_meta("k", code.k());
    table.push_meta("g", g);
    table.push_meta("max_iter", settings.max_iter);
    table.push_meta("epsilon", settings.epsilon);
    table.push_meta("converged", trace.converged);
    table.push_meta("iterations_used", trace.iterations_used);
    table.push_meta("final_p", trace.final_p);
    for (i, step) in trace.steps.iter().enumerate() {
        table.push_row(vec![
            Value::from(i as u64),
            Value::from(step.p),
            Value::from(step.q),
        ]);
    }
    write_table(&table, args.out.output.as_deref(), &args.out, cfg)
}

// ------------------------------------------------------------ bound/penalty

fn cmd_bound(args: BoundArgs, cfg: &FileConfig) -> CmdResult<()> {
    let mut table = Table::new(&["k", "spc_bound"]);
    push_common_meta(&mut table, "bound");
    for &k in &args.ks {
        if k < 1 {
            return Err(usage("k must be at least 1"));
        }
        table.push_row(vec![Value::from(k), Value::from(de::spc_bound(k))]);
    }
    write_table(&table, args.out.output.as_deref(), &args.out, cfg)
}

fn cmd_penalty(args: PenaltyArgs, cfg: &FileConfig) -> CmdResult<()> {
    let mut table = Table::new(&["n", "k", "rate", "delta_p_db"]);
    push_common_meta(&mut table, "penalty");
    for spec in &args.codes {
        let (n, k) = parse_code_pair(spec)?;
        if k < 1 || n < k {
            return Err(usage(format!(
                "invalid pair ({n},{k}): need n >= k >= 1"
            )));
        }
        table.push_row(vec![
            Value::from(n),
            Value::from(k),
            Value::from(f64::from(k) / f64::from(n)),
            Value::from(power_penalty_db(n, k)),
        ]);
    }
    write_table(&table, args.out.output.as_deref(), &args.out, cfg)
}

// ------------------------------------------------------------------ helpers

fn push_common_meta(table: &mut Table, command: &str) {
    table.push_meta("command", command);
    table.push_meta("version", env!("CARGO_PKG_VERSION"));
}

fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn resolve_seed(flag: Option<u64>, cfg: &FileConfig) -> CmdResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Some(s) = cfg.get_parsed::<u64>("seed")? {
        return Ok(s);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| usage(format!("{SEED_ENV_VAR}: invalid seed '{v}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn resolve_format(out: &OutputArgs, cfg: &FileConfig) -> CmdResult<Format> {
    if let Some(f) = out.format {
        return Ok(f);
    }
    match cfg.get_str("format") {
        Some(s) => {
            Format::from_str(s, true).map_err(|_| usage(format!("config key 'format': unknown value '{s}'")))
        }
        None => Ok(Format::Csv),
    }
}

fn parse_code_pair(s: &str) -> CmdResult<(u32, u32)> {
    let (n, k) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("invalid code pair '{s}': expected N,K")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| usage(format!("invalid code pair '{s}': expected N,K")))
    };
    Ok((parse(n)?, parse(k)?))
}

fn parse_bool(s: &str, key: &str) -> CmdResult<bool> {
    match s {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(usage(format!("config key '{key}': expected true or false, got '{s}'"))),
    }
}

/// Accepts `a,b,c` or `start:stop:step` (endpoints included, step > 0).
/// Values are rounded to 10 decimals so range arithmetic prints cleanly.
fn parse_grid(spec: &str) -> CmdResult<Vec<f64>> {
    let parse_f = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("invalid load grid '{spec}': bad number '{t}'")))
    };
    let grid: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(usage(format!(
                "invalid load grid '{spec}': expected start:stop:step"
            )));
        }
        let (start, stop, step) = (parse_f(parts[0])?, parse_f(parts[1])?, parse_f(parts[2])?);
        if !(step > 0.0 && stop >= start) {
            return Err(usage(format!(
                "invalid load grid '{spec}': need step > 0 and stop >= start"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| round10(start + i as f64 * step))
            .collect()
    } else {
        spec.split(',')
            .map(parse_f)
            .collect::<CmdResult<Vec<f64>>>()?
    };
    if grid.is_empty() {
        return Err(usage("load grid is empty"));
    }
    for &g in &grid {
        if !(g.is_finite() && g >= 0.0) {
            return Err(usage(format!(
                "load grid contains {g}; every load must be finite and >= 0"
            )));
        }
    }
    Ok(grid)
}

fn round10(x: f64) -> f64 {
    (x * 1e10).round() / 1e10
}

fn write_table(
    table: &Table,
    path_flag: Option<&Path>,
    out: &OutputArgs,
    cfg: &FileConfig,
) -> CmdResult<()> {
    let format = resolve_format(out, cfg)?;
    let path = path_flag
        .map(Path::to_path_buf)
        .or_else(|| cfg.get_str("output").map(PathBuf::from));
    match path {
        Some(p) => {
            write_to_path(table, &p, format)?;
            println!("wrote {}", p.display());
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(table, &mut lock, format)
                .map_err(|e| Failure::Runtime(format!("cannot write to stdout: {e}")))
        }
    }
}

fn write_to_path(table: &Table, path: &Path, format: Format) -> CmdResult<()> {
    let mut file = fs::File::create(path)
        .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", path.display())))?;
    emit(table, &mut file, format)
        .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn emit(table: &Table, w: &mut dyn Write, format: Format) -> io::Result<()> {
    match format {
        Format::Csv => table.write_csv(w),
        Format::Json => table.write_json(w),
    }
}

// ------------------------------------------------------------- config file

#[derive(Default)]
struct FileConfig {
    map: HashMap<String, String>,
}

impl FileConfig {
    fn load(path: &Path) -> CmdResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                usage(format!(
                    "config {} line {}: expected key = value",
                    path.display(),
                    lineno + 1
                ))
            })?;
            map.insert(key.trim().to_lowercase(), value.trim().to_string());
        }
        Ok(FileConfig { map })
    }

    fn get_str(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> CmdResult<Option<T>> {
        match self.map.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse::<T>()
                .map(Some)
                .map_err(|_| usage(format!("config key '{key}': invalid value '{s}'"))),
        }
    }
}

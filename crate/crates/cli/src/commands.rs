//! Subcommand drivers: argument shapes, grid expansion, parallel execution,
//! and row assembly.
//!
//! Every driver follows the same discipline: validate the request up front
//! (usage errors), expand it into independent grid tasks, map the tasks
//! over a work pool, then emit rows in sorted input order. Numeric failures
//! name the grid point that produced them.

use std::path::PathBuf;
use std::time::Instant;

use boundent::chain::{t_eo_threshold, ChainParams};
use boundent::gaussian::{
    even_odd_partition, half_half_partition, threshold_temperature, NegativityEngine, Partition,
    Temperature,
};
use boundent::macrobound::{hh_macro_bound_curve, NormBoundParams};
use boundent::spin::{
    negativity, thermal_state_sectored, Boundary, SpinChainModel, SpinPartition, NEGATIVITY_FLOOR,
};
use clap::Args;
use rayon::prelude::*;

use crate::table::{write_rows, Field, Format, Row};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Temperature bracket used by threshold searches; thresholds of stable
/// chains with `c < 1/2` all fall well inside it.
const THRESHOLD_BRACKET: (f64, f64) = (0.005, 2.0);

/// A failed run, tagged with the exit code it should produce.
#[derive(Debug)]
pub enum CliError {
    /// Bad request: exit code 2.
    Usage(String),
    /// A grid point failed numerically: exit code 1.
    Numeric(String),
}

type CmdResult = Result<(), CliError>;

// ---------------------------------------------------------------------
// shared argument blocks and grid helpers

/// Output and execution flags common to all subcommands.
#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: BOUNDENT_THREADS, then all cores)
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
}

impl OutputArgs {
    fn thread_count(&self) -> Result<usize, CliError> {
        if let Some(k) = self.threads {
            return Ok(k);
        }
        match std::env::var("BOUNDENT_THREADS") {
            Ok(raw) => raw.parse().map_err(|_| {
                CliError::Usage(format!(
                    "BOUNDENT_THREADS must be a nonnegative integer, got {raw:?}"
                ))
            }),
            Err(_) => Ok(0), // let the pool size itself
        }
    }

    fn emit(&self, rows: Vec<Row>) -> CmdResult {
        write_rows(&rows, self.format, self.out.as_deref())
            .map_err(|e| CliError::Numeric(format!("writing output: {e}")))
    }
}

/// Parses `LO:HI:STEP` into an ascending inclusive grid.
fn parse_range(spec: &str, name: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = |msg: String| CliError::Usage(format!("--{name}-range {spec:?}: {msg}"));
    if parts.len() != 3 {
        return Err(usage("expected LO:HI:STEP".into()));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(e.to_string()))?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0 && step.is_finite()) {
        return Err(usage(format!("step must be positive, got {step}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(usage(format!("needs LO <= HI, got {lo} > {hi}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| lo + step * i as f64).collect())
}

/// Resolves the `--x` / `--x-range` pair into a nonempty ascending axis.
fn axis(single: Option<f64>, range: Option<&str>, name: &str) -> Result<Vec<f64>, CliError> {
    match (single, range) {
        (Some(v), None) => Ok(vec![v]),
        (None, Some(spec)) => parse_range(spec, name),
        (None, None) => Err(CliError::Usage(format!(
            "one of --{name} or --{name}-range is required"
        ))),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with enforces exclusivity"),
    }
}

/// Sorted, deduplicated copy of a numeric list.
fn sorted_sizes(ns: &[usize]) -> Vec<usize> {
    let mut out = ns.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

fn validate_coupling(c: f64, allow_zero: bool) -> Result<(), CliError> {
    let lo_ok = if allow_zero { c >= 0.0 } else { c > 0.0 };
    if !(lo_ok && c < 0.5) {
        let lo = if allow_zero { "0 <= c" } else { "0 < c" };
        return Err(CliError::Usage(format!(
            "coupling must satisfy {lo} < 0.5, got {c}"
        )));
    }
    Ok(())
}

fn validate_tol(tol: f64) -> Result<(), CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Maps independent tasks over a work pool of the requested width, then
/// concatenates their rows in task order. The first failing task (in task
/// order) aborts the run.
fn run_parallel<T, F>(threads: usize, tasks: &[T], f: F) -> Result<Vec<Row>, CliError>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Row>, String> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Numeric(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<Row>, String>> =
        pool.install(|| tasks.par_iter().map(&f).collect());
    let mut rows = Vec::new();
    for result in results {
        rows.extend(result.map_err(CliError::Numeric)?);
    }
    Ok(rows)
}

// ---------------------------------------------------------------------
// partition choices

/// Parses a `±` pattern like `+--+` into signs.
fn parse_sign_string(pattern: &str) -> Result<Vec<i8>, String> {
    if pattern.is_empty() {
        return Err("empty sign pattern".into());
    }
    pattern
        .chars()
        .map(|ch| match ch {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(format!("sign pattern may only contain + and -, got {other:?}")),
        })
        .collect()
}

/// An oscillator-side partition choice, label preserved for echoing.
#[derive(Clone, Debug)]
struct OscPartitionSpec {
    label: String,
    kind: OscPartitionKind,
}

#[derive(Clone, Debug)]
enum OscPartitionKind {
    EvenOdd,
    HalfHalf,
    Custom(Vec<i8>),
}

fn parse_osc_partition(raw: &str) -> Result<OscPartitionSpec, CliError> {
    let kind = match raw {
        "even-odd" => OscPartitionKind::EvenOdd,
        "half-half" => OscPartitionKind::HalfHalf,
        other => match other.strip_prefix("custom:") {
            Some(pattern) => OscPartitionKind::Custom(
                parse_sign_string(pattern)
                    .map_err(|e| CliError::Usage(format!("--partition {raw:?}: {e}")))?,
            ),
            None => {
                return Err(CliError::Usage(format!(
                    "--partition must be even-odd, half-half, or custom:<+- pattern>, got {raw:?}"
                )))
            }
        },
    };
    Ok(OscPartitionSpec {
        label: raw.to_string(),
        kind,
    })
}

impl OscPartitionSpec {
    fn build(&self, n: usize) -> Result<Partition, String> {
        match &self.kind {
            OscPartitionKind::EvenOdd => even_odd_partition(n).map_err(|e| e.to_string()),
            OscPartitionKind::HalfHalf => half_half_partition(n, 0).map_err(|e| e.to_string()),
            OscPartitionKind::Custom(signs) => {
                if signs.len() != n {
                    return Err(format!(
                        "custom partition has {} sites but n = {n}",
                        signs.len()
                    ));
                }
                Partition::new(signs.clone()).map_err(|e| e.to_string())
            }
        }
    }
}

/// Parses, sorts by label, and pre-validates partitions against every `n`.
fn osc_partitions(raw: &[String], ns: &[usize]) -> Result<Vec<OscPartitionSpec>, CliError> {
    let mut specs: Vec<OscPartitionSpec> = raw
        .iter()
        .map(|s| parse_osc_partition(s))
        .collect::<Result<_, _>>()?;
    specs.sort_by(|a, b| a.label.cmp(&b.label));
    specs.dedup_by(|a, b| a.label == b.label);
    for spec in &specs {
        for &n in ns {
            spec.build(n).map_err(|e| {
                CliError::Usage(format!("--partition {:?} with --n {n}: {e}", spec.label))
            })?;
        }
    }
    Ok(specs)
}

/// A spin-side partition choice.
#[derive(Clone, Debug)]
struct SpinPartitionSpec {
    label: String,
    kind: OscPartitionKind, // same three shapes; signs select transposed sites
}

fn parse_spin_partition(raw: &str) -> Result<SpinPartitionSpec, CliError> {
    let osc = parse_osc_partition(raw)?;
    Ok(SpinPartitionSpec {
        label: osc.label,
        kind: osc.kind,
    })
}

impl SpinPartitionSpec {
    fn build(&self, n: usize) -> Result<SpinPartition, String> {
        let partition = match &self.kind {
            OscPartitionKind::EvenOdd => SpinPartition::EvenOdd,
            OscPartitionKind::HalfHalf => SpinPartition::HalfHalf,
            OscPartitionKind::Custom(signs) => {
                if signs.len() != n {
                    return Err(format!(
                        "custom partition has {} sites but n = {n}",
                        signs.len()
                    ));
                }
                let sites: Vec<usize> = signs
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s > 0)
                    .map(|(i, _)| i)
                    .collect();
                SpinPartition::Custom(sites)
            }
        };
        // Surface subset-construction problems (odd n, improper subsets) now.
        partition.subset(n).map_err(|e| e.to_string())?;
        Ok(partition)
    }
}

fn spin_partitions(raw: &[String], ns: &[usize]) -> Result<Vec<SpinPartitionSpec>, CliError> {
    let mut specs: Vec<SpinPartitionSpec> = raw
        .iter()
        .map(|s| parse_spin_partition(s))
        .collect::<Result<_, _>>()?;
    specs.sort_by(|a, b| a.label.cmp(&b.label));
    specs.dedup_by(|a, b| a.label == b.label);
    for spec in &specs {
        for &n in ns {
            spec.build(n).map_err(|e| {
                CliError::Usage(format!("--partition {:?} with --n {n}: {e}", spec.label))
            })?;
        }
    }
    Ok(specs)
}

fn temperature(value: f64) -> Result<Temperature, String> {
    Temperature::new(value).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------
// logneg

/// Log-negativity over a (n, c, T, partition) grid.
#[derive(Args, Debug)]
pub struct LognegArgs {
    /// Chain size; repeat for several sizes
    #[arg(long = "n", value_name = "N", required = true)]
    pub n: Vec<usize>,
    /// Coupling strength (0 <= c < 0.5)
    #[arg(long, conflicts_with = "c_range")]
    pub c: Option<f64>,
    /// Coupling grid
    #[arg(long = "c-range", value_name = "LO:HI:STEP")]
    pub c_range: Option<String>,
    /// Temperature (T >= 0)
    #[arg(long = "T", conflicts_with = "t_range")]
    pub t: Option<f64>,
    /// Temperature grid
    #[arg(long = "T-range", value_name = "LO:HI:STEP")]
    pub t_range: Option<String>,
    /// Bipartition: even-odd | half-half | custom:<+- pattern>; repeatable
    #[arg(long = "partition", default_values_t = [String::from("even-odd")])]
    pub partition: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn cmd_logneg(args: &LognegArgs) -> CmdResult {
    let ns = sorted_sizes(&args.n);
    let cs = axis(args.c, args.c_range.as_deref(), "c")?;
    for &c in &cs {
        validate_coupling(c, true)?;
    }
    let ts = axis(args.t, args.t_range.as_deref(), "T")?;
    for &t in &ts {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!(
                "temperature must be nonnegative, got {t}"
            )));
        }
    }
    let partitions = osc_partitions(&args.partition, &ns)?;

    let mut tasks = Vec::new();
    for &n in &ns {
        for &c in &cs {
            for spec in &partitions {
                tasks.push((n, c, spec.clone()));
            }
        }
    }
    let rows = run_parallel(args.output.thread_count()?, &tasks, |(n, c, spec)| {
        let point = |t: f64| format!("n={n} c={c} partition={} T={t}", spec.label);
        let model = ChainParams::new(*n, *c)
            .and_then(|p| p.model())
            .map_err(|e| format!("{}: {e}", point(ts[0])))?;
        let partition = spec.build(*n)?;
        let engine =
            NegativityEngine::new(&model, &partition).map_err(|e| format!("{}: {e}", point(ts[0])))?;
        let mut rows = Vec::with_capacity(ts.len());
        for &t in &ts {
            let clock = Instant::now();
            let temp = temperature(t).map_err(|e| format!("{}: {e}", point(t)))?;
            let e_n = engine
                .log_negativity(temp)
                .map_err(|e| format!("{}: {e}", point(t)))?;
            let ppt = engine
                .is_ppt(temp)
                .map_err(|e| format!("{}: {e}", point(t)))?;
            rows.push(vec![
                ("n", Field::Count(*n as u64)),
                ("c", Field::Real(*c)),
                ("T", Field::Real(t)),
                ("partition", Field::Text(spec.label.clone())),
                ("e_n", Field::Real(e_n)),
                ("ppt", Field::Flag(ppt)),
                ("version", Field::Text(VERSION.into())),
                ("elapsed_ms", Field::Count(clock.elapsed().as_millis() as u64)),
            ]);
        }
        Ok(rows)
    })?;
    args.output.emit(rows)
}

// ---------------------------------------------------------------------
// threshold

/// Threshold temperature where a partition's negativity dies.
#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Chain size; repeat for several sizes
    #[arg(long = "n", value_name = "N", required = true)]
    pub n: Vec<usize>,
    /// Coupling strength (0 < c < 0.5)
    #[arg(long, conflicts_with = "c_range")]
    pub c: Option<f64>,
    /// Coupling grid
    #[arg(long = "c-range", value_name = "LO:HI:STEP")]
    pub c_range: Option<String>,
    /// Bipartition: even-odd | half-half | custom:<+- pattern>; repeatable
    #[arg(long = "partition", default_values_t = [String::from("even-odd")])]
    pub partition: Vec<String>,
    /// Bisection tolerance on the threshold temperature
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn cmd_threshold(args: &ThresholdArgs) -> CmdResult {
    let ns = sorted_sizes(&args.n);
    let cs = axis(args.c, args.c_range.as_deref(), "c")?;
    for &c in &cs {
        validate_coupling(c, false)?;
    }
    validate_tol(args.tol)?;
    let partitions = osc_partitions(&args.partition, &ns)?;

    let mut tasks = Vec::new();
    for &n in &ns {
        for &c in &cs {
            for spec in &partitions {
                tasks.push((n, c, spec.clone()));
            }
        }
    }
    let tol = args.tol;
    let rows = run_parallel(args.output.thread_count()?, &tasks, |(n, c, spec)| {
        let point = format!("n={n} c={c} partition={}", spec.label);
        let clock = Instant::now();
        let model = ChainParams::new(*n, *c)
            .and_then(|p| p.model())
            .map_err(|e| format!("{point}: {e}"))?;
        let partition = spec.build(*n)?;
        let found = threshold_temperature(
            &model,
            &partition,
            THRESHOLD_BRACKET.0,
            THRESHOLD_BRACKET.1,
            tol,
        )
        .map_err(|e| format!("{point}: {e}"))?;
        Ok(vec![vec![
            ("n", Field::Count(*n as u64)),
            ("c", Field::Real(*c)),
            ("partition", Field::Text(spec.label.clone())),
            ("tol", Field::Real(tol)),
            ("threshold_T", Field::Real(found.value())),
            ("version", Field::Text(VERSION.into())),
            ("elapsed_ms", Field::Count(clock.elapsed().as_millis() as u64)),
        ]])
    })?;
    args.output.emit(rows)
}

// ---------------------------------------------------------------------
// phase-diagram

/// Per-coupling phase boundaries: numeric half-half threshold, macroscopic
/// certificate curve, and the even-odd root.
#[derive(Args, Debug)]
pub struct PhaseDiagramArgs {
    /// Coupling grid
    #[arg(long = "c-range", value_name = "LO:HI:STEP", default_value = "0.05:0.45:0.05", conflicts_with = "c")]
    pub c_range: String,
    /// Single coupling instead of the grid
    #[arg(long)]
    pub c: Option<f64>,
    /// Ring size for the numeric half-half threshold
    #[arg(long = "n", value_name = "N", default_value_t = 512)]
    pub n: usize,
    /// Fourier truncation order of the certificate
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    /// Tail decay order of the certificate
    #[arg(long, default_value_t = 3)]
    pub s: u32,
    /// Bisection tolerance for both temperature searches
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn cmd_phase_diagram(args: &PhaseDiagramArgs) -> CmdResult {
    let cs = match args.c {
        Some(c) => vec![c],
        None => parse_range(&args.c_range, "c")?,
    };
    for &c in &cs {
        validate_coupling(c, false)?;
    }
    if args.n < 4 || args.n % 2 != 0 {
        return Err(CliError::Usage(format!(
            "--n must be an even ring size of at least 4, got {}",
            args.n
        )));
    }
    validate_tol(args.tol)?;
    let params = NormBoundParams::new(args.m, args.s)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let (n, tol) = (args.n, args.tol);
    let rows = run_parallel(args.output.thread_count()?, &cs, |&c| {
        let point = format!("c={c}");
        let clock = Instant::now();
        let eo = t_eo_threshold(c, 1e-10).map_err(|e| format!("{point}: {e}"))?;
        let curve = hh_macro_bound_curve(c, &params, tol).map_err(|e| format!("{point}: {e}"))?;
        let model = ChainParams::new(n, c)
            .and_then(|p| p.model())
            .map_err(|e| format!("{point}: {e}"))?;
        let partition = half_half_partition(n, 0).map_err(|e| format!("{point}: {e}"))?;
        let hh = threshold_temperature(
            &model,
            &partition,
            THRESHOLD_BRACKET.0,
            THRESHOLD_BRACKET.1,
            tol,
        )
        .map_err(|e| format!("{point}: {e}"))?;
        Ok(vec![vec![
            ("c", Field::Real(c)),
            ("n", Field::Count(n as u64)),
            ("m", Field::Count(params.m() as u64)),
            ("s", Field::Count(params.s() as u64)),
            ("T_hh", Field::Real(hh.value())),
            ("T_macro_bound", Field::Real(curve.temperature.value())),
            ("T_eo", Field::Real(eo.value())),
            ("version", Field::Text(VERSION.into())),
            ("elapsed_ms", Field::Count(clock.elapsed().as_millis() as u64)),
        ]])
    })?;
    args.output.emit(rows)
}

// ---------------------------------------------------------------------
// macro-bound

/// Macroscopic certificate bound curve over couplings.
#[derive(Args, Debug)]
pub struct MacroBoundArgs {
    /// Coupling strength (0 < c < 0.5)
    #[arg(long, conflicts_with = "c_range")]
    pub c: Option<f64>,
    /// Coupling grid
    #[arg(long = "c-range", value_name = "LO:HI:STEP")]
    pub c_range: Option<String>,
    /// Fourier truncation order
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    /// Tail decay order
    #[arg(long, default_value_t = 3)]
    pub s: u32,
    /// Bisection tolerance on the bound temperature
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn cmd_macro_bound(args: &MacroBoundArgs) -> CmdResult {
    let cs = axis(args.c, args.c_range.as_deref(), "c")?;
    for &c in &cs {
        validate_coupling(c, false)?;
    }
    validate_tol(args.tol)?;
    let params = NormBoundParams::new(args.m, args.s)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let tol = args.tol;
    let rows = run_parallel(args.output.thread_count()?, &cs, |&c| {
        let clock = Instant::now();
        let curve = hh_macro_bound_curve(c, &params, tol).map_err(|e| format!("c={c}: {e}"))?;
        Ok(vec![vec![
            ("c", Field::Real(c)),
            ("m", Field::Count(params.m() as u64)),
            ("s", Field::Count(params.s() as u64)),
            ("T_bound", Field::Real(curve.temperature.value())),
            ("certificate_monotone", Field::Flag(curve.certificate_monotone)),
            ("version", Field::Text(VERSION.into())),
            ("elapsed_ms", Field::Count(clock.elapsed().as_millis() as u64)),
        ]])
    })?;
    args.output.emit(rows)
}

// ---------------------------------------------------------------------
// spin

/// Boundary flag mirroring the library's chain terminations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BoundaryArg {
    Periodic,
    Open,
}

impl From<BoundaryArg> for Boundary {
    fn from(arg: BoundaryArg) -> Boundary {
        match arg {
            BoundaryArg::Periodic => Boundary::Periodic,
            BoundaryArg::Open => Boundary::Open,
        }
    }
}

/// Thermal XX spin-chain negativities over a (n, T, partition) grid.
#[derive(Args, Debug)]
pub struct SpinArgs {
    /// Sites in the chain (2..=12); repeat for several sizes
    #[arg(long = "n", value_name = "N", default_values_t = [4usize, 6, 8])]
    pub n: Vec<usize>,
    /// Transverse field strength
    #[arg(long = "B", default_value_t = 1.9)]
    pub b: f64,
    /// Temperature (T > 0)
    #[arg(long = "T", conflicts_with = "t_range")]
    pub t: Option<f64>,
    /// Temperature grid
    #[arg(long = "T-range", value_name = "LO:HI:STEP")]
    pub t_range: Option<String>,
    /// Bipartition: even-odd | half-half | custom:<+- pattern>; repeatable
    #[arg(
        long = "partition",
        default_values_t = [String::from("even-odd"), String::from("half-half")]
    )]
    pub partition: Vec<String>,
    /// Chain termination
    #[arg(long, value_enum, default_value_t = BoundaryArg::Periodic)]
    pub boundary: BoundaryArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn cmd_spin(args: &SpinArgs) -> CmdResult {
    let ns = sorted_sizes(&args.n);
    let boundary = Boundary::from(args.boundary);
    for &n in &ns {
        SpinChainModel::new(n, args.b, boundary).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let ts = axis(args.t, args.t_range.as_deref(), "T")?;
    for &t in &ts {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!(
                "spin thermal states need T > 0, got {t}"
            )));
        }
    }
    let partitions = spin_partitions(&args.partition, &ns)?;

    let mut tasks = Vec::new();
    for &n in &ns {
        for &t in &ts {
            tasks.push((n, t));
        }
    }
    let b = args.b;
    let rows = run_parallel(args.output.thread_count()?, &tasks, |(n, t)| {
        let point = |label: &str| format!("n={n} B={b} T={t} partition={label}");
        let clock = Instant::now();
        let model = SpinChainModel::new(*n, b, boundary).map_err(|e| format!("{}: {e}", point("-")))?;
        let temp = temperature(*t).map_err(|e| format!("{}: {e}", point("-")))?;
        let rho =
            thermal_state_sectored(&model, temp).map_err(|e| format!("{}: {e}", point("-")))?;
        let mut rows = Vec::with_capacity(partitions.len());
        for spec in &partitions {
            let subset = spec
                .build(*n)
                .and_then(|p| p.subset(*n).map_err(|e| e.to_string()))?;
            let neg =
                negativity(&rho, &subset).map_err(|e| format!("{}: {e}", point(&spec.label)))?;
            rows.push(vec![
                ("n", Field::Count(*n as u64)),
                ("B", Field::Real(b)),
                ("T", Field::Real(*t)),
                ("boundary", Field::Text(boundary.label().into())),
                ("partition", Field::Text(spec.label.clone())),
                ("negativity", Field::Real(neg)),
                ("ppt", Field::Flag(neg <= NEGATIVITY_FLOOR)),
                ("version", Field::Text(VERSION.into())),
                ("elapsed_ms", Field::Count(clock.elapsed().as_millis() as u64)),
            ]);
        }
        Ok(rows)
    })?;
    args.output.emit(rows)
}

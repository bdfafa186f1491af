//! The `cbpp` command line.
//!
//! Exit codes: 0 on success, 1 when the domain check fails (invalid instance,
//! infeasible layout, failed solve), 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::alns::{self, SearchMode, SolverConfig};
use crate::benchgen::{self, BenchmarkSpec, BinSideTable, CopyMode, RadiusLaw};
use crate::error::Error;
use crate::gacoa::{Gacoa, QualityDirection};
use crate::io::{self, SolutionFile};
use crate::model::{validate, Instance, Layout};
use crate::render::{self, ComparisonRecord, RenderOptions};

#[derive(Debug, Parser)]
#[command(name = "cbpp", version, about = "Circle bin packing solver kit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a benchmark instance.
    Generate(GenerateArgs),
    /// Solve an instance and write the solution.
    Solve(SolveArgs),
    /// Check a solution file against every packing constraint.
    Validate(ValidateArgs),
    /// Draw a solution as SVG.
    Render(RenderArgs),
    /// Run several algorithms over a directory of instances.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LawArg {
    Linear,
    Sqrt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Fixed,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Gacoa,
    Lns,
    Alns,
}

impl Algorithm {
    fn label(&self) -> &'static str {
        match self {
            Algorithm::Gacoa => "gacoa",
            Algorithm::Lns => "lns",
            Algorithm::Alns => "alns",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    BorderHugging,
    AwayFromBorder,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    law: Option<LawArg>,
    #[arg(long)]
    n0: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    bin_side: Option<f64>,
    /// TOML table of bin sides per law and n0, used when --bin-side is absent.
    #[arg(long)]
    bin_sides: Option<PathBuf>,
    /// Benchmark spec as TOML or JSON; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, env = "CBPP_SEED")]
    seed: Option<u64>,
    #[arg(short = 'o', long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 2_000_000)]
    iters: u64,
    #[arg(long, default_value_t = 1.0)]
    temp: f64,
    #[arg(long, env = "CBPP_SEED", default_value_t = 0)]
    seed: u64,
    /// Absolute feasibility tolerance; defaults to 1e-9 times the bin side.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "border-hugging")]
    quality_direction: DirectionArg,
}

impl SearchArgs {
    fn config(&self, seed: u64) -> SolverConfig {
        SolverConfig {
            iterations: self.iters,
            initial_temperature: self.temp,
            seed,
            tolerance: self.tolerance,
            quality_direction: match self.quality_direction {
                DirectionArg::BorderHugging => QualityDirection::BorderHugging,
                DirectionArg::AwayFromBorder => QualityDirection::AwayFromBorder,
            },
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(short = 'i', long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "alns")]
    alg: Algorithm,
    #[command(flatten)]
    search: SearchArgs,
    /// Solution JSON; printed to stdout when absent.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Best-objective trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Search statistics as JSON.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(short = 'i', long)]
    input: PathBuf,
    /// Instance file, for solutions without an embedded instance.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(short = 'i', long)]
    input: PathBuf,
    #[arg(short = 'o', long)]
    output: PathBuf,
    #[arg(long, default_value_t = 10.0)]
    scale: f64,
    #[arg(long, default_value_t = 4)]
    bins_per_row: usize,
    #[arg(long)]
    no_labels: bool,
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "gacoa,alns")]
    algs: Vec<Algorithm>,
    #[command(flatten)]
    search: SearchArgs,
    /// Seeds for the stochastic algorithms; defaults to --seed.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Validate(a) => validate_cmd(a),
        Command::Render(a) => render_cmd(a),
        Command::Compare(a) => compare(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> CliResult {
    fs::write(path, contents).map_err(|e| Error::io(path, e).into())
}

fn generate(a: GenerateArgs) -> CliResult {
    let base = match &a.config {
        Some(path) => {
            Some(BenchmarkSpec::from_config_file(path).map_err(|e| Failure::Usage(e.to_string()))?)
        }
        None => None,
    };
    let law = match (a.law, &base) {
        (Some(LawArg::Linear), _) => RadiusLaw::Linear,
        (Some(LawArg::Sqrt), _) => RadiusLaw::Sqrt,
        (None, Some(b)) => b.law,
        (None, None) => return Err(Failure::Usage("--law is required".into())),
    };
    let mode = match (a.mode, &base) {
        (Some(ModeArg::Fixed), _) => CopyMode::Fixed,
        (Some(ModeArg::Random), _) => CopyMode::Random,
        (None, Some(b)) => b.mode,
        (None, None) => return Err(Failure::Usage("--mode is required".into())),
    };
    let n0 =
        a.n0.or(base.map(|b| b.n0))
            .ok_or_else(|| Failure::Usage("--n0 is required".into()))?;
    let bin_side = match (a.bin_side, &a.bin_sides, &base) {
        (Some(l), _, _) => l,
        (None, Some(table), _) => {
            let table =
                BinSideTable::from_file(table).map_err(|e| Failure::Usage(e.to_string()))?;
            table.lookup(law, n0).ok_or_else(|| {
                Failure::Usage(format!("no bin side for law {law}, n0 = {n0} in the table"))
            })?
        }
        (None, None, Some(b)) => b.bin_side,
        (None, None, None) => {
            return Err(Failure::Usage(
                "a bin side is required (--bin-side, --bin-sides or --config)".into(),
            ))
        }
    };
    let spec = BenchmarkSpec {
        n0,
        law,
        mode,
        bin_side,
        seed: a.seed.or(base.map(|b| b.seed)).unwrap_or(0),
    };
    let instance = benchgen::generate(&spec)?;
    io::write_instance(&instance, &a.output)?;
    println!(
        "{}: {} circles, bin side {}",
        spec.label(),
        instance.len(),
        bin_side
    );
    Ok(())
}

/// Runs one algorithm on `instance`, returning the best layout and, for the
/// searches, their statistics.
pub fn run_algorithm(
    instance: &Arc<Instance>,
    alg: Algorithm,
    config: &SolverConfig,
) -> Result<(Layout, Option<alns::SearchStats>, Duration), Error> {
    let started = Instant::now();
    let (layout, stats) = match alg {
        Algorithm::Gacoa => {
            config.check()?;
            let packer = Gacoa {
                tolerance: config.tolerance,
                direction: config.quality_direction,
            };
            (packer.solve(instance), None)
        }
        Algorithm::Lns => {
            let (l, s) = alns::solve(instance, config, SearchMode::Lns, &mut ())?;
            (l, Some(s))
        }
        Algorithm::Alns => {
            let (l, s) = alns::solve(instance, config, SearchMode::Alns, &mut ())?;
            (l, Some(s))
        }
    };
    Ok((layout, stats, started.elapsed()))
}

fn self_check(layout: &Layout, tolerance: Option<f64>) -> CliResult {
    let tol = tolerance.unwrap_or_else(|| layout.instance().default_tolerance());
    let report = validate(layout, tol);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "solver produced an infeasible layout:\n{report}"
        )))
    }
}

fn solve(a: SolveArgs) -> CliResult {
    let instance = Arc::new(io::read_instance(&a.input)?);
    let config = a.search.config(a.search.seed);
    config.check().map_err(|e| Failure::Usage(e.to_string()))?;
    let (layout, stats, _) = run_algorithm(&instance, a.alg, &config)?;
    self_check(&layout, config.tolerance)?;
    let solution = SolutionFile::from_layout(&layout);
    match &a.output {
        Some(path) => {
            write_file(path, solution.to_json())?;
            println!(
                "{}: bins_used={} objective={}",
                a.alg.label(),
                solution.bins_used,
                solution.objective
            );
        }
        None => print!("{}", solution.to_json()),
    }
    // The greedy packer has no search; its trace is the single start point.
    let stats = stats.unwrap_or_else(|| alns::SearchStats {
        iterations_run: 0,
        acceptances: 0,
        rejections: 0,
        improvements: 0,
        best_objective_trace: vec![alns::TracePoint {
            iteration: 0,
            objective: layout.objective(),
        }],
        wall_time: Duration::ZERO,
    });
    if let Some(path) = &a.trace {
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        stats.write_trace_csv(file)?;
    }
    if let Some(path) = &a.stats {
        write_file(path, stats.to_json()? + "\n")?;
    }
    Ok(())
}

fn load_layout(solution: &Path, instance: Option<&Path>) -> Result<Layout, Failure> {
    let file = io::read_solution(solution)?;
    let instance = match instance {
        Some(p) => Some(Arc::new(io::read_instance(p)?)),
        None => None,
    };
    Ok(file.to_layout(instance)?)
}

fn validate_cmd(a: ValidateArgs) -> CliResult {
    let layout = load_layout(&a.input, a.instance.as_deref())?;
    let tol = a
        .tolerance
        .unwrap_or_else(|| layout.instance().default_tolerance());
    let report = validate(&layout, tol);
    if report.is_ok() {
        println!("OK");
        Ok(())
    } else {
        println!("{report}");
        Err(Failure::Domain(format!(
            "{} violation(s)",
            report.violations.len()
        )))
    }
}

fn render_cmd(a: RenderArgs) -> CliResult {
    if !(a.scale > 0.0) || a.bins_per_row == 0 {
        return Err(Failure::Usage(
            "--scale and --bins-per-row must be positive".into(),
        ));
    }
    let layout = load_layout(&a.input, a.instance.as_deref())?;
    let options = RenderOptions {
        pixels_per_unit: a.scale,
        label_densities: !a.no_labels,
        bins_per_row: a.bins_per_row,
    };
    let svg = render::render_svg(&layout, &options)?;
    write_file(&a.output, svg)
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn compare(a: CompareArgs) -> CliResult {
    if a.algs.is_empty() {
        return Err(Failure::Usage(
            "--algs must name at least one algorithm".into(),
        ));
    }
    let seeds = if a.seeds.is_empty() {
        vec![a.search.seed]
    } else {
        a.seeds.clone()
    };
    a.search
        .config(0)
        .check()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let files = instance_files(&a.dir)?;
    let mut failed = false;
    let mut instances = Vec::new();
    for path in files {
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match io::read_instance(&path) {
            Ok(inst) => instances.push((label, Arc::new(inst))),
            Err(e) => {
                eprintln!("skipping {}: {e}", path.display());
                failed = true;
            }
        }
    }
    let mut jobs = Vec::new();
    for (label, inst) in &instances {
        for &alg in &a.algs {
            // The greedy packer is deterministic; one run covers every seed.
            let runs = if alg == Algorithm::Gacoa {
                &seeds[..1]
            } else {
                &seeds[..]
            };
            for &seed in runs {
                jobs.push((label.clone(), Arc::clone(inst), alg, seed));
            }
        }
    }
    let outcomes: Vec<Result<ComparisonRecord, String>> = jobs
        .par_iter()
        .map(|(label, inst, alg, seed)| {
            let config = a.search.config(*seed);
            let (layout, _, elapsed) =
                run_algorithm(inst, *alg, &config).map_err(|e| e.to_string())?;
            let tol = config.tolerance.unwrap_or_else(|| inst.default_tolerance());
            let report = validate(&layout, tol);
            if !report.is_ok() {
                return Err(format!(
                    "{label} {}: infeasible layout\n{report}",
                    alg.label()
                ));
            }
            let metrics = layout.metrics();
            Ok(ComparisonRecord {
                instance: label.clone(),
                algorithm: alg.label().to_string(),
                seed: (*alg != Algorithm::Gacoa).then_some(*seed),
                objective: metrics.objective,
                bins_used: metrics.bins_used,
                bin_densities: metrics.bin_densities,
                wall_time: elapsed,
            })
        })
        .collect();
    let mut records = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => records.push(r),
            Err(msg) => {
                eprintln!("{msg}");
                failed = true;
            }
        }
    }
    let csv = render::emit_comparison_csv(&records)?;
    match &a.output {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    let summary = render::summarize(&records);
    for (alg, mean) in &summary.mean_improvement {
        println!("mean f_{alg} - f_gacoa: {mean}");
    }
    for (inst, alg) in &summary.bin_reductions {
        println!("bin reduction: {inst} ({alg})");
    }
    if failed {
        Err(Failure::Domain("some runs failed".into()))
    } else {
        Ok(())
    }
}

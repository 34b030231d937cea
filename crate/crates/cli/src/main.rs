//! Command-line driver for the `subfrac` solver library.
//!
//! Five subcommands cover the study workflow: `temporal` and `spatial` run
//! the stochastic strong-convergence studies, `deterministic` runs the
//! noise-free check against the continuum reference, `sample-noise` writes
//! a single fractional Gaussian noise path, and `predict-rates` prints the
//! theoretical rate grid without running any solver. Results are CSV on
//! stdout or, with `--out`, in a file; non-monotone error ladders are
//! reported on stderr as warnings.

mod file_config;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use file_config::FileConfig;
use subfrac::{
    predicted_spatial_rate, predicted_temporal_rate, run_study, sample_trajectory, InitialData,
    NoiseSpec, StudyConfig, StudyKind,
};

/// Convergence studies for the stochastic time-fractional diffusion solver.
#[derive(Parser)]
#[command(name = "subfrac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strong temporal convergence study over a doubling ladder of time steps
    Temporal(TemporalArgs),
    /// Strong spatial convergence study over a doubling ladder of meshes
    Spatial(SpatialArgs),
    /// Noise-free convergence study against the continuum solution
    Deterministic(DeterministicArgs),
    /// Write one fractional Gaussian noise path as CSV
    SampleNoise(SampleNoiseArgs),
    /// Print predicted temporal and spatial rates for a parameter grid
    PredictRates(PredictRatesArgs),
}

/// Flags shared by the two stochastic studies.
#[derive(Args)]
struct StochasticArgs {
    /// Fractional orders alpha, comma separated, each in (0, 1)
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    alpha: Vec<f64>,

    /// Hurst indices, comma separated, each in [1/2, 1)
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    hurst: Vec<f64>,

    /// Noise spectral exponent, Lambda_k = k^m [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,

    /// Number of noise modes [default: 1000]
    #[arg(long = "K", value_name = "MODES")]
    k_modes: Option<usize>,

    /// Final time [default: 0.01]
    #[arg(long = "T", value_name = "TIME")]
    t_final: Option<f64>,

    /// Monte Carlo trajectories per parameter cell [default: 100]
    #[arg(long, value_name = "COUNT")]
    trajectories: Option<usize>,

    /// Master seed for the noise streams; required
    #[arg(long)]
    seed: Option<u64>,

    /// Initial condition [default: zero for temporal, parabola for spatial]
    #[arg(long, value_enum, value_name = "G0")]
    g0: Option<G0Arg>,

    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Read flag values from a 'key = value' file; flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct TemporalArgs {
    #[command(flatten)]
    common: StochasticArgs,

    /// Time-step ladder, comma separated, doubling [default: 32,64,128,256]
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    grids: Vec<usize>,

    /// Spatial mesh intervals shared by every level [default: 128]
    #[arg(long, value_name = "INTERVALS")]
    h: Option<usize>,
}

#[derive(Args)]
struct SpatialArgs {
    #[command(flatten)]
    common: StochasticArgs,

    /// Mesh-interval ladder, comma separated, doubling [default: 16,32,64,128]
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    grids: Vec<usize>,

    /// Time steps shared by every level [default: 1024]
    #[arg(long = "n-time", value_name = "STEPS")]
    n_time: Option<usize>,
}

#[derive(Args)]
struct DeterministicArgs {
    /// Fractional orders alpha, comma separated, each in (0, 1)
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    alpha: Vec<f64>,

    /// Time-step ladder for a temporal study [default: 32,64,128,256,512]
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    grids: Vec<usize>,

    /// Mesh-interval ladder for a spatial study instead of --grids
    #[arg(long = "grids-h", value_delimiter = ',', value_name = "LIST")]
    grids_h: Vec<usize>,

    /// Final time [default: 0.01]
    #[arg(long = "T", value_name = "TIME")]
    t_final: Option<f64>,

    /// Mesh intervals pinned across a --grids study [default: 128]
    #[arg(long, value_name = "INTERVALS")]
    h: Option<usize>,

    /// Time steps pinned across a --grids-h study [default: 4096]
    #[arg(long = "n-time", value_name = "STEPS")]
    n_time: Option<usize>,

    /// Initial condition [default: parabola]
    #[arg(long, value_enum, value_name = "G0")]
    g0: Option<G0Arg>,

    /// Sine modes of the continuum reference [default: 2000]
    #[arg(long = "oracle-modes", value_name = "MODES")]
    oracle_modes: Option<usize>,

    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Read flag values from a 'key = value' file; flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SampleNoiseArgs {
    /// Hurst index in [1/2, 1); required
    #[arg(long)]
    hurst: Option<f64>,

    /// Number of increments; required
    #[arg(long)]
    n: Option<usize>,

    /// Seed for the noise stream; required
    #[arg(long)]
    seed: Option<u64>,

    /// Final time; increments span steps of T/n [default: 0.01]
    #[arg(long = "T", value_name = "TIME")]
    t_final: Option<f64>,

    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Read flag values from a 'key = value' file; flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct PredictRatesArgs {
    /// Fractional orders alpha, comma separated, each in (0, 1)
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    alpha: Vec<f64>,

    /// Hurst indices, comma separated, each in [1/2, 1)
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    hurst: Vec<f64>,

    /// Noise spectral exponent, Lambda_k = k^m [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,

    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Read flag values from a 'key = value' file; flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

/// Initial conditions selectable on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum G0Arg {
    /// G_0 = 0
    Zero,
    /// G_0 = x(1 - x)
    Parabola,
}

impl G0Arg {
    fn into_core(self) -> InitialData {
        match self {
            G0Arg::Zero => InitialData::Zero,
            G0Arg::Parabola => InitialData::Parabola,
        }
    }
}

const TEMPORAL_KEYS: &[&str] = &[
    "alpha",
    "hurst",
    "m",
    "K",
    "T",
    "grids",
    "h",
    "trajectories",
    "seed",
    "g0",
    "out",
];
const SPATIAL_KEYS: &[&str] = &[
    "alpha",
    "hurst",
    "m",
    "K",
    "T",
    "grids",
    "n-time",
    "trajectories",
    "seed",
    "g0",
    "out",
];
const DETERMINISTIC_KEYS: &[&str] = &[
    "alpha",
    "T",
    "grids",
    "grids-h",
    "h",
    "n-time",
    "g0",
    "oracle-modes",
    "out",
];
const SAMPLE_NOISE_KEYS: &[&str] = &["hurst", "n", "seed", "T", "out"];
const PREDICT_RATES_KEYS: &[&str] = &["alpha", "hurst", "m", "out"];

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Temporal(args) => {
            let (config, out) = temporal_config(args)?;
            run_and_emit(&config, out.as_deref())
        }
        Command::Spatial(args) => {
            let (config, out) = spatial_config(args)?;
            run_and_emit(&config, out.as_deref())
        }
        Command::Deterministic(args) => {
            let (config, out) = deterministic_config(args)?;
            run_and_emit(&config, out.as_deref())
        }
        Command::SampleNoise(args) => run_sample_noise(args),
        Command::PredictRates(args) => run_predict_rates(args),
    }
}

/// Runs the configured study and writes its CSV, with non-monotone cells
/// reported on stderr first.
fn run_and_emit(config: &StudyConfig, out: Option<&Path>) -> Result<()> {
    let table = run_study(config)?;
    for warning in table.warnings() {
        eprintln!("warning: {warning}");
    }
    write_output(&table.to_csv(), out)
}

fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write output file {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(path: Option<&Path>, allowed: &[&str]) -> Result<FileConfig> {
    match path {
        Some(path) => FileConfig::load(path, allowed),
        None => Ok(FileConfig::empty()),
    }
}

/// The flag value when given, otherwise the config-file value.
fn merge_list<T>(flag: Vec<T>, file: Option<Vec<T>>) -> Option<Vec<T>> {
    if flag.is_empty() {
        file
    } else {
        Some(flag)
    }
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.with_context(|| format!("missing --{name} (flag or config key '{name}')"))
}

/// Applies the flags shared by both stochastic studies on top of `config`
/// and resolves the output path.
fn fill_stochastic(
    config: &mut StudyConfig,
    args: StochasticArgs,
    file: &FileConfig,
) -> Result<Option<PathBuf>> {
    config.alphas = require(merge_list(args.alpha, file.f64_list("alpha")?), "alpha")?;
    config.hursts = require(merge_list(args.hurst, file.f64_list("hurst")?), "hurst")?;
    if let Some(m) = args.m.or(file.f64("m")?) {
        config.m = m;
    }
    if let Some(k_modes) = args.k_modes.or(file.usize("K")?) {
        config.k_modes = k_modes;
    }
    if let Some(t_final) = args.t_final.or(file.f64("T")?) {
        config.t_final = t_final;
    }
    if let Some(trajectories) = args.trajectories.or(file.usize("trajectories")?) {
        config.trajectories = trajectories;
    }
    config.master_seed = require(args.seed.or(file.u64("seed")?), "seed")?;
    if let Some(g0) = args.g0.map(G0Arg::into_core).or(file.initial_data("g0")?) {
        config.initial_data = g0;
    }
    Ok(args.out.or_else(|| file.path("out")))
}

fn temporal_config(args: TemporalArgs) -> Result<(StudyConfig, Option<PathBuf>)> {
    let file = load_config(args.common.config.as_deref(), TEMPORAL_KEYS)?;
    let mut config = StudyConfig::new(StudyKind::Temporal);
    if let Some(grids) = merge_list(args.grids, file.usize_list("grids")?) {
        config.grids = grids;
    }
    if let Some(h) = args.h.or(file.usize("h")?) {
        config.fixed_mesh = h;
    }
    let out = fill_stochastic(&mut config, args.common, &file)?;
    Ok((config, out))
}

fn spatial_config(args: SpatialArgs) -> Result<(StudyConfig, Option<PathBuf>)> {
    let file = load_config(args.common.config.as_deref(), SPATIAL_KEYS)?;
    let mut config = StudyConfig::new(StudyKind::Spatial);
    if let Some(grids) = merge_list(args.grids, file.usize_list("grids")?) {
        config.grids = grids;
    }
    if let Some(n_time) = args.n_time.or(file.usize("n-time")?) {
        config.fixed_steps = n_time;
    }
    let out = fill_stochastic(&mut config, args.common, &file)?;
    Ok((config, out))
}

fn deterministic_config(args: DeterministicArgs) -> Result<(StudyConfig, Option<PathBuf>)> {
    let file = load_config(args.config.as_deref(), DETERMINISTIC_KEYS)?;
    let (time_ladder, mesh_ladder) = if args.grids.is_empty() && args.grids_h.is_empty() {
        (file.usize_list("grids")?, file.usize_list("grids-h")?)
    } else {
        (merge_list(args.grids, None), merge_list(args.grids_h, None))
    };
    let (kind, grids) = match (time_ladder, mesh_ladder) {
        (Some(grids), None) => (StudyKind::DeterministicTemporal, grids),
        (None, Some(grids)) => (StudyKind::DeterministicSpatial, grids),
        (Some(_), Some(_)) => bail!("--grids and --grids-h are mutually exclusive"),
        (None, None) => {
            bail!("need a refinement ladder: --grids (time steps) or --grids-h (mesh intervals)")
        }
    };
    let mut config = StudyConfig::new(kind);
    config.grids = grids;
    config.alphas = require(merge_list(args.alpha, file.f64_list("alpha")?), "alpha")?;
    if let Some(t_final) = args.t_final.or(file.f64("T")?) {
        config.t_final = t_final;
    }
    if let Some(g0) = args.g0.map(G0Arg::into_core).or(file.initial_data("g0")?) {
        config.initial_data = g0;
    }
    if let Some(oracle_modes) = args.oracle_modes.or(file.usize("oracle-modes")?) {
        config.oracle_modes = oracle_modes;
    }
    if kind == StudyKind::DeterministicTemporal {
        if args.n_time.is_some() || file.usize("n-time")?.is_some() {
            bail!("--n-time applies to --grids-h studies; a --grids study pins the mesh with --h");
        }
        if let Some(h) = args.h.or(file.usize("h")?) {
            config.fixed_mesh = h;
        }
    } else {
        if args.h.is_some() || file.usize("h")?.is_some() {
            bail!("--h applies to --grids studies; a --grids-h study pins the steps with --n-time");
        }
        if let Some(n_time) = args.n_time.or(file.usize("n-time")?) {
            config.fixed_steps = n_time;
        }
    }
    Ok((config, args.out.or_else(|| file.path("out"))))
}

/// Writes one unit-variance fractional Gaussian noise path (mode 1 of the
/// expansion, so no spectral scaling) with its running sum.
fn run_sample_noise(args: SampleNoiseArgs) -> Result<()> {
    let file = load_config(args.config.as_deref(), SAMPLE_NOISE_KEYS)?;
    let hurst = require(args.hurst.or(file.f64("hurst")?), "hurst")?;
    let n = require(args.n.or(file.usize("n")?), "n")?;
    let seed = require(args.seed.or(file.u64("seed")?), "seed")?;
    let t_final = args.t_final.or(file.f64("T")?).unwrap_or(0.01);
    if !(t_final > 0.0 && t_final.is_finite()) {
        bail!("final time must be positive and finite, got {t_final}");
    }
    let spec = NoiseSpec::new(hurst, 0.0, 1)?;
    let dt = t_final / n as f64;
    let trajectory = sample_trajectory(&spec, n, dt, seed, 0)?;

    let mut text = String::new();
    writeln!(text, "# hurst: {hurst}").unwrap();
    writeln!(text, "# t_final: {t_final}").unwrap();
    writeln!(text, "# n_steps: {n}").unwrap();
    writeln!(text, "# seed: {seed}").unwrap();
    writeln!(text, "step,t,increment,cumulative").unwrap();
    let mut cumulative = 0.0;
    for (index, increment) in trajectory.row(1).iter().enumerate() {
        cumulative += increment;
        let t = dt * (index + 1) as f64;
        writeln!(text, "{},{t},{increment},{cumulative}", index + 1).unwrap();
    }
    write_output(&text, args.out.as_deref().or(file.path("out").as_deref()))
}

/// Prints the theoretical strong rates for every (H, alpha) pair without
/// running a solver.
fn run_predict_rates(args: PredictRatesArgs) -> Result<()> {
    let file = load_config(args.config.as_deref(), PREDICT_RATES_KEYS)?;
    let alphas = require(merge_list(args.alpha, file.f64_list("alpha")?), "alpha")?;
    let hursts = require(merge_list(args.hurst, file.f64_list("hurst")?), "hurst")?;
    let m = args.m.or(file.f64("m")?).unwrap_or(0.0);
    for &alpha in &alphas {
        if !(alpha > 0.0 && alpha < 1.0) {
            bail!("alpha must lie in (0, 1), got {alpha}");
        }
    }

    let mut text = String::new();
    writeln!(text, "H,alpha,m,rho,temporal_rate,spatial_rate").unwrap();
    for &hurst in &hursts {
        let spec = NoiseSpec::new(hurst, m, 1)?;
        let rho = spec.theoretical_rho();
        for &alpha in &alphas {
            writeln!(
                text,
                "{hurst},{alpha},{m},{rho},{:.6},{:.6}",
                predicted_temporal_rate(hurst, alpha, rho),
                predicted_spatial_rate(hurst, alpha, rho),
            )
            .unwrap();
        }
    }
    write_output(&text, args.out.as_deref().or(file.path("out").as_deref()))
}

#[cfg(test)]
mod tests {
    use std::io::Write as _;

    use clap::CommandFactory;

    use super::*;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    fn parse(argv: &[&str]) -> Command {
        Cli::try_parse_from(argv).unwrap().command
    }

    #[test]
    fn temporal_defaults_fill_the_standard_ladder() {
        let Command::Temporal(args) = parse(&[
            "subfrac", "temporal", "--alpha", "0.3", "--hurst", "0.6", "--seed", "42",
        ]) else {
            panic!("expected the temporal subcommand");
        };
        let (config, out) = temporal_config(args).unwrap();
        assert_eq!(config.kind, StudyKind::Temporal);
        assert_eq!(config.alphas, vec![0.3]);
        assert_eq!(config.hursts, vec![0.6]);
        assert_eq!(config.grids, vec![32, 64, 128, 256]);
        assert_eq!(config.fixed_mesh, 128);
        assert_eq!(config.k_modes, 1000);
        assert_eq!(config.trajectories, 100);
        assert_eq!(config.t_final, 0.01);
        assert_eq!(config.m, 0.0);
        assert_eq!(config.master_seed, 42);
        assert_eq!(config.initial_data, InitialData::Zero);
        assert_eq!(out, None);
        config.validate().unwrap();
    }

    #[test]
    fn spatial_defaults_differ_from_temporal() {
        let Command::Spatial(args) = parse(&[
            "subfrac", "spatial", "--alpha", "0.5", "--hurst", "0.75", "--seed", "7",
        ]) else {
            panic!("expected the spatial subcommand");
        };
        let (config, _) = spatial_config(args).unwrap();
        assert_eq!(config.kind, StudyKind::Spatial);
        assert_eq!(config.grids, vec![16, 32, 64, 128]);
        assert_eq!(config.fixed_steps, 1024);
        assert_eq!(config.initial_data, InitialData::Parabola);
        config.validate().unwrap();
    }

    #[test]
    fn comma_lists_and_negative_m_parse() {
        let Command::Temporal(args) = parse(&[
            "subfrac", "temporal", "--alpha", "0.3,0.5", "--hurst", "0.6,0.9", "--m", "-1.5",
            "--seed", "1", "--grids", "8,16,32", "--h", "16", "--K", "12", "--T", "0.5",
            "--trajectories", "3", "--g0", "parabola",
        ]) else {
            panic!("expected the temporal subcommand");
        };
        let (config, _) = temporal_config(args).unwrap();
        assert_eq!(config.alphas, vec![0.3, 0.5]);
        assert_eq!(config.hursts, vec![0.6, 0.9]);
        assert_eq!(config.m, -1.5);
        assert_eq!(config.grids, vec![8, 16, 32]);
        assert_eq!(config.fixed_mesh, 16);
        assert_eq!(config.k_modes, 12);
        assert_eq!(config.t_final, 0.5);
        assert_eq!(config.trajectories, 3);
        assert_eq!(config.initial_data, InitialData::Parabola);
    }

    #[test]
    fn missing_seed_is_reported_with_the_flag_name() {
        let Command::Temporal(args) =
            parse(&["subfrac", "temporal", "--alpha", "0.3", "--hurst", "0.6"])
        else {
            panic!("expected the temporal subcommand");
        };
        let err = temporal_config(args).unwrap_err();
        assert!(err.to_string().contains("--seed"));
    }

    fn config_file(lines: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(lines.as_bytes()).unwrap();
        file
    }

    #[test]
    fn config_file_supplies_values_and_flags_override() {
        let file = config_file(
            "alpha = 0.5\nhurst = 0.75\nseed = 1\ngrids = 8,16,32\ntrajectories = 2\nK = 4\nh = 8\n",
        );
        let path = file.path().to_str().unwrap();
        let Command::Temporal(args) =
            parse(&["subfrac", "temporal", "--config", path, "--seed", "99"])
        else {
            panic!("expected the temporal subcommand");
        };
        let (config, _) = temporal_config(args).unwrap();
        assert_eq!(config.master_seed, 99);
        assert_eq!(config.alphas, vec![0.5]);
        assert_eq!(config.hursts, vec![0.75]);
        assert_eq!(config.grids, vec![8, 16, 32]);
        assert_eq!(config.trajectories, 2);
        assert_eq!(config.k_modes, 4);
        assert_eq!(config.fixed_mesh, 8);
    }

    #[test]
    fn deterministic_ladder_flag_selects_the_axis() {
        let Command::Deterministic(args) = parse(&[
            "subfrac", "deterministic", "--alpha", "0.8", "--grids", "32,64,128",
        ]) else {
            panic!("expected the deterministic subcommand");
        };
        let (config, _) = deterministic_config(args).unwrap();
        assert_eq!(config.kind, StudyKind::DeterministicTemporal);
        assert_eq!(config.grids, vec![32, 64, 128]);
        assert_eq!(config.fixed_mesh, 128);

        let Command::Deterministic(args) = parse(&[
            "subfrac", "deterministic", "--alpha", "0.8", "--grids-h", "16,32,64",
        ]) else {
            panic!("expected the deterministic subcommand");
        };
        let (config, _) = deterministic_config(args).unwrap();
        assert_eq!(config.kind, StudyKind::DeterministicSpatial);
        assert_eq!(config.grids, vec![16, 32, 64]);
        assert_eq!(config.fixed_steps, 4096);
        assert_eq!(config.initial_data, InitialData::Parabola);
    }

    #[test]
    fn deterministic_requires_exactly_one_ladder() {
        let Command::Deterministic(args) = parse(&["subfrac", "deterministic", "--alpha", "0.8"])
        else {
            panic!("expected the deterministic subcommand");
        };
        let err = deterministic_config(args).unwrap_err();
        assert!(err.to_string().contains("refinement ladder"));

        let Command::Deterministic(args) = parse(&[
            "subfrac", "deterministic", "--alpha", "0.8", "--grids", "32,64,128", "--grids-h",
            "16,32,64",
        ]) else {
            panic!("expected the deterministic subcommand");
        };
        let err = deterministic_config(args).unwrap_err();
        assert!(err.to_string().contains("mutually exclusive"));
    }

    #[test]
    fn deterministic_rejects_the_fixed_axis_of_the_other_study() {
        let Command::Deterministic(args) = parse(&[
            "subfrac", "deterministic", "--alpha", "0.8", "--grids", "32,64,128", "--n-time",
            "64",
        ]) else {
            panic!("expected the deterministic subcommand");
        };
        let err = deterministic_config(args).unwrap_err();
        assert!(err.to_string().contains("--n-time"));

        let Command::Deterministic(args) = parse(&[
            "subfrac", "deterministic", "--alpha", "0.8", "--grids-h", "16,32,64", "--h", "64",
        ]) else {
            panic!("expected the deterministic subcommand");
        };
        let err = deterministic_config(args).unwrap_err();
        assert!(err.to_string().contains("--h"));
    }

    #[test]
    fn command_line_ladder_choice_replaces_config_file_ladders() {
        let file = config_file("alpha = 0.8\ngrids = 32,64,128\n");
        let path = file.path().to_str().unwrap();
        let Command::Deterministic(args) = parse(&[
            "subfrac", "deterministic", "--config", path, "--grids-h", "16,32,64",
        ]) else {
            panic!("expected the deterministic subcommand");
        };
        let (config, _) = deterministic_config(args).unwrap();
        assert_eq!(config.kind, StudyKind::DeterministicSpatial);
        assert_eq!(config.grids, vec![16, 32, 64]);
    }
}

//! Monte Carlo convergence-rate studies.
//!
//! A study runs the fully discrete solver over a ladder of doubling grids
//! and reports observed convergence rates per parameter cell. Temporal
//! studies sample each trajectory once at the finest time step and coarsen
//! the increments, so every refinement level sees the same driving path;
//! spatial studies drive every mesh in the ladder with one shared increment
//! matrix and compare nested meshes after interpolation. Deterministic
//! studies drop the noise and measure directly against the continuum
//! Mittag-Leffler solution.
//!
//! Trajectories are the unit of parallelism. Per-trajectory results are
//! collected in trajectory order and reduced sequentially, so a study is
//! bit-identical for a fixed master seed regardless of thread count.

use rayon::prelude::*;

use crate::cq::{predicted_spatial_rate, predicted_temporal_rate};
use crate::fem::{l2_norm, l2_project, refine_interpolate, FemFunction, Mesh};
use crate::noise::{sample_trajectory, FgnTrajectory, NoiseSpec};
use crate::oracle::{exact_deterministic, l2_distance, parabola_expansion, parabola_load};
use crate::stepper::{run, SolverConfig};
use crate::streams::{cell_seed, scheme_description};
use crate::{Error, Result};

/// Which discretization axis a study refines, and whether it is driven by
/// noise or measured against the deterministic oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StudyKind {
    /// Stochastic refinement in time on a fixed mesh.
    Temporal,
    /// Stochastic refinement in space with a fixed number of time steps.
    Spatial,
    /// Noise-free refinement in time, measured against the exact solution.
    DeterministicTemporal,
    /// Noise-free refinement in space, measured against the exact solution.
    DeterministicSpatial,
}

impl StudyKind {
    /// Whether the study samples noise trajectories.
    pub fn is_stochastic(self) -> bool {
        matches!(self, StudyKind::Temporal | StudyKind::Spatial)
    }

    /// Whether the grid ladder refines the time step (as opposed to the mesh).
    pub fn refines_time(self) -> bool {
        matches!(self, StudyKind::Temporal | StudyKind::DeterministicTemporal)
    }

    fn label(self) -> &'static str {
        match self {
            StudyKind::Temporal => "temporal",
            StudyKind::Spatial => "spatial",
            StudyKind::DeterministicTemporal => "deterministic-temporal",
            StudyKind::DeterministicSpatial => "deterministic-spatial",
        }
    }
}

/// Initial condition of a study problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialData {
    /// Homogeneous start, `G_0 = 0`.
    Zero,
    /// `G_0(x) = x(1 - x)`.
    Parabola,
}

impl InitialData {
    /// `L^2` projection of the initial condition onto `mesh`.
    pub fn project(self, mesh: &Mesh) -> Result<FemFunction> {
        match self {
            InitialData::Zero => Ok(FemFunction::zero(*mesh)),
            InitialData::Parabola => l2_project(&parabola_load(mesh), mesh),
        }
    }

    fn label(self) -> &'static str {
        match self {
            InitialData::Zero => "zero",
            InitialData::Parabola => "parabola",
        }
    }
}

/// Full description of one convergence study.
///
/// `grids` is the refinement ladder: time-step counts for temporal kinds,
/// mesh interval counts for spatial kinds. Every entry must double its
/// predecessor and at least three levels are required, so each cell yields
/// three or more error entries. The axis that is not refined is pinned by
/// `fixed_mesh` or `fixed_steps`.
#[derive(Clone, Debug)]
pub struct StudyConfig {
    /// Study kind; selects the refinement axis and the error measure.
    pub kind: StudyKind,
    /// Fractional orders to sweep, each in `(0, 1)`.
    pub alphas: Vec<f64>,
    /// Hurst indices to sweep, each in `[1/2, 1)`. Ignored by deterministic
    /// kinds.
    pub hursts: Vec<f64>,
    /// Spatial covariance exponent of the noise, `Lambda_k = k^m`.
    pub m: f64,
    /// Number of noise modes retained in the expansion.
    pub k_modes: usize,
    /// Monte Carlo sample count per cell.
    pub trajectories: usize,
    /// Final time `T` at which errors are measured.
    pub t_final: f64,
    /// Seed from which every per-cell stream is derived.
    pub master_seed: u64,
    /// Doubling refinement ladder (time steps or mesh intervals).
    pub grids: Vec<usize>,
    /// Mesh intervals shared by every level of a time-refining study.
    pub fixed_mesh: usize,
    /// Time steps shared by every level of a space-refining study.
    pub fixed_steps: usize,
    /// Initial condition `G_0`.
    pub initial_data: InitialData,
    /// Sine modes used for the continuum reference of deterministic kinds.
    pub oracle_modes: usize,
}

impl StudyConfig {
    /// A configuration preloaded with the defaults of `kind`: `T = 0.01`,
    /// 1000 noise modes, 100 trajectories, and the grid ladders used by the
    /// reference tables. `alphas` (and `hursts` for stochastic kinds) start
    /// empty and must be filled in before running.
    pub fn new(kind: StudyKind) -> Self {
        let (grids, fixed_steps, initial_data) = match kind {
            StudyKind::Temporal => (vec![32, 64, 128, 256], 1024, InitialData::Zero),
            StudyKind::Spatial => (vec![16, 32, 64, 128], 1024, InitialData::Parabola),
            StudyKind::DeterministicTemporal => {
                (vec![32, 64, 128, 256, 512], 4096, InitialData::Parabola)
            }
            StudyKind::DeterministicSpatial => (vec![16, 32, 64, 128], 4096, InitialData::Parabola),
        };
        StudyConfig {
            kind,
            alphas: Vec::new(),
            hursts: Vec::new(),
            m: 0.0,
            k_modes: 1000,
            trajectories: 100,
            t_final: 0.01,
            master_seed: 0,
            grids,
            fixed_mesh: 128,
            fixed_steps,
            initial_data,
            oracle_modes: 2000,
        }
    }

    /// Checks every invariant the study machinery relies on.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] when a parameter is out of range,
    /// the grid ladder does not double, fewer than three levels are given,
    /// or a deterministic study starts from zero initial data.
    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::InvalidParameter(
                "study needs at least one alpha".into(),
            ));
        }
        for &alpha in &self.alphas {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in (0, 1), got {alpha}"
                )));
            }
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "final time must be positive and finite, got {}",
                self.t_final
            )));
        }
        if self.grids.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "need at least three grid levels, got {}",
                self.grids.len()
            )));
        }
        if self.grids[0] == 0 {
            return Err(Error::InvalidParameter("grid levels must be positive".into()));
        }
        for pair in self.grids.windows(2) {
            if pair[1] != 2 * pair[0] {
                return Err(Error::InvalidParameter(format!(
                    "grid ladder must double at every level, got {} after {}",
                    pair[1], pair[0]
                )));
            }
        }
        if self.kind.refines_time() {
            if self.fixed_mesh < 2 {
                return Err(Error::InvalidParameter(format!(
                    "fixed mesh needs at least 2 intervals, got {}",
                    self.fixed_mesh
                )));
            }
        } else {
            if self.fixed_steps == 0 {
                return Err(Error::InvalidParameter(
                    "fixed step count must be positive".into(),
                ));
            }
            if self.grids[0] < 2 {
                return Err(Error::InvalidParameter(format!(
                    "mesh ladder needs at least 2 intervals per level, got {}",
                    self.grids[0]
                )));
            }
        }
        if self.kind.is_stochastic() {
            if self.hursts.is_empty() {
                return Err(Error::InvalidParameter(
                    "stochastic study needs at least one Hurst index".into(),
                ));
            }
            for (&hurst, &alpha) in self
                .hursts
                .iter()
                .flat_map(|h| self.alphas.iter().map(move |a| (h, a)))
            {
                NoiseSpec::new(hurst, self.m, self.k_modes)?;
                let _ = alpha;
            }
            if self.trajectories == 0 {
                return Err(Error::InvalidParameter(
                    "need at least one trajectory".into(),
                ));
            }
        } else {
            if self.initial_data == InitialData::Zero {
                return Err(Error::InvalidParameter(
                    "deterministic study from zero initial data has no error to measure".into(),
                ));
            }
            if self.oracle_modes == 0 {
                return Err(Error::InvalidParameter(
                    "continuum reference needs at least one mode".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Observed convergence rate between two successive refinement levels,
/// `log2(e_coarse / e_fine)`.
///
/// # Panics
///
/// Panics when either error is not positive and finite.
pub fn rate(e_coarse: f64, e_fine: f64) -> f64 {
    assert!(
        e_coarse > 0.0 && e_coarse.is_finite(),
        "coarse error must be positive and finite, got {e_coarse}"
    );
    assert!(
        e_fine > 0.0 && e_fine.is_finite(),
        "fine error must be positive and finite, got {e_fine}"
    );
    (e_coarse / e_fine).log2()
}

/// Sums adjacent blocks of `factor` increments in every mode of `traj`,
/// producing the trajectory the same path induces on a step `factor` times
/// coarser.
///
/// # Errors
///
/// Returns [`Error::InvalidParameter`] when `factor` is zero and
/// [`Error::Incompatible`] when it does not divide the step count.
pub fn coarsen_increments(traj: &FgnTrajectory, factor: usize) -> Result<FgnTrajectory> {
    if factor == 0 {
        return Err(Error::InvalidParameter(
            "coarsening factor must be positive".into(),
        ));
    }
    if !traj.n_steps().is_multiple_of(factor) {
        return Err(Error::Incompatible(format!(
            "factor {factor} does not divide {} steps",
            traj.n_steps()
        )));
    }
    let rows = (1..=traj.k_modes())
        .map(|k| {
            traj.row(k)
                .chunks(factor)
                .map(|block| block.iter().sum())
                .collect()
        })
        .collect();
    FgnTrajectory::from_rows(rows, traj.dt() * factor as f64)
}

/// One cell of a rate table: the error ladder of a single parameter
/// combination together with its observed and predicted rates.
#[derive(Clone, Debug)]
pub struct RateRow {
    hurst: Option<f64>,
    alpha: f64,
    errors: Vec<f64>,
    rates: Vec<f64>,
    mean_rate: f64,
    predicted_rate: f64,
}

impl RateRow {
    /// Builds a row from the per-level errors, computing successive rates
    /// and their arithmetic mean.
    ///
    /// # Errors
    ///
    /// Returns [`Error::InvalidParameter`] when fewer than three errors are
    /// given or any of them is not positive and finite.
    pub fn from_errors(
        hurst: Option<f64>,
        alpha: f64,
        errors: Vec<f64>,
        predicted_rate: f64,
    ) -> Result<Self> {
        if errors.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "need at least three error entries, got {}",
                errors.len()
            )));
        }
        for &e in &errors {
            if !(e > 0.0 && e.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "errors must be positive and finite, got {e}"
                )));
            }
        }
        let rates: Vec<f64> = errors.windows(2).map(|w| rate(w[0], w[1])).collect();
        let mean_rate = rates.iter().sum::<f64>() / rates.len() as f64;
        Ok(RateRow {
            hurst,
            alpha,
            errors,
            rates,
            mean_rate,
            predicted_rate,
        })
    }

    /// Hurst index of the cell, `None` for deterministic studies.
    pub fn hurst(&self) -> Option<f64> {
        self.hurst
    }

    /// Fractional order of the cell.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Root-mean-square errors, one per refinement level.
    pub fn errors(&self) -> &[f64] {
        &self.errors
    }

    /// Successive observed rates, one per adjacent level pair.
    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// Arithmetic mean of the successive rates.
    pub fn mean_rate(&self) -> f64 {
        self.mean_rate
    }

    /// Theoretical rate for the cell's parameters.
    pub fn predicted_rate(&self) -> f64 {
        self.predicted_rate
    }

    /// 1-based levels whose error exceeds the previous level's.
    pub fn non_monotone_levels(&self) -> Vec<usize> {
        (2..=self.errors.len())
            .filter(|&level| self.errors[level - 1] > self.errors[level - 2])
            .collect()
    }

    fn cell_label(&self) -> String {
        match self.hurst {
            Some(h) => format!("H={h}, alpha={}", self.alpha),
            None => format!("alpha={}", self.alpha),
        }
    }
}

/// Result of a study: one [`RateRow`] per parameter cell, in sweep order
/// (Hurst outer, alpha inner), plus the configuration that produced it.
#[derive(Clone, Debug)]
pub struct RateTable {
    config: StudyConfig,
    rows: Vec<RateRow>,
}

impl RateTable {
    /// Configuration the table was computed from.
    pub fn config(&self) -> &StudyConfig {
        &self.config
    }

    /// All cells in sweep order.
    pub fn rows(&self) -> &[RateRow] {
        &self.rows
    }

    /// Human-readable notes for every cell whose error ladder fails to
    /// decrease monotonically. Non-monotone cells are reported, never
    /// treated as failures.
    pub fn warnings(&self) -> Vec<String> {
        self.rows
            .iter()
            .flat_map(|row| {
                let label = row.cell_label();
                row.non_monotone_levels().into_iter().map(move |level| {
                    format!(
                        "cell ({label}): error increases from level {} to {level}",
                        level - 1
                    )
                })
            })
            .collect()
    }

    /// Serializes the table as CSV with `#`-prefixed metadata lines.
    ///
    /// Columns are `H,alpha,m,level,grid,error,rate,mean_rate,
    /// predicted_rate,seed`; the rate field is empty on the first level of
    /// each cell, and the noise columns are empty for deterministic rows.
    pub fn to_csv(&self) -> String {
        use std::fmt::Write as _;

        let c = &self.config;
        let mut out = String::new();
        writeln!(out, "# study: {}", c.kind.label()).unwrap();
        writeln!(out, "# t_final: {}", c.t_final).unwrap();
        writeln!(out, "# initial_data: {}", c.initial_data.label()).unwrap();
        if c.kind.refines_time() {
            writeln!(out, "# grid_column: time_steps").unwrap();
            writeln!(out, "# fixed_mesh_intervals: {}", c.fixed_mesh).unwrap();
        } else {
            writeln!(out, "# grid_column: mesh_intervals").unwrap();
            writeln!(out, "# fixed_time_steps: {}", c.fixed_steps).unwrap();
        }
        if c.kind.is_stochastic() {
            writeln!(out, "# m: {}", c.m).unwrap();
            writeln!(out, "# k_modes: {}", c.k_modes).unwrap();
            writeln!(out, "# trajectories: {}", c.trajectories).unwrap();
            writeln!(out, "# master_seed: {}", c.master_seed).unwrap();
            writeln!(out, "# streams: {}", scheme_description()).unwrap();
        } else {
            writeln!(out, "# oracle_modes: {}", c.oracle_modes).unwrap();
        }
        writeln!(out, "H,alpha,m,level,grid,error,rate,mean_rate,predicted_rate,seed").unwrap();
        for row in &self.rows {
            let hurst = row.hurst.map(|h| h.to_string()).unwrap_or_default();
            let (m, seed) = if c.kind.is_stochastic() {
                (c.m.to_string(), c.master_seed.to_string())
            } else {
                (String::new(), String::new())
            };
            for (i, &error) in row.errors.iter().enumerate() {
                let observed = if i == 0 {
                    String::new()
                } else {
                    format!("{:.6}", row.rates[i - 1])
                };
                writeln!(
                    out,
                    "{hurst},{},{m},{},{},{error:.6e},{observed},{:.6},{:.6},{seed}",
                    row.alpha,
                    i + 1,
                    c.grids[i],
                    row.mean_rate,
                    row.predicted_rate,
                )
                .unwrap();
            }
        }
        out
    }
}

/// Runs the study described by `config`, dispatching on its kind.
///
/// # Errors
///
/// Propagates configuration validation failures and any solver error.
pub fn run_study(config: &StudyConfig) -> Result<RateTable> {
    match config.kind {
        StudyKind::Temporal => temporal_study(config),
        StudyKind::Spatial => spatial_study(config),
        StudyKind::DeterministicTemporal | StudyKind::DeterministicSpatial => {
            deterministic_study(config)
        }
    }
}

/// Stochastic refinement in time: every trajectory is sampled once at twice
/// the finest level and coarsened onto each level, and the level error is
/// the RMS distance to the same trajectory solved at half the step.
///
/// # Errors
///
/// Returns [`Error::Incompatible`] when `config.kind` is not
/// [`StudyKind::Temporal`], otherwise propagates validation and solver
/// errors.
pub fn temporal_study(config: &StudyConfig) -> Result<RateTable> {
    expect_kind(config, StudyKind::Temporal)?;
    stochastic_study(config)
}

/// Stochastic refinement in space: one increment matrix per trajectory
/// drives every mesh in the ladder, and the level error is the RMS distance
/// to the next finer mesh after nodal interpolation.
///
/// # Errors
///
/// Returns [`Error::Incompatible`] when `config.kind` is not
/// [`StudyKind::Spatial`], otherwise propagates validation and solver
/// errors.
pub fn spatial_study(config: &StudyConfig) -> Result<RateTable> {
    expect_kind(config, StudyKind::Spatial)?;
    stochastic_study(config)
}

/// Noise-free refinement measured directly against the continuum
/// Mittag-Leffler solution of the initial data.
///
/// # Errors
///
/// Returns [`Error::Incompatible`] for stochastic kinds, otherwise
/// propagates validation and solver errors.
pub fn deterministic_study(config: &StudyConfig) -> Result<RateTable> {
    if config.kind.is_stochastic() {
        return Err(Error::Incompatible(format!(
            "deterministic_study cannot run a {} study",
            config.kind.label()
        )));
    }
    config.validate()?;
    let expansion = match config.initial_data {
        InitialData::Parabola => parabola_expansion(config.oracle_modes),
        InitialData::Zero => {
            return Err(Error::InvalidParameter(
                "deterministic study from zero initial data has no error to measure".into(),
            ))
        }
    };
    let mut rows = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let exact = exact_deterministic(&expansion, alpha, config.t_final);
        let errors: Vec<f64> = if config.kind.refines_time() {
            let mesh = Mesh::new(config.fixed_mesh)?;
            let initial = config.initial_data.project(&mesh)?;
            config
                .grids
                .iter()
                .map(|&n_steps| {
                    let solver = SolverConfig::new(
                        alpha,
                        config.t_final,
                        n_steps,
                        mesh,
                        initial.clone(),
                        None,
                    )?;
                    let weights = solver.quadrature_weights();
                    Ok(l2_distance(run(&solver, &weights)?.final_state(), &exact))
                })
                .collect::<Result<_>>()?
        } else {
            config
                .grids
                .iter()
                .map(|&intervals| {
                    let mesh = Mesh::new(intervals)?;
                    let initial = config.initial_data.project(&mesh)?;
                    let solver = SolverConfig::new(
                        alpha,
                        config.t_final,
                        config.fixed_steps,
                        mesh,
                        initial,
                        None,
                    )?;
                    let weights = solver.quadrature_weights();
                    Ok(l2_distance(run(&solver, &weights)?.final_state(), &exact))
                })
                .collect::<Result<_>>()?
        };
        let predicted = if config.kind.refines_time() { 1.0 } else { 2.0 };
        rows.push(RateRow::from_errors(None, alpha, errors, predicted)?);
    }
    Ok(RateTable {
        config: config.clone(),
        rows,
    })
}

fn expect_kind(config: &StudyConfig, kind: StudyKind) -> Result<()> {
    if config.kind != kind {
        return Err(Error::Incompatible(format!(
            "config describes a {} study, not {}",
            config.kind.label(),
            kind.label()
        )));
    }
    Ok(())
}

fn stochastic_study(config: &StudyConfig) -> Result<RateTable> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.hursts.len() * config.alphas.len());
    for (h_idx, &hurst) in config.hursts.iter().enumerate() {
        for (a_idx, &alpha) in config.alphas.iter().enumerate() {
            let cell = (h_idx * config.alphas.len() + a_idx) as u64;
            rows.push(stochastic_cell(config, hurst, alpha, cell)?);
        }
    }
    Ok(RateTable {
        config: config.clone(),
        rows,
    })
}

fn stochastic_cell(
    config: &StudyConfig,
    hurst: f64,
    alpha: f64,
    cell_index: u64,
) -> Result<RateRow> {
    let seed = cell_seed(config.master_seed, cell_index);
    let spec = NoiseSpec::new(hurst, config.m, config.k_modes)?;
    let per_trajectory: Vec<Vec<f64>> = (0..config.trajectories)
        .into_par_iter()
        .map(|trajectory| match config.kind {
            StudyKind::Temporal => {
                temporal_squared_gaps(config, &spec, alpha, seed, trajectory as u64)
            }
            _ => spatial_squared_gaps(config, &spec, alpha, seed, trajectory as u64),
        })
        .collect::<Result<_>>()?;
    let mut sums = vec![0.0; config.grids.len()];
    for gaps in &per_trajectory {
        for (sum, gap) in sums.iter_mut().zip(gaps) {
            *sum += gap;
        }
    }
    let errors: Vec<f64> = sums
        .iter()
        .map(|&s| (s / config.trajectories as f64).sqrt())
        .collect();
    let rho = spec.theoretical_rho();
    let predicted = match config.kind {
        StudyKind::Temporal => predicted_temporal_rate(hurst, alpha, rho),
        _ => predicted_spatial_rate(hurst, alpha, rho),
    };
    RateRow::from_errors(Some(hurst), alpha, errors, predicted)
}

fn temporal_squared_gaps(
    config: &StudyConfig,
    spec: &NoiseSpec,
    alpha: f64,
    seed: u64,
    trajectory: u64,
) -> Result<Vec<f64>> {
    let mesh = Mesh::new(config.fixed_mesh)?;
    let initial = config.initial_data.project(&mesh)?;
    let n_fine = 2 * config.grids[config.grids.len() - 1];
    let fine = sample_trajectory(
        spec,
        n_fine,
        config.t_final / n_fine as f64,
        seed,
        trajectory,
    )?;
    let mut levels = config.grids.clone();
    levels.push(n_fine);
    let mut finals = Vec::with_capacity(levels.len());
    for &n_steps in &levels {
        let noise = coarsen_increments(&fine, n_fine / n_steps)?;
        let solver = SolverConfig::new(
            alpha,
            config.t_final,
            n_steps,
            mesh,
            initial.clone(),
            Some(noise),
        )?;
        let weights = solver.quadrature_weights();
        finals.push(run(&solver, &weights)?.final_state().clone());
    }
    (0..config.grids.len())
        .map(|i| squared_gap(&finals[i], &finals[i + 1]))
        .collect()
}

fn spatial_squared_gaps(
    config: &StudyConfig,
    spec: &NoiseSpec,
    alpha: f64,
    seed: u64,
    trajectory: u64,
) -> Result<Vec<f64>> {
    let n_steps = config.fixed_steps;
    let shared = sample_trajectory(
        spec,
        n_steps,
        config.t_final / n_steps as f64,
        seed,
        trajectory,
    )?;
    let mut ladders = config.grids.clone();
    ladders.push(2 * config.grids[config.grids.len() - 1]);
    let mut finals = Vec::with_capacity(ladders.len());
    for &intervals in &ladders {
        let mesh = Mesh::new(intervals)?;
        let initial = config.initial_data.project(&mesh)?;
        let solver = SolverConfig::new(
            alpha,
            config.t_final,
            n_steps,
            mesh,
            initial,
            Some(shared.clone()),
        )?;
        let weights = solver.quadrature_weights();
        finals.push(run(&solver, &weights)?.final_state().clone());
    }
    (0..config.grids.len())
        .map(|i| {
            let target = finals[i + 1].mesh();
            let lifted = refine_interpolate(&finals[i], &target)?;
            squared_gap(&lifted, &finals[i + 1])
        })
        .collect()
}

fn squared_gap(coarse: &FemFunction, fine: &FemFunction) -> Result<f64> {
    let diff: Vec<f64> = coarse
        .coeffs()
        .iter()
        .zip(fine.coeffs())
        .map(|(c, f)| c - f)
        .collect();
    let diff = FemFunction::new(fine.mesh(), diff)?;
    Ok(l2_norm(&diff).powi(2))
}

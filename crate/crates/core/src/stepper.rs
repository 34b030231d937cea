//! The fully discrete scheme: backward-Euler convolution quadrature in
//! time, P1 finite elements in space.
//!
//! Step `n` solves
//!
//! ```text
//! (M/tau + d_0 K) u^n = M u^{n-1}/tau - sum_{i=1}^{n-1} d_i K u^{n-i} + b^n/tau,
//! ```
//!
//! where `d_i` are the quadrature weights of order `1 - alpha`, `b^n` is
//! the noise increment load (zero for the noise-free problem), and the
//! history sum never reaches `u^0`: initial data enters only through the
//! mass term of the first step.
//!
//! The combined problem (initial data plus noise) is solved in one pass;
//! splitting it into a homogeneous and a forced part and summing is kept
//! as a test of linearity, not as the execution path.

use crate::cq::CqWeights;
use crate::fem::{
    assemble_mass, assemble_stiffness, FactorizedTridiagonal, FemFunction, Mesh,
    TridiagonalMatrix,
};
use crate::noise::FgnTrajectory;
use crate::{Error, Result};

/// Everything one trajectory run needs: fractional order, horizon, step
/// count, mesh, projected initial data, and optionally a noise trajectory.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    alpha: f64,
    t_final: f64,
    n_steps: usize,
    mesh: Mesh,
    initial_data: FemFunction,
    noise: Option<FgnTrajectory>,
}

impl SolverConfig {
    /// Validates and bundles the run parameters.
    ///
    /// `initial_data` must live on `mesh`; a noise trajectory must have
    /// one increment per step at the step size `T/N` (to 1e-14 relative).
    pub fn new(
        alpha: f64,
        t_final: f64,
        n_steps: usize,
        mesh: Mesh,
        initial_data: FemFunction,
        noise: Option<FgnTrajectory>,
    ) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "T must be positive, got {t_final}"
            )));
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        if initial_data.mesh().n_intervals() != mesh.n_intervals() {
            return Err(Error::Incompatible(format!(
                "initial data lives on a mesh with {} intervals, config wants {}",
                initial_data.mesh().n_intervals(),
                mesh.n_intervals()
            )));
        }
        let tau = t_final / n_steps as f64;
        if let Some(traj) = &noise {
            if traj.n_steps() != n_steps {
                return Err(Error::Incompatible(format!(
                    "trajectory has {} increments for {} steps",
                    traj.n_steps(),
                    n_steps
                )));
            }
            if (traj.dt() - tau).abs() > 1e-14 * tau {
                return Err(Error::Incompatible(format!(
                    "trajectory step {} differs from tau = {tau}",
                    traj.dt()
                )));
            }
        }
        Ok(SolverConfig {
            alpha,
            t_final,
            n_steps,
            mesh,
            initial_data,
            noise,
        })
    }

    /// Fractional order `alpha`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Time horizon `T`.
    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    /// Step count `N`.
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Step size `tau = T/N`.
    pub fn tau(&self) -> f64 {
        self.t_final / self.n_steps as f64
    }

    /// Spatial mesh.
    pub fn mesh(&self) -> Mesh {
        self.mesh
    }

    /// Projected initial data `u^0`.
    pub fn initial_data(&self) -> &FemFunction {
        &self.initial_data
    }

    /// Noise trajectory, when the run is stochastic.
    pub fn noise(&self) -> Option<&FgnTrajectory> {
        self.noise.as_ref()
    }

    /// Weights of the order the scheme needs, `beta = 1 - alpha`, long
    /// enough for every history sum.
    pub fn quadrature_weights(&self) -> CqWeights {
        crate::cq::bdf1_weights(1.0 - self.alpha, self.tau(), self.n_steps)
    }
}

/// The states `u^0 .. u^N` of one run.
#[derive(Debug, Clone)]
pub struct SolutionHistory {
    states: Vec<FemFunction>,
}

impl SolutionHistory {
    /// All states, `u^0` first.
    pub fn states(&self) -> &[FemFunction] {
        &self.states
    }

    /// State `u^n`.
    ///
    /// # Panics
    ///
    /// Panics if `n` exceeds the last computed step.
    pub fn state(&self, n: usize) -> &FemFunction {
        &self.states[n]
    }

    /// The last computed state.
    pub fn final_state(&self) -> &FemFunction {
        self.states.last().expect("history holds at least u^0")
    }

    /// Number of completed steps.
    pub fn n_steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// Assembles the constant step matrix `M/tau + d_0 K`.
fn assemble_step_matrix(config: &SolverConfig, weights: &CqWeights) -> TridiagonalMatrix {
    let mass = assemble_mass(&config.mesh());
    let stiffness = assemble_stiffness(&config.mesh());
    TridiagonalMatrix::linear_combination(1.0 / config.tau(), &mass, weights[0], &stiffness)
}

/// Factorization of the step matrix `M/tau + d_0 K`, constant across all
/// steps of a run.
///
/// # Errors
///
/// Factorization failure signals an invalid configuration; weights whose
/// order, step, or length do not match the config are rejected.
pub fn step_matrix(config: &SolverConfig, weights: &CqWeights) -> Result<FactorizedTridiagonal> {
    check_weights(config, weights)?;
    assemble_step_matrix(config, weights).factorize()
}

fn check_weights(config: &SolverConfig, weights: &CqWeights) -> Result<()> {
    let beta = 1.0 - config.alpha();
    if (weights.beta() - beta).abs() > 1e-14 {
        return Err(Error::Incompatible(format!(
            "weights have order {}, scheme needs {beta}",
            weights.beta()
        )));
    }
    if (weights.tau() - config.tau()).abs() > 1e-14 * config.tau() {
        return Err(Error::Incompatible(format!(
            "weights generated for step {}, config has {}",
            weights.tau(),
            config.tau()
        )));
    }
    if weights.len() < config.n_steps() {
        return Err(Error::Incompatible(format!(
            "{} weights cannot cover {} steps",
            weights.len(),
            config.n_steps()
        )));
    }
    Ok(())
}

/// One trajectory's stepping state: the factorized matrix, the growing
/// history, and the cached products `K u^j` the convolution reuses.
pub struct Stepper<'a> {
    config: &'a SolverConfig,
    weights: &'a CqWeights,
    mass: TridiagonalMatrix,
    stiffness: TridiagonalMatrix,
    factorized: FactorizedTridiagonal,
    states: Vec<FemFunction>,
    stiffness_products: Vec<Vec<f64>>,
    factorizations: u64,
}

impl<'a> Stepper<'a> {
    /// Prepares a run: assembles the matrices and factorizes the step
    /// matrix, exactly once.
    pub fn new(config: &'a SolverConfig, weights: &'a CqWeights) -> Result<Self> {
        check_weights(config, weights)?;
        let mesh = config.mesh();
        let mass = assemble_mass(&mesh);
        let stiffness = assemble_stiffness(&mesh);
        let factorized = assemble_step_matrix(config, weights).factorize()?;
        Ok(Stepper {
            config,
            weights,
            mass,
            stiffness,
            factorized,
            states: vec![config.initial_data().clone()],
            stiffness_products: Vec::with_capacity(config.n_steps()),
            factorizations: 1,
        })
    }

    /// Steps completed so far.
    pub fn step_index(&self) -> usize {
        self.states.len() - 1
    }

    /// How many matrix factorizations this stepper has performed; stays 1
    /// for the whole run.
    pub fn factorizations(&self) -> u64 {
        self.factorizations
    }

    /// Advances one step with increment load `b^n` (the stepper applies
    /// the `1/tau` scaling itself) and returns the new state.
    ///
    /// # Errors
    ///
    /// Rejects loads of the wrong dimension, stepping past `N`, and
    /// non-finite states.
    pub fn advance(&mut self, load: &[f64]) -> Result<&FemFunction> {
        let n = self.states.len();
        if n > self.config.n_steps() {
            return Err(Error::InvalidParameter(format!(
                "run is complete after {} steps",
                self.config.n_steps()
            )));
        }
        let dim = self.config.mesh().n_interior();
        if load.len() != dim {
            return Err(Error::Incompatible(format!(
                "load has {} entries for {} interior nodes",
                load.len(),
                dim
            )));
        }
        let tau = self.config.tau();
        let mut rhs = self.mass.apply(self.states[n - 1].coeffs());
        for r in rhs.iter_mut() {
            *r /= tau;
        }
        for i in 1..n {
            let d_i = self.weights[i];
            for (r, ku) in rhs.iter_mut().zip(&self.stiffness_products[n - i - 1]) {
                *r -= d_i * ku;
            }
        }
        for (r, b) in rhs.iter_mut().zip(load) {
            *r += b / tau;
        }
        let coeffs = self.factorized.solve(&rhs);
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::SingularSystem(format!(
                "non-finite state at step {n}"
            )));
        }
        self.stiffness_products.push(self.stiffness.apply(&coeffs));
        self.states.push(FemFunction::new(self.config.mesh(), coeffs)?);
        Ok(self.states.last().expect("state just pushed"))
    }

    /// Finishes the run and hands over the history.
    pub fn into_history(self) -> SolutionHistory {
        SolutionHistory {
            states: self.states,
        }
    }
}

/// Runs the combined scheme over all `N` steps and returns the full
/// history `u^0 .. u^N`.
pub fn run(config: &SolverConfig, weights: &CqWeights) -> Result<SolutionHistory> {
    let mut stepper = Stepper::new(config, weights)?;
    let loads = config
        .noise()
        .map(|traj| traj.all_loads(&config.mesh()));
    let zero = vec![0.0; config.mesh().n_interior()];
    for n in 1..=config.n_steps() {
        let load = loads
            .as_ref()
            .map(|l| l[n - 1].as_slice())
            .unwrap_or(&zero);
        stepper.advance(load)?;
    }
    debug_assert_eq!(stepper.factorizations(), 1);
    Ok(stepper.into_history())
}

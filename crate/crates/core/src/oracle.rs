//! Independent reference solutions used to measure discretization error.
//!
//! Three references with distinct error content:
//!
//! * [`exact_deterministic`]: the continuum mild solution of the
//!   noise-free problem, `c_j -> c_j E_alpha(-kappa_j t^alpha)` with
//!   `kappa_j = (j pi)^2`; no discretization error at all.
//! * [`spectral_deterministic_reference`] and
//!   [`spectral_stochastic_reference`]: per-mode scalar runs of the same
//!   time discretization as the full solver, with exact eigenvalues; they
//!   carry the solver's temporal error but no spatial error, so the
//!   distance of a finite element solution to them isolates the spatial
//!   contribution.
//! * [`semidiscrete_ml_reference`]: the exact-in-time solution of the
//!   space-discretized problem, via the generalized eigenpairs of the P1
//!   mass and stiffness matrices; distance to it isolates the temporal
//!   contribution.

use std::f64::consts::PI;

use crate::cq::bdf1_weights;
use crate::fem::{FemFunction, Mesh};
use crate::mittag_leffler::mittag_leffler;
use crate::noise::{mode_load_coefficients, FgnTrajectory, NoiseSpec};
use crate::{Error, Result};

/// Default mode count of oracle expansions when only a noise truncation
/// `K` is given; studies use `max(K, DEFAULT_ORACLE_MODES)`.
pub const DEFAULT_ORACLE_MODES: usize = 1000;

/// A function in the span of the Dirichlet eigenbasis, stored as
/// coefficients `c_j` against `phi_j = sqrt(2) sin(j pi x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineExpansion {
    coefficients: Vec<f64>,
}

impl SineExpansion {
    /// Wraps coefficients `c_1..c_J`; all must be finite.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "expansion coefficients must be finite".into(),
            ));
        }
        Ok(SineExpansion { coefficients })
    }

    /// The zero function, truncated at `n_modes`.
    pub fn zero(n_modes: usize) -> Self {
        SineExpansion {
            coefficients: vec![0.0; n_modes],
        }
    }

    /// Coefficient slice `c_1..c_J`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Coefficient of mode `j` (1-based); zero beyond the truncation.
    pub fn coefficient(&self, j: usize) -> f64 {
        assert!(j >= 1, "mode index starts at 1");
        self.coefficients.get(j - 1).copied().unwrap_or(0.0)
    }

    /// Truncation `J`.
    pub fn n_modes(&self) -> usize {
        self.coefficients.len()
    }

    /// L2 norm by Parseval: `sqrt(sum c_j^2)`.
    pub fn l2_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Point value `sum_j c_j sqrt(2) sin(j pi x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * std::f64::consts::SQRT_2 * ((i + 1) as f64 * PI * x).sin())
            .sum()
    }
}

/// Sine coefficients of `G_0(x) = x(1 - x)`: `c_j = 4 sqrt(2) / (j pi)^3`
/// for odd `j`, zero for even `j`.
pub fn parabola_expansion(n_modes: usize) -> SineExpansion {
    let coefficients = (1..=n_modes)
        .map(|j| {
            if j % 2 == 1 {
                4.0 * std::f64::consts::SQRT_2 / (j as f64 * PI).powi(3)
            } else {
                0.0
            }
        })
        .collect();
    SineExpansion { coefficients }
}

/// Exact load vector of `G_0(x) = x(1 - x)` against the interior hat
/// functions: `(G_0, chi_j) = h (x_j (1 - x_j) - h^2 / 6)`.
pub fn parabola_load(mesh: &Mesh) -> Vec<f64> {
    let h = mesh.h();
    (1..mesh.n_intervals())
        .map(|j| {
            let x = j as f64 * h;
            h * (x * (1.0 - x) - h * h / 6.0)
        })
        .collect()
}

/// Exact load vector of a sine expansion against the interior hat
/// functions, `l_j = sum_k c_k (phi_k, chi_j)`.
pub fn expansion_load(expansion: &SineExpansion, mesh: &Mesh) -> Vec<f64> {
    let mut load = vec![0.0; mesh.n_interior()];
    for j in 1..=expansion.n_modes() {
        let cj = expansion.coefficient(j);
        if cj != 0.0 {
            for (b, l) in load.iter_mut().zip(mode_load_coefficients(j, mesh)) {
                *b += cj * l;
            }
        }
    }
    load
}

/// Continuum mild solution of the noise-free problem at time `t`:
/// coefficient `j` becomes `c_j E_alpha(-(j pi)^2 t^alpha)`.
///
/// # Panics
///
/// Panics if `t < 0` or `alpha` is outside `(0, 1]`.
pub fn exact_deterministic(expansion: &SineExpansion, alpha: f64, t: f64) -> SineExpansion {
    assert!(t >= 0.0, "time must be nonnegative, got {t}");
    let t_alpha = t.powf(alpha);
    let coefficients = expansion
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let kappa = ((i + 1) as f64 * PI).powi(2);
            c * mittag_leffler(alpha, kappa * t_alpha)
        })
        .collect();
    SineExpansion { coefficients }
}

/// Runs the scalar convolution-quadrature recursion
/// `(g^n - g^{n-1})/tau + sum_{i=0}^{n-1} d_i kappa g^{n-i} = f_n / tau`
/// to step `n_steps` and returns `g^N`. The history sum never reaches
/// `g^0`, matching the full scheme where initial data enters only through
/// the first step's mass term.
fn scalar_recursion(
    kappa: f64,
    g0: f64,
    forcing: impl Fn(usize) -> f64,
    weights: &[f64],
    tau: f64,
    n_steps: usize,
) -> f64 {
    let mut g = Vec::with_capacity(n_steps + 1);
    g.push(g0);
    let diag = 1.0 / tau + weights[0] * kappa;
    for n in 1..=n_steps {
        let mut history = 0.0;
        for i in 1..n {
            history += weights[i] * g[n - i];
        }
        let rhs = g[n - 1] / tau - kappa * history + forcing(n) / tau;
        g.push(rhs / diag);
    }
    g[n_steps]
}

/// Time-discrete reference for the noise-free problem: every mode of
/// `expansion` evolves by the scalar recursion with exact
/// `kappa_j = (j pi)^2`, sharing the solver's temporal error while adding
/// no spatial one.
///
/// # Panics
///
/// Panics if `alpha` is outside `(0, 1)`, `tau <= 0`, or `n_steps == 0`.
pub fn spectral_deterministic_reference(
    expansion: &SineExpansion,
    alpha: f64,
    n_steps: usize,
    tau: f64,
) -> SineExpansion {
    assert!(n_steps >= 1, "need at least one step");
    let weights = bdf1_weights(1.0 - alpha, tau, n_steps);
    let coefficients = expansion
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let kappa = ((i + 1) as f64 * PI).powi(2);
            scalar_recursion(kappa, c, |_| 0.0, weights.weights(), tau, n_steps)
        })
        .collect();
    SineExpansion { coefficients }
}

/// Time-discrete reference for the noise-driven problem with zero initial
/// data: mode `j` solves the scalar recursion forced by row `j` of `traj`,
/// with exact `kappa_j`. Spatial error is absent, so the distance of a
/// finite element solution (same trajectory, same step) to this expansion
/// isolates the spatial contribution.
pub fn spectral_stochastic_reference(
    spec: &NoiseSpec,
    alpha: f64,
    n_steps: usize,
    traj: &FgnTrajectory,
) -> Result<SineExpansion> {
    if traj.k_modes() != spec.k_modes() {
        return Err(Error::Incompatible(format!(
            "trajectory has {} modes, spec wants {}",
            traj.k_modes(),
            spec.k_modes()
        )));
    }
    if traj.n_steps() != n_steps {
        return Err(Error::Incompatible(format!(
            "trajectory has {} steps, reference wants {n_steps}",
            traj.n_steps()
        )));
    }
    let tau = traj.dt();
    let weights = bdf1_weights(1.0 - alpha, tau, n_steps);
    let coefficients = (1..=spec.k_modes())
        .map(|j| {
            let kappa = (j as f64 * PI).powi(2);
            let row = traj.row(j);
            scalar_recursion(kappa, 0.0, |n| row[n - 1], weights.weights(), tau, n_steps)
        })
        .collect();
    Ok(SineExpansion { coefficients })
}

/// Exact L2 distance between a finite element function and a sine
/// expansion, via `||u||^2 - 2 (u, v) + ||v||^2` with every pairing in
/// closed form.
pub fn l2_distance(u: &FemFunction, v: &SineExpansion) -> f64 {
    let mesh = u.mesh();
    let coeffs = u.coeffs();
    let mass = crate::fem::assemble_mass(&mesh);
    let mc = mass.apply(coeffs);
    let u_sq: f64 = coeffs.iter().zip(&mc).map(|(a, b)| a * b).sum();
    let mut cross = 0.0;
    for j in 1..=v.n_modes() {
        let vj = v.coefficient(j);
        if vj != 0.0 {
            let loads = mode_load_coefficients(j, &mesh);
            let pairing: f64 = loads.iter().zip(coeffs).map(|(l, c)| l * c).sum();
            cross += vj * pairing;
        }
    }
    let v_sq: f64 = v.coefficients.iter().map(|c| c * c).sum();
    (u_sq - 2.0 * cross + v_sq).max(0.0).sqrt()
}

/// Generalized eigenvalue `lambda_p` of the P1 stiffness/mass pencil on a
/// uniform mesh: `(6/h^2) (1 - cos(p pi h)) / (2 + cos(p pi h))`.
fn discrete_eigenvalue(p: usize, mesh: &Mesh) -> f64 {
    let h = mesh.h();
    let c = (p as f64 * PI * h).cos();
    6.0 / (h * h) * (1.0 - c) / (2.0 + c)
}

/// Exact-in-time solution of the space-discretized noise-free problem at
/// time `t`, starting from the L2 projection of `expansion`. Each
/// generalized eigenmode of the pencil decays by
/// `E_alpha(-lambda_p t^alpha)`, so the only discretization error left is
/// spatial; distance of a time-stepped solution at the same mesh to this
/// reference isolates the temporal contribution.
///
/// # Panics
///
/// Panics if `t < 0` or `alpha` is outside `(0, 1]`.
pub fn semidiscrete_ml_reference(
    expansion: &SineExpansion,
    alpha: f64,
    t: f64,
    mesh: &Mesh,
) -> FemFunction {
    assert!(t >= 0.0, "time must be nonnegative, got {t}");
    let n = mesh.n_interior();
    let h = mesh.h();
    let load = expansion_load(expansion, mesh);
    let t_alpha = t.powf(alpha);
    let mut nodal = vec![0.0; n];
    for p in 1..=n {
        // v_p[j] = sin(p pi j h); v_p^T M v_p = (2 + cos(p pi h)) / 6.
        let norm_sq = (2.0 + (p as f64 * PI * h).cos()) / 6.0;
        let projected: f64 = (1..=n)
            .map(|j| (p as f64 * PI * j as f64 * h).sin() * load[j - 1])
            .sum();
        let amplitude = projected / norm_sq
            * mittag_leffler(alpha, discrete_eigenvalue(p, mesh) * t_alpha);
        for j in 1..=n {
            nodal[j - 1] += amplitude * (p as f64 * PI * j as f64 * h).sin();
        }
    }
    FemFunction::new(*mesh, nodal).expect("nodal values are finite")
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::fem::{assemble_mass, l2_norm, l2_project};
    use crate::noise::sample_trajectory;

    fn simpson_coefficient(f: impl Fn(f64) -> f64, j: usize) -> f64 {
        let panels = 4096;
        let w = 1.0 / panels as f64;
        let phi = |x: f64| std::f64::consts::SQRT_2 * (j as f64 * PI * x).sin();
        let mut acc = 0.0;
        for p in 0..panels {
            let x0 = p as f64 * w;
            let x1 = x0 + 0.5 * w;
            let x2 = x0 + w;
            acc += w / 6.0 * (f(x0) * phi(x0) + 4.0 * f(x1) * phi(x1) + f(x2) * phi(x2));
        }
        acc
    }

    #[test]
    fn parabola_coefficients_frozen_and_by_quadrature() {
        let g0 = parabola_expansion(6);
        assert!((g0.coefficient(1) - 0.18244222961109435).abs() < 1e-16);
        assert!((g0.coefficient(3) - 0.0067571196152257168).abs() < 1e-17);
        assert!((g0.coefficient(5) - 0.0014595378368887548).abs() < 1e-17);
        assert_eq!(g0.coefficient(2), 0.0);
        assert_eq!(g0.coefficient(4), 0.0);
        let parabola = |x: f64| x * (1.0 - x);
        for j in 1..=6 {
            let quad = simpson_coefficient(parabola, j);
            assert!(
                (g0.coefficient(j) - quad).abs() < 1e-10,
                "mode {j}: {} vs {quad}",
                g0.coefficient(j)
            );
        }
    }

    #[test]
    fn parabola_load_frozen_and_by_quadrature() {
        let quarter = Mesh::new(4).unwrap();
        let load = parabola_load(&quarter);
        assert!((load[0] - 0.044270833333333333).abs() < 1e-17);
        let eighth = Mesh::new(8).unwrap();
        let load = parabola_load(&eighth);
        assert!((load[2] - 0.028971354166666667).abs() < 1e-17);
        let hat = |mesh: &Mesh, j: usize, x: f64| {
            (1.0 - (x - j as f64 * mesh.h()).abs() / mesh.h()).max(0.0)
        };
        for j in 1..8 {
            let mut quad = 0.0;
            let panels = 2048;
            let w = 1.0 / panels as f64;
            for p in 0..panels {
                let x0 = p as f64 * w;
                let x1 = x0 + 0.5 * w;
                let x2 = x0 + w;
                let f = |x: f64| x * (1.0 - x) * hat(&eighth, j, x);
                quad += w / 6.0 * (f(x0) + 4.0 * f(x1) + f(x2));
            }
            assert!((load[j - 1] - quad).abs() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn parseval_matches_integral_of_parabola() {
        // ||x(1-x)||^2 = 1/30; the tail beyond 99 modes is ~1e-13.
        let norm_sq = parabola_expansion(99).l2_norm().powi(2);
        assert!((norm_sq - 1.0 / 30.0).abs() < 1e-11, "got {norm_sq}");
    }

    #[test]
    fn evaluate_sums_modes() {
        let e = SineExpansion::new(vec![1.0, 0.5]).unwrap();
        let expected = std::f64::consts::SQRT_2
            * ((PI * 0.3).sin() + 0.5 * (2.0 * PI * 0.3).sin());
        assert!((e.evaluate(0.3) - expected).abs() < 1e-15);
        assert!(e.evaluate(0.0).abs() < 1e-15);
        assert!(e.evaluate(1.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_nonfinite_coefficients() {
        assert!(SineExpansion::new(vec![1.0, f64::NAN]).is_err());
        assert!(SineExpansion::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn exact_deterministic_identity_at_t_zero() {
        let g0 = parabola_expansion(10);
        let v = exact_deterministic(&g0, 0.7, 0.0);
        assert_eq!(v, g0);
    }

    #[test]
    fn exact_deterministic_alpha_one_single_mode() {
        // exp(-pi^2 * 0.01) computed with mpmath.
        let e = SineExpansion::new(vec![1.0]).unwrap();
        let v = exact_deterministic(&e, 1.0, 0.01);
        assert!((v.coefficient(1) - 0.90601805578892297).abs() < 1e-15);
    }

    #[test]
    fn exact_deterministic_frozen_values() {
        // Mode values and norms of the 99-mode truncation at T = 0.01,
        // computed with mpmath at 45-digit precision.
        let g0 = parabola_expansion(99);
        let cases = [
            (0.3, 0.044988769370327771, 0.00022725536560148835, 0.044989347069768466, 0.063324011156893017),
            (0.5, 0.078664084132927977, 0.00042651526236185756, 0.078665247738981453, 0.11068486709973032),
            (0.8, 0.14087334523507816, 0.0011203512564717216, 0.14087781521586706, 0.19771928555785071),
            (1.0, 0.16529595416603998, 0.002779670264376801, 0.16531937082141566, 0.23000192566638501),
        ];
        for (alpha, v1, v3, norm, midpoint) in cases {
            let v = exact_deterministic(&g0, alpha, 0.01);
            assert!((v.coefficient(1) - v1).abs() < 1e-12 * v1, "alpha={alpha}");
            assert!((v.coefficient(3) - v3).abs() < 1e-12 * v3, "alpha={alpha}");
            assert!((v.l2_norm() - norm).abs() < 1e-12 * norm, "alpha={alpha}");
            assert!(
                (v.evaluate(0.5) - midpoint).abs() < 1e-12 * midpoint,
                "alpha={alpha}"
            );
        }
    }

    #[test]
    fn spectral_deterministic_frozen_values() {
        let g0 = parabola_expansion(3);
        let v = spectral_deterministic_reference(&g0, 0.3, 4, 0.0025);
        assert!((v.coefficient(1) - 0.04660719065797089).abs() < 1e-16);
        assert_eq!(v.coefficient(2), 0.0);
        assert!((v.coefficient(3) - 0.0002389114174496558).abs() < 1e-18);
    }

    #[test]
    fn spectral_deterministic_converges_to_exact_at_first_order() {
        let g0 = parabola_expansion(5);
        let exact = exact_deterministic(&g0, 0.5, 0.01);
        let err = |n: usize| {
            let v = spectral_deterministic_reference(&g0, 0.5, n, 0.01 / n as f64);
            (0..5)
                .map(|i| (v.coefficients()[i] - exact.coefficients()[i]).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let e1 = err(256);
        let e2 = err(512);
        let rate = (e1 / e2).log2();
        assert!((rate - 1.0).abs() < 0.1, "temporal rate {rate}");
    }

    #[test]
    fn stochastic_reference_zero_trajectory() {
        let spec = NoiseSpec::new(0.75, 0.0, 3).unwrap();
        let traj = FgnTrajectory::from_rows(vec![vec![0.0; 8]; 3], 0.125).unwrap();
        let v = spectral_stochastic_reference(&spec, 0.5, 8, &traj).unwrap();
        assert_eq!(v.coefficients(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn stochastic_reference_two_step_hand_computation() {
        // K = 1, N = 2, alpha = 0.5, tau = 0.5, increments 0.3 and -0.2.
        let spec = NoiseSpec::new(0.75, 0.0, 1).unwrap();
        let traj = FgnTrajectory::from_rows(vec![vec![0.3, -0.2]], 0.5).unwrap();
        let v = spectral_stochastic_reference(&spec, 0.5, 2, &traj).unwrap();
        let tau = 0.5f64;
        let kappa = PI * PI;
        let d0 = tau.powf(-0.5);
        let d1 = -0.5 * d0;
        let diag = 1.0 / tau + d0 * kappa;
        let g1 = (0.3 / tau) / diag;
        let g2 = (g1 / tau - kappa * d1 * g1 - 0.2 / tau) / diag;
        assert!((v.coefficient(1) - g2).abs() < 1e-13, "{} vs {g2}", v.coefficient(1));
    }

    #[test]
    fn stochastic_reference_is_linear_in_the_trajectory() {
        let spec = NoiseSpec::new(0.75, -0.5, 2).unwrap();
        let traj = sample_trajectory(&spec, 8, 0.125, 3, 0).unwrap();
        let scaled_rows: Vec<Vec<f64>> = (1..=2)
            .map(|k| traj.row(k).iter().map(|w| 2.5 * w).collect())
            .collect();
        let scaled = FgnTrajectory::from_rows(scaled_rows, 0.125).unwrap();
        let v = spectral_stochastic_reference(&spec, 0.4, 8, &traj).unwrap();
        let v_scaled = spectral_stochastic_reference(&spec, 0.4, 8, &scaled).unwrap();
        for j in 1..=2 {
            assert!((v_scaled.coefficient(j) - 2.5 * v.coefficient(j)).abs() < 1e-14);
        }
    }

    #[test]
    fn stochastic_reference_rejects_mismatches() {
        let spec = NoiseSpec::new(0.75, 0.0, 2).unwrap();
        let traj = FgnTrajectory::from_rows(vec![vec![0.0; 4]], 0.25).unwrap();
        assert!(spectral_stochastic_reference(&spec, 0.5, 4, &traj).is_err());
        let traj = FgnTrajectory::from_rows(vec![vec![0.0; 4]; 2], 0.25).unwrap();
        assert!(spectral_stochastic_reference(&spec, 0.5, 8, &traj).is_err());
    }

    #[test]
    fn distance_to_zero_expansion_is_fem_norm() {
        let mesh = Mesh::new(16).unwrap();
        let u = l2_project(&parabola_load(&mesh), &mesh).unwrap();
        let d = l2_distance(&u, &SineExpansion::zero(5));
        assert!((d - l2_norm(&u)).abs() < 1e-14);
    }

    #[test]
    fn distance_satisfies_projection_pythagoras() {
        // For the L2 projection P_h v of v itself,
        // ||v - P_h v||^2 = ||v||^2 - ||P_h v||^2.
        let v = parabola_expansion(99);
        let mesh = Mesh::new(32).unwrap();
        let u = l2_project(&expansion_load(&v, &mesh), &mesh).unwrap();
        let direct = l2_distance(&u, &v).powi(2);
        let pythagoras = v.l2_norm().powi(2) - l2_norm(&u).powi(2);
        assert!(
            (direct - pythagoras).abs() < 1e-12,
            "{direct} vs {pythagoras}"
        );
    }

    #[test]
    fn parseval_consistent_with_fem_norm_of_projection() {
        // The norm gap is bounded by the O(h^2) projection error; by
        // Pythagoras it actually shrinks like its square, so halving h
        // divides the gap by ~16.
        let v = parabola_expansion(99);
        let gap = |m_x: usize| {
            let mesh = Mesh::new(m_x).unwrap();
            let u = l2_project(&expansion_load(&v, &mesh), &mesh).unwrap();
            (l2_norm(&u) - v.l2_norm()).abs()
        };
        let coarse = gap(16);
        let fine = gap(32);
        assert!(coarse < (1.0f64 / 16.0).powi(2), "gap {coarse}");
        let ratio = coarse / fine;
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn eigenvector_mass_normalization_closed_form() {
        let mesh = Mesh::new(8).unwrap();
        let mass = assemble_mass(&mesh);
        let n = mesh.n_interior();
        for p in 1..=n {
            let v: Vec<f64> = (1..=n)
                .map(|j| (p as f64 * PI * j as f64 * mesh.h()).sin())
                .collect();
            let mv = mass.apply(&v);
            let numeric: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
            let closed = (2.0 + (p as f64 * PI * mesh.h()).cos()) / 6.0;
            assert!((numeric - closed).abs() < 1e-14, "p={p}");
        }
    }

    #[test]
    fn discrete_eigenvalues_frozen_values() {
        let mesh = Mesh::new(8).unwrap();
        assert!((discrete_eigenvalue(1, &mesh) - 9.9970806562472666).abs() < 1e-12);
        assert!((discrete_eigenvalue(4, &mesh) - 192.0).abs() < 1e-12);
        assert!((discrete_eigenvalue(7, &mesh) - 686.51211718736556).abs() < 1e-10);
    }

    #[test]
    fn semidiscrete_reference_at_t_zero_is_projection() {
        let v = parabola_expansion(99);
        let mesh = Mesh::new(16).unwrap();
        let u0 = semidiscrete_ml_reference(&v, 0.5, 0.0, &mesh);
        let projected = l2_project(&expansion_load(&v, &mesh), &mesh).unwrap();
        for (a, b) in u0.coeffs().iter().zip(projected.coeffs()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn expansion_load_of_parabola_approaches_exact_load() {
        // The 999-mode truncation reproduces the closed-form parabola
        // load to the size of the dropped tail.
        let mesh = Mesh::new(8).unwrap();
        let truncated = expansion_load(&parabola_expansion(999), &mesh);
        let exact = parabola_load(&mesh);
        for (a, b) in truncated.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn semidiscrete_reference_converges_spatially_at_second_order() {
        let v = parabola_expansion(999);
        let exact = exact_deterministic(&v, 0.5, 0.01);
        let err = |m_x: usize| {
            let mesh = Mesh::new(m_x).unwrap();
            l2_distance(&semidiscrete_ml_reference(&v, 0.5, 0.01, &mesh), &exact)
        };
        let e8 = err(8);
        let e16 = err(16);
        let e32 = err(32);
        let r1 = (e8 / e16).log2();
        let r2 = (e16 / e32).log2();
        assert!((r1 - 2.0).abs() < 0.15, "rate {r1}");
        assert!((r2 - 2.0).abs() < 0.15, "rate {r2}");
    }
}

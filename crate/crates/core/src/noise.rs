//! Spectral synthesis of the Q-fractional noise and its finite element
//! loads.
//!
//! The noise is the truncated expansion
//!
//! ```text
//! W^H_Q(x, t) = sum_{k=1}^{K} sqrt(Lambda_k) phi_k(x) W^H_k(t),
//! Lambda_k = k^m,   phi_k(x) = sqrt(2) sin(k pi x),
//! ```
//!
//! with independent one-dimensional fBm processes `W^H_k`. A sampled
//! trajectory stores the matrix of scaled increments `sqrt(Lambda_k)
//! (W^H_k(t_n) - W^H_k(t_{n-1}))`; the discrete scheme consumes it through
//! the exact load pairing `(phi_k, chi_j)` with the hat function at node
//! `x_j`:
//!
//! ```text
//! (phi_k, chi_j) = sqrt(2) sin(k pi x_j) (2 - 2 cos(k pi h)) / (k^2 pi^2 h).
//! ```
//!
//! The sine is evaluated after integer reduction of `k j / M_x`, so the
//! aliasing identity `k h in Z  =>  zero load` holds exactly rather than up
//! to roundoff.

use std::f64::consts::PI;

use crate::fgn::{FgnParams, FgnSampler};
use crate::fem::Mesh;
use crate::streams::trajectory_rng;
use crate::{Error, Result};

/// Specification of the noise covariance: Hurst index, eigenvalue exponent
/// `m`, and mode truncation `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    hurst: f64,
    m: f64,
    k_modes: usize,
}

impl NoiseSpec {
    /// Validates `hurst` in `[1/2, 1)` and `K >= 1`; any real `m` is
    /// accepted (regimes outside the theory's range are the caller's
    /// responsibility).
    pub fn new(hurst: f64, m: f64, k_modes: usize) -> Result<Self> {
        if !(0.5..1.0).contains(&hurst) {
            return Err(Error::InvalidParameter(format!(
                "hurst must lie in [0.5, 1), got {hurst}"
            )));
        }
        if k_modes == 0 {
            return Err(Error::InvalidParameter("K must be at least 1".into()));
        }
        if !m.is_finite() {
            return Err(Error::InvalidParameter(format!("m must be finite, got {m}")));
        }
        Ok(NoiseSpec { hurst, m, k_modes })
    }

    /// Hurst index.
    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    /// Eigenvalue exponent of `Lambda_k = k^m`.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Mode truncation `K`.
    pub fn k_modes(&self) -> usize {
        self.k_modes
    }

    /// Noise regularity exponent `rho = (1 + m)/4` entering the predicted
    /// convergence rates.
    pub fn theoretical_rho(&self) -> f64 {
        (1.0 + self.m) / 4.0
    }
}

/// Eigenpair `(Lambda_k, phi_k)` of the covariance operator.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn eigenpair(k: usize, m: f64) -> (f64, impl Fn(f64) -> f64) {
    assert!(k >= 1, "mode index starts at 1");
    let lambda = (k as f64).powf(m);
    let phi = move |x: f64| std::f64::consts::SQRT_2 * (k as f64 * PI * x).sin();
    (lambda, phi)
}

/// One sampled noise trajectory: the `K x N` matrix of scaled mode
/// increments `sqrt(Lambda_k) (W^H_k(t_n) - W^H_k(t_{n-1}))`.
#[derive(Debug, Clone, PartialEq)]
pub struct FgnTrajectory {
    k_modes: usize,
    n_steps: usize,
    dt: f64,
    data: Vec<f64>,
}

impl FgnTrajectory {
    /// Builds a trajectory from row-major scaled increments.
    pub fn from_rows(rows: Vec<Vec<f64>>, dt: f64) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidParameter(
                "trajectory needs at least one mode and one step".into(),
            ));
        }
        let n_steps = rows[0].len();
        if rows.iter().any(|r| r.len() != n_steps) {
            return Err(Error::Incompatible("ragged trajectory rows".into()));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        Ok(FgnTrajectory {
            k_modes: rows.len(),
            n_steps,
            dt,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Number of modes `K`.
    pub fn k_modes(&self) -> usize {
        self.k_modes
    }

    /// Number of time steps `N`.
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Grid step of the increments.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Scaled increment of mode `k` (1-based) over step `n` (1-based).
    ///
    /// # Panics
    ///
    /// Panics on out-of-range indices.
    pub fn value(&self, k: usize, n: usize) -> f64 {
        assert!((1..=self.k_modes).contains(&k), "mode {k} out of range");
        assert!((1..=self.n_steps).contains(&n), "step {n} out of range");
        self.data[(k - 1) * self.n_steps + (n - 1)]
    }

    /// All increments of mode `k` (1-based).
    ///
    /// # Panics
    ///
    /// Panics if `k` is out of range.
    pub fn row(&self, k: usize) -> &[f64] {
        assert!((1..=self.k_modes).contains(&k), "mode {k} out of range");
        &self.data[(k - 1) * self.n_steps..k * self.n_steps]
    }

    /// Finite element loads `b^n` of every step on `mesh`, computed with
    /// the mode coefficient matrix assembled once.
    pub fn all_loads(&self, mesh: &Mesh) -> Vec<Vec<f64>> {
        let coeffs: Vec<Vec<f64>> = (1..=self.k_modes)
            .map(|k| mode_load_coefficients(k, mesh))
            .collect();
        (1..=self.n_steps)
            .map(|n| {
                let mut b = vec![0.0; mesh.n_interior()];
                for k in 1..=self.k_modes {
                    let w = self.value(k, n);
                    if w != 0.0 {
                        for (bj, cj) in b.iter_mut().zip(&coeffs[k - 1]) {
                            *bj += w * cj;
                        }
                    }
                }
                b
            })
            .collect()
    }
}

/// Samples one noise trajectory; mode `k` uses the dedicated stream
/// `(master_seed, trajectory_index, k)`, so trajectories are reproducible
/// in any execution order.
pub fn sample_trajectory(
    spec: &NoiseSpec,
    n_steps: usize,
    dt: f64,
    master_seed: u64,
    trajectory_index: u64,
) -> Result<FgnTrajectory> {
    let params = FgnParams::new(spec.hurst, n_steps, dt)?;
    let sampler = FgnSampler::new(params)?;
    let mut data = Vec::with_capacity(spec.k_modes * n_steps);
    for k in 1..=spec.k_modes {
        let scale = (k as f64).powf(spec.m).sqrt();
        let mut rng = trajectory_rng(master_seed, trajectory_index, k as u64);
        let increments = sampler.sample(&mut rng)?;
        data.extend(increments.values().iter().map(|v| v * scale));
    }
    Ok(FgnTrajectory {
        k_modes: spec.k_modes,
        n_steps,
        dt,
        data,
    })
}

/// Sine value `sin(pi q / m_x)` with exact zeros at integer multiples of
/// pi, via integer reduction of `q mod 2 m_x`.
fn reduced_sin(numerator: usize, m_x: usize) -> f64 {
    let q = numerator % (2 * m_x);
    if q == 0 || q == m_x {
        0.0
    } else {
        (PI * q as f64 / m_x as f64).sin()
    }
}

/// Exact L2 pairing `(phi_k, chi_j)` of mode `k` with every interior hat
/// function of `mesh`.
///
/// # Panics
///
/// Panics if `k == 0`.
pub fn mode_load_coefficients(k: usize, mesh: &Mesh) -> Vec<f64> {
    assert!(k >= 1, "mode index starts at 1");
    let m_x = mesh.n_intervals();
    let h = mesh.h();
    let cos_khpi = {
        let q = k % (2 * m_x);
        (PI * q as f64 / m_x as f64).cos()
    };
    let factor = std::f64::consts::SQRT_2 * (2.0 - 2.0 * cos_khpi)
        / ((k * k) as f64 * PI * PI * h);
    (1..m_x).map(|j| factor * reduced_sin(k * j, m_x)).collect()
}

/// Finite element load `b^n_j = sum_k traj(k, n) (phi_k, chi_j)` of the
/// step-`n` noise increment (the stepper divides by `tau` itself).
///
/// Convenience form that reassembles the mode coefficients per call; batch
/// consumers use [`FgnTrajectory::all_loads`].
///
/// # Panics
///
/// Panics if `n` is outside `1..=N`.
pub fn load_increment(traj: &FgnTrajectory, n: usize, mesh: &Mesh) -> Vec<f64> {
    assert!(
        (1..=traj.n_steps()).contains(&n),
        "step {n} out of range 1..={}",
        traj.n_steps()
    );
    let mut b = vec![0.0; mesh.n_interior()];
    for k in 1..=traj.k_modes() {
        let w = traj.value(k, n);
        if w != 0.0 {
            for (bj, cj) in b.iter_mut().zip(mode_load_coefficients(k, mesh)) {
                *bj += w * cj;
            }
        }
    }
    b
}

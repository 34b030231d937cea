//! Backward-Euler convolution quadrature weights.
//!
//! The Riemann-Liouville derivative of order `beta` is discretized by the
//! weights of the generating function `((1 - z)/tau)^beta`:
//!
//! ```text
//! ((1 - z)/tau)^beta = sum_{i>=0} d_i z^i,
//! d_i = tau^{-beta} (-1)^i binom(beta, i).
//! ```
//!
//! The weights are generated by the multiplicative recurrence
//! `d_i = d_{i-1} (i - 1 - beta)/i`, which is free of the catastrophic
//! cancellation a direct binomial evaluation suffers from for large `i`.
//!
//! The module also houses the closed-form convergence rates the convolution
//! quadrature scheme is predicted to attain for this equation.

/// Convolution quadrature weights `d_0 .. d_N` for one fractional order.
#[derive(Debug, Clone, PartialEq)]
pub struct CqWeights {
    beta: f64,
    tau: f64,
    weights: Vec<f64>,
}

impl CqWeights {
    /// The fractional order `beta` the weights discretize.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The time step the weights were generated for.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// All weights `d_0 ..= d_N`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of stored weights, `N + 1`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// True when no weights are stored (never the case for constructed
    /// instances; present for container-API completeness).
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl std::ops::Index<usize> for CqWeights {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.weights[i]
    }
}

/// Computes the backward-Euler convolution quadrature weights of order
/// `beta` for step size `tau`, up to index `n`.
///
/// # Arguments
///
/// * `beta` - fractional order; the solver uses `beta = 1 - alpha` in
///   `(0,1)`, but any real order is accepted (`beta = 1` reproduces the
///   backward difference, `beta = 0` the identity).
/// * `tau` - positive time step.
/// * `n` - largest weight index; the result holds `n + 1` weights.
///
/// # Panics
///
/// Panics if `tau <= 0` or `tau` is not finite.
pub fn bdf1_weights(beta: f64, tau: f64, n: usize) -> CqWeights {
    assert!(tau > 0.0 && tau.is_finite(), "tau must be positive, got {tau}");
    let mut weights = Vec::with_capacity(n + 1);
    weights.push(tau.powf(-beta));
    for i in 1..=n {
        let prev = weights[i - 1];
        weights.push(prev * ((i as f64 - 1.0 - beta) / i as f64));
    }
    CqWeights { beta, tau, weights }
}

/// Predicted strong temporal convergence rate `min(H - rho * alpha, 1)`.
///
/// `rho` is the noise regularity exponent `(1 + m)/4` of the covariance
/// eigenvalue decay `Lambda_k = k^m`; the order-one cap comes from the
/// first-order accuracy of backward Euler on the initial-data part.
pub fn predicted_temporal_rate(hurst: f64, alpha: f64, rho: f64) -> f64 {
    (hurst - rho * alpha).min(1.0)
}

/// Predicted strong spatial convergence rate
/// `min(2, 2 - 2 rho, 2H/alpha - 2 rho)`.
pub fn predicted_spatial_rate(hurst: f64, alpha: f64, rho: f64) -> f64 {
    2.0f64.min(2.0 - 2.0 * rho).min(2.0 * hurst / alpha - 2.0 * rho)
}

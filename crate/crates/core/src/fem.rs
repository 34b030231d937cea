//! Piecewise-linear finite elements on a uniform mesh of (0,1) with
//! homogeneous Dirichlet boundary.
//!
//! Unknowns live at the interior nodes `x_j = j h`, `j = 1 .. M_x - 1`;
//! boundary rows are eliminated rather than penalized, so all matrices are
//! symmetric positive definite tridiagonal systems of size `M_x - 1`:
//!
//! ```text
//! mass      M: rows (h/6) [1, 4, 1]
//! stiffness K: rows (1/h) [-1, 2, -1]
//! ```
//!
//! Solves use the Thomas algorithm on a precomputed factorization. Every
//! factorization bumps a process-wide counter so tests can assert that the
//! time stepper factorizes its step matrix exactly once per run.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::{Error, Result};

static FACTORIZATION_COUNT: AtomicU64 = AtomicU64::new(0);

/// Number of tridiagonal factorizations performed by the process so far.
pub fn factorization_count() -> u64 {
    FACTORIZATION_COUNT.load(Ordering::Relaxed)
}

/// Uniform mesh of (0,1) with `M_x` intervals and spacing `h = 1/M_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mesh {
    n_intervals: usize,
}

impl Mesh {
    /// Creates a uniform mesh with `n_intervals >= 2` intervals.
    pub fn new(n_intervals: usize) -> Result<Self> {
        if n_intervals < 2 {
            return Err(Error::InvalidParameter(format!(
                "mesh needs at least 2 intervals, got {n_intervals}"
            )));
        }
        Ok(Mesh { n_intervals })
    }

    /// Number of intervals `M_x`.
    pub fn n_intervals(&self) -> usize {
        self.n_intervals
    }

    /// Mesh spacing `h = 1/M_x`.
    pub fn h(&self) -> f64 {
        1.0 / self.n_intervals as f64
    }

    /// Number of interior nodes, `M_x - 1`.
    pub fn n_interior(&self) -> usize {
        self.n_intervals - 1
    }

    /// Interior node coordinates `x_j = j h`, `j = 1 .. M_x - 1`.
    pub fn interior_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.h();
        (1..self.n_intervals).map(move |j| j as f64 * h)
    }
}

/// Symmetric-capable tridiagonal matrix stored by bands.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
    symmetric: bool,
}

impl TridiagonalMatrix {
    /// Builds a matrix from its bands; `sub` and `sup` must be one entry
    /// shorter than `diag`.
    ///
    /// # Panics
    ///
    /// Panics on inconsistent band lengths or an empty diagonal.
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "matrix must have at least one row");
        assert_eq!(sub.len() + 1, diag.len(), "subdiagonal length mismatch");
        assert_eq!(sup.len() + 1, diag.len(), "superdiagonal length mismatch");
        let symmetric = sub == sup;
        TridiagonalMatrix { sub, diag, sup, symmetric }
    }

    /// Builds a symmetric matrix from its diagonal and shared off-diagonal.
    pub fn symmetric(off: Vec<f64>, diag: Vec<f64>) -> Self {
        Self::new(off.clone(), diag, off)
    }

    /// Matrix dimension.
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    /// True for the (unused) zero-row case; kept for API completeness.
    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Whether sub- and superdiagonal coincide.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Diagonal band.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Subdiagonal band.
    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    /// Superdiagonal band.
    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    /// Matrix-vector product `A x`.
    ///
    /// # Panics
    ///
    /// Panics if `x.len()` differs from the matrix dimension.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.len(), "dimension mismatch in apply");
        let n = self.len();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.sup[i] * x[i + 1];
            }
            y[i] = v;
        }
        y
    }

    /// `y += s * (A x)`, the fused update the time stepper's history sum is
    /// built from.
    ///
    /// # Panics
    ///
    /// Panics on dimension mismatch.
    pub fn apply_scaled_add(&self, s: f64, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.len(), "dimension mismatch in apply_scaled_add");
        assert_eq!(y.len(), self.len(), "output dimension mismatch");
        let n = self.len();
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.sup[i] * x[i + 1];
            }
            y[i] += s * v;
        }
    }

    /// Linear combination `a A + b B` of two equally sized matrices.
    ///
    /// # Panics
    ///
    /// Panics on dimension mismatch.
    pub fn linear_combination(a: f64, ma: &Self, b: f64, mb: &Self) -> Self {
        assert_eq!(ma.len(), mb.len(), "dimension mismatch in linear_combination");
        let comb = |x: &[f64], y: &[f64]| -> Vec<f64> {
            x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
        };
        TridiagonalMatrix::new(
            comb(&ma.sub, &mb.sub),
            comb(&ma.diag, &mb.diag),
            comb(&ma.sup, &mb.sup),
        )
    }

    /// Checks positive definiteness of a symmetric instance by running the
    /// LDL^T elimination and requiring every pivot to stay positive.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not symmetric.
    pub fn is_positive_definite(&self) -> bool {
        assert!(self.symmetric, "definiteness test requires a symmetric matrix");
        let n = self.len();
        let mut pivot = self.diag[0];
        if pivot <= 0.0 {
            return false;
        }
        for i in 1..n {
            pivot = self.diag[i] - self.sub[i - 1] * self.sub[i - 1] / pivot;
            if pivot <= 0.0 {
                return false;
            }
        }
        true
    }

    /// Precomputes the Thomas-algorithm factorization for repeated solves.
    pub fn factorize(&self) -> Result<FactorizedTridiagonal> {
        let n = self.len();
        let mut modified_sup = vec![0.0; n.saturating_sub(1)];
        let mut inv_pivot = vec![0.0; n];
        let mut pivot = self.diag[0];
        let scale = self
            .diag
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        for i in 0..n {
            if i > 0 {
                pivot = self.diag[i] - self.sub[i - 1] * modified_sup[i - 1];
            }
            if pivot.abs() <= f64::EPSILON * scale {
                return Err(Error::SingularSystem(format!(
                    "pivot {pivot:.3e} at row {i} (scale {scale:.3e})"
                )));
            }
            inv_pivot[i] = 1.0 / pivot;
            if i + 1 < n {
                modified_sup[i] = self.sup[i] * inv_pivot[i];
            }
        }
        FACTORIZATION_COUNT.fetch_add(1, Ordering::Relaxed);
        Ok(FactorizedTridiagonal {
            sub: self.sub.clone(),
            modified_sup,
            inv_pivot,
        })
    }
}

/// Thomas-algorithm factorization of a tridiagonal matrix, reusable across
/// arbitrarily many right-hand sides.
#[derive(Debug, Clone)]
pub struct FactorizedTridiagonal {
    sub: Vec<f64>,
    modified_sup: Vec<f64>,
    inv_pivot: Vec<f64>,
}

impl FactorizedTridiagonal {
    /// Matrix dimension.
    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    /// Always false for constructed instances.
    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// Solves `A x = b`.
    ///
    /// # Panics
    ///
    /// Panics if `b.len()` differs from the matrix dimension.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    /// Solves `A x = b` writing the solution over `b`.
    ///
    /// # Panics
    ///
    /// Panics if `b.len()` differs from the matrix dimension.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.len();
        assert_eq!(b.len(), n, "dimension mismatch in solve");
        b[0] *= self.inv_pivot[0];
        for i in 1..n {
            b[i] = (b[i] - self.sub[i - 1] * b[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            b[i] -= self.modified_sup[i] * b[i + 1];
        }
    }
}

/// Piecewise-linear function on a mesh, stored by interior nodal values
/// (boundary values are implicitly zero).
#[derive(Debug, Clone, PartialEq)]
pub struct FemFunction {
    mesh: Mesh,
    coeffs: Vec<f64>,
}

impl FemFunction {
    /// Wraps interior nodal values as a finite element function.
    pub fn new(mesh: Mesh, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != mesh.n_interior() {
            return Err(Error::Incompatible(format!(
                "{} coefficients for a mesh with {} interior nodes",
                coeffs.len(),
                mesh.n_interior()
            )));
        }
        Ok(FemFunction { mesh, coeffs })
    }

    /// The zero function on `mesh`.
    pub fn zero(mesh: Mesh) -> Self {
        FemFunction { mesh, coeffs: vec![0.0; mesh.n_interior()] }
    }

    /// The mesh the function lives on.
    pub fn mesh(&self) -> Mesh {
        self.mesh
    }

    /// Interior nodal values.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Mutable interior nodal values.
    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Pointwise evaluation by linear interpolation between nodes.
    ///
    /// # Panics
    ///
    /// Panics if `x` lies outside `[0, 1]`.
    pub fn evaluate(&self, x: f64) -> f64 {
        assert!((0.0..=1.0).contains(&x), "evaluation point {x} outside [0,1]");
        let m = self.mesh.n_intervals as f64;
        let cell = ((x * m).floor() as usize).min(self.mesh.n_intervals - 1);
        let t = x * m - cell as f64;
        let left = if cell == 0 { 0.0 } else { self.coeffs[cell - 1] };
        let right = if cell + 1 == self.mesh.n_intervals {
            0.0
        } else {
            self.coeffs[cell]
        };
        left + t * (right - left)
    }
}

/// Assembles the mass matrix `(chi_i, chi_j)` over the interior nodes.
pub fn assemble_mass(mesh: &Mesh) -> TridiagonalMatrix {
    let n = mesh.n_interior();
    let h = mesh.h();
    TridiagonalMatrix::symmetric(vec![h / 6.0; n - 1], vec![2.0 * h / 3.0; n])
}

/// Assembles the stiffness matrix `(chi_i', chi_j')` over the interior
/// nodes.
pub fn assemble_stiffness(mesh: &Mesh) -> TridiagonalMatrix {
    let n = mesh.n_interior();
    let h = mesh.h();
    TridiagonalMatrix::symmetric(vec![-1.0 / h; n - 1], vec![2.0 / h; n])
}

/// Solves `A x = b` and verifies the residual contract
/// `max|Ax - b| <= 1e-12 max|b|`.
pub fn solve_tridiagonal(a: &TridiagonalMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.len() {
        return Err(Error::Incompatible(format!(
            "right-hand side length {} for dimension {}",
            b.len(),
            a.len()
        )));
    }
    let x = a.factorize()?.solve(b);
    let b_norm = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let residual = a
        .apply(&x)
        .iter()
        .zip(b)
        .fold(0.0f64, |acc, (ax, bi)| acc.max((ax - bi).abs()));
    let bound = 1e-12 * b_norm;
    if residual > bound {
        return Err(Error::ResidualTooLarge { residual, bound });
    }
    Ok(x)
}

/// L2-projects onto the mesh from the load vector `l_j = (g, chi_j)`,
/// solving `M c = l`.
pub fn l2_project(load: &[f64], mesh: &Mesh) -> Result<FemFunction> {
    let coeffs = solve_tridiagonal(&assemble_mass(mesh), load)?;
    FemFunction::new(*mesh, coeffs)
}

/// L2 norm `sqrt(c^T M c)` of a finite element function; exact for
/// piecewise linears.
pub fn l2_norm(f: &FemFunction) -> f64 {
    let m = assemble_mass(&f.mesh());
    let mc = m.apply(f.coeffs());
    f.coeffs()
        .iter()
        .zip(&mc)
        .map(|(c, v)| c * v)
        .sum::<f64>()
        .max(0.0)
        .sqrt()
}

/// Re-expresses a function on a nested refinement of its mesh. Exact for
/// piecewise linears: values at inherited nodes are copied, values at new
/// nodes are linear interpolants.
///
/// # Errors
///
/// Rejects target meshes that are not integer refinements of the source.
pub fn refine_interpolate(f: &FemFunction, target: &Mesh) -> Result<FemFunction> {
    let coarse = f.mesh().n_intervals();
    let fine = target.n_intervals();
    if !fine.is_multiple_of(coarse) {
        return Err(Error::Incompatible(format!(
            "target mesh with {fine} intervals does not nest {coarse}"
        )));
    }
    let ratio = fine / coarse;
    let value = |j: usize| -> f64 {
        if j == 0 || j == coarse {
            0.0
        } else {
            f.coeffs()[j - 1]
        }
    };
    let mut coeffs = Vec::with_capacity(fine - 1);
    for i in 1..fine {
        let cell = i / ratio;
        let t = (i % ratio) as f64 / ratio as f64;
        coeffs.push(value(cell) + t * (value(cell + 1) - value(cell)));
    }
    FemFunction::new(*target, coeffs)
}

//! Weighted l1 minimization: minimize sum_i w_i |z_i| subject to A z = y.
//!
//! The program is solved as a standard-form LP through the split
//! z = u - v with u, v >= 0, objective sum w_i (u_i + v_i), and equality
//! A(u - v) = y. Plain l1 minimization is the all-ones special case.
//! Exactness against a ground truth and uniqueness of the minimizer are
//! separate tests, so the solvers remain usable on data without a known
//! truth vector.

use crate::error::{Error, Result};
use crate::gen::SupportEstimate;
use crate::lp::{solve_lp, LpParams, LpStatus, StandardLp};
use crate::matrix::{max_abs, norm2, DenseMatrix};

/// Default relative l2 threshold separating exact from failed recovery.
pub const SUCCESS_TOL: f64 = 1e-4;

/// Slack used when testing uniqueness of a minimizer: sits between the
/// LP tolerance (1e-9) and the success threshold (1e-4).
pub const UNIQ_TOL: f64 = 1e-7;

/// Per-coordinate weights in [0, 1].
#[derive(Clone, Debug)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::Argument("weights must lie in [0, 1]".into()));
        }
        Ok(WeightVector(weights))
    }

    /// All-ones weights: plain l1.
    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1.0; n])
    }

    /// Weight w on the estimate set, 1 elsewhere.
    pub fn from_estimate(n: usize, estimate: &SupportEstimate) -> Result<Self> {
        if estimate.indices.iter().any(|&i| i >= n) {
            return Err(Error::Argument("estimate index out of range".into()));
        }
        if !(0.0..=1.0).contains(&estimate.weight) {
            return Err(Error::Argument("estimate weight outside [0, 1]".into()));
        }
        let mut w = vec![1.0; n];
        for &i in &estimate.indices {
            w[i] = estimate.weight;
        }
        Ok(WeightVector(w))
    }

    /// Weight w on an explicit index set, 1 elsewhere.
    pub fn with_weight_on(n: usize, indices: &[usize], w: f64) -> Result<Self> {
        Self::from_estimate(n, &SupportEstimate { indices: indices.to_vec(), weight: w })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weighted l1 norm sum_i w_i |z_i|.
    pub fn norm(&self, z: &[f64]) -> f64 {
        self.0.iter().zip(z).map(|(w, zi)| w * zi.abs()).sum()
    }
}

/// Outcome of a recovery solve. `relative_error` is NaN (and `exact`
/// false) until the result is scored against a ground truth.
#[derive(Clone, Debug)]
pub struct RecoveryResult {
    pub recovered: Vec<f64>,
    pub weighted_norm: f64,
    pub exact: bool,
    pub relative_error: f64,
}

impl RecoveryResult {
    /// Fills `relative_error` and `exact` from a caller-supplied truth.
    pub fn score_against(&mut self, truth: &[f64], success_tol: f64) {
        let diff: Vec<f64> = self.recovered.iter().zip(truth).map(|(a, b)| a - b).collect();
        self.relative_error = norm2(&diff) / norm2(truth).max(1e-300);
        self.exact = self.relative_error <= success_tol;
    }
}

/// Relative l2 exactness test used for recovery-rate accounting.
pub fn check_exact(recovered: &[f64], truth: &[f64], success_tol: f64) -> bool {
    debug_assert_eq!(recovered.len(), truth.len());
    let diff: Vec<f64> = recovered.iter().zip(truth).map(|(a, b)| a - b).collect();
    norm2(&diff) / norm2(truth).max(1e-300) <= success_tol
}

fn recovery_lp(a: &DenseMatrix, y: &[f64], weights: &WeightVector) -> Result<StandardLp> {
    let m = a.rows();
    let n = a.cols();
    if y.len() != m {
        return Err(Error::Argument(format!(
            "measurement length {} does not match {m} rows",
            y.len()
        )));
    }
    if weights.len() != n {
        return Err(Error::Argument(format!(
            "weight length {} does not match {n} columns",
            weights.len()
        )));
    }
    let mut e = DenseMatrix::zeros(m, 2 * n)?;
    for i in 0..m {
        for j in 0..n {
            let v = a.get(i, j);
            e.set(i, j, v);
            e.set(i, n + j, -v);
        }
    }
    let mut c = Vec::with_capacity(2 * n);
    c.extend_from_slice(weights.as_slice());
    c.extend_from_slice(weights.as_slice());
    StandardLp::new(c, e, y.to_vec())
}

/// Degeneracy test for zero weights: the minimizer set is unbounded
/// exactly when the kernel of A meets the span of the zero-weight
/// coordinates, i.e. when the zero-weight columns are rank-deficient.
fn zero_weight_degenerate(a: &DenseMatrix, weights: &WeightVector) -> Result<bool> {
    let zero_cols: Vec<usize> = weights
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w == 0.0)
        .map(|(i, _)| i)
        .collect();
    if zero_cols.is_empty() {
        return Ok(false);
    }
    if zero_cols.len() > a.rows() {
        return Ok(true);
    }
    let sub = a.select_columns(&zero_cols)?;
    Ok(crate::nullspace::numerical_rank(&sub) < zero_cols.len())
}

fn solve_recovery(
    a: &DenseMatrix,
    y: &[f64],
    weights: &WeightVector,
    params: &LpParams,
) -> Result<RecoveryResult> {
    if zero_weight_degenerate(a, weights)? {
        return Err(Error::RecoveryDegenerate);
    }
    let lp = recovery_lp(a, y, weights)?;
    let sol = solve_lp(&lp, params)?;
    match sol.status {
        LpStatus::Optimal => {
            let point = sol.point.expect("optimal solution carries a point");
            let n = a.cols();
            let recovered: Vec<f64> = (0..n).map(|j| point[j] - point[n + j]).collect();
            Ok(RecoveryResult {
                weighted_norm: weights.norm(&recovered),
                recovered,
                exact: false,
                relative_error: f64::NAN,
            })
        }
        LpStatus::Infeasible => Err(Error::RecoveryInfeasible),
        // The split objective is nonnegative, so this cannot trigger;
        // kept as a guard on the same degeneracy class.
        LpStatus::Unbounded => Err(Error::RecoveryDegenerate),
    }
}

/// Minimizes sum_i w_i |z_i| subject to A z = y.
pub fn solve_weighted_l1(a: &DenseMatrix, y: &[f64], weights: &WeightVector) -> Result<RecoveryResult> {
    solve_recovery(a, y, weights, &LpParams::default())
}

/// Minimizes ||z||_1 subject to A z = y.
pub fn solve_l1(a: &DenseMatrix, y: &[f64]) -> Result<RecoveryResult> {
    solve_recovery(a, y, &WeightVector::ones(a.cols()), &LpParams::default())
}

/// Variant with explicit LP parameters (used by the experiment harness).
pub fn solve_weighted_l1_with(
    a: &DenseMatrix,
    y: &[f64],
    weights: &WeightVector,
    params: &LpParams,
) -> Result<RecoveryResult> {
    solve_recovery(a, y, weights, params)
}

/// Tests whether `candidate` is the unique weighted-l1 minimizer among
/// feasible points, by maximizing and minimizing each coordinate over
/// the near-optimal face {A z = y, sum w_i |z_i| <= norm(candidate) +
/// uniq_tol}: two LPs per coordinate. Any coordinate with extent beyond
/// `uniq_tol` from the candidate refutes uniqueness.
pub fn is_unique_minimizer(
    a: &DenseMatrix,
    y: &[f64],
    weights: &WeightVector,
    candidate: &[f64],
) -> Result<bool> {
    is_unique_minimizer_with(a, y, weights, candidate, UNIQ_TOL, &LpParams::default())
}

pub fn is_unique_minimizer_with(
    a: &DenseMatrix,
    y: &[f64],
    weights: &WeightVector,
    candidate: &[f64],
    uniq_tol: f64,
    params: &LpParams,
) -> Result<bool> {
    let m = a.rows();
    let n = a.cols();
    if candidate.len() != n || y.len() != m || weights.len() != n {
        return Err(Error::Argument("dimension mismatch in uniqueness test".into()));
    }
    let residual: Vec<f64> = a
        .matvec(candidate)?
        .iter()
        .zip(y)
        .map(|(u, v)| u - v)
        .collect();
    let feas_scale = 1.0 + max_abs(y);
    if max_abs(&residual) > params.feas_tol * feas_scale {
        return Err(Error::Argument("candidate is not feasible".into()));
    }
    let budget = weights.norm(candidate) + uniq_tol;

    // Variables (u, v, t): A(u - v) = y and w'u + w'v + t = budget.
    let rows = m + 1;
    let cols = 2 * n + 1;
    let mut e = DenseMatrix::zeros(rows, cols)?;
    for i in 0..m {
        for j in 0..n {
            let v = a.get(i, j);
            e.set(i, j, v);
            e.set(i, n + j, -v);
        }
    }
    for j in 0..n {
        let w = weights.as_slice()[j];
        e.set(m, j, w);
        e.set(m, n + j, w);
    }
    e.set(m, 2 * n, 1.0);
    let mut rhs = y.to_vec();
    rhs.push(budget);

    for j in 0..n {
        for sense in [1.0, -1.0] {
            // maximize sense * z_j  <=>  minimize -sense * (u_j - v_j)
            let mut c = vec![0.0; cols];
            c[j] = -sense;
            c[n + j] = sense;
            let lp = StandardLp::new(c, e.clone(), rhs.clone())?;
            let sol = solve_lp(&lp, params)?;
            match sol.status {
                LpStatus::Optimal => {
                    let z_j = -sense * sol.objective_value;
                    if (z_j - candidate[j]).abs() > uniq_tol {
                        return Ok(false);
                    }
                }
                // The face is unbounded in this coordinate: certainly
                // not a unique minimizer.
                LpStatus::Unbounded => return Ok(false),
                LpStatus::Infeasible => {
                    return Err(Error::Argument(
                        "near-optimal face empty despite feasible candidate".into(),
                    ))
                }
            }
        }
    }
    Ok(true)
}

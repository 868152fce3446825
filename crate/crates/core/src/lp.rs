//! Two-phase revised simplex solver for standard-form linear programs:
//! minimize c'v subject to E v = f, v >= 0.
//!
//! The solver keeps an explicit basis inverse, refactorized every
//! [`REFACTOR_INTERVAL`] pivots to bound accumulated error. Pricing uses
//! Devex reference weights (a steepest-edge approximation with O(pq)
//! update cost) and switches permanently to Bland's rule after a run of
//! degenerate pivots, which guarantees termination. Vertex solutions are
//! exact up to the configured tolerances, which matters more here than
//! raw speed: downstream callers classify exact recovery and certify
//! null-space constants from these optima.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Pivots between basis refactorizations.
pub const REFACTOR_INTERVAL: usize = 64;

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const STALL_LIMIT: usize = 64;

/// Smallest pivot magnitude accepted in the ratio test.
const PIVOT_TOL: f64 = 1e-9;

/// Standard-form linear program.
#[derive(Clone, Debug)]
pub struct StandardLp {
    /// Objective coefficients, length q.
    pub objective: Vec<f64>,
    /// Equality constraint matrix, p-by-q with q >= p.
    pub eq_matrix: DenseMatrix,
    /// Right-hand side, length p.
    pub eq_rhs: Vec<f64>,
}

impl StandardLp {
    pub fn new(objective: Vec<f64>, eq_matrix: DenseMatrix, eq_rhs: Vec<f64>) -> Result<Self> {
        let lp = StandardLp { objective, eq_matrix, eq_rhs };
        lp.validate()?;
        Ok(lp)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.eq_matrix.rows();
        let q = self.eq_matrix.cols();
        if self.objective.len() != q {
            return Err(Error::Argument(format!(
                "objective length {} does not match {q} columns",
                self.objective.len()
            )));
        }
        if self.eq_rhs.len() != p {
            return Err(Error::Argument(format!(
                "rhs length {} does not match {p} rows",
                self.eq_rhs.len()
            )));
        }
        if q < p {
            return Err(Error::Argument(format!(
                "standard form requires q >= p, got {p}x{q}"
            )));
        }
        if self.objective.iter().chain(self.eq_rhs.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Argument("LP data must be finite".into()));
        }
        Ok(())
    }

    /// Number of equality constraints.
    pub fn num_constraints(&self) -> usize {
        self.eq_matrix.rows()
    }

    /// Number of variables.
    pub fn num_vars(&self) -> usize {
        self.eq_matrix.cols()
    }
}

/// Solver termination status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. `point` and `duals` are present exactly when the
/// status is optimal; the objective value is +inf for infeasible
/// problems and -inf for unbounded ones.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub point: Option<Vec<f64>>,
    pub objective_value: f64,
    pub iterations: usize,
    /// Dual multipliers y with E'y <= c + opt_tol at optimality, so the
    /// reduced-cost vector certifies the reported optimum.
    pub duals: Option<Vec<f64>>,
}

/// Solver tolerances and limits.
#[derive(Clone, Copy, Debug)]
pub struct LpParams {
    /// Primal feasibility tolerance, applied relative to 1 + max|f|.
    pub feas_tol: f64,
    /// Dual feasibility (reduced cost) tolerance.
    pub opt_tol: f64,
    /// Pivot budget across both phases.
    pub max_iters: usize,
}

impl Default for LpParams {
    fn default() -> Self {
        LpParams { feas_tol: 1e-9, opt_tol: 1e-9, max_iters: 50_000 }
    }
}

/// Solves a standard-form LP. Deterministic: identical inputs produce
/// identical pivots and results.
pub fn solve_lp(lp: &StandardLp, params: &LpParams) -> Result<LpSolution> {
    Simplex::new(lp, params)?.run()
}

#[derive(Clone, Copy, PartialEq)]
enum Pricing {
    Devex,
    Bland,
}

struct Simplex<'a> {
    p: usize,
    /// Structural variable count; artificials occupy q..q+p.
    q: usize,
    /// Structural columns, column-major (p consecutive entries per column).
    cols: Vec<f64>,
    /// Row-sign flips applied to make the working rhs nonnegative.
    row_sign: Vec<f64>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    params: &'a LpParams,
    feas_scale: f64,

    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    devex: Vec<f64>,
    pricing: Pricing,
    stall: usize,
    iterations: usize,
    pivots_since_refactor: usize,
    phase_one: bool,
}

impl<'a> Simplex<'a> {
    fn new(lp: &'a StandardLp, params: &'a LpParams) -> Result<Self> {
        // Validate in place: callers may have built the struct literally.
        lp.validate()?;
        let p = lp.num_constraints();
        let q = lp.num_vars();

        let mut row_sign = vec![1.0; p];
        let mut rhs = lp.eq_rhs.clone();
        for i in 0..p {
            if rhs[i] < 0.0 {
                row_sign[i] = -1.0;
                rhs[i] = -rhs[i];
            }
        }
        let mut cols = vec![0.0; p * q];
        for j in 0..q {
            for i in 0..p {
                cols[j * p + i] = row_sign[i] * lp.eq_matrix.get(i, j);
            }
        }
        let feas_scale = 1.0 + rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));

        Ok(Simplex {
            p,
            q,
            cols,
            row_sign,
            rhs: rhs.clone(),
            cost: lp.objective.clone(),
            params,
            feas_scale,
            basis: (q..q + p).collect(),
            is_basic: {
                let mut b = vec![false; q + p];
                for v in q..q + p {
                    b[v] = true;
                }
                b
            },
            binv: identity_flat(p),
            xb: rhs,
            devex: vec![1.0; q + p],
            pricing: Pricing::Devex,
            stall: 0,
            iterations: 0,
            pivots_since_refactor: 0,
            phase_one: true,
        })
    }

    #[inline]
    fn column(&self, j: usize) -> &[f64] {
        &self.cols[j * self.p..(j + 1) * self.p]
    }

    /// Objective coefficient in the current phase.
    #[inline]
    fn phase_cost(&self, var: usize) -> f64 {
        if self.phase_one {
            if var >= self.q {
                1.0
            } else {
                0.0
            }
        } else if var >= self.q {
            0.0
        } else {
            self.cost[var]
        }
    }

    /// y = c_B' B^{-1} for the current phase.
    fn duals_internal(&self) -> Vec<f64> {
        let p = self.p;
        let mut y = vec![0.0; p];
        for i in 0..p {
            let cb = self.phase_cost(self.basis[i]);
            if cb != 0.0 {
                let row = &self.binv[i * p..(i + 1) * p];
                for k in 0..p {
                    y[k] += cb * row[k];
                }
            }
        }
        y
    }

    #[inline]
    fn reduced_cost(&self, y: &[f64], j: usize) -> f64 {
        let col = self.column(j);
        let mut dot = 0.0;
        for (yi, ai) in y.iter().zip(col) {
            dot += yi * ai;
        }
        self.phase_cost(j) - dot
    }

    /// Entering variable, or None when the phase is optimal. Nonbasic
    /// artificials never re-enter.
    fn choose_entering(&self, y: &[f64]) -> Option<usize> {
        let tol = self.params.opt_tol;
        match self.pricing {
            Pricing::Bland => (0..self.q)
                .find(|&j| !self.is_basic[j] && self.reduced_cost(y, j) < -tol),
            Pricing::Devex => {
                let mut best: Option<(f64, usize)> = None;
                for j in 0..self.q {
                    if self.is_basic[j] {
                        continue;
                    }
                    let d = self.reduced_cost(y, j);
                    if d < -tol {
                        let score = d * d / self.devex[j];
                        if best.map_or(true, |(s, _)| score > s) {
                            best = Some((score, j));
                        }
                    }
                }
                best.map(|(_, j)| j)
            }
        }
    }

    /// Direction alpha = B^{-1} a_j.
    fn direction(&self, j: usize, alpha: &mut Vec<f64>) {
        let p = self.p;
        alpha.clear();
        if j >= self.q {
            let c = j - self.q;
            alpha.extend((0..p).map(|i| self.binv[i * p + c]));
            return;
        }
        let col = self.column(j);
        for i in 0..p {
            let row = &self.binv[i * p..(i + 1) * p];
            let mut acc = 0.0;
            for (r, a) in row.iter().zip(col) {
                acc += r * a;
            }
            alpha.push(acc);
        }
    }

    /// Ratio test. Basic artificials block at zero in phase two so they
    /// can never leave their pinned value. Returns the leaving row.
    fn choose_leaving(&self, alpha: &[f64]) -> Option<usize> {
        let mut best: Option<(f64, usize)> = None; // (theta, row)
        for i in 0..self.p {
            let a = alpha[i];
            let pinned = !self.phase_one && self.basis[i] >= self.q;
            let theta = if pinned && a.abs() > PIVOT_TOL {
                0.0
            } else if a > PIVOT_TOL {
                self.xb[i].max(0.0) / a
            } else {
                continue;
            };
            match best {
                None => best = Some((theta, i)),
                Some((t, r)) => {
                    let tie_band = 1e-12 * (1.0 + t.abs());
                    if theta < t - tie_band {
                        best = Some((theta, i));
                    } else if (theta - t).abs() <= tie_band {
                        let better = match self.pricing {
                            Pricing::Bland => self.basis[i] < self.basis[r],
                            Pricing::Devex => alpha[i].abs() > alpha[r].abs(),
                        };
                        if better {
                            best = Some((theta, i));
                        }
                    }
                }
            }
        }
        best.map(|(_, r)| r)
    }

    fn pivot(&mut self, entering: usize, row: usize, alpha: &[f64]) {
        let p = self.p;
        let theta = {
            let a = alpha[row];
            if !self.phase_one && self.basis[row] >= self.q {
                0.0
            } else {
                self.xb[row].max(0.0) / a
            }
        };

        // Devex weight propagation needs the pre-pivot row of B^{-1}.
        if self.pricing == Pricing::Devex {
            let rho: Vec<f64> = self.binv[row * p..(row + 1) * p].to_vec();
            let we = self.devex[entering].max(1.0);
            let ar = alpha[row];
            for j in 0..self.q {
                if self.is_basic[j] || j == entering {
                    continue;
                }
                let col = self.column(j);
                let mut arj = 0.0;
                for (r, a) in rho.iter().zip(col) {
                    arj += r * a;
                }
                let cand = (arj / ar) * (arj / ar) * we;
                if cand > self.devex[j] {
                    self.devex[j] = cand;
                }
            }
            let leaving = self.basis[row];
            self.devex[leaving] = (we / (ar * ar)).max(1.0);
        }

        for i in 0..p {
            if i != row {
                self.xb[i] -= theta * alpha[i];
            }
        }
        self.xb[row] = theta;

        let ar = alpha[row];
        let (before, rest) = self.binv.split_at_mut(row * p);
        let (prow, after) = rest.split_at_mut(p);
        for x in prow.iter_mut() {
            *x /= ar;
        }
        for (i, chunk) in before.chunks_mut(p).enumerate() {
            let factor = alpha[i];
            if factor != 0.0 {
                for (c, pr) in chunk.iter_mut().zip(prow.iter()) {
                    *c -= factor * pr;
                }
            }
        }
        for (off, chunk) in after.chunks_mut(p).enumerate() {
            let factor = alpha[row + 1 + off];
            if factor != 0.0 {
                for (c, pr) in chunk.iter_mut().zip(prow.iter()) {
                    *c -= factor * pr;
                }
            }
        }

        let leaving = self.basis[row];
        self.is_basic[leaving] = false;
        self.is_basic[entering] = true;
        self.basis[row] = entering;

        self.iterations += 1;
        self.pivots_since_refactor += 1;
        if theta <= 1e-12 * self.feas_scale {
            self.stall += 1;
            if self.stall > STALL_LIMIT {
                self.pricing = Pricing::Bland;
            }
        } else {
            self.stall = 0;
        }
    }

    /// Rebuilds B^{-1} from scratch (Gauss-Jordan with partial pivoting)
    /// and refreshes the basic values.
    fn refactorize(&mut self) -> Result<()> {
        let p = self.p;
        let mut aug = vec![0.0; p * 2 * p];
        let w = 2 * p;
        for (i, &var) in self.basis.iter().enumerate() {
            if var >= self.q {
                aug[(var - self.q) * w + i] = 1.0;
            } else {
                let col = self.column(var);
                for r in 0..p {
                    aug[r * w + i] = col[r];
                }
            }
        }
        for i in 0..p {
            aug[i * w + p + i] = 1.0;
        }
        for k in 0..p {
            let mut piv_row = k;
            let mut piv_val = aug[k * w + k].abs();
            for r in (k + 1)..p {
                let v = aug[r * w + k].abs();
                if v > piv_val {
                    piv_val = v;
                    piv_row = r;
                }
            }
            if piv_val < 1e-13 {
                return Err(Error::Degenerate("singular basis during refactorization".into()));
            }
            if piv_row != k {
                for c in 0..w {
                    aug.swap(k * w + c, piv_row * w + c);
                }
            }
            let d = aug[k * w + k];
            for c in 0..w {
                aug[k * w + c] /= d;
            }
            for r in 0..p {
                if r == k {
                    continue;
                }
                let f = aug[r * w + k];
                if f != 0.0 {
                    for c in 0..w {
                        aug[r * w + c] -= f * aug[k * w + c];
                    }
                }
            }
        }
        for r in 0..p {
            for c in 0..p {
                self.binv[r * p + c] = aug[r * w + p + c];
            }
        }
        for i in 0..p {
            let row = &self.binv[i * p..(i + 1) * p];
            let mut acc = 0.0;
            for (r, f) in row.iter().zip(&self.rhs) {
                acc += r * f;
            }
            self.xb[i] = acc;
        }
        self.pivots_since_refactor = 0;
        self.devex.iter_mut().for_each(|wgt| *wgt = 1.0);
        Ok(())
    }

    /// Runs one phase to optimality or unboundedness.
    fn run_phase(&mut self) -> Result<Option<LpStatus>> {
        let mut alpha: Vec<f64> = Vec::with_capacity(self.p);
        loop {
            if self.iterations >= self.params.max_iters {
                return Err(Error::IterationLimit { iterations: self.iterations });
            }
            if self.pivots_since_refactor >= REFACTOR_INTERVAL {
                self.refactorize()?;
            }
            let y = self.duals_internal();
            let Some(entering) = self.choose_entering(&y) else {
                return Ok(None);
            };
            self.direction(entering, &mut alpha);
            match self.choose_leaving(&alpha) {
                Some(row) => self.pivot(entering, row, &alpha),
                None => {
                    if self.phase_one {
                        // The phase-one objective is bounded below by
                        // zero; an unbounded ray here is numerical noise.
                        self.refactorize()?;
                        let y = self.duals_internal();
                        if self.choose_entering(&y).is_some() {
                            return Err(Error::Degenerate(
                                "phase-one claims unboundedness".into(),
                            ));
                        }
                        return Ok(None);
                    }
                    return Ok(Some(LpStatus::Unbounded));
                }
            }
        }
    }

    fn phase_objective(&self) -> f64 {
        (0..self.p).map(|i| self.phase_cost(self.basis[i]) * self.xb[i]).sum()
    }

    /// Pivots basic artificials out of the basis where a structural
    /// column is available; rows with no eligible column are redundant
    /// and keep their pinned artificial.
    fn drive_out_artificials(&mut self) {
        let p = self.p;
        let mut alpha: Vec<f64> = Vec::with_capacity(p);
        for row in 0..p {
            if self.basis[row] < self.q {
                continue;
            }
            let rho: Vec<f64> = self.binv[row * p..(row + 1) * p].to_vec();
            let mut pick = None;
            for j in 0..self.q {
                if self.is_basic[j] {
                    continue;
                }
                let col = self.column(j);
                let mut arj = 0.0;
                for (r, a) in rho.iter().zip(col) {
                    arj += r * a;
                }
                if arj.abs() > 1e-7 {
                    pick = Some(j);
                    break;
                }
            }
            if let Some(j) = pick {
                self.direction(j, &mut alpha);
                self.pivot(j, row, &alpha);
            }
        }
    }

    fn run(mut self) -> Result<LpSolution> {
        // Phase one: minimize the artificial sum.
        self.run_phase()?;
        self.refactorize()?;
        let feas_gap = self.phase_objective();
        if feas_gap > self.params.feas_tol * self.feas_scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                point: None,
                objective_value: f64::INFINITY,
                iterations: self.iterations,
                duals: None,
            });
        }
        self.drive_out_artificials();

        // Phase two on the real objective.
        self.phase_one = false;
        self.devex.iter_mut().for_each(|w| *w = 1.0);
        self.stall = 0;
        loop {
            if let Some(LpStatus::Unbounded) = self.run_phase()? {
                return Ok(LpSolution {
                    status: LpStatus::Unbounded,
                    point: None,
                    objective_value: f64::NEG_INFINITY,
                    iterations: self.iterations,
                    duals: None,
                });
            }
            // Clean the factors and confirm optimality before reporting.
            self.refactorize()?;
            let y = self.duals_internal();
            if self.choose_entering(&y).is_none() {
                let mut point = vec![0.0; self.q];
                for (i, &var) in self.basis.iter().enumerate() {
                    if var < self.q {
                        point[var] = self.xb[i];
                    }
                }
                let objective_value: f64 =
                    point.iter().zip(&self.cost).map(|(x, c)| x * c).sum();
                let duals: Vec<f64> = y
                    .iter()
                    .zip(&self.row_sign)
                    .map(|(yi, s)| yi * s)
                    .collect();
                return Ok(LpSolution {
                    status: LpStatus::Optimal,
                    point: Some(point),
                    objective_value,
                    iterations: self.iterations,
                    duals: Some(duals),
                });
            }
        }
    }
}

fn identity_flat(p: usize) -> Vec<f64> {
    let mut m = vec![0.0; p * p];
    for i in 0..p {
        m[i * p + i] = 1.0;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::max_abs;
    use crate::rng::Rng;

    fn solve(c: Vec<f64>, a: (usize, usize, Vec<f64>), b: Vec<f64>) -> LpSolution {
        let lp = StandardLp::new(c, DenseMatrix::new(a.0, a.1, a.2).unwrap(), b).unwrap();
        solve_lp(&lp, &LpParams::default()).unwrap()
    }

    #[test]
    fn one_constraint_optimal() {
        let sol = solve(vec![1.0, 0.0], (1, 2, vec![1.0, 1.0]), vec![1.0]);
        assert_eq!(sol.status, LpStatus::Optimal);
        let x = sol.point.unwrap();
        assert!((x[0]).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
        assert!(sol.objective_value.abs() < 1e-9);
    }

    #[test]
    fn free_ray_unbounded() {
        let sol = solve(vec![-1.0, 0.0], (1, 2, vec![1.0, -1.0]), vec![0.0]);
        assert_eq!(sol.status, LpStatus::Unbounded);
        assert_eq!(sol.objective_value, f64::NEG_INFINITY);
    }

    #[test]
    fn sign_contradiction_infeasible() {
        let sol = solve(vec![0.0, 0.0], (1, 2, vec![1.0, 0.0]), vec![-1.0]);
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert_eq!(sol.objective_value, f64::INFINITY);
    }

    #[test]
    fn iteration_limit_is_an_error() {
        let lp = StandardLp::new(
            vec![1.0, 2.0, 0.0],
            DenseMatrix::new(2, 3, vec![1.0, 0.0, 1.0, 0.0, 1.0, -1.0]).unwrap(),
            vec![2.0, 1.0],
        )
        .unwrap();
        let params = LpParams { max_iters: 1, ..Default::default() };
        match solve_lp(&lp, &params) {
            Err(Error::IterationLimit { .. }) => {}
            other => panic!("expected iteration limit, got {other:?}"),
        }
    }

    /// Beale's classic example cycles under naive most-negative pricing.
    #[test]
    fn beale_cycling_terminates() {
        // min -3/4 x1 + 150 x2 - 1/50 x3 + 6 x4  with three slacks.
        let c = vec![-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0];
        let a = vec![
            0.25, -60.0, -1.0 / 25.0, 9.0, 1.0, 0.0, 0.0, //
            0.5, -90.0, -1.0 / 50.0, 3.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0,
        ];
        let sol = solve(c, (3, 7, a), vec![0.0, 0.0, 1.0]);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective_value - (-0.05)).abs() < 1e-9, "{}", sol.objective_value);
    }

    /// Kuhn-style cycling instance (degenerate at the origin).
    #[test]
    fn kuhn_cycling_terminates() {
        let c = vec![-2.0, -3.0, 1.0, 12.0, 0.0, 0.0];
        let a = vec![
            -2.0, -9.0, 1.0, 9.0, 1.0, 0.0, //
            1.0 / 3.0, 1.0, -1.0 / 3.0, -2.0, 0.0, 1.0,
        ];
        let sol = solve(c, (2, 6, a), vec![0.0, 0.0]);
        // Kuhn's example is unbounded once cycling is escaped.
        assert_eq!(sol.status, LpStatus::Unbounded);
    }

    #[test]
    fn deterministic_resolve() {
        let mut rng = Rng::new(71);
        for _ in 0..20 {
            let p = 3 + rng.next_index(4);
            let q = p + 3 + rng.next_index(6);
            let entries: Vec<f64> = (0..p * q).map(|_| rng.next_gaussian()).collect();
            let a = DenseMatrix::new(p, q, entries).unwrap();
            let x0: Vec<f64> = (0..q).map(|_| rng.next_f64()).collect();
            let b = a.matvec(&x0).unwrap();
            let c: Vec<f64> = (0..q).map(|_| rng.next_gaussian()).collect();
            let lp = StandardLp::new(c, a, b).unwrap();
            let s1 = solve_lp(&lp, &LpParams::default()).unwrap();
            let s2 = solve_lp(&lp, &LpParams::default()).unwrap();
            assert_eq!(s1.status, s2.status);
            if s1.status == LpStatus::Optimal {
                assert!((s1.objective_value - s2.objective_value).abs() <= 1e-12);
                assert_eq!(s1.point, s2.point);
            }
        }
    }

    #[test]
    fn weak_duality_certificate() {
        let mut rng = Rng::new(90);
        let params = LpParams::default();
        for case in 0..30 {
            let p = 3 + rng.next_index(4);
            let q = p + 4 + rng.next_index(8);
            // Bounded feasible region: first row all ones.
            let a = DenseMatrix::from_fn(p, q, |i, _| {
                if i == 0 {
                    1.0
                } else {
                    rng.next_gaussian()
                }
            })
            .unwrap();
            let x0: Vec<f64> = (0..q).map(|_| rng.next_f64()).collect();
            let b = a.matvec(&x0).unwrap();
            let c: Vec<f64> = (0..q).map(|_| rng.next_gaussian()).collect();
            let lp = StandardLp::new(c, a.clone(), b.clone()).unwrap();
            let sol = solve_lp(&lp, &params).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal, "case {case}");
            let x = sol.point.as_ref().unwrap();
            let y = sol.duals.as_ref().unwrap();

            // Primal feasibility at the reported tolerance.
            let ax = a.matvec(x).unwrap();
            let resid: Vec<f64> = ax.iter().zip(&b).map(|(u, v)| u - v).collect();
            let scale = 1.0 + max_abs(&b);
            assert!(max_abs(&resid) <= params.feas_tol * scale);
            assert!(x.iter().all(|&v| v >= -params.feas_tol * scale));

            // Dual feasibility: reduced costs bounded below by -opt_tol.
            for j in 0..q {
                let col = a.col(j);
                let dot: f64 = col.iter().zip(y).map(|(u, v)| u * v).sum();
                assert!(lp.objective[j] - dot >= -1e-7, "case {case} col {j}");
            }

            // Weak duality sandwich.
            let dual_obj: f64 = y.iter().zip(&b).map(|(u, v)| u * v).sum();
            let gap_tol = 1e-7 * (1.0 + sol.objective_value.abs());
            assert!(dual_obj <= sol.objective_value + gap_tol);
            assert!(sol.objective_value <= dual_obj + gap_tol);
        }
    }
}

//! Monte-Carlo phase-transition experiments over an (m, k) grid.
//!
//! For every measurement count m, sparsity k, and support-estimate
//! accuracy alpha, the harness draws seeded instances (matrix, signal,
//! estimate), solves the weighted program, and tallies exact-recovery
//! rates. The first sweep also runs the plain l1 program on the same
//! instances, producing the baseline grid. Every trial's seed is a pure
//! function of (base seed, m, k, sweep, trial), so grids are bitwise
//! reproducible regardless of the parallelism degree.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gen::{gen_gaussian_matrix, gen_sparse_signal, gen_support_estimate, ProblemInstance};
use crate::lp::LpParams;
use crate::recovery::{check_exact, solve_weighted_l1_with, WeightVector, SUCCESS_TOL};
use crate::rng::{mix64, Rng};

/// Base seed used by the built-in presets.
pub const DEFAULT_BASE_SEED: u64 = 1729;

/// How the weight applied on the estimate set is chosen per accuracy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightRule {
    /// w = 1 - alpha, the bound-minimizing choice.
    OneMinusAlpha,
    /// A fixed weight for every accuracy.
    Fixed(f64),
}

impl WeightRule {
    pub fn weight_for(&self, alpha: f64) -> f64 {
        match self {
            WeightRule::OneMinusAlpha => 1.0 - alpha,
            WeightRule::Fixed(w) => *w,
        }
    }
}

/// Full experiment description.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    /// Ambient dimension N.
    pub n: usize,
    /// Measurement counts, strictly increasing.
    pub m_values: Vec<usize>,
    /// k ranges over floor(k_lo * m) ..= floor(k_hi * m).
    pub k_lo: f64,
    pub k_hi: f64,
    /// Grid step in k; None picks ceil(m / 50) per column.
    pub k_step: Option<usize>,
    /// Support-estimate accuracies; one weighted sweep per entry. May
    /// be empty for a baseline-only run.
    pub alphas: Vec<f64>,
    /// Estimate size ratio |T~| / k.
    pub rho: f64,
    pub weight_rule: WeightRule,
    /// Instances per grid cell.
    pub trials: u32,
    pub base_seed: u64,
    /// Empirical rate defining the recovery threshold curve.
    pub threshold: f64,
    /// Relative l2 error below which a trial counts as exact.
    pub success_tol: f64,
    /// Run grid cells on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl ExperimentConfig {
    /// Desk-scale default: N = 100, m in {20, 30, 40, 50, 60},
    /// 25 trials, accuracies {0.3, 0.7, 1.0}, w = 1 - alpha.
    pub fn desk() -> Self {
        ExperimentConfig {
            n: 100,
            m_values: vec![20, 30, 40, 50, 60],
            k_lo: 0.1,
            k_hi: 0.5,
            k_step: None,
            alphas: vec![0.3, 0.7, 1.0],
            rho: 1.0,
            weight_rule: WeightRule::OneMinusAlpha,
            trials: 25,
            base_seed: DEFAULT_BASE_SEED,
            threshold: 0.85,
            success_tol: SUCCESS_TOL,
            parallel: true,
        }
    }

    /// Full-scale preset: N = 500, m from 50 to 250 in steps of 25,
    /// 50 trials, accuracies {0.1, 0.3, 0.7, 1.0}, w = 1 - alpha.
    /// Long-running (hours single-threaded).
    pub fn paper() -> Self {
        ExperimentConfig {
            n: 500,
            m_values: (50..=250).step_by(25).collect(),
            k_lo: 0.1,
            k_hi: 0.5,
            k_step: None,
            alphas: vec![0.1, 0.3, 0.7, 1.0],
            rho: 1.0,
            weight_rule: WeightRule::OneMinusAlpha,
            trials: 50,
            base_seed: DEFAULT_BASE_SEED,
            threshold: 0.85,
            success_tol: SUCCESS_TOL,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Argument("N must be positive".into()));
        }
        if self.m_values.is_empty() {
            return Err(Error::Argument("at least one m value is required".into()));
        }
        if self.m_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("m values must be strictly increasing".into()));
        }
        if !(0.0 <= self.k_lo && self.k_lo <= self.k_hi) {
            return Err(Error::Argument("need 0 <= k_lo <= k_hi".into()));
        }
        if self.k_step == Some(0) {
            return Err(Error::Argument("k step must be positive".into()));
        }
        if self.alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::Argument("accuracies must lie in [0, 1]".into()));
        }
        if !(self.rho > 0.0) {
            return Err(Error::Argument("rho must be positive".into()));
        }
        if self.trials == 0 {
            return Err(Error::Argument("at least one trial is required".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::Argument("threshold must lie in (0, 1)".into()));
        }
        if let WeightRule::Fixed(w) = self.weight_rule {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::Argument("fixed weight must lie in [0, 1]".into()));
            }
        }
        Ok(())
    }

    /// Grid step for column m.
    pub fn k_step_for(&self, m: usize) -> usize {
        self.k_step.unwrap_or_else(|| m.div_ceil(50)).max(1)
    }

    /// Sparsity grid for column m.
    pub fn k_grid(&self, m: usize) -> Vec<usize> {
        let lo = ((self.k_lo * m as f64).floor() as usize).max(1);
        let hi = ((self.k_hi * m as f64).floor() as usize).min(self.n);
        let step = self.k_step_for(m);
        let mut ks = Vec::new();
        let mut k = lo;
        while k <= hi {
            ks.push(k);
            k += step;
        }
        ks
    }
}

/// Recovery rates over the (m, k) grid for one method.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseGrid {
    /// "weighted_l1" or "l1".
    pub method: String,
    /// Estimate accuracy; None for the l1 baseline.
    pub alpha: Option<f64>,
    /// Weight applied on the estimate (1 for the baseline).
    pub weight: f64,
    pub m_values: Vec<usize>,
    /// Per-column sparsity grids (ragged: higher m admits more k).
    pub k_grids: Vec<Vec<usize>>,
    pub successes: Vec<Vec<u32>>,
    pub degenerate: Vec<Vec<u32>>,
    pub trials_run: Vec<Vec<u32>>,
    /// successes / trials at each cell.
    pub rates: Vec<Vec<f64>>,
}

impl PhaseGrid {
    pub(crate) fn empty(
        method: &str,
        alpha: Option<f64>,
        weight: f64,
        config: &ExperimentConfig,
    ) -> Self {
        let k_grids: Vec<Vec<usize>> = config.m_values.iter().map(|&m| config.k_grid(m)).collect();
        let shape: Vec<Vec<u32>> = k_grids.iter().map(|ks| vec![0; ks.len()]).collect();
        PhaseGrid {
            method: method.to_string(),
            alpha,
            weight,
            m_values: config.m_values.clone(),
            rates: k_grids.iter().map(|ks| vec![0.0; ks.len()]).collect(),
            k_grids,
            successes: shape.clone(),
            degenerate: shape.clone(),
            trials_run: shape,
        }
    }

    fn fill_cell(&mut self, mi: usize, ki: usize, succ: u32, degen: u32, trials: u32) {
        self.successes[mi][ki] = succ;
        self.degenerate[mi][ki] = degen;
        self.trials_run[mi][ki] = trials;
        self.rates[mi][ki] = succ as f64 / trials as f64;
    }
}

/// Seed for one cell trial: a fixed 64-bit mix of every index.
pub fn cell_seed(base: u64, m: usize, k: usize, sweep: usize, trial: u32) -> u64 {
    let mut acc = base;
    for v in [m as u64, k as u64, sweep as u64, trial as u64] {
        acc = mix64(acc ^ mix64(v.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    acc
}

struct CellOut {
    weighted_successes: u32,
    weighted_degenerate: u32,
    l1_successes: u32,
}

fn run_cell(
    config: &ExperimentConfig,
    m: usize,
    k: usize,
    sweep: usize,
    alpha: Option<f64>,
    with_l1: bool,
) -> Result<CellOut> {
    let lp = LpParams::default();
    let mut out = CellOut { weighted_successes: 0, weighted_degenerate: 0, l1_successes: 0 };
    for trial in 0..config.trials {
        let seed = cell_seed(config.base_seed, m, k, sweep, trial);
        let mut a_rng = Rng::new(Rng::child_seed(seed, 0));
        let mut x_rng = Rng::new(Rng::child_seed(seed, 1));
        let mut e_rng = Rng::new(Rng::child_seed(seed, 2));
        let a = gen_gaussian_matrix(m, config.n, &mut a_rng)?;
        let signal = gen_sparse_signal(config.n, k, &mut x_rng)?;
        let instance = ProblemInstance::from_signal(&a, signal, seed)?;

        if let Some(alpha) = alpha {
            let w = config.weight_rule.weight_for(alpha);
            let estimate = gen_support_estimate(&instance, alpha, config.rho, w, &mut e_rng)?;
            let weights = WeightVector::from_estimate(config.n, &estimate)?;
            match solve_weighted_l1_with(&a, &instance.measurements, &weights, &lp) {
                Ok(result) => {
                    if check_exact(&result.recovered, &instance.signal, config.success_tol) {
                        out.weighted_successes += 1;
                    }
                }
                Err(Error::RecoveryDegenerate) => out.weighted_degenerate += 1,
                Err(e) => return Err(e),
            }
        }

        if with_l1 {
            let ones = WeightVector::ones(config.n);
            let result = solve_weighted_l1_with(&a, &instance.measurements, &ones, &lp)?;
            if check_exact(&result.recovered, &instance.signal, config.success_tol) {
                out.l1_successes += 1;
            }
        }
    }
    Ok(out)
}

/// Runs the full protocol: one weighted grid per accuracy, then the l1
/// baseline. The baseline shares sweep 0's instances (both programs run
/// on the same draws), so weighted results at w = 1 coincide with it
/// cell for cell.
pub fn run_phase(config: &ExperimentConfig) -> Result<Vec<PhaseGrid>> {
    config.validate()?;
    let sweeps: Vec<Option<f64>> = if config.alphas.is_empty() {
        vec![None]
    } else {
        config.alphas.iter().map(|&a| Some(a)).collect()
    };

    // Task list in deterministic order: (sweep, m index, k index).
    let mut tasks: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    for (si, _) in sweeps.iter().enumerate() {
        for (mi, &m) in config.m_values.iter().enumerate() {
            for (ki, &k) in config.k_grid(m).iter().enumerate() {
                tasks.push((si, mi, ki, m, k));
            }
        }
    }

    let run = |&(si, _mi, _ki, m, k): &(usize, usize, usize, usize, usize)| -> Result<CellOut> {
        run_cell(config, m, k, si, sweeps[si], si == 0)
    };
    let outs: Vec<CellOut> = if config.parallel {
        tasks.par_iter().map(run).collect::<Result<Vec<_>>>()?
    } else {
        tasks.iter().map(run).collect::<Result<Vec<_>>>()?
    };

    let mut grids: Vec<PhaseGrid> = Vec::new();
    for alpha in sweeps.iter().flatten() {
        let w = config.weight_rule.weight_for(*alpha);
        grids.push(PhaseGrid::empty("weighted_l1", Some(*alpha), w, config));
    }
    let mut baseline = PhaseGrid::empty("l1", None, 1.0, config);

    for (t, out) in tasks.iter().zip(&outs) {
        let (si, mi, ki, _, _) = *t;
        if sweeps[si].is_some() {
            grids[si].fill_cell(
                mi,
                ki,
                out.weighted_successes,
                out.weighted_degenerate,
                config.trials,
            );
        }
        if si == 0 {
            baseline.fill_cell(mi, ki, out.l1_successes, 0, config.trials);
        }
    }
    grids.push(baseline);
    Ok(grids)
}

/// Threshold curve: for each m, the largest grid k whose whole prefix
/// of smaller grid k values stays at or above the threshold (a monotone
/// envelope, so isolated lucky cells beyond a failure do not count).
/// Columns whose smallest k already misses the threshold are absent.
pub fn threshold_curve(grid: &PhaseGrid, threshold: f64) -> Vec<(usize, usize)> {
    let mut curve = Vec::new();
    for (mi, &m) in grid.m_values.iter().enumerate() {
        let mut best: Option<usize> = None;
        for (ki, &k) in grid.k_grids[mi].iter().enumerate() {
            if grid.rates[mi][ki] >= threshold {
                best = Some(k);
            } else {
                break;
            }
        }
        if let Some(k) = best {
            curve.push((m, k));
        }
    }
    curve
}

/// Reference overlay m = k + s ln(N / s) with s = (1 + rho - 2 alpha rho) k;
/// degenerates to k + 1 when the implied error size drops below one.
pub fn reference_line(n: usize, k: usize, alpha: f64, rho: f64) -> f64 {
    let s = crate::bounds::error_size(alpha, rho, k);
    if s < 1.0 {
        return k as f64 + 1.0;
    }
    k as f64 + s * (n as f64 / s).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            n: 24,
            m_values: vec![8, 12],
            k_lo: 0.12,
            k_hi: 0.5,
            k_step: Some(1),
            alphas: vec![0.5],
            rho: 1.0,
            weight_rule: WeightRule::OneMinusAlpha,
            trials: 3,
            base_seed: 7,
            threshold: 0.85,
            success_tol: SUCCESS_TOL,
            parallel: false,
        }
    }

    #[test]
    fn deterministic_rerun() {
        let config = tiny_config();
        let g1 = run_phase(&config).unwrap();
        let g2 = run_phase(&config).unwrap();
        assert_eq!(g1, g2);
        let par = run_phase(&ExperimentConfig { parallel: true, ..config }).unwrap();
        assert_eq!(g1, par);
    }

    #[test]
    fn accounting_invariants() {
        let grids = run_phase(&tiny_config()).unwrap();
        assert_eq!(grids.len(), 2);
        for g in &grids {
            for mi in 0..g.m_values.len() {
                for ki in 0..g.k_grids[mi].len() {
                    assert!(g.successes[mi][ki] + g.degenerate[mi][ki] <= g.trials_run[mi][ki]);
                    assert!((0.0..=1.0).contains(&g.rates[mi][ki]));
                    assert_eq!(g.trials_run[mi][ki], 3);
                }
            }
        }
        assert_eq!(grids[0].method, "weighted_l1");
        assert_eq!(grids[1].method, "l1");
        assert_eq!(grids[1].alpha, None);
    }

    #[test]
    fn baseline_only_run() {
        let config = ExperimentConfig { alphas: vec![], ..tiny_config() };
        let grids = run_phase(&config).unwrap();
        assert_eq!(grids.len(), 1);
        assert_eq!(grids[0].method, "l1");
    }

    #[test]
    fn threshold_curve_extremes() {
        let config = tiny_config();
        let mut grid = PhaseGrid::empty("l1", None, 1.0, &config);
        for row in grid.rates.iter_mut() {
            row.iter_mut().for_each(|r| *r = 1.0);
        }
        let curve = threshold_curve(&grid, 0.85);
        for (mi, (m, k)) in curve.iter().enumerate() {
            assert_eq!(*m, grid.m_values[mi]);
            assert_eq!(*k, *grid.k_grids[mi].last().unwrap());
        }
        for row in grid.rates.iter_mut() {
            row.iter_mut().for_each(|r| *r = 0.0);
        }
        assert!(threshold_curve(&grid, 0.85).is_empty());
    }

    #[test]
    fn threshold_curve_is_monotone_envelope() {
        let config = ExperimentConfig { m_values: vec![10], k_step: Some(1), ..tiny_config() };
        let mut grid = PhaseGrid::empty("l1", None, 1.0, &config);
        // Rates dip below the threshold and come back: the curve stops
        // at the dip.
        let kcount = grid.k_grids[0].len();
        assert!(kcount >= 3, "grid too small for the scenario");
        grid.rates[0] = vec![1.0; kcount];
        grid.rates[0][1] = 0.5;
        let curve = threshold_curve(&grid, 0.85);
        assert_eq!(curve, vec![(10, grid.k_grids[0][0])]);
    }

    #[test]
    fn reference_line_examples() {
        // Perfect estimate: s = 0 path.
        assert_eq!(reference_line(500, 50, 1.0, 1.0), 51.0);
        // s = 70 at alpha = 0.3, rho = 1: m = 50 + 70 ln(500/70).
        let m = reference_line(500, 50, 0.3, 1.0);
        assert!((m - 187.64).abs() < 0.1, "{m}");
        // alpha = 0.5, rho = 1: s = k.
        let m = reference_line(500, 50, 0.5, 1.0);
        assert!((m - (50.0 + 50.0 * (500.0f64 / 50.0).ln())).abs() < 1e-9);
    }

    #[test]
    fn k_grid_auto_step() {
        let config = ExperimentConfig::desk();
        assert_eq!(config.k_step_for(20), 1);
        assert_eq!(config.k_step_for(60), 2);
        let ks = config.k_grid(20);
        assert_eq!(ks, vec![2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let ks = config.k_grid(60);
        assert_eq!(ks.first(), Some(&6));
        assert_eq!(ks.last(), Some(&30));
        assert!(ks.windows(2).all(|w| w[1] - w[0] == 2));
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut c = tiny_config();
        c.m_values = vec![10, 10];
        assert!(c.validate().is_err());
        let mut c = tiny_config();
        c.threshold = 1.0;
        assert!(c.validate().is_err());
        let mut c = tiny_config();
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = tiny_config();
        c.weight_rule = WeightRule::Fixed(1.5);
        assert!(c.validate().is_err());
    }

    /// Statistical sanity: recovery rates broadly decay in k for the l1
    /// baseline (slack 0.1, averaged over the grid).
    #[test]
    fn rates_decay_in_k_on_average() {
        let config = ExperimentConfig {
            n: 50,
            m_values: vec![16, 24],
            k_lo: 0.12,
            k_hi: 0.55,
            k_step: Some(1),
            alphas: vec![],
            rho: 1.0,
            weight_rule: WeightRule::OneMinusAlpha,
            trials: 25,
            base_seed: 99,
            threshold: 0.85,
            success_tol: SUCCESS_TOL,
            parallel: true,
        };
        let grids = run_phase(&config).unwrap();
        let g = &grids[0];
        let mut diffs = Vec::new();
        for mi in 0..g.m_values.len() {
            let step = config.k_step_for(g.m_values[mi]);
            let ks = &g.k_grids[mi];
            for (ki, &k) in ks.iter().enumerate() {
                if let Some(kj) = ks.iter().position(|&kk| kk == k + 2 * step) {
                    diffs.push(g.rates[mi][ki] - g.rates[mi][kj]);
                }
            }
        }
        assert!(!diffs.is_empty());
        let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
        assert!(mean >= -0.1, "mean rate increase in k: {mean}");
    }
}

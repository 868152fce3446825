//! Exact certification of weighted null space properties on small
//! matrices.
//!
//! For a matrix A with null-space basis B, the optimal constant
//!
//! ```text
//! C* = sup { (w ||h_T||_1 + (1-w) ||h_S||_1) / ||h_{T^c}||_1 : A h = 0, h != 0 }
//! ```
//!
//! is computed exactly (at desk scale) by enumerating sign orthants of
//! h: within an orthant every absolute value is linear, so maximizing
//! the numerator with the denominator normalized to one is a linear
//! program over h = B c. The first coordinate's sign is fixed positive,
//! which halves the enumeration without losing any h up to negation.
//! An orthant whose cone admits h with ||h_{T^c}||_1 = 0 but positive
//! numerator certifies C* = +infinity: the property fails for every
//! finite constant.
//!
//! Uniform constants take the maximum over index-set pairs (T, S). When
//! s <= k the search is restricted to S inside T with |T| = k, which is
//! lossless; the unrestricted double enumeration remains available as a
//! cross-check and for s > k.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpParams, LpStatus, StandardLp};
use crate::matrix::{l1_on, DenseMatrix};
use crate::nullspace::null_space_basis;

/// Which property a query certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NspMode {
    /// Standard property of order k (the weighted property at w = 1, s = k).
    Standard,
    /// Fixed pair of sets (T, T~); S is their "error" set.
    Nonuniform,
    /// All |T| = k and |S| = s.
    Uniform,
    /// All |T| = k and S inside T with |S| = s; requires s <= k.
    UniformStar,
}

impl NspMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NspMode::Standard => "standard",
            NspMode::Nonuniform => "nonuniform",
            NspMode::Uniform => "uniform",
            NspMode::UniformStar => "uniform_star",
        }
    }

    pub fn parse(s: &str) -> Option<NspMode> {
        match s {
            "standard" => Some(NspMode::Standard),
            "nonuniform" => Some(NspMode::Nonuniform),
            "uniform" => Some(NspMode::Uniform),
            "uniform_star" | "uniform-star" => Some(NspMode::UniformStar),
            _ => None,
        }
    }
}

/// Verifier limits and tolerances.
#[derive(Clone, Debug)]
pub struct NspConfig {
    /// Largest signal dimension N accepted: the sweep solves 2^(N-1)
    /// LPs per set pair.
    pub orthant_cap: usize,
    /// Largest number of (T, S) pairs a uniform sweep may enumerate.
    pub pair_budget: u128,
    /// Disable the S-inside-T restriction for uniform queries and
    /// enumerate all C(N,k) * C(N,s) pairs. The restricted and the full
    /// search provably agree for s <= k, so this is a cross-check knob.
    pub full_enumeration: bool,
    /// Tolerances for the per-orthant LPs.
    pub lp: LpParams,
    /// Sweep set pairs in parallel (results are reduced in index order,
    /// so the outcome does not depend on the thread count).
    pub parallel: bool,
}

impl Default for NspConfig {
    fn default() -> Self {
        NspConfig {
            orthant_cap: 18,
            pair_budget: 200_000,
            full_enumeration: false,
            lp: LpParams::default(),
            parallel: true,
        }
    }
}

/// A certified optimal constant with the maximizing witness.
#[derive(Clone, Debug)]
pub struct NspCertificate {
    pub mode: NspMode,
    pub k: usize,
    pub s: usize,
    pub weight: f64,
    /// The optimal constant; +infinity when the property fails for
    /// every finite constant.
    pub optimal_constant: f64,
    /// Null-space vector achieving the constant (first nonzero
    /// coordinate positive).
    pub witness: Vec<f64>,
    pub witness_t: Vec<usize>,
    pub witness_s: Vec<usize>,
}

/// A query as dispatched by the CLI.
#[derive(Clone, Debug)]
pub struct NspQuery {
    pub mode: NspMode,
    pub weight: f64,
    pub k: usize,
    pub s: usize,
    pub fixed_t: Option<Vec<usize>>,
    pub fixed_t_tilde: Option<Vec<usize>>,
}

impl NspQuery {
    pub fn run(&self, a: &DenseMatrix, config: &NspConfig) -> Result<NspCertificate> {
        match self.mode {
            NspMode::Standard => nsp_constant_standard(a, self.k, config),
            NspMode::Uniform => nsp_constant_uniform(a, self.k, self.s, self.weight, config),
            NspMode::UniformStar => {
                nsp_constant_uniform_star(a, self.k, self.s, self.weight, config)
            }
            NspMode::Nonuniform => {
                let t = self.fixed_t.as_ref().ok_or_else(|| {
                    Error::Argument("nonuniform mode requires the true support T".into())
                })?;
                let tt = self.fixed_t_tilde.as_ref().ok_or_else(|| {
                    Error::Argument("nonuniform mode requires the estimate T~".into())
                })?;
                nsp_constant_nonuniform(a, t, tt, self.weight, config)
            }
        }
    }
}

/// Evaluates the defining ratio at a concrete (h, T, S, w). Returns
/// +infinity for a positive numerator over a zero denominator and NaN
/// for 0/0. The sets must be sorted.
pub fn ratio_at(h: &[f64], t: &[usize], s: &[usize], w: f64) -> f64 {
    let num = w * l1_on(h, t) + (1.0 - w) * l1_on(h, s);
    let den: f64 = h
        .iter()
        .enumerate()
        .filter(|(i, _)| t.binary_search(i).is_err())
        .map(|(_, v)| v.abs())
        .sum();
    num / den
}

/// Closed-form constant for the weighted property assembled from two
/// standard constants: C(w) = ((1+w) Cs Cks + Cs + w Cks) / (1 - Cs Cks).
/// Valid only when Cs * Cks < 1.
pub fn composed_constant(c_s: f64, c_ks: f64, w: f64) -> Result<f64> {
    if !(c_s >= 0.0 && c_ks >= 0.0) {
        return Err(Error::Domain("constants must be nonnegative".into()));
    }
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("weight {w} outside [0, 1]")));
    }
    let product = c_s * c_ks;
    if product >= 1.0 {
        return Err(Error::Domain(format!(
            "composition requires Cs * Cks < 1, got {product}"
        )));
    }
    Ok(((1.0 + w) * product + c_s + w * c_ks) / (1.0 - product))
}

/// Largest weight for which the composed constant stays below one:
/// w <= (1 - 2 Cs Cks - Cs) / (Cks (Cs + 1)), clamped to [0, 1].
/// Requires Cs < 1 / (2 Cks + 1).
pub fn max_weight_for_recovery(c_s: f64, c_ks: f64) -> Result<f64> {
    if !(c_s >= 0.0 && c_ks >= 0.0) {
        return Err(Error::Domain("constants must be nonnegative".into()));
    }
    if c_s >= 1.0 / (2.0 * c_ks + 1.0) {
        return Err(Error::Domain(format!(
            "requires Cs < 1/(2 Cks + 1): Cs = {c_s}, Cks = {c_ks}"
        )));
    }
    if c_ks == 0.0 {
        return Ok(1.0);
    }
    let bound = (1.0 - 2.0 * c_s * c_ks - c_s) / (c_ks * (c_s + 1.0));
    Ok(bound.clamp(0.0, 1.0))
}

/// Optimal constant for a fixed pair (T, T~) with error set
/// S = (T~ and T^c) union (T~^c and T).
pub fn nsp_constant_nonuniform(
    a: &DenseMatrix,
    t: &[usize],
    t_tilde: &[usize],
    w: f64,
    config: &NspConfig,
) -> Result<NspCertificate> {
    let n = a.cols();
    validate_common(a, w, config)?;
    let t = validated_set(t, n, "T")?;
    let t_tilde = validated_set(t_tilde, n, "T~")?;
    let s = crate::gen::symmetric_difference(&t, &t_tilde);
    let basis = null_space_basis(a)?;
    let feasible = feasible_orthants(&basis, &config.lp, config.parallel)?;
    let outcome = pair_sweep(&basis, &t, &s, w, &config.lp, &feasible)?;
    Ok(build_certificate(NspMode::Nonuniform, t.len(), s.len(), w, outcome, &t, &s, &basis))
}

/// Optimal constant over all |T| = k, |S| = s. By default the search
/// uses the lossless restriction to S inside T (valid for s <= k) and
/// falls back to the full double enumeration when s > k or when
/// `full_enumeration` is set.
pub fn nsp_constant_uniform(
    a: &DenseMatrix,
    k: usize,
    s: usize,
    w: f64,
    config: &NspConfig,
) -> Result<NspCertificate> {
    let cert = uniform_sweep(a, k, s, w, config, config.full_enumeration || s > k)?;
    Ok(NspCertificate { mode: NspMode::Uniform, ..cert })
}

/// Optimal constant over |T| = k and S inside T, |S| = s. Requires
/// s <= k; provably equal to the uniform constant there.
pub fn nsp_constant_uniform_star(
    a: &DenseMatrix,
    k: usize,
    s: usize,
    w: f64,
    config: &NspConfig,
) -> Result<NspCertificate> {
    if s > k {
        return Err(Error::Argument(format!(
            "restricted mode requires s <= k, got s = {s}, k = {k}"
        )));
    }
    let cert = uniform_sweep(a, k, s, w, config, false)?;
    Ok(NspCertificate { mode: NspMode::UniformStar, ..cert })
}

/// Standard property of order k: the weighted property at w = 1, where
/// the S term vanishes, so only T is enumerated.
pub fn nsp_constant_standard(
    a: &DenseMatrix,
    k: usize,
    config: &NspConfig,
) -> Result<NspCertificate> {
    let cert = uniform_sweep(a, k, k, 1.0, config, false)?;
    Ok(NspCertificate { mode: NspMode::Standard, ..cert })
}

fn validate_common(a: &DenseMatrix, w: f64, config: &NspConfig) -> Result<()> {
    let n = a.cols();
    if n > config.orthant_cap {
        return Err(Error::Capacity(format!(
            "N = {n} exceeds the orthant cap {} (2^(N-1) LPs per pair)",
            config.orthant_cap
        )));
    }
    if a.rows() >= n {
        return Err(Error::Argument(format!(
            "query requires an underdetermined matrix, got {}x{n}",
            a.rows()
        )));
    }
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Argument(format!("weight {w} outside [0, 1]")));
    }
    Ok(())
}

fn validated_set(set: &[usize], n: usize, name: &str) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != set.len() {
        return Err(Error::Argument(format!("{name} contains duplicate indices")));
    }
    if v.last().is_some_and(|&i| i >= n) {
        return Err(Error::Argument(format!("{name} has an index outside 0..{n}")));
    }
    Ok(v)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Shared engine behind the uniform-flavor queries. `full` enumerates S
/// independently of T; otherwise S ranges over subsets of T.
fn uniform_sweep(
    a: &DenseMatrix,
    k: usize,
    s: usize,
    w: f64,
    config: &NspConfig,
    full: bool,
) -> Result<NspCertificate> {
    let n = a.cols();
    validate_common(a, w, config)?;
    if k > n || s > n {
        return Err(Error::Argument(format!("set sizes k = {k}, s = {s} exceed N = {n}")));
    }
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }

    // At w = 1 the S term has zero coefficient, so S never affects the
    // ratio and a single placeholder S per T suffices.
    let w_is_one = w == 1.0;
    let pair_count: u128 = if w_is_one {
        binomial(n, k)
    } else if full {
        binomial(n, k).saturating_mul(binomial(n, s))
    } else {
        binomial(n, k).saturating_mul(binomial(k, s))
    };
    if pair_count > config.pair_budget {
        return Err(Error::Capacity(format!(
            "{pair_count} set pairs exceed the budget {}",
            config.pair_budget
        )));
    }

    let basis = null_space_basis(a)?;
    let feasible = feasible_orthants(&basis, &config.lp, config.parallel)?;

    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for t in combinations(n, k) {
        if w_is_one {
            let placeholder: Vec<usize> = t.iter().copied().take(s).collect();
            pairs.push((t, placeholder));
        } else if full {
            for sv in combinations(n, s) {
                pairs.push((t.clone(), sv));
            }
        } else {
            for sv in combinations(k, s) {
                let mapped: Vec<usize> = sv.iter().map(|&i| t[i]).collect();
                pairs.push((t.clone(), mapped));
            }
        }
    }

    let outcomes: Vec<PairOutcome> = if config.parallel {
        pairs
            .par_iter()
            .map(|(t, sv)| pair_sweep(&basis, t, sv, w, &config.lp, &feasible))
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut out = Vec::with_capacity(pairs.len());
        for (t, sv) in &pairs {
            let o = pair_sweep(&basis, t, sv, w, &config.lp, &feasible)?;
            let stop = matches!(o, PairOutcome::Infinite(_));
            out.push(o);
            if stop {
                break;
            }
        }
        out
    };

    // Deterministic reduction in pair order; strict improvement keeps
    // the lexicographically first maximizer.
    let mut best_value = f64::NEG_INFINITY;
    let mut best: Option<(usize, Vec<f64>)> = None;
    for (idx, outcome) in outcomes.iter().enumerate() {
        match outcome {
            PairOutcome::Infinite(h) => {
                best_value = f64::INFINITY;
                best = Some((idx, h.clone()));
                break;
            }
            PairOutcome::Finite(v, h) => {
                if *v > best_value {
                    best_value = *v;
                    best = Some((idx, h.clone()));
                }
            }
            PairOutcome::Empty => {}
        }
    }

    Ok(match best {
        Some((idx, h)) => {
            let (t, sv) = &pairs[idx];
            NspCertificate {
                mode: NspMode::Uniform,
                k,
                s,
                weight: w,
                optimal_constant: best_value,
                witness: sign_normalized(h),
                witness_t: t.clone(),
                witness_s: sv.clone(),
            }
        }
        // Every null vector scores 0/0: the property holds with C = 0.
        None => {
            let (t, sv) = &pairs[0];
            NspCertificate {
                mode: NspMode::Uniform,
                k,
                s,
                weight: w,
                optimal_constant: 0.0,
                witness: sign_normalized(basis.col(0)),
                witness_t: t.clone(),
                witness_s: sv.clone(),
            }
        }
    })
}

enum PairOutcome {
    /// Best finite ratio over the pair with its witness.
    Finite(f64, Vec<f64>),
    /// The pair admits a null vector vanishing off T with a positive
    /// numerator.
    Infinite(Vec<f64>),
    /// No null vector has a positive denominator or numerator.
    Empty,
}

fn build_certificate(
    mode: NspMode,
    k: usize,
    s: usize,
    w: f64,
    outcome: PairOutcome,
    t: &[usize],
    sv: &[usize],
    basis: &DenseMatrix,
) -> NspCertificate {
    let (value, witness) = match outcome {
        PairOutcome::Finite(v, h) => (v, h),
        PairOutcome::Infinite(h) => (f64::INFINITY, h),
        PairOutcome::Empty => (0.0, basis.col(0)),
    };
    NspCertificate {
        mode,
        k,
        s,
        weight: w,
        optimal_constant: value,
        witness: sign_normalized(witness),
        witness_t: t.to_vec(),
        witness_s: sv.to_vec(),
    }
}

/// Flips h so its first nonzero coordinate is positive.
fn sign_normalized(mut h: Vec<f64>) -> Vec<f64> {
    if let Some(first) = h.iter().find(|v| **v != 0.0) {
        if *first < 0.0 {
            for v in h.iter_mut() {
                *v = -*v;
            }
        }
    }
    h
}

/// Sign of coordinate `i` under pattern index `idx` (coordinate 0 is
/// always positive; bit i-1 of idx set means negative).
#[inline]
fn sign_of(idx: u64, i: usize) -> f64 {
    if i == 0 {
        1.0
    } else if (idx >> (i - 1)) & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Sign indices whose closed orthant meets the null space in more than
/// the origin. This depends only on the basis, so uniform sweeps share
/// it across every (T, S) pair.
fn feasible_orthants(basis: &DenseMatrix, lp: &LpParams, parallel: bool) -> Result<Vec<u64>> {
    let n = basis.rows();
    let total: u64 = 1 << (n - 1);
    let check = |idx: u64| -> Result<Option<u64>> {
        Ok(orthant_nontrivial(basis, idx, lp)?.then_some(idx))
    };
    let hits: Vec<Option<u64>> = if parallel {
        (0..total).into_par_iter().map(check).collect::<Result<Vec<_>>>()?
    } else {
        (0..total).map(check).collect::<Result<Vec<_>>>()?
    };
    Ok(hits.into_iter().flatten().collect())
}

/// Does the closed orthant cone {h in range(B) : sign_i h_i >= 0}
/// contain a nonzero vector? Decided by one bounded LP: maximize the
/// l1 mass under sum g_i + slack = 1; the optimum is 1 exactly when the
/// cone is nontrivial.
fn orthant_nontrivial(basis: &DenseMatrix, idx: u64, lp: &LpParams) -> Result<bool> {
    let n = basis.rows();
    let d = basis.cols();
    let rows = n + 1;
    let cols = n + 2 * d + 1;
    let mut e = DenseMatrix::zeros(rows, cols)?;
    fill_coupling(&mut e, basis, idx);
    for i in 0..n {
        e.set(n, i, 1.0);
    }
    e.set(n, n + 2 * d, 1.0);
    let mut rhs = vec![0.0; rows];
    rhs[n] = 1.0;
    let mut c = vec![0.0; cols];
    for ci in c.iter_mut().take(n) {
        *ci = -1.0;
    }
    let sol = solve_lp(&StandardLp::new(c, e, rhs)?, lp)?;
    debug_assert_eq!(sol.status, LpStatus::Optimal);
    Ok(sol.objective_value < -0.5)
}

/// Writes the rows g_i - sign_i (B c)_i = 0 into `e` (columns: g block,
/// then the split c blocks).
fn fill_coupling(e: &mut DenseMatrix, basis: &DenseMatrix, idx: u64) {
    let n = basis.rows();
    let d = basis.cols();
    for i in 0..n {
        e.set(i, i, 1.0);
        let sg = sign_of(idx, i);
        for j in 0..d {
            let b = sg * basis.get(i, j);
            e.set(i, n + j, -b);
            e.set(i, n + d + j, b);
        }
    }
}

/// Exact optimum of the ratio over one (T, S) pair: per feasible
/// orthant, maximize the numerator with the denominator pinned to one;
/// orthants that cannot reach a unit denominator are probed for a
/// positive-numerator direction, which would make the constant infinite.
fn pair_sweep(
    basis: &DenseMatrix,
    t: &[usize],
    s: &[usize],
    w: f64,
    lp: &LpParams,
    feasible: &[u64],
) -> Result<PairOutcome> {
    let n = basis.rows();
    let d = basis.cols();

    let mut coef = vec![0.0; n];
    for &i in t {
        coef[i] += w;
    }
    for &i in s {
        coef[i] += 1.0 - w;
    }
    let mut in_t = vec![false; n];
    for &i in t {
        in_t[i] = true;
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for &idx in feasible {
        // LP1: maximize sum coef_i g_i  s.t. coupling, unit mass on T^c.
        let rows = n + 1;
        let cols = n + 2 * d;
        let mut e = DenseMatrix::zeros(rows, cols)?;
        fill_coupling(&mut e, basis, idx);
        for i in 0..n {
            if !in_t[i] {
                e.set(n, i, 1.0);
            }
        }
        let mut rhs = vec![0.0; rows];
        rhs[n] = 1.0;
        let mut c = vec![0.0; cols];
        for i in 0..n {
            c[i] = -coef[i];
        }
        let sol = solve_lp(&StandardLp::new(c, e, rhs)?, lp)?;
        match sol.status {
            LpStatus::Optimal => {
                let value = -sol.objective_value;
                if best.as_ref().map_or(true, |(bv, _)| value > *bv) {
                    let h = witness_from_point(basis, &sol.point.expect("optimal"), n, d);
                    best = Some((value, h));
                }
            }
            LpStatus::Unbounded | LpStatus::Infeasible => {
                // Either the numerator grows without bound along a
                // zero-denominator ray, or the whole cone sits in the
                // denominator's kernel. Both reduce to: is numerator = 1
                // reachable with denominator = 0?
                if let Some(h) = denominator_zero_witness(basis, idx, &coef, &in_t, lp)? {
                    return Ok(PairOutcome::Infinite(h));
                }
            }
        }
    }
    Ok(match best {
        Some((v, h)) => PairOutcome::Finite(v, h),
        None => PairOutcome::Empty,
    })
}

/// Feasibility LP for the infinite case: coupling rows plus
/// numerator = 1 and denominator = 0.
fn denominator_zero_witness(
    basis: &DenseMatrix,
    idx: u64,
    coef: &[f64],
    in_t: &[bool],
    lp: &LpParams,
) -> Result<Option<Vec<f64>>> {
    let n = basis.rows();
    let d = basis.cols();
    let rows = n + 2;
    let cols = n + 2 * d;
    let mut e = DenseMatrix::zeros(rows, cols)?;
    fill_coupling(&mut e, basis, idx);
    for i in 0..n {
        e.set(n, i, coef[i]);
        if !in_t[i] {
            e.set(n + 1, i, 1.0);
        }
    }
    let mut rhs = vec![0.0; rows];
    rhs[n] = 1.0;
    let c = vec![0.0; cols];
    let sol = solve_lp(&StandardLp::new(c, e, rhs)?, lp)?;
    Ok(match sol.status {
        LpStatus::Optimal => Some(witness_from_point(basis, &sol.point.expect("optimal"), n, d)),
        _ => None,
    })
}

/// Rebuilds h = B c from an LP point laid out as (g, c+, c-). Using the
/// basis keeps the witness in the null space to machine precision.
fn witness_from_point(basis: &DenseMatrix, point: &[f64], n: usize, d: usize) -> Vec<f64> {
    let c: Vec<f64> = (0..d).map(|j| point[n + j] - point[n + d + j]).collect();
    basis.matvec(&c).expect("basis dimensions")
}

/// Lexicographic k-subsets of 0..n.
fn combinations(n: usize, k: usize) -> CombinationIter {
    CombinationIter { n, k, cur: (0..k).collect(), done: k > n }
}

struct CombinationIter {
    n: usize,
    k: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for CombinationIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        if self.k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] != i + self.n - self.k {
                self.cur[i] += 1;
                for j in (i + 1)..self.k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

impl NspCertificate {
    /// Line-oriented text form: header `mode k s w C*`, witness vector,
    /// then the witness sets. Reals carry 17 significant digits.
    pub fn to_text(&self) -> String {
        let c = if self.optimal_constant.is_infinite() {
            "inf".to_string()
        } else {
            format!("{:.16e}", self.optimal_constant)
        };
        let witness: Vec<String> = self.witness.iter().map(|v| format!("{v:.16e}")).collect();
        let t: Vec<String> = self.witness_t.iter().map(|i| i.to_string()).collect();
        let s: Vec<String> = self.witness_s.iter().map(|i| i.to_string()).collect();
        format!(
            "{} {} {} {:.16e} {}\n{}\nT: {}\nS: {}\n",
            self.mode.as_str(),
            self.k,
            self.s,
            self.weight,
            c,
            witness.join(" "),
            t.join(" "),
            s.join(" ")
        )
    }

    /// Parses the `to_text` form.
    pub fn from_text(text: &str) -> Result<NspCertificate> {
        let parse = |line: usize, msg: &str| Error::Parse { line, message: msg.to_string() };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| parse(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(parse(1, "header needs: mode k s w C"));
        }
        let mode = NspMode::parse(fields[0]).ok_or_else(|| parse(1, "unknown mode"))?;
        let k = fields[1].parse().map_err(|_| parse(1, "bad k"))?;
        let s = fields[2].parse().map_err(|_| parse(1, "bad s"))?;
        let weight = fields[3].parse().map_err(|_| parse(1, "bad weight"))?;
        let optimal_constant = if fields[4] == "inf" {
            f64::INFINITY
        } else {
            fields[4].parse().map_err(|_| parse(1, "bad constant"))?
        };
        let witness_line = lines.next().ok_or_else(|| parse(2, "missing witness"))?;
        let witness = witness_line
            .split_whitespace()
            .map(|v| v.parse::<f64>().map_err(|_| parse(2, "bad witness value")))
            .collect::<Result<Vec<f64>>>()?;
        let set_line = |line_no: usize, text: Option<&str>, tag: &str| -> Result<Vec<usize>> {
            let line = text.ok_or_else(|| parse(line_no, "missing set line"))?;
            let rest = line
                .strip_prefix(tag)
                .ok_or_else(|| parse(line_no, "bad set tag"))?;
            rest.split_whitespace()
                .map(|v| v.parse::<usize>().map_err(|_| parse(line_no, "bad index")))
                .collect()
        };
        let witness_t = set_line(3, lines.next(), "T:")?;
        let witness_s = set_line(4, lines.next(), "S:")?;
        Ok(NspCertificate { mode, k, s, weight, optimal_constant, witness, witness_t, witness_s })
    }
}

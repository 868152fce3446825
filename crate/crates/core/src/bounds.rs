//! Gaussian measurement bounds for weighted l1 recovery.
//!
//! Each bound is a right-hand side r such that m / sqrt(m + 1) >= r
//! guarantees the corresponding weighted null space property with
//! probability at least 1 - epsilon for an m-by-N matrix with i.i.d.
//! standard normal entries. `min_measurements` inverts the monotone
//! left side for the smallest admissible integer m. Natural logarithms
//! throughout.

use crate::error::{Error, Result};

/// (2 pi e^3)^(-1/4), the coefficient of the Gaussian-width correction
/// term.
fn width_coefficient() -> f64 {
    let e = std::f64::consts::E;
    let two_pi_e3 = 2.0 * std::f64::consts::PI * e * e * e;
    two_pi_e3.powf(-0.25)
}

/// The correction term (2 pi e^3)^(-1/4) sqrt(k / ln(eN/k)).
pub fn gauss_width_term(k: f64, ln_enk: f64) -> f64 {
    width_coefficient() * (k / ln_enk).sqrt()
}

/// Parameters shared by the bounds. `s` is an independent input; use
/// [`error_size`] to derive it from (alpha, rho, k) when the support
/// estimate model applies.
#[derive(Clone, Copy, Debug)]
pub struct BoundInputs {
    /// Ambient dimension N.
    pub n: usize,
    /// Sparsity k.
    pub k: usize,
    /// Support-estimate error size s.
    pub s: usize,
    /// Estimate accuracy in [0, 1].
    pub alpha: f64,
    /// Estimate size ratio |T~| / k, positive.
    pub rho: f64,
    /// Weight on the estimate, in [0, 1].
    pub w: f64,
    /// Property constant in (0, 1).
    pub c: f64,
    /// Failure probability in (0, 1).
    pub epsilon: f64,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.k > self.n {
            return Err(Error::Argument(format!(
                "need 1 <= k <= N, got k = {}, N = {}",
                self.k, self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Argument(format!("alpha {} outside [0, 1]", self.alpha)));
        }
        if !(self.rho > 0.0) {
            return Err(Error::Argument(format!("rho {} must be positive", self.rho)));
        }
        if self.alpha * self.rho > 1.0 + 1e-12 {
            return Err(Error::Argument(format!(
                "alpha * rho = {} exceeds 1",
                self.alpha * self.rho
            )));
        }
        if !(0.0..=1.0).contains(&self.w) {
            return Err(Error::Argument(format!("weight {} outside [0, 1]", self.w)));
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::Argument(format!("constant C = {} outside (0, 1)", self.c)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Argument(format!("epsilon {} outside (0, 1)", self.epsilon)));
        }
        Ok(())
    }

    fn require_half_and_nested(&self, which: &str) -> Result<()> {
        if 2 * self.k > self.n {
            return Err(Error::Domain(format!("{which} requires k <= N/2")));
        }
        if self.s > self.k {
            return Err(Error::Domain(format!("{which} requires s <= k")));
        }
        Ok(())
    }

    fn ln_enk(&self) -> f64 {
        1.0 + (self.n as f64 / self.k as f64).ln()
    }

    fn tail(&self) -> f64 {
        (2.0 * (1.0 / self.epsilon).ln()).sqrt()
    }
}

/// Error size implied by the support-estimate model:
/// s = (1 + rho - 2 alpha rho) k.
pub fn error_size(alpha: f64, rho: f64, k: usize) -> f64 {
    (1.0 + rho - 2.0 * alpha * rho) * k as f64
}

/// Fixed-pair bound with the support-estimate geometry:
/// sqrt(s + alpha rho k)
///   + C^-1 sqrt(2 ((w^2 - 2 w (1 - alpha)) rho k + s) ln(eN/k))
///   + (2 pi e^3)^(-1/4) sqrt(k / ln(eN/k)) + sqrt(2 ln(1/eps)).
pub fn rhs_thm3(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    let k = inputs.k as f64;
    let s = inputs.s as f64;
    let ln_enk = inputs.ln_enk();
    let radicand = (inputs.w * inputs.w - 2.0 * inputs.w * (1.0 - inputs.alpha)) * inputs.rho * k + s;
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "weighted log-term radicand (w^2 - 2w(1-alpha)) rho k + s = {radicand} is negative"
        )));
    }
    Ok((s + inputs.alpha * inputs.rho * k).sqrt()
        + (2.0 * radicand * ln_enk).sqrt() / inputs.c
        + gauss_width_term(k, ln_enk)
        + inputs.tail())
}

/// Simplified fixed-pair bound (alpha rho and the weighted coefficient
/// replaced by their upper bounds 1 and w^2 k):
/// sqrt(k + s) + C^-1 sqrt(2 (w^2 k + s) ln(eN/k))
///   + (2 pi e^3)^(-1/4) sqrt(k / ln(eN/k)) + sqrt(2 ln(1/eps)).
pub fn rhs_thm2(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    let k = inputs.k as f64;
    let s = inputs.s as f64;
    let ln_enk = inputs.ln_enk();
    Ok((k + s).sqrt()
        + (2.0 * (inputs.w * inputs.w * k + s) * ln_enk).sqrt() / inputs.c
        + gauss_width_term(k, ln_enk)
        + inputs.tail())
}

/// Fixed-estimate uniform bound (union over supports near T~):
/// (1 + (2 pi e^3)^(-1/4) / sqrt(ln(eN/k))) sqrt(k + s)
///   + C^-1 sqrt(2 (w^2 k + s) ln(eN/k))
///   + sqrt(2 ln(1/eps) + (s + 1) ln(eN/s) + k).
///
/// At s = 0 the union collapses to one set and measuring the support
/// directly suffices: the value k + 1 is returned as the measurement
/// count itself (see [`min_measurements`]).
pub fn rhs_cor5(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    inputs.require_half_and_nested("fixed-estimate uniform bound")?;
    let k = inputs.k as f64;
    let s = inputs.s as f64;
    let n = inputs.n as f64;
    if inputs.s == 0 {
        return Ok(k + 1.0);
    }
    let ln_enk = inputs.ln_enk();
    let ln_ens = 1.0 + (n / s).ln();
    let tail2 = 2.0 * (1.0 / inputs.epsilon).ln() + (s + 1.0) * ln_ens + k;
    Ok((1.0 + width_coefficient() / ln_enk.sqrt()) * (k + s).sqrt()
        + (2.0 * (inputs.w * inputs.w * k + s) * ln_enk).sqrt() / inputs.c
        + tail2.sqrt())
}

/// Fully uniform bound (union over all (T, S) with S inside T):
/// first two terms as in the fixed-estimate bound, tail
/// sqrt(2 ln(1/eps) + 2 k ln(eN/k)).
pub fn rhs_cor6(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    inputs.require_half_and_nested("uniform bound")?;
    let k = inputs.k as f64;
    let s = inputs.s as f64;
    let ln_enk = inputs.ln_enk();
    let tail2 = 2.0 * (1.0 / inputs.epsilon).ln() + 2.0 * k * ln_enk;
    Ok((1.0 + width_coefficient() / ln_enk.sqrt()) * (k + s).sqrt()
        + (2.0 * (inputs.w * inputs.w * k + s) * ln_enk).sqrt() / inputs.c
        + tail2.sqrt())
}

/// Which bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Thm2,
    Thm3,
    Cor5,
    Cor6,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Thm2 => "thm2",
            BoundKind::Thm3 => "thm3",
            BoundKind::Cor5 => "cor5",
            BoundKind::Cor6 => "cor6",
        }
    }

    pub fn parse(s: &str) -> Option<BoundKind> {
        match s {
            "thm2" => Some(BoundKind::Thm2),
            "thm3" => Some(BoundKind::Thm3),
            "cor5" => Some(BoundKind::Cor5),
            "cor6" => Some(BoundKind::Cor6),
            _ => None,
        }
    }

    pub fn rhs(&self, inputs: &BoundInputs) -> Result<f64> {
        match self {
            BoundKind::Thm2 => rhs_thm2(inputs),
            BoundKind::Thm3 => rhs_thm3(inputs),
            BoundKind::Cor5 => rhs_cor5(inputs),
            BoundKind::Cor6 => rhs_cor6(inputs),
        }
    }
}

/// m / sqrt(m + 1), the strictly increasing left side of every bound.
pub fn lhs(m: u64) -> f64 {
    let m = m as f64;
    m / (m + 1.0).sqrt()
}

/// Smallest integer m >= 1 with m / sqrt(m + 1) >= rhs, by bisection,
/// verified at the adjacent integer. The fixed-estimate bound at s = 0
/// short-circuits to m = k + 1: one measurement beyond a directly
/// invertible support block.
pub fn min_measurements(kind: BoundKind, inputs: &BoundInputs) -> Result<u64> {
    if kind == BoundKind::Cor5 && inputs.s == 0 {
        inputs.validate()?;
        inputs.require_half_and_nested("fixed-estimate uniform bound")?;
        return Ok(inputs.k as u64 + 1);
    }
    let r = kind.rhs(inputs)?;
    if !r.is_finite() {
        return Err(Error::Domain(format!("bound value {r} is not finite")));
    }
    if lhs(1) >= r {
        return Ok(1);
    }
    let mut lo: u64 = 1; // lhs(lo) < r
    let mut hi: u64 = 4 * ((r + 1.0) * (r + 1.0)).ceil() as u64;
    while lhs(hi) < r {
        hi = hi.saturating_mul(2);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if lhs(mid) >= r {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(lhs(hi) >= r && lhs(hi - 1) < r);
    Ok(hi)
}

/// The weight minimizing the fixed-pair bound: w = 1 - alpha.
pub fn optimal_weight(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Argument(format!("alpha {alpha} outside [0, 1]")));
    }
    Ok(1.0 - alpha)
}

/// Open interval of weights for which the weighted log term improves on
/// its plain-l1 counterpart: (1 - 2 alpha, 1), to be intersected with
/// [0, 1].
pub fn improvement_interval(alpha: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Argument(format!("alpha {alpha} outside [0, 1]")));
    }
    Ok((1.0 - 2.0 * alpha, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    fn base_inputs() -> BoundInputs {
        BoundInputs {
            n: 500,
            k: 10,
            s: 2,
            alpha: 0.9,
            rho: 1.0,
            w: 0.1,
            c: 0.9,
            epsilon: 0.01,
        }
    }

    /// Random parameter draw with the estimate-model error size, which
    /// keeps the weighted radicand nonnegative for every w in [0, 1].
    fn random_inputs(rng: &mut Rng) -> BoundInputs {
        let n = 50 + rng.next_index(950);
        let k = 1 + rng.next_index(n / 2);
        let alpha = rng.next_f64();
        let max_rho = if alpha > 0.0 { (1.0 / alpha).min(2.0) } else { 2.0 };
        let rho = (0.05 + rng.next_f64() * 0.95) * max_rho;
        let s_exact = error_size(alpha, rho, k);
        BoundInputs {
            n,
            k,
            s: (s_exact + 0.5).floor() as usize,
            alpha,
            rho,
            w: rng.next_f64(),
            c: 0.05 + 0.9 * rng.next_f64(),
            epsilon: 0.001 + 0.5 * rng.next_f64(),
        }
    }

    #[test]
    fn width_term_plug_in() {
        // k = s = 1 with ln(eN/k) = 2: the term is (2 pi e^3)^(-1/4) sqrt(1/2).
        let want = (2.0 * std::f64::consts::PI * std::f64::consts::E.powi(3)).powf(-0.25)
            * 0.5f64.sqrt();
        assert!((gauss_width_term(1.0, 2.0) - want).abs() < 1e-15);
    }

    #[test]
    fn thm3_weight_extremes() {
        // w = 0: radicand reduces to s.
        let mut inputs = base_inputs();
        inputs.w = 0.0;
        let ln_enk = 1.0 + (inputs.n as f64 / inputs.k as f64).ln();
        let r = rhs_thm3(&inputs).unwrap();
        let by_hand = (inputs.s as f64 + inputs.alpha * inputs.rho * inputs.k as f64).sqrt()
            + (2.0 * inputs.s as f64 * ln_enk).sqrt() / inputs.c
            + gauss_width_term(inputs.k as f64, ln_enk)
            + (2.0 * (1.0 / inputs.epsilon).ln()).sqrt();
        assert!((r - by_hand).abs() < 1e-12);

        // w = 1, rho = 1, s = (2 - 2 alpha) k: radicand collapses to k.
        let alpha = 0.6;
        let k = 10usize;
        let s = ((2.0 - 2.0 * alpha) * k as f64).round() as usize;
        let inputs = BoundInputs { n: 500, k, s, alpha, rho: 1.0, w: 1.0, c: 0.9, epsilon: 0.01 };
        let radicand = (1.0 - 2.0 * (1.0 - alpha)) * k as f64 + s as f64;
        assert!((radicand - k as f64).abs() < 1e-12);
        assert!(rhs_thm3(&inputs).is_ok());
    }

    #[test]
    fn thm3_negative_radicand_rejected() {
        // Tiny independent s with a mismatched weight drives the
        // radicand negative.
        let inputs = BoundInputs {
            n: 500,
            k: 100,
            s: 1,
            alpha: 0.5,
            rho: 1.0,
            w: 0.5,
            c: 0.9,
            epsilon: 0.01,
        };
        match rhs_thm3(&inputs) {
            Err(Error::Domain(msg)) => assert!(msg.contains("radicand")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn thm2_dominates_thm3() {
        let mut rng = Rng::new(404);
        let mut checked = 0;
        while checked < 1000 {
            let inputs = random_inputs(&mut rng);
            let (Ok(r2), Ok(r3)) = (rhs_thm2(&inputs), rhs_thm3(&inputs)) else {
                continue;
            };
            assert!(r2 >= r3 - 1e-9, "thm2 {r2} < thm3 {r3} at {inputs:?}");
            checked += 1;
        }
    }

    #[test]
    fn cor5_dominates_thm2() {
        let mut rng = Rng::new(405);
        let mut checked = 0;
        while checked < 300 {
            let mut inputs = random_inputs(&mut rng);
            inputs.s = inputs.s.min(inputs.k);
            if 2 * inputs.k > inputs.n || inputs.s == 0 {
                continue;
            }
            let (Ok(r5), Ok(r2)) = (rhs_cor5(&inputs), rhs_thm2(&inputs)) else {
                continue;
            };
            assert!(r5 >= r2 - 1e-9, "cor5 {r5} < thm2 {r2} at {inputs:?}");
            checked += 1;
        }
    }

    #[test]
    fn cor6_tail_comparison() {
        // The fully uniform tail exceeds the fixed-estimate tail
        // whenever 2k ln(eN/k) > (s+1) ln(eN/s) + k.
        let inputs = BoundInputs { s: 1, ..base_inputs() };
        let k = inputs.k as f64;
        let s = inputs.s as f64;
        let n = inputs.n as f64;
        let ln_enk = 1.0 + (n / k).ln();
        let ln_ens = 1.0 + (n / s).ln();
        assert!(2.0 * k * ln_enk > (s + 1.0) * ln_ens + k);
        let r6 = rhs_cor6(&inputs).unwrap();
        let r5 = rhs_cor5(&inputs).unwrap();
        assert!(r6 > r5);
    }

    #[test]
    fn cor6_small_c_scaling() {
        // For small C the measurement count scales like C^-2, i.e.
        // halving C quadruples m.
        let mut inputs = base_inputs();
        inputs.s = 2;
        inputs.c = 0.05;
        let m1 = min_measurements(BoundKind::Cor6, &inputs).unwrap();
        inputs.c = 0.025;
        let m2 = min_measurements(BoundKind::Cor6, &inputs).unwrap();
        let ratio = m2 as f64 / m1 as f64;
        assert!((ratio - 4.0).abs() < 0.6, "ratio {ratio}");
    }

    #[test]
    fn cor5_zero_error_special_case() {
        let inputs = BoundInputs { s: 0, ..base_inputs() };
        assert_eq!(min_measurements(BoundKind::Cor5, &inputs).unwrap(), 11);
        assert_eq!(rhs_cor5(&inputs).unwrap(), 11.0);
    }

    #[test]
    fn cor5_w0_limiting_scale() {
        // At w = 0 the count tracks k + s ln(eN/s) up to moderate factors.
        let inputs = BoundInputs {
            n: 100_000,
            k: 400,
            s: 40,
            alpha: 0.95,
            rho: 1.0,
            w: 0.0,
            c: 0.5,
            epsilon: 0.01,
        };
        let m = min_measurements(BoundKind::Cor5, &inputs).unwrap() as f64;
        let k = inputs.k as f64;
        let s = inputs.s as f64;
        let scale = k + s * (std::f64::consts::E * inputs.n as f64 / s).ln();
        let ratio = m / scale;
        assert!((0.5..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn min_measurements_inversion() {
        // Zero right side: the left side is positive from m = 1.
        let inputs = base_inputs();
        for kind in [BoundKind::Thm2, BoundKind::Thm3, BoundKind::Cor5, BoundKind::Cor6] {
            let m = min_measurements(kind, &inputs).unwrap();
            let r = kind.rhs(&inputs).unwrap();
            assert!(lhs(m) >= r);
            assert!(m == 1 || lhs(m - 1) < r);
            // Closed-form inverse of m^2 = r^2 (m + 1) within one.
            let exact = (r * r + r * (r * r + 4.0).sqrt()) / 2.0;
            assert!((m as f64 - exact.ceil()).abs() <= 1.0, "m {m} vs {exact}");
        }
    }

    #[test]
    fn min_measurements_monotone() {
        let mut inputs = base_inputs();
        let mut last = u64::MAX;
        // Nonincreasing in C.
        for c in [0.1, 0.3, 0.5, 0.7, 0.9] {
            inputs.c = c;
            let m = min_measurements(BoundKind::Thm2, &inputs).unwrap();
            assert!(m <= last);
            last = m;
        }
        // Nondecreasing in s.
        inputs = base_inputs();
        let mut last = 0;
        for s in [0, 1, 2, 4, 8] {
            inputs.s = s;
            let m = min_measurements(BoundKind::Thm2, &inputs).unwrap();
            assert!(m >= last);
            last = m;
        }
    }

    #[test]
    fn optimal_weight_and_interval() {
        assert_eq!(optimal_weight(1.0).unwrap(), 0.0);
        assert_eq!(optimal_weight(0.5).unwrap(), 0.5);
        assert_eq!(improvement_interval(0.5).unwrap(), (0.0, 1.0));
        assert!(optimal_weight(1.5).is_err());
    }

    #[test]
    fn grid_search_confirms_optimal_weight() {
        // The minimizer of the fixed-pair bound over w sits at 1 - alpha.
        let mut rng = Rng::new(406);
        let mut checked = 0;
        while checked < 25 {
            let mut inputs = random_inputs(&mut rng);
            // Keep the radicand strictly positive across the grid.
            if inputs.rho * inputs.alpha * inputs.alpha > 0.95 {
                continue;
            }
            let mut best = (f64::INFINITY, 0.0);
            let mut valid = true;
            for step in 0..=1000 {
                inputs.w = step as f64 / 1000.0;
                match rhs_thm3(&inputs) {
                    Ok(v) => {
                        if v < best.0 {
                            best = (v, inputs.w);
                        }
                    }
                    Err(_) => {
                        valid = false;
                        break;
                    }
                }
            }
            if !valid {
                continue;
            }
            let expect = optimal_weight(inputs.alpha).unwrap();
            assert!(
                (best.1 - expect).abs() <= 1e-3 + 1e-12,
                "grid minimum {} vs 1 - alpha = {expect}",
                best.1
            );
            checked += 1;
        }
    }

    #[test]
    fn weight_monotone_above_optimum() {
        // The bound is nondecreasing in w on [1 - alpha, 1].
        let mut inputs = base_inputs();
        let mut last = 0.0;
        for step in 0..=20 {
            inputs.w = 1.0 - inputs.alpha + (inputs.alpha * step as f64 / 20.0);
            let r = rhs_thm3(&inputs).unwrap();
            assert!(r >= last - 1e-12);
            last = r;
        }
    }

    #[test]
    fn invalid_inputs_rejected() {
        let mut inputs = base_inputs();
        inputs.c = 1.0;
        assert!(rhs_thm2(&inputs).is_err());
        let mut inputs = base_inputs();
        inputs.alpha = 0.9;
        inputs.rho = 1.5;
        assert!(rhs_thm3(&inputs).is_err());
        let mut inputs = base_inputs();
        inputs.k = 300;
        assert!(rhs_cor5(&inputs).is_err());
    }
}

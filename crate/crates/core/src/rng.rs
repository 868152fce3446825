//! Deterministic seeded random generation.
//!
//! All randomness in the toolkit flows through [`Rng`], a counter-based
//! generator (SplitMix64): the i-th output is a pure function of
//! `(seed, i)`, so identical seeds reproduce identical streams on every
//! platform and under any thread schedule. Parallel work never shares a
//! generator; it derives independent child seeds with [`Rng::child_seed`].

/// Golden-ratio increment of the SplitMix64 counter.
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer. Also used as the fixed 64-bit mix for seed
/// derivation and cell hashing.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based pseudo-random generator with a 64-bit seed.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
    /// Second normal deviate produced by the polar transform, returned
    /// on the next call.
    spare_gaussian: Option<f64>,
}

impl Rng {
    /// Creates a generator whose whole output stream is determined by `seed`.
    pub fn new(seed: u64) -> Self {
        Rng { state: seed, spare_gaussian: None }
    }

    /// Derives the seed for an independent child stream. Distinct task
    /// indices give streams that do not overlap the parent's in practice.
    pub fn child_seed(parent_seed: u64, task_index: u64) -> u64 {
        mix64(parent_seed ^ mix64(task_index.wrapping_add(GAMMA)))
    }

    /// Next raw 64-bit output.
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform double in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform integer in `[0, n)`. Rejection on the top range keeps the
    /// distribution exact; `n` must be positive.
    pub fn next_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "next_index requires n > 0");
        let n = n as u64;
        // Largest multiple of n that fits in u64.
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let v = self.next_u64();
            if v <= zone {
                return (v % n) as usize;
            }
        }
    }

    /// Standard normal deviate via the Marsaglia polar transform.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s >= 1.0 || s == 0.0 {
                continue;
            }
            let f = (-2.0 * s.ln() / s).sqrt();
            self.spare_gaussian = Some(v * f);
            return u * f;
        }
    }

    /// Chooses `k` distinct values from `0..n`, uniformly without
    /// replacement, returned sorted ascending.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot sample {k} from {n}");
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.next_index(n - i);
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool.sort_unstable();
        pool
    }

    /// Chooses `k` distinct elements of `pool`, uniformly without
    /// replacement, returned sorted ascending.
    pub fn sample_from(&mut self, pool: &[usize], k: usize) -> Vec<usize> {
        let picks = self.sample_indices(pool.len(), k);
        let mut out: Vec<usize> = picks.into_iter().map(|i| pool[i]).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_identical_streams() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..1000 {
            assert_eq!(a.next_gaussian().to_bits(), b.next_gaussian().to_bits());
        }
    }

    #[test]
    fn different_seeds_differ() {
        let mut a = Rng::new(1);
        let mut b = Rng::new(2);
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn child_seeds_distinct() {
        let mut seen = std::collections::HashSet::new();
        for task in 0..1000u64 {
            assert!(seen.insert(Rng::child_seed(99, task)));
        }
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = Rng::new(3);
        let mut sum = 0.0;
        for _ in 0..20_000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
            sum += x;
        }
        assert!((sum / 20_000.0 - 0.5).abs() < 0.01);
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = Rng::new(11);
        let n = 100_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let z = rng.next_gaussian();
            s1 += z;
            s2 += z * z;
        }
        let mean = s1 / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.03, "var {var}");
    }

    #[test]
    fn next_index_bounds_and_coverage() {
        let mut rng = Rng::new(5);
        let mut hit = [false; 7];
        for _ in 0..1000 {
            hit[rng.next_index(7)] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn sample_indices_sorted_distinct() {
        let mut rng = Rng::new(13);
        for _ in 0..100 {
            let s = rng.sample_indices(20, 8);
            assert_eq!(s.len(), 8);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&i| i < 20));
        }
    }
}

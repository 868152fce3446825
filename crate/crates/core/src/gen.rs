//! Seeded generators for measurement matrices, sparse signals, and
//! support estimates, plus the assembled problem instance.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::rng::Rng;

/// A k-sparse signal: full-length values plus its sorted support.
#[derive(Clone, Debug)]
pub struct SparseSignal {
    pub values: Vec<f64>,
    pub support: Vec<usize>,
}

/// A generated problem: signal x with support T, measurements y = A x,
/// and the seed that produced it.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    pub signal: Vec<f64>,
    pub support: Vec<usize>,
    pub measurements: Vec<f64>,
    pub seed: u64,
}

/// A support estimate: the sorted index set and the weight applied on it.
#[derive(Clone, Debug)]
pub struct SupportEstimate {
    pub indices: Vec<usize>,
    pub weight: f64,
}

/// Matrix with i.i.d. standard normal entries, drawn row-major from the
/// given stream. Deterministic in (rows, cols, seed).
pub fn gen_gaussian_matrix(rows: usize, cols: usize, rng: &mut Rng) -> Result<DenseMatrix> {
    let mut m = DenseMatrix::zeros(rows, cols)?;
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.next_gaussian());
        }
    }
    Ok(m)
}

/// k-sparse signal of length n: support uniform without replacement,
/// nonzeros i.i.d. standard normal drawn in ascending index order.
pub fn gen_sparse_signal(n: usize, k: usize, rng: &mut Rng) -> Result<SparseSignal> {
    if k > n {
        return Err(Error::Argument(format!("sparsity {k} exceeds length {n}")));
    }
    let support = rng.sample_indices(n, k);
    let mut values = vec![0.0; n];
    for &i in &support {
        values[i] = rng.next_gaussian();
    }
    Ok(SparseSignal { values, support })
}

impl ProblemInstance {
    /// Assembles measurements y = A x for a generated signal.
    pub fn from_signal(a: &DenseMatrix, signal: SparseSignal, seed: u64) -> Result<Self> {
        if signal.values.len() != a.cols() {
            return Err(Error::Argument(format!(
                "signal length {} does not match {} columns",
                signal.values.len(),
                a.cols()
            )));
        }
        let measurements = a.matvec(&signal.values)?;
        Ok(ProblemInstance {
            signal: signal.values,
            support: signal.support,
            measurements,
            seed,
        })
    }

    /// Draws a complete instance (matrix not included) from one seed:
    /// child streams generate the signal, so equal seeds reproduce equal
    /// instances for a fixed matrix.
    pub fn generate(a: &DenseMatrix, k: usize, seed: u64) -> Result<Self> {
        let mut rng = Rng::new(Rng::child_seed(seed, 1));
        let signal = gen_sparse_signal(a.cols(), k, &mut rng)?;
        Self::from_signal(a, signal, seed)
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }
}

/// Nearest integer with half rounded up; ties favor the larger
/// intersection so the realized accuracy tracks the request.
fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Support estimate for an instance: |T~| = round(rho k) indices, of
/// which round(alpha rho k) are drawn uniformly from the true support
/// and the rest uniformly from its complement.
pub fn gen_support_estimate(
    instance: &ProblemInstance,
    alpha: f64,
    rho: f64,
    weight: f64,
    rng: &mut Rng,
) -> Result<SupportEstimate> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Argument(format!("accuracy alpha {alpha} outside [0, 1]")));
    }
    if !(rho > 0.0) {
        return Err(Error::Argument(format!("size ratio rho {rho} must be positive")));
    }
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::Argument(format!("weight {weight} outside [0, 1]")));
    }
    let n = instance.signal.len();
    let k = instance.support.len();
    let size = round_half_up(rho * k as f64);
    let inside = round_half_up(alpha * rho * k as f64);
    if inside > k {
        return Err(Error::Argument(format!(
            "requested {inside} in-support members but |T| = {k}"
        )));
    }
    if inside > size {
        return Err(Error::Argument(format!(
            "requested {inside} in-support members but |T~| = {size}"
        )));
    }
    let outside = size - inside;
    if outside > n - k {
        return Err(Error::Argument(format!(
            "requested {outside} off-support members but |T^c| = {}",
            n - k
        )));
    }
    let mut indices = rng.sample_from(&instance.support, inside);
    let complement: Vec<usize> = {
        let mut mask = vec![true; n];
        for &i in &instance.support {
            mask[i] = false;
        }
        (0..n).filter(|&i| mask[i]).collect()
    };
    indices.extend(rng.sample_from(&complement, outside));
    indices.sort_unstable();
    Ok(SupportEstimate { indices, weight })
}

impl SupportEstimate {
    /// Accuracy alpha = |T~ and T| / |T~|; returns 1 for an empty estimate.
    pub fn accuracy(&self, support: &[usize]) -> f64 {
        if self.indices.is_empty() {
            return 1.0;
        }
        self.intersection_size(support) as f64 / self.indices.len() as f64
    }

    /// Size ratio rho = |T~| / k.
    pub fn size_ratio(&self, k: usize) -> f64 {
        self.indices.len() as f64 / k as f64
    }

    /// Error size s = |symmetric difference of T~ and T|.
    pub fn error_size(&self, support: &[usize]) -> usize {
        let inter = self.intersection_size(support);
        (self.indices.len() - inter) + (support.len() - inter)
    }

    fn intersection_size(&self, support: &[usize]) -> usize {
        // Both sets are sorted.
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.indices.len() && j < support.len() {
            match self.indices[i].cmp(&support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }
}

/// Symmetric difference of two sorted index sets, sorted.
pub fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                out.push(x);
                i += 1;
            }
            (Some(_), Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

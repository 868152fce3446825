//! Householder QR factorization and orthonormal null-space bases.
//!
//! The null space of a full-row-rank m-by-n matrix (m < n) is obtained
//! from the full QR factorization of its transpose: the trailing n - m
//! columns of Q are an orthonormal basis of the kernel. No eigensolver
//! is involved and orthonormality holds to machine precision.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Relative tolerance on the R diagonal below which the input is
/// declared rank-deficient.
pub const RANK_REL_TOL: f64 = 1e-10;

/// Full QR factors of an n-by-m input (`q` is n-by-n orthogonal, `r` is
/// n-by-m upper trapezoidal).
pub struct Qr {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
}

/// Householder QR with full Q accumulation.
pub fn qr_factorize(m: &DenseMatrix) -> Qr {
    let n = m.rows();
    let p = m.cols();
    // A reflector per column; the last row never needs one.
    let steps = p.min(n.saturating_sub(1));
    let mut r = m.clone();
    // Householder vectors; reflector j acts on rows j..n.
    let mut vs: Vec<Vec<f64>> = Vec::with_capacity(steps);

    for j in 0..steps {
        // x = R[j.., j]
        let mut v: Vec<f64> = (j..n).map(|i| r.get(i, j)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            vs.push(Vec::new());
            continue;
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            vs.push(Vec::new());
            continue;
        }
        for x in v.iter_mut() {
            *x /= vnorm;
        }
        // Apply H = I - 2 v v^T to R[j.., j..].
        for c in j..p {
            let mut dot = 0.0;
            for (t, vi) in v.iter().enumerate() {
                dot += vi * r.get(j + t, c);
            }
            let dot2 = 2.0 * dot;
            for (t, vi) in v.iter().enumerate() {
                let val = r.get(j + t, c) - dot2 * vi;
                r.set(j + t, c, val);
            }
        }
        r.set(j, j, alpha);
        for i in (j + 1)..n {
            r.set(i, j, 0.0);
        }
        vs.push(v);
    }

    // Q = H_0 H_1 ... H_{s-1}, built by applying reflectors to I in
    // reverse order.
    let mut q = DenseMatrix::identity(n).expect("identity");
    for j in (0..vs.len()).rev() {
        let v = &vs[j];
        if v.is_empty() {
            continue;
        }
        for c in 0..n {
            let mut dot = 0.0;
            for (t, vi) in v.iter().enumerate() {
                dot += vi * q.get(j + t, c);
            }
            let dot2 = 2.0 * dot;
            for (t, vi) in v.iter().enumerate() {
                let val = q.get(j + t, c) - dot2 * vi;
                q.set(j + t, c, val);
            }
        }
    }

    Qr { q, r }
}

/// Orthonormal basis of the null space of `a`, returned as an
/// n-by-(n - m) matrix with orthonormal columns.
///
/// Requires m < n and numerically full row rank: the smallest R-diagonal
/// magnitude of the factorization of the transpose must be at least
/// [`RANK_REL_TOL`] times the largest.
pub fn null_space_basis(a: &DenseMatrix) -> Result<DenseMatrix> {
    let m = a.rows();
    let n = a.cols();
    if m >= n {
        return Err(Error::Argument(format!(
            "null space basis requires m < n, got {m}x{n}"
        )));
    }
    let qr = qr_factorize(&a.transpose());
    let mut dmax: f64 = 0.0;
    let mut dmin = f64::INFINITY;
    for j in 0..m {
        let d = qr.r.get(j, j).abs();
        dmax = dmax.max(d);
        dmin = dmin.min(d);
    }
    if dmax == 0.0 || dmin < RANK_REL_TOL * dmax {
        return Err(Error::Degenerate(format!(
            "rank-deficient matrix: R diagonal ratio {:.3e}",
            if dmax == 0.0 { 0.0 } else { dmin / dmax }
        )));
    }
    let cols: Vec<usize> = (m..n).collect();
    qr.q.select_columns(&cols)
}

/// Numerical rank of a square or rectangular matrix via the R diagonal
/// of its QR factorization with the [`RANK_REL_TOL`] threshold.
pub fn numerical_rank(a: &DenseMatrix) -> usize {
    let work = if a.rows() >= a.cols() { a.clone() } else { a.transpose() };
    let qr = qr_factorize(&work);
    let p = work.cols();
    let dmax = (0..p).map(|j| qr.r.get(j, j).abs()).fold(0.0, f64::max);
    if dmax == 0.0 {
        return 0;
    }
    (0..p).filter(|&j| qr.r.get(j, j).abs() >= RANK_REL_TOL * dmax).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::max_abs;
    use crate::rng::Rng;

    fn reconstruct(qr: &Qr) -> DenseMatrix {
        qr.q.matmul(&qr.r).unwrap()
    }

    #[test]
    fn qr_reconstructs_input() {
        let mut rng = Rng::new(8);
        for _ in 0..20 {
            let n = 2 + rng.next_index(6);
            let p = 1 + rng.next_index(n);
            let a = DenseMatrix::from_fn(n, p, |_, _| rng.next_gaussian()).unwrap();
            let qr = qr_factorize(&a);
            let back = reconstruct(&qr);
            for i in 0..n {
                for j in 0..p {
                    assert!((back.get(i, j) - a.get(i, j)).abs() < 1e-12);
                }
            }
            // Orthogonality of Q.
            let qtq = qr.q.transpose().matmul(&qr.q).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((qtq.get(i, j) - want).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn coordinate_projection_kernel() {
        // A = [1 0 0; 0 1 0] has kernel spanned by e3.
        let a = DenseMatrix::new(2, 3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        let b = null_space_basis(&a).unwrap();
        assert_eq!((b.rows(), b.cols()), (3, 1));
        assert!(b.get(0, 0).abs() < 1e-14);
        assert!(b.get(1, 0).abs() < 1e-14);
        assert!((b.get(2, 0).abs() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_one_dim_kernel() {
        // A = [1 1] has kernel +-(1, -1)/sqrt(2).
        let a = DenseMatrix::new(1, 2, vec![1.0, 1.0]).unwrap();
        let b = null_space_basis(&a).unwrap();
        let s = 1.0 / 2.0_f64.sqrt();
        let (x, y) = (b.get(0, 0), b.get(1, 0));
        assert!((x.abs() - s).abs() < 1e-14 && (y.abs() - s).abs() < 1e-14);
        assert!((x + y).abs() < 1e-14, "entries must have opposite signs");
    }

    #[test]
    fn random_wide_matrix_basis_properties() {
        let mut rng = Rng::new(17);
        let a = DenseMatrix::from_fn(4, 7, |_, _| rng.next_gaussian()).unwrap();
        let b = null_space_basis(&a).unwrap();
        assert_eq!((b.rows(), b.cols()), (7, 3));
        let btb = b.transpose().matmul(&b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((btb.get(i, j) - want).abs() <= 1e-12);
            }
        }
        let ab = a.matmul(&b).unwrap();
        assert!(max_abs(ab.entries()) <= 1e-10 * a.max_abs() * 7.0);
        assert!(max_abs(ab.entries()) <= 1e-10);
    }

    #[test]
    fn rank_deficient_rejected() {
        // Second row is a multiple of the first.
        let a = DenseMatrix::new(2, 4, vec![1.0, 2.0, 3.0, 4.0, 2.0, 4.0, 6.0, 8.0]).unwrap();
        match null_space_basis(&a) {
            Err(Error::Degenerate(_)) => {}
            other => panic!("expected degeneracy error, got {other:?}"),
        }
    }

    #[test]
    fn square_or_tall_rejected() {
        let a = DenseMatrix::identity(3).unwrap();
        assert!(null_space_basis(&a).is_err());
    }

    #[test]
    fn numerical_rank_detects_deficiency() {
        let a = DenseMatrix::new(3, 3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(numerical_rank(&a), 2);
        assert_eq!(numerical_rank(&DenseMatrix::identity(5).unwrap()), 5);
    }
}

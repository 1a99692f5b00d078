//! Small dense symmetric eigensolver.

use nalgebra::DMatrix;

/// Off-diagonal Frobenius norm under which Jacobi sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Returns the eigenvalues and the matrix whose columns are the matching
/// unit eigenvectors, in no particular order.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "square matrix expected");
    let mut a = a.clone();
    let mut v = DMatrix::identity(n, n);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_TOLERANCE {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- J^T A J with J the (p, q) rotation
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_untouched() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 1.0]));
        let (vals, vecs) = symmetric_eigen(&a);
        assert_eq!(vals, vec![4.0, 1.0]);
        assert_eq!(vecs, DMatrix::identity(2, 2));
    }

    #[test]
    fn reconstructs_symmetric_matrix() {
        let a = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, -2.0, 1.0, 3.0, 0.5, -2.0, 0.5, 5.0]);
        let (vals, v) = symmetric_eigen(&a);
        let back = &v * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vals)) * v.transpose();
        assert!((back - &a).abs().max() < 1e-10);
        assert!((v.transpose() * &v - DMatrix::identity(3, 3)).abs().max() < 1e-12);
    }
}

//! Small dense linear solves over any scalar carrier.
//!
//! Row-major square systems only; sizes here are the degree of an instance,
//! so nothing fancier than partial pivoting is warranted.

use crate::algebra::{Partial, Undefined};
use crate::scalar::Scalar;

/// Solve `A * X = B` by Gaussian elimination with partial pivoting.
///
/// `a` is an n x n matrix and `b` an n x m right-hand side, both as rows.
/// Returns the solution rows together with `det(A)`. Fails with
/// `NotInvertible` when no pivot survives the singularity guard.
pub fn gauss_solve<S: Scalar>(
    mut a: Vec<Vec<S>>,
    mut b: Vec<Vec<S>>,
) -> Partial<(Vec<Vec<S>>, S)> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(b.len(), n, "right-hand side row count mismatch");
    let m = b.first().map_or(0, Vec::len);

    let mut det = S::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .filter(|&r| !a[r][col].is_guard_zero())
            .max_by(|&r, &s| {
                a[r][col]
                    .to_f64()
                    .abs()
                    .partial_cmp(&a[s][col].to_f64().abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Undefined::NotInvertible)?;
        if pivot_row != col {
            a.swap(pivot_row, col);
            b.swap(pivot_row, col);
            det = det.neg();
        }
        let pivot = a[col][col].clone();
        det = det.mul(&pivot);
        for r in (col + 1)..n {
            if a[r][col] == S::zero() {
                continue;
            }
            let factor = match a[r][col].div(&pivot) {
                Some(f) => f,
                None => continue,
            };
            for c in col..n {
                let delta = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&delta);
            }
            for c in 0..m {
                let delta = factor.mul(&b[col][c]);
                b[r][c] = b[r][c].sub(&delta);
            }
        }
    }

    // Back substitution.
    let mut x = vec![vec![S::zero(); m]; n];
    for row in (0..n).rev() {
        for c in 0..m {
            let mut acc = b[row][c].clone();
            for k in (row + 1)..n {
                acc = acc.sub(&a[row][k].mul(&x[k][c]));
            }
            x[row][c] = acc.div(&a[row][row]).ok_or(Undefined::NotInvertible)?;
        }
    }
    Ok((x, det))
}

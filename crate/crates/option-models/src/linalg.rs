//! Small dense linear solver used by the direct evaluation paths and the
//! enumeration oracles. Systems here are tiny (a handful of states), so a
//! partially pivoted LU factorization is plenty.

use crate::error::{Error, Result};

/// Solves `A X = B` in place for a dense row-major `A` (n x n) and `B`
/// (n x m, row-major). Returns `X` as row-major n x m.
pub fn solve_dense(a: &[f64], b: &[f64], n: usize, m: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n * m);
    let mut lu = a.to_vec();
    let mut x = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        // Partial pivot.
        let mut best = col;
        let mut best_abs = lu[perm[col] * n + col].abs();
        for row in col + 1..n {
            let v = lu[perm[row] * n + col].abs();
            if v > best_abs {
                best_abs = v;
                best = row;
            }
        }
        if best_abs < 1e-300 {
            return Err(Error::SingularSystem { pivot: best_abs });
        }
        perm.swap(col, best);
        let pivot_row = perm[col];
        let pivot = lu[pivot_row * n + col];
        for row in col + 1..n {
            let r = perm[row];
            let factor = lu[r * n + col] / pivot;
            if factor != 0.0 {
                lu[r * n + col] = 0.0;
                for k in col + 1..n {
                    lu[r * n + k] -= factor * lu[pivot_row * n + k];
                }
                for k in 0..m {
                    x[r * m + k] -= factor * x[pivot_row * m + k];
                }
            }
        }
    }

    // Back substitution.
    let mut out = vec![0.0; n * m];
    for col in (0..n).rev() {
        let r = perm[col];
        for k in 0..m {
            let mut v = x[r * m + k];
            for j in col + 1..n {
                v -= lu[r * n + j] * out[j * m + k];
            }
            out[col * m + k] = v / lu[r * n + col];
        }
    }
    Ok(out)
}

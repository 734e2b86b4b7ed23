//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Forward Bareiss elimination in place. Returns `(sign, singular)` where
/// `sign` tracks row swaps. Columns beyond the square part ride along.
fn forward(m: &mut [Vec<BigInt>]) -> (i32, bool) {
    let n = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return (sign, true),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..width {
                let v = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    (sign, false)
}

/// Determinant of a square integer matrix.
pub fn bareiss_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let (sign, singular) = forward(&mut m);
    if singular {
        return BigInt::zero();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Solves `A y = det(A) b` exactly, i.e. returns `(det(A), adj(A) b)`.
/// `None` when `A` is singular.
pub fn bareiss_solve_scaled(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<(BigInt, Vec<BigInt>)> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (sign, singular) = forward(&mut m);
    if singular {
        return None;
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = -det;
    }
    let mut y = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &m[i][n];
        for j in i + 1..n {
            acc -= &m[i][j] * &y[j];
        }
        debug_assert!((&acc % &m[i][i]).is_zero());
        y[i] = acc / &m[i][i];
    }
    Some((det, y))
}

/// Column `col` of the adjugate of `A`, together with `det(A)`.
pub fn bareiss_adjugate_column(a: &[Vec<BigInt>], col: usize) -> Option<(BigInt, Vec<BigInt>)> {
    let mut e = vec![BigInt::zero(); a.len()];
    e[col] = BigInt::one();
    bareiss_solve_scaled(a, &e)
}

//! Exact linear algebra over the rationals and integers.
//!
//! Rank uses fraction-free (Bareiss) elimination on an integer matrix.
//! Kernels and inverses use reduced row echelon form over the rationals.
//! The two routes are kept independent so `rank + kernel_dim = columns`
//! serves as a cross-check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, Rational};

/// Dense rational matrix, row-major.
pub type QMatrix = Vec<Vec<Rational>>;

/// Scale each rational row by the lcm of its denominators to get an integer row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let d = common_denominator(row.iter());
            row.iter().map(|x| x.numer() * (&d / x.denom())).collect()
        })
        .collect()
}

/// Pivot choice for Bareiss elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pivoting {
    /// First nonzero entry in the column.
    #[default]
    FirstNonzero,
    /// Entry of smallest absolute value in the column.
    SmallestMagnitude,
}

/// Rank of an integer matrix via Bareiss fraction-free elimination.
pub fn bareiss_rank(rows: &[Vec<BigInt>], cols: usize, pivoting: Pivoting) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let candidates = (rank..nrows).filter(|&i| !m[i][col].is_zero());
        let pivot = match pivoting {
            Pivoting::FirstNonzero => candidates.into_iter().next(),
            Pivoting::SmallestMagnitude => {
                candidates.min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
            }
        };
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pv = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col..cols {
                // exact division by the previous pivot is the Bareiss invariant
                let v = (&pv * &row[j] - &factor * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            // columns left of `col` in this row are already zero
        }
        prev = pv;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form. Returns the matrix and pivot columns.
pub fn rref(rows: &[Vec<Rational>], cols: usize) -> (QMatrix, Vec<usize>) {
    let mut m: QMatrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Kernel basis in canonical form: one vector per free column, with that
/// column set to 1 and every other free column 0.
pub fn kernel_basis(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Rank over the rationals, by RREF (independent of [`bareiss_rank`]).
pub fn rational_rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Exact inverse of a square rational matrix, or `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<QMatrix> {
    let n = m.len();
    let augmented: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let (red, pivots) = rref(&augmented, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Inverse Vandermonde matrix for nodes `0, 1, …, size-1`: row `i` maps node
/// values to the coefficient of `k^i`.
pub fn vandermonde_inverse(size: usize) -> QMatrix {
    let v: QMatrix = (0..size)
        .map(|k| {
            let k = Rational::from_integer(BigInt::from(k));
            let mut p = Rational::one();
            (0..size)
                .map(|_| {
                    let out = p.clone();
                    p *= &k;
                    out
                })
                .collect()
        })
        .collect();
    inverse(&v).expect("distinct nodes give a nonsingular Vandermonde matrix")
}

/// Primitive integer basis of `{x : rows · x = 0}` for a small integer matrix.
pub(crate) fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let q: QMatrix = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    kernel_basis(&q, cols)
        .into_iter()
        .map(|v| primitive(&v))
        .collect()
}

/// Scale a rational vector to a primitive integer vector (same direction).
pub(crate) fn primitive(v: &[Rational]) -> Vec<i64> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let d = common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().expect("geometry coordinates fit in i64")
        })
        .collect()
}

/// Determinant of a small integer matrix (Bareiss, exact in i128).
pub(crate) fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Integer determinant of an i64 matrix.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let wide: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    det_i128(&wide) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_basics() {
        let zero = qm(&[&[0, 0], &[0, 0]]);
        assert_eq!(
            bareiss_rank(&integer_rows(&zero), 2, Pivoting::default()),
            0
        );
        assert_eq!(rational_rank(&zero, 2), 0);
        let id = qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(bareiss_rank(&integer_rows(&id), 3, Pivoting::default()), 3);
        let dep = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        for p in [Pivoting::FirstNonzero, Pivoting::SmallestMagnitude] {
            assert_eq!(bareiss_rank(&integer_rows(&dep), 3, p), 2);
        }
        assert_eq!(rational_rank(&dep, 3), 2);
    }

    #[test]
    fn kernel_is_canonical() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = kernel_basis(&m, 3);
        assert_eq!(k, vec![vec![int(-1), int(-1), int(1)]]);
    }

    #[test]
    fn fractional_rows_scale_to_integers() {
        let rows = vec![vec![frac(1, 2), frac(1, 3)]];
        assert_eq!(
            integer_rows(&rows),
            vec![vec![BigInt::from(3), BigInt::from(2)]]
        );
    }

    #[test]
    fn vandermonde_recovers_polynomial() {
        // p(k) = 1 + 3/2 k + 1/2 k^2 at k = 0, 1, 2
        let inv = vandermonde_inverse(3);
        let values = [int(1), int(3), int(6)];
        let coeffs: Vec<Rational> = inv
            .iter()
            .map(|row| row.iter().zip(&values).map(|(a, b)| a * b).sum())
            .collect();
        assert_eq!(coeffs, vec![int(1), frac(3, 2), frac(1, 2)]);
    }

    #[test]
    fn singular_inverse() {
        assert!(inverse(&qm(&[&[1, 2], &[2, 4]])).is_none());
        assert!(inverse(&qm(&[&[0, 1], &[1, 0]])).is_some());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![0, -1], vec![1, -1]]), 1);
        assert_eq!(
            determinant(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]),
            1
        );
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(
            determinant(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            -1
        );
    }

    #[test]
    fn integer_kernel_is_primitive() {
        let k = integer_kernel(&[vec![2, 4, 0]], 3);
        assert_eq!(k, vec![vec![-2, 1, 0], vec![0, 0, 1]]);
    }
}

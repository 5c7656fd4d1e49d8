//! Exact Gaussian elimination over `BigRational` for the small dense systems
//! used by the hull and Newton-polygon machinery (dimension <= 6 throughout).

use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Row rank of `rows` (each of length `ncols`).
pub fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..ncols {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Indices of the pivot columns of `rows` under Gaussian elimination; the
/// projection onto these coordinates is injective on the row space.
pub fn pivot_columns(rows: &[Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..ncols {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    pivots
}

/// Solves `A x = b` for square-or-tall exact systems with unique solutions in
/// the column span; returns `None` when inconsistent or underdetermined.
#[cfg_attr(not(test), allow(dead_code))]
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let nrows = a.len();
    debug_assert_eq!(b.len(), nrows);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in col..=ncols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=ncols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    // Inconsistent system: zero row with nonzero rhs.
    for r in rank..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    if rank < ncols {
        return None;
    }
    let mut x = alloc::vec![BigRational::zero(); ncols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][ncols].clone();
    }
    Some(x)
}

/// A nonzero kernel vector of `rows` (each of length `ncols`), expecting
/// nullity exactly one; `None` when the map is injective.
pub fn kernel_vector(rows: &[Vec<BigRational>], ncols: usize) -> Option<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for c in col..ncols {
            m[rank][c] = &m[rank][c] / &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let free_col = (0..ncols).find(|c| !pivot_col_of_row.contains(c))?;
    let mut x = alloc::vec![BigRational::zero(); ncols];
    x[free_col] = BigRational::one();
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        // Row-reduced: x[col] = -coef(free_col) once the free variable is 1.
        x[col] = -m[r][free_col].clone();
    }
    Some(x)
}

/// Determinant of a square matrix, exact.
pub fn determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(entries: &[&[i64]]) -> Vec<Vec<BigRational>> {
        entries
            .iter()
            .map(|row| row.iter().map(|&e| q(e)).collect())
            .collect()
    }

    #[test]
    fn rank_of_degenerate_rows() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m, 3), 2);
        assert_eq!(rank(&mat(&[&[0, 0]]), 2), 0);
    }

    #[test]
    fn solve_unique_system() {
        let a = mat(&[&[2, 1], &[1, -1]]);
        let b = alloc::vec![q(5), q(1)];
        let x = solve(&a, &b, 2).unwrap();
        assert_eq!(x, alloc::vec![q(2), q(1)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[q(1), q(3)], 2).is_none());
    }

    #[test]
    fn kernel_of_rank_deficient_map() {
        let m = mat(&[&[1, 2, 3], &[0, 1, 1]]);
        let k = kernel_vector(&m, 3).unwrap();
        // Verify A k = 0 and k != 0.
        for row in &m {
            let dot: BigRational = row.iter().zip(&k).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert!(k.iter().any(|c| !c.is_zero()));
        assert!(kernel_vector(&mat(&[&[1, 0], &[0, 1]]), 2).is_none());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&mat(&[&[1, 2], &[3, 4]])), q(-2));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), q(-1));
        assert_eq!(determinant(&mat(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]])), q(24));
        assert_eq!(determinant(&mat(&[&[1, 1], &[2, 2]])), q(0));
    }
}

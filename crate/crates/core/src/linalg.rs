//! Small dense matrices and exact integer rank.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_traits::Zero;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Copy + Zero> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows. Returns `None` when the rows are ragged.
    pub fn from_rows(rows: &[Vec<S>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, col)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.cols.max(1)).map(<[S]>::to_vec).take(self.rows).collect()
    }
}

impl<S> Matrix<S> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Exact rank of an integer matrix given as a list of column vectors.
///
/// Fraction-free (Bareiss) elimination; entries stay integral throughout.
pub fn integer_rank(columns: &[Vec<i64>]) -> usize {
    let Some(first) = columns.first() else {
        return 0;
    };
    let rows = first.len();
    // eliminate over the transpose: one row per column vector
    let mut a: Vec<Vec<i128>> = columns
        .iter()
        .map(|c| c.iter().map(|&v| i128::from(v)).collect())
        .collect();
    let n_rows = a.len();
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..rows {
        let Some(pivot_row) = (rank..n_rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let pivot = a[rank][col];
        for r in rank + 1..n_rows {
            let factor = a[r][col];
            for c in 0..rows {
                a[r][c] = (pivot * a[r][c] - factor * a[rank][c]) / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_of_dependent_columns() {
        let cols = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(integer_rank(&cols), 2);
    }

    #[test]
    fn rank_of_empty_and_zero() {
        assert_eq!(integer_rank(&[]), 0);
        assert_eq!(integer_rank(&[vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn rank_full() {
        let cols = vec![vec![1, 0, 0, 0], vec![1, 1, 0, 0], vec![1, 1, 1, 0], vec![1, 1, 1, 1], vec![3, 1, 4, 1]];
        assert_eq!(integer_rank(&cols), 4);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::<f64>::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_none());
    }
}

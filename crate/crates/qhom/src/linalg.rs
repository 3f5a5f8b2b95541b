//! Exact linear algebra over Q: reduced row echelon form, rank, nullspace.
//!
//! Pivoting is deterministic — leftmost column, then smallest row index — so
//! results are reproducible without magnitude heuristics.

use crate::rational::Rational;
use num::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            m.data.swap(row * m.cols + col, p * m.cols + col);
            for j in 0..m.cols {
                if j != col {
                    m.data.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let inv = m.at(row, col).clone().recip();
            for j in 0..m.cols {
                let v = m.at(row, j).clone() * &inv;
                *m.at_mut(row, j) = v;
            }
            for i in 0..m.rows {
                if i != row && !m.at(i, col).is_zero() {
                    let factor = m.at(i, col).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).clone() - &factor * m.at(row, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace. For each free column `j`, the basis
    /// vector has 1 at `j`, minus the pivot-row entries elsewhere; vectors
    /// are ordered by ascending free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set[j].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[j] = Rational::one();
            for (&pc, row) in pivots.iter().zip(0..) {
                vec[pc] = -r.at(row, j).clone();
            }
            basis.push(vec);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_rank() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn nullspace_of_ones_row() {
        let basis = m(&[&[1, 1, 1]]).nullspace_basis();
        assert_eq!(
            basis,
            vec![
                vec![rat_int(-1), rat_int(1), rat_int(0)],
                vec![rat_int(-1), rat_int(0), rat_int(1)],
            ]
        );
    }

    #[test]
    fn rref_idempotent_and_rank_transpose() {
        let a = m(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        let (r, _) = a.rref();
        assert_eq!(r.rref().0, r);
        assert_eq!(a.rank(), a.transpose().rank());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        for v in a.nullspace_basis() {
            for i in 0..a.rows {
                let s: Rational = (0..a.cols).map(|j| a.at(i, j) * &v[j]).sum();
                assert!(s == rat_int(0));
            }
        }
        assert_eq!(a.rank() + a.nullspace_basis().len(), a.cols);
    }
}

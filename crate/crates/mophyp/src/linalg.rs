//! Exact Gaussian elimination over the rationals, enough for the moment-matrix
//! oracles: null spaces and square solves.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Row-major exact matrix.
#[derive(Debug, Clone)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = Rat::one() / self[(row, col)].clone();
            for j in col..self.cols {
                let v = self[(row, j)].clone() * &inv;
                self[(row, j)] = v;
            }
            for i in 0..self.rows {
                if i != row && !self[(i, col)].is_zero() {
                    let f = self[(i, col)].clone();
                    for j in col..self.cols {
                        let v = self[(i, j)].clone() - &f * &self[(row, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Basis of the right null space (one Vec per basis vector).
    pub fn null_space(mut self) -> Vec<Vec<Rat>> {
        let pivots = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -self[(r, fc)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves M x = rhs for square or overdetermined consistent systems with
    /// a unique solution.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RatMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::RankDeficient("inconsistent linear system".into()));
        }
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient(format!(
                "rank {} < {} unknowns",
                pivots.len(),
                self.cols
            )));
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Ok(x)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn null_space_of_rank_deficient_matrix() {
        // x + y + z = 0, x + 2y + 3z = 0 -> null space spanned by (1, -2, 1)
        let m = RatMatrix::from_fn(2, 3, |i, j| rat_int([[1, 1, 1], [1, 2, 3]][i][j]));
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let s = v[0].clone() + &v[1] + &v[2];
        assert!(s.is_zero());
        let s = v[0].clone() + rat_int(2) * &v[1] + rat_int(3) * &v[2];
        assert!(s.is_zero());
    }

    #[test]
    fn solve_square() {
        let m = RatMatrix::from_fn(2, 2, |i, j| rat_int([[2, 1], [1, 3]][i][j]));
        let x = m.solve(&[rat_int(5), rat_int(10)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(3)]);
    }

    #[test]
    fn singular_solve_reports_rank() {
        let m = RatMatrix::from_fn(2, 2, |i, j| rat_int([[1, 1], [2, 2]][i][j]));
        assert!(m.solve(&[rat_int(1), rat_int(3)]).is_err());
    }
}

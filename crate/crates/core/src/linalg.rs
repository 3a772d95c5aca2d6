//! Dense exact linear algebra over the rationals.
//!
//! Everything here targets desk-scale systems (dimensions in the tens), so
//! plain fraction-free-ish Gaussian elimination with exact `Rational` entries
//! is the right tool; there is no pivoting heuristic beyond "first nonzero".

use num_traits::{One, Zero};

use crate::exactnum::Rational;

/// Row-major dense matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).recip();
            for j in col..self.cols {
                let v = std::mem::replace(self.at_mut(row, j), Rational::zero());
                *self.at_mut(row, j) = v * &inv;
            }
            for i in 0..self.rows {
                if i == row || self.at(i, col).is_zero() {
                    continue;
                }
                let factor = self.at(i, col).clone();
                for j in col..self.cols {
                    let sub = self.at(row, j) * &factor;
                    *self.at_mut(i, j) -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Exact solution of `self * x = b`.
    pub fn solve(&self, b: &[Rational]) -> Solve {
        assert_eq!(b.len(), self.rows, "rhs length");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Solve::Inconsistent;
        }
        if pivots.len() < self.cols {
            return Solve::Underdetermined;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.at(row, self.cols).clone();
        }
        Solve::Unique(x)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                map[col] = Some(row);
            }
            map
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    v[col] = -reduced.at(*row, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally maintained row space in reduced echelon form, used to test
/// membership and extend spanning sets one vector at a time.
#[derive(Debug, Clone, Default)]
pub struct RowSpan {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current span; the residue is zero iff `v` is a
    /// member.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= r * &factor;
            }
        }
        v
    }

    /// Insert `v` if independent of the span. Returns `true` when the rank
    /// grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            let val = std::mem::replace(x, Rational::zero());
            *x = val * &inv;
        }
        // Back-substitute into existing rows to keep the form reduced.
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(rp != p);
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                *x -= r * &factor;
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn solve_unique() {
        // 2x + y = 5, x - y = 1  =>  x = 2, y = 1
        let m = Mat::from_rows(vec![v(&[2, 1]), v(&[1, -1])]);
        assert_eq!(m.solve(&v(&[5, 1])), Solve::Unique(v(&[2, 1])));
    }

    #[test]
    fn solve_overdetermined_consistent() {
        let m = Mat::from_rows(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        assert_eq!(m.solve(&v(&[2, 3, 5])), Solve::Unique(v(&[2, 3])));
    }

    #[test]
    fn solve_inconsistent() {
        let m = Mat::from_rows(vec![v(&[1, 0]), v(&[1, 0])]);
        assert_eq!(m.solve(&v(&[1, 2])), Solve::Inconsistent);
    }

    #[test]
    fn solve_underdetermined() {
        let m = Mat::from_rows(vec![v(&[1, 1])]);
        assert_eq!(m.solve(&v(&[1])), Solve::Underdetermined);
    }

    #[test]
    fn solve_with_fractions() {
        let m = Mat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(-1, 7)],
        ]);
        let b = vec![rat(13, 6), rat(-16, 35)];
        // x = 1, y = 5
        assert_eq!(m.solve(&b), Solve::Unique(v(&[1, 5])));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let m = Mat::from_rows(vec![v(&[1, 1, 1])]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for vec in &k {
            let dot: Rational = vec.iter().fold(rat_int(0), |acc, x| acc + x);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn rowspan_membership_and_rank() {
        let mut span = RowSpan::new();
        assert!(span.insert(v(&[1, 2, 3])));
        assert!(span.insert(v(&[0, 1, 1])));
        assert!(!span.insert(v(&[1, 3, 4])));
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&v(&[2, 5, 7])));
        assert!(!span.contains(&v(&[0, 0, 1])));
    }
}

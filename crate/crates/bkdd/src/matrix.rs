//! Dense matrices over GF(p^m) with exact rank and kernel computation.

use crate::field::{Elt, FieldCtx};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGF {
    rows: usize,
    cols: usize,
    entries: Vec<Elt>,
}

impl MatrixGF {
    pub fn zeros(rows: usize, cols: usize) -> MatrixGF {
        MatrixGF {
            rows,
            cols,
            entries: vec![Elt::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Elt>>) -> MatrixGF {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        MatrixGF {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> MatrixGF {
        let mut m = MatrixGF::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elt::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut out = MatrixGF::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Appends the columns of `other` on the right.
    pub fn hstack(&self, other: &MatrixGF) -> MatrixGF {
        assert_eq!(self.rows, other.rows);
        let mut out = MatrixGF::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elt], f: &FieldCtx) -> Vec<Elt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Elt::ZERO;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self, f: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.get(row, j);
                self.set(row, j, self.get(piv, j));
                self.set(piv, j, tmp);
            }
            let inv = f.inv(self.get(row, col));
            for j in col..self.cols {
                self.set(row, j, f.mul(self.get(row, j), inv));
            }
            for i in 0..self.rows {
                if i != row && !self.get(i, col).is_zero() {
                    let factor = self.get(i, col);
                    for j in col..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(row, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        let mut copy = self.clone();
        copy.rref(f).len()
    }

    /// Rank and a basis of the right kernel; M v = 0 exactly for each
    /// basis vector, and rank + |kernel| = cols.
    pub fn rank_and_kernel(&self, f: &FieldCtx) -> (usize, Vec<Vec<Elt>>) {
        let mut copy = self.clone();
        let pivots = copy.rref(f);
        let rank = pivots.len();
        let mut kernel = Vec::with_capacity(self.cols - rank);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Elt::ZERO; self.cols];
            v[free] = Elt::ONE;
            for (c, slot) in is_pivot.iter().enumerate() {
                if let Some(r) = slot {
                    v[c] = f.neg(copy.get(*r, free));
                }
            }
            kernel.push(v);
        }
        (rank, kernel)
    }

    /// Whether M x = rhs has a solution.
    pub fn is_solvable(&self, rhs: &[Elt], f: &FieldCtx) -> bool {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = MatrixGF::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, rhs[i]);
        }
        aug.rank(f) == self.rank(f)
    }
}

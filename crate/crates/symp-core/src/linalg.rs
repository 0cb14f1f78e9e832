//! Dense exact matrices over the rationals.
//!
//! Elimination clears denominators row-wise and runs Bareiss one-step
//! fraction-free reduction on the integer matrix, so intermediate entries
//! stay integral; results are normalized back to reduced echelon form
//! over the rationals at the end.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if Zero::is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn plus(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = &*a + b;
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = -&*a;
        }
        out
    }

    pub fn scale(&self, q: &Rat) -> Mat {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = &*a * q;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "row count mismatch");
        let mut out = Mat::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols, "column count mismatch");
        let mut rows: Vec<Vec<Rat>> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.extend((0..rhs.rows).map(|r| rhs.row(r)));
        let mut m = Mat::from_rows(rows);
        if m.cols == 0 {
            m.cols = self.cols;
        }
        m
    }

    /// Row-wise denominator clearing; kernel and row space are preserved.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    lcm = lcm.lcm(self.get(r, c).denom());
                }
                (0..self.cols)
                    .map(|c| {
                        let q = self.get(r, c);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.integer_rows();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivots: Vec<usize> = Vec::new();
        let mut prev_pivot = BigInt::one();
        let mut pivot_row = 0usize;

        // Bareiss forward elimination.
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let found = (pivot_row..rows).find(|&r| !m[r][col].is_zero());
            let Some(sel) = found else { continue };
            m.swap(pivot_row, sel);
            let pivot = m[pivot_row][col].clone();
            for r in pivot_row + 1..rows {
                for c in 0..cols {
                    if c == col {
                        continue;
                    }
                    let v = (&pivot * &m[r][c] - &m[r][col] * &m[pivot_row][c]) / &prev_pivot;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev_pivot = pivot;
            pivots.push(col);
            pivot_row += 1;
        }

        // Normalize pivot rows and back-substitute over the rationals.
        let mut out = Mat::zeros(rows, cols);
        for (i, &pc) in pivots.iter().enumerate() {
            let inv = Rat::new(BigInt::one(), BigInt::one()) / Rat::from_integer(m[i][pc].clone());
            for c in 0..cols {
                out.set(i, c, Rat::from_integer(m[i][c].clone()) * &inv);
            }
        }
        for i in (0..pivots.len()).rev() {
            let pc = pivots[i];
            for upper in 0..i {
                let factor = out.get(upper, pc).clone();
                if Zero::is_zero(&factor) {
                    continue;
                }
                for c in 0..cols {
                    let v = out.get(upper, c) - &factor * out.get(i, c);
                    out.set(upper, c, v);
                }
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{x : M x = 0}`, one vector per free
    /// column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -r.get(i, free).clone();
            }
            basis.push(x);
        }
        basis
    }

    /// A solution of `M x = b`, with free variables set to zero;
    /// `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let rhs = Mat::from_rows(b.iter().map(|q| vec![q.clone()]).collect());
        let aug = if self.cols == 0 {
            rhs.clone()
        } else {
            self.hstack(&rhs)
        };
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        // Track the denominator factor introduced by row clearing.
        let mut scale = Rat::one();
        let mut m = Vec::with_capacity(n);
        for r in 0..n {
            let mut lcm = BigInt::one();
            for c in 0..n {
                lcm = lcm.lcm(self.get(r, c).denom());
            }
            scale = scale * Rat::from_integer(lcm.clone());
            m.push(
                (0..n)
                    .map(|c| {
                        let q = self.get(r, c);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect::<Vec<BigInt>>(),
            );
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Rat::zero();
            };
            if sel != col {
                m.swap(col, sel);
                sign = -sign;
            }
            let pivot = m[col][col].clone();
            for r in col + 1..n {
                for c in col + 1..n {
                    m[r][c] = (&pivot * &m[r][c] - &m[r][col] * &m[col][c]) / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = pivot;
        }
        let det_int = Rat::from_integer(m[n - 1][n - 1].clone());
        let det = det_int / scale;
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Determinant of the square submatrix on the given rows/columns.
    pub fn submatrix_det(&self, row_ix: &[usize], col_ix: &[usize]) -> Rat {
        assert_eq!(row_ix.len(), col_ix.len());
        let k = row_ix.len();
        let mut sub = Mat::zeros(k, k);
        for (i, &r) in row_ix.iter().enumerate() {
            for (j, &c) in col_ix.iter().enumerate() {
                sub.set(i, j, self.get(r, c).clone());
            }
        }
        sub.det()
    }

    /// Sylvester criterion: symmetric with all leading principal minors
    /// positive.
    pub fn is_positive_definite(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        for k in 1..=self.rows {
            let ix: Vec<usize> = (0..k).collect();
            if !self.submatrix_det(&ix, &ix).is_positive() {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

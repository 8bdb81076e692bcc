//! Dense exact matrices over Q(i), row-major.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |r, c| {
            if r == c {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), m, "ragged rows");
        }
        Mat {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-entry convenience constructor.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        let mut t = Scalar::zero();
        for k in 0..self.rows {
            t = &t + self.get(k, k);
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// `self * rhs`; panics on inner dimension mismatch.
    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + &(a * rhs.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Apply to a coordinate vector: `self * v` with `v` a column.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "apply dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (c, vc) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() {
                        acc = &acc + &(a * vc);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: usize) -> Mat {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.matmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    /// `ab - ba`.
    pub fn commutator(a: &Mat, b: &Mat) -> Mat {
        &a.matmul(b) - &b.matmul(a)
    }

    /// Row-major flattening, for viewing n x n matrices as n^2-vectors.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn unflatten(n: usize, v: &[Scalar]) -> Mat {
        assert_eq!(v.len(), n * n, "unflatten length mismatch");
        Mat::new(n, n, v.to_vec())
    }

    pub fn vstack(top: &Mat, bottom: &Mat) -> Mat {
        assert_eq!(top.cols, bottom.cols, "vstack width mismatch");
        let mut entries = top.entries.clone();
        entries.extend_from_slice(&bottom.entries);
        Mat {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            entries,
        }
    }

    pub fn hstack(left: &Mat, right: &Mat) -> Mat {
        assert_eq!(left.rows, right.rows, "hstack height mismatch");
        Mat::from_fn(left.rows, left.cols + right.cols, |r, c| {
            if c < left.cols {
                left.get(r, c).clone()
            } else {
                right.get(r, c - left.cols).clone()
            }
        })
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// column indices in row order (pivot selection: lowest column index).
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = self.get(row, col).inv().expect("pivot nonzero");
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&factor * self.get(row, c));
                    self.set(r, c, v);
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
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.matmul(rhs)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({}x{})\n{self}", self.rows, self.cols)
    }
}

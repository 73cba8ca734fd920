use std::fmt;

use num_bigint::BigInt;

use crate::novikov::NovikovSeries;

use super::ring::EuclideanRing;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type LambdaMatrix = Matrix<NovikovSeries>;

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows·cols");
        Self { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<F, G: Clone>(&self, f: F) -> Matrix<G>
    where
        F: FnMut(&E) -> G,
    {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let width = range.len();
        Self::from_fn(self.rows, width, |i, j| self.get(i, range.start + j).clone())
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> Self {
        let height = range.len();
        Self::from_fn(height, self.cols, |i, j| self.get(range.start + i, j).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self, zero: E) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| match (i < self.rows, j < self.cols) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.rows, j - self.cols).clone(),
            _ => zero.clone(),
        })
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<R: EuclideanRing<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: EuclideanRing<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn mul<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Self::from_fn(self.rows, other.cols, |i, j| ring.dot((0..self.cols).map(|k| (self.get(i, k), other.get(k, j)))))
    }

    pub fn add<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect())
    }

    pub fn sub<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect())
    }

    pub fn neg<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    pub fn is_zero<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    /// `row[target] -= q · row[source]`.
    pub fn row_axpy<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, target: usize, source: usize, q: &E) {
        if ring.is_zero(q) {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if ring.is_zero(s) {
                continue;
            }
            let v = ring.sub(self.get(target, j), &ring.mul(q, s));
            self.set(target, j, v);
        }
    }

    /// `col[target] -= q · col[source]`.
    pub fn col_axpy<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, target: usize, source: usize, q: &E) {
        if ring.is_zero(q) {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if ring.is_zero(s) {
                continue;
            }
            let v = ring.sub(self.get(i, target), &ring.mul(s, q));
            self.set(i, target, v);
        }
    }

    pub fn scale_col<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, j: usize, u: &E) {
        for i in 0..self.rows {
            let v = ring.mul(self.get(i, j), u);
            self.set(i, j, v);
        }
    }
}

impl<E: fmt::Display> fmt::Display for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
}

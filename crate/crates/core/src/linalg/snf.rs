//! Smith normal form over a Euclidean ring with tracked transforms.

use super::matrix::Matrix;
use super::ring::EuclideanRing;
use super::LinalgError;

/// `left · m · right = diag(diagonal)` with `diagonal[0] | diagonal[1] | …`.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    /// `min(rows, cols)` entries; the first `rank` are nonzero and canonical.
    pub diagonal: Vec<E>,
    pub rank: usize,
    pub left: Matrix<E>,
    pub right: Matrix<E>,
    /// Accumulated determinants of the transforms, a running certificate
    /// that both are invertible.
    pub left_det: E,
    pub right_det: E,
}

impl<E: Clone> SmithForm<E> {
    pub fn nonzero_diagonal(&self) -> &[E] {
        &self.diagonal[..self.rank]
    }
}

struct Work<'a, R: EuclideanRing> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    left: Matrix<R::Elem>,
    right: Matrix<R::Elem>,
    left_det: R::Elem,
    right_det: R::Elem,
}

impl<R: EuclideanRing> Work<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.left.swap_rows(i, j);
            self.left_det = self.ring.neg(&self.left_det);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.right.swap_cols(i, j);
            self.right_det = self.ring.neg(&self.right_det);
        }
    }

    fn row_axpy(&mut self, target: usize, source: usize, q: &R::Elem) {
        self.a.row_axpy(self.ring, target, source, q);
        self.left.row_axpy(self.ring, target, source, q);
    }

    fn col_axpy(&mut self, target: usize, source: usize, q: &R::Elem) {
        self.a.col_axpy(self.ring, target, source, q);
        self.right.col_axpy(self.ring, target, source, q);
    }

    /// Moves the smallest entry of the block `[t.., t..]` to `(t, t)`.
    fn place_pivot(&mut self, t: usize) -> bool {
        let mut best: Option<((num_bigint::BigInt, i64), usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = self.a.get(i, j);
                if self.ring.is_zero(e) {
                    continue;
                }
                let key = self.ring.pivot_key(e);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, i, j));
                }
            }
        }
        match best {
            None => false,
            Some((_, i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
        }
    }

    /// Clears row `t` and column `t` outside the pivot. A nonzero remainder
    /// is smaller than the pivot, so re-picking the smallest entry of the
    /// block terminates and keeps the remaining entries from growing.
    fn clear_cross(&mut self, t: usize) -> Result<(), LinalgError> {
        loop {
            for i in t + 1..self.a.rows() {
                if !self.ring.is_zero(self.a.get(i, t)) {
                    let (q, _) = self.ring.reduce(self.a.get(i, t), self.a.get(t, t))?;
                    self.row_axpy(i, t, &q);
                }
            }
            for j in t + 1..self.a.cols() {
                if !self.ring.is_zero(self.a.get(t, j)) {
                    let (q, _) = self.ring.reduce(self.a.get(t, j), self.a.get(t, t))?;
                    self.col_axpy(j, t, &q);
                }
            }
            let clear = (t + 1..self.a.rows()).all(|i| self.ring.is_zero(self.a.get(i, t)))
                && (t + 1..self.a.cols()).all(|j| self.ring.is_zero(self.a.get(t, j)));
            if clear {
                return Ok(());
            }
            self.place_pivot(t);
        }
    }

    /// Diagonalizes the block `[from.., from..]`; returns the rank reached.
    fn diagonalize(&mut self, from: usize) -> Result<usize, LinalgError> {
        let n = self.a.rows().min(self.a.cols());
        let mut t = from;
        while t < n && self.place_pivot(t) {
            self.clear_cross(t)?;
            t += 1;
        }
        Ok(t)
    }
}

#[allow(clippy::mut_range_bound)] // the loop restarts after `rank` changes
pub fn smith<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Result<SmithForm<R::Elem>, LinalgError> {
    let mut w = Work {
        ring,
        a: m.clone(),
        left: Matrix::identity(ring, m.rows()),
        right: Matrix::identity(ring, m.cols()),
        left_det: ring.one(),
        right_det: ring.one(),
    };
    let mut rank = w.diagonalize(0)?;
    'fixup: loop {
        for i in 0..rank {
            for j in i + 1..rank {
                if ring.divides(w.a.get(i, i), w.a.get(j, j))? {
                    continue;
                }
                // Pull d_j into column i; re-diagonalizing strictly lowers
                // the size of the (i, i) entry.
                let minus_one = ring.neg(&ring.one());
                w.col_axpy(i, j, &minus_one);
                rank = w.diagonalize(i)?;
                continue 'fixup;
            }
        }
        break;
    }
    for t in 0..rank {
        let (c, u) = ring.normalize(w.a.get(t, t))?;
        w.a.scale_col(ring, t, &u);
        w.right.scale_col(ring, t, &u);
        w.right_det = ring.mul(&w.right_det, &u);
        w.a.set(t, t, c);
    }
    let n = m.rows().min(m.cols());
    let diagonal = (0..n).map(|t| if t < rank { w.a.get(t, t).clone() } else { ring.zero() }).collect();
    Ok(SmithForm { diagonal, rank, left: w.left, right: w.right, left_det: w.left_det, right_det: w.right_det })
}

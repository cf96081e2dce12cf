//! Exact integer matrices: multiplication, fraction-free determinants, and
//! Smith normal form with unimodular transforms. Everything runs over
//! arbitrary-precision integers so intermediate growth is never a concern.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    // Exact by the Bareiss identity.
                    a.set(i, j, num / &prev);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.data.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row_i += factor * row_j
    fn add_row(&mut self, i: usize, j: usize, factor: &BigInt) {
        for k in 0..self.cols {
            let add = factor * self.get(j, k);
            let v = self.get(i, k) + add;
            self.set(i, k, v);
        }
    }

    /// col_i += factor * col_j
    fn add_col(&mut self, i: usize, j: usize, factor: &BigInt) {
        for k in 0..self.rows {
            let add = factor * self.get(k, j);
            let v = self.get(k, i) + add;
            self.set(k, i, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k);
            self.set(i, k, v);
        }
    }
}

/// `left * m * right == diag`, with both transforms unimodular and the
/// diagonal nonnegative, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries, in the divisibility chain order they are
    /// stored in.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.diag.rows().min(self.diag.cols()))
            .map(|i| self.diag.get(i, i).clone())
            .collect()
    }
}

/// Smith normal form by repeated pivoting on a least-magnitude entry. Row
/// operations are mirrored into `left`, column operations into `right`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        'block: loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                break 'block;
            };
            if pi != t {
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                if !a.get(i, t).is_zero() {
                    let q = -(a.get(i, t) / a.get(t, t));
                    a.add_row(i, t, &q);
                    left.add_row(i, t, &q);
                    clean &= a.get(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                if !a.get(t, j).is_zero() {
                    let q = -(a.get(t, j) / a.get(t, t));
                    a.add_col(j, t, &q);
                    right.add_col(j, t, &q);
                    clean &= a.get(t, j).is_zero();
                }
            }
            if !clean {
                // Some remainder survived with smaller magnitude than the
                // pivot; re-pivot on it.
                continue;
            }
            // Pull any trailing entry the pivot fails to divide into this
            // row, then restart the elimination on the smaller gcd.
            let pivot = a.get(t, t).clone();
            let offender =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !(a.get(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break 'block,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithDecomposition {
        left,
        diag: a,
        right,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a.get(i, j).is_zero() {
                continue;
            }
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    if a.get(i, j).abs() < a.get(bi, bj).abs() {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
    }
    best
}

//! Unbounded-precision integer matrices: Hermite and Smith normal forms,
//! exact determinants. Column-style HNF is the single canonical form used
//! everywhere (lower-triangular staircase, positive pivots, entries left
//! of a pivot reduced into [0, pivot)).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                *m.at_mut(i, j) = v;
            }
        }
        m
    }

    pub fn from_cols(cols: Vec<Vec<BigInt>>) -> Self {
        let c = cols.len();
        let r = cols.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.into_iter().enumerate() {
                *m.at_mut(i, j) = v;
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.at(i, j).is_zero())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    /// col_dst += q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.at(i, dst) + q * self.at(i, src);
            *self.at_mut(i, dst) = v;
        }
    }

    /// row_dst += q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.at(dst, j) + q * self.at(src, j);
            *self.at_mut(dst, j) = v;
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)).div_floor(&prev);
                    *m.at_mut(i, j) = v;
                }
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }
}

/// Column-style Hermite normal form: returns (H, U) with A·U = H and
/// U unimodular. Pivots are positive; in a pivot's row, entries in
/// earlier columns lie in [0, pivot) and entries in later columns are 0;
/// zero columns are pushed to the right.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.cols);
    let mut pc = 0usize;
    for r in 0..a.rows {
        if pc >= a.cols {
            break;
        }
        loop {
            // Pick the column with the smallest nonzero entry in row r.
            let mut best: Option<(usize, BigInt)> = None;
            for j in pc..a.cols {
                let v = h.at(r, j);
                if !v.is_zero() {
                    let mag = v.abs();
                    if best.as_ref().map(|(_, b)| mag < *b).unwrap_or(true) {
                        best = Some((j, mag));
                    }
                }
            }
            let Some((jmin, _)) = best else { break };
            h.swap_cols(pc, jmin);
            u.swap_cols(pc, jmin);
            let pivot = h.at(r, pc).clone();
            let mut clean = true;
            for j in pc + 1..a.cols {
                let v = h.at(r, j).clone();
                if v.is_zero() {
                    continue;
                }
                let q = -(&v / &pivot);
                h.col_axpy(j, pc, &q);
                u.col_axpy(j, pc, &q);
                if !h.at(r, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.at(r, pc).is_zero() {
            continue; // no pivot in this row
        }
        if h.at(r, pc).is_negative() {
            h.neg_col(pc);
            u.neg_col(pc);
        }
        let pivot = h.at(r, pc).clone();
        for j in 0..pc {
            let q = -h.at(r, j).div_floor(&pivot);
            if !q.is_zero() {
                h.col_axpy(j, pc, &q);
                u.col_axpy(j, pc, &q);
            }
        }
        pc += 1;
    }
    (h, u)
}

/// Smith normal form: returns (S, U, V) with U·A·V = S, S diagonal with
/// the divisibility chain d1 | d2 | ..., U and V unimodular.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);
    for k in 0..n {
        'pivot: loop {
            // Minimal nonzero entry in the trailing block.
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in k..a.rows {
                for j in k..a.cols {
                    let val = s.at(i, j);
                    if !val.is_zero() {
                        let mag = val.abs();
                        if best.as_ref().map(|(_, _, b)| mag < *b).unwrap_or(true) {
                            best = Some((i, j, mag));
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else { break 'pivot };
            s.swap_rows(k, bi);
            u.swap_rows(k, bi);
            s.swap_cols(k, bj);
            v.swap_cols(k, bj);
            let pivot = s.at(k, k).clone();
            let mut reduced = true;
            for i in k + 1..a.rows {
                let q = -(s.at(i, k) / &pivot);
                if !q.is_zero() {
                    s.row_axpy(i, k, &q);
                    u.row_axpy(i, k, &q);
                }
                if !s.at(i, k).is_zero() {
                    reduced = false;
                }
            }
            for j in k + 1..a.cols {
                let q = -(s.at(k, j) / &pivot);
                if !q.is_zero() {
                    s.col_axpy(j, k, &q);
                    v.col_axpy(j, k, &q);
                }
                if !s.at(k, j).is_zero() {
                    reduced = false;
                }
            }
            if !reduced {
                continue 'pivot;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let pivot = s.at(k, k).clone();
            let mut fixed = true;
            'scan: for i in k + 1..a.rows {
                for j in k + 1..a.cols {
                    if !(s.at(i, j) % &pivot).is_zero() {
                        let one = BigInt::one();
                        s.row_axpy(k, i, &one);
                        u.row_axpy(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
        if s.at(k, k).is_negative() {
            s.neg_row(k);
            u.neg_row(k);
        }
    }
    (s, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect())
    }

    #[test]
    fn hnf_lattice_example() {
        // columns (3,2), (6,0), (0,6): lattice 3Z x 2Z, one zero column.
        let a = m(&[&[3, 6, 0], &[2, 0, 6]]);
        let (h, u) = hnf(&a);
        assert_eq!(a.mul(&u), h);
        assert_eq!(u.det().abs(), bi(1));
        assert_eq!(h, m(&[&[3, 0, 0], &[0, 2, 0]]));
    }

    #[test]
    fn hnf_identity() {
        let a = IntMatrix::identity(3);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_row_gcd() {
        let a = m(&[&[2, 3]]);
        let (h, u) = hnf(&a);
        assert_eq!(a.mul(&u), h);
        assert_eq!(*h.at(0, 0), bi(1));
        assert!(h.at(0, 1).is_zero());
    }

    #[test]
    fn snf_divisibility() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&a);
        assert_eq!(u.mul(&a).mul(&v), s);
        assert_eq!(*s.at(0, 0), bi(1));
        assert_eq!(*s.at(1, 1), bi(6));
        assert_eq!(u.det().abs(), bi(1));
        assert_eq!(v.det().abs(), bi(1));
    }

    #[test]
    fn snf_zero_and_identity() {
        let z = IntMatrix::zero(2, 3);
        let (s, _, _) = snf(&z);
        assert_eq!(s, IntMatrix::zero(2, 3));
        let i = IntMatrix::identity(2);
        let (s, _, _) = snf(&i);
        assert_eq!(s, IntMatrix::identity(2));
    }

    #[test]
    fn det_bareiss() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        // det = 2*(12-1) - 1*(4-0) = 22 - 4 = 18
        assert_eq!(a.det(), bi(18));
        assert_eq!(IntMatrix::identity(4).det(), bi(1));
    }
}

//! Rational matrices: reduced row echelon form, kernels, solving, and the
//! saturated integer kernel used by the closure algorithm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
#[cfg(test)]
use num_traits::Signed;

use super::int::{hnf, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
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

    pub fn from_cols(cols: Vec<Vec<BigRational>>) -> Self {
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

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zero(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                *out.at_mut(i, j) = BigRational::from_integer(m.at(i, j).clone());
            }
        }
        out
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }

    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, rank);
            let inv = self.at(rank, col).recip();
            for j in col..self.cols {
                let v = self.at(rank, j) * &inv;
                *self.at_mut(rank, j) = v;
            }
            for i in 0..self.rows {
                if i != rank && !self.at(i, col).is_zero() {
                    let f = self.at(i, col).clone();
                    for j in col..self.cols {
                        let v = self.at(i, j) - &f * self.at(rank, j);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
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

    /// Columns form a basis of {x : self * x = 0}, echelon-normalized
    /// (each free coordinate set to 1).
    pub fn kernel(&self) -> RatMatrix {
        let mut r = self.clone();
        let pivots = r.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RatMatrix::zero(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            *out.at_mut(f, k) = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = -r.at(row, f).clone();
            }
        }
        out
    }

    /// Some x with self * x = y, or None when inconsistent. Free
    /// variables are set to zero (echelon representative).
    pub fn solve(&self, y: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(y.len(), self.rows);
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = y[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Clear each row to a primitive integer row.
    pub fn to_primitive_int_rows(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for j in 0..self.cols {
                lcm = lcm.lcm(self.at(i, j).denom());
            }
            let mut gcd = BigInt::zero();
            let mut ints: Vec<BigInt> = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let v = (self.at(i, j) * BigRational::from_integer(lcm.clone())).to_integer();
                gcd = gcd.gcd(&v);
                ints.push(v);
            }
            if gcd.is_zero() {
                gcd = BigInt::one();
            }
            for (j, v) in ints.into_iter().enumerate() {
                *out.at_mut(i, j) = v.div_floor(&gcd);
            }
        }
        out
    }
}

/// Z-basis (as columns) of the saturated lattice {m in Z^n : R m = 0}.
/// The lattice is the full set of integer points of a rational subspace,
/// hence equal to its own saturation.
pub fn integer_kernel(r: &RatMatrix) -> IntMatrix {
    let c = r.to_primitive_int_rows();
    let (h, u) = hnf(&c);
    let kernel_cols: Vec<Vec<BigInt>> =
        (0..c.cols).filter(|&j| h.col_is_zero(j)).map(|j| u.column(j)).collect();
    if kernel_cols.is_empty() {
        IntMatrix::zero(r.cols, 0)
    } else {
        IntMatrix::from_cols(kernel_cols)
    }
}

/// True iff x is an integer combination of the basis columns of b
/// (columns must be Q-linearly independent).
pub fn lattice_member(b: &RatMatrix, x: &[BigRational]) -> bool {
    if b.cols == 0 {
        return x.iter().all(|v| v.is_zero());
    }
    match b.solve(x) {
        None => false,
        Some(c) => c.iter().all(|v| v.is_integer()),
    }
}

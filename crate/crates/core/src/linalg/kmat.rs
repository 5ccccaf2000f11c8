//! Matrices over the scalar field K with exact Gaussian elimination.
//! Pivoting takes the first non-zero entry (the zero test is exact, so
//! any nonzero pivot is valid and this keeps outputs deterministic).

use num_rational::BigRational;

use super::{KVector, RatMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl KMatrix {
    pub fn new_zero(field: &Field, rows: usize, cols: usize) -> Self {
        KMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn from_columns(field: &Field, cols: Vec<KVector>, dim: usize) -> Result<Self> {
        let mut m = Self::new_zero(field, dim, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {dim}",
                    col.len()
                )));
            }
            for (i, s) in col.into_iter().enumerate() {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                *m.at_mut(i, j) = s;
            }
        }
        Ok(m)
    }

    pub fn from_rows(field: &Field, rows: Vec<KVector>, ncols: usize) -> Result<Self> {
        let mut m = Self::new_zero(field, rows.len(), ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {ncols}",
                    row.len()
                )));
            }
            for (j, s) in row.into_iter().enumerate() {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
                *m.at_mut(i, j) = s;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, j: usize) -> KVector {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<KVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rref(&self) -> Result<KMatrix> {
        Ok(self.rref_with_pivots()?.0)
    }

    pub fn rref_with_pivots(&self) -> Result<(KMatrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let inv = m.field.one().div(m.at(rank, col))?;
            for j in col..m.cols {
                let v = m.at(rank, j).mul(&inv)?;
                *m.at_mut(rank, j) = v;
            }
            for i in 0..m.rows {
                if i != rank && !m.at(i, col).is_zero() {
                    let f = m.at(i, col).clone();
                    for j in col..m.cols {
                        let v = m.at(i, j).sub(&f.mul(m.at(rank, j))?)?;
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        Ok((m, pivots))
    }

    /// Columns form a K-basis of {x : self * x = 0}, echelon-normalized:
    /// one basis column per free column, with that free coordinate = 1.
    pub fn kernel_basis(&self) -> Result<KMatrix> {
        let (r, pivots) = self.rref_with_pivots()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = KMatrix::new_zero(&self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            *out.at_mut(f, k) = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = r.at(row, f).neg();
            }
        }
        Ok(out)
    }

    /// Some x with self * x = y, or None when inconsistent; free
    /// variables are set to zero.
    pub fn solve(&self, y: &[Scalar]) -> Result<Option<KVector>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "rhs has length {}, expected {}",
                y.len(),
                self.rows
            )));
        }
        let mut aug = KMatrix::new_zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = y[i].clone();
        }
        let (r, pivots) = aug.rref_with_pivots()?;
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// self (over K) times a rational matrix.
    pub fn mul_rat(&self, m: &RatMatrix) -> Result<KMatrix> {
        assert_eq!(self.cols, m.rows, "shape mismatch");
        let mut out = KMatrix::new_zero(&self.field, self.rows, m.cols);
        for i in 0..self.rows {
            for j in 0..m.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).scale_rational(m.at(k, j)))?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// self times a rational vector.
    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Result<KVector> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).scale_rational(&v[k]))?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kdot, kvec_is_zero};
    use crate::scalar::FieldDescriptor;

    fn q2() -> Field {
        Field::new(FieldDescriptor::multi_quadratic(&[2])).unwrap()
    }

    fn q23() -> Field {
        Field::new(FieldDescriptor::multi_quadratic(&[2, 3])).unwrap()
    }

    fn vecs(f: &Field, texts: &[&str]) -> KVector {
        texts.iter().map(|t| f.parse(t).unwrap()).collect()
    }

    #[test]
    fn kernel_both_rows_state_the_same_line() {
        // A = [sqrt2 -1; 2 -sqrt2]: kernel is the line x2 = sqrt2*x1.
        let f = q2();
        let a = KMatrix::from_rows(
            &f,
            vec![vecs(&f, &["sqrt2", "-1"]), vecs(&f, &["2", "-sqrt2"])],
            2,
        )
        .unwrap();
        let k = a.kernel_basis().unwrap();
        assert_eq!(k.ncols(), 1);
        let col = k.column(0);
        // A * col = 0 exactly.
        for i in 0..2 {
            let row: KVector = (0..2).map(|j| a.at(i, j).clone()).collect();
            assert!(kdot(&row, &col).unwrap().is_zero());
        }
        // Same line as (1, sqrt2).
        let ratio = col[1].div(&col[0]).unwrap();
        assert_eq!(ratio, f.parse("sqrt2").unwrap());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let f = q2();
        let a = KMatrix::from_columns(
            &f,
            vec![vecs(&f, &["1", "0", "0"]), vecs(&f, &["0", "1", "0"]), vecs(&f, &["0", "0", "1"])],
            3,
        )
        .unwrap();
        assert_eq!(a.kernel_basis().unwrap().ncols(), 0);
    }

    #[test]
    fn kernel_echelon_representatives() {
        // A = [1 1 sqrt2+sqrt3] (1x3): basis {(-1,1,0), (-sqrt2-sqrt3,0,1)}.
        let f = q23();
        let a = KMatrix::from_rows(&f, vec![vecs(&f, &["1", "1", "sqrt2+sqrt3"])], 3).unwrap();
        let k = a.kernel_basis().unwrap();
        assert_eq!(k.ncols(), 2);
        assert_eq!(k.column(0), vecs(&f, &["-1", "1", "0"]));
        assert_eq!(k.column(1), vecs(&f, &["-sqrt2-sqrt3", "0", "1"]));
    }

    #[test]
    fn solve_examples() {
        let f = q2();
        let a = KMatrix::from_rows(&f, vec![vecs(&f, &["1", "1"]), vecs(&f, &["1", "-1"])], 2).unwrap();
        let x = a.solve(&vecs(&f, &["2", "0"])).unwrap().unwrap();
        assert_eq!(x, vecs(&f, &["1", "1"]));

        let b = KMatrix::from_rows(&f, vec![vecs(&f, &["1", "1"])], 2).unwrap();
        let x = b.solve(&vecs(&f, &["sqrt2"])).unwrap().unwrap();
        assert_eq!(x, vecs(&f, &["sqrt2", "0"]));

        let c = KMatrix::from_rows(&f, vec![vecs(&f, &["1"]), vecs(&f, &["1"])], 1).unwrap();
        assert!(c.solve(&vecs(&f, &["0", "1"])).unwrap().is_none());
    }

    #[test]
    fn rank_plus_nullity() {
        let f = q23();
        let a = KMatrix::from_rows(
            &f,
            vec![vecs(&f, &["1", "sqrt2", "0"]), vecs(&f, &["sqrt3", "sqrt6", "0"])],
            3,
        )
        .unwrap();
        // Second row is sqrt3 times the first: rank 1, nullity 2.
        let (_, pivots) = a.rref_with_pivots().unwrap();
        let k = a.kernel_basis().unwrap();
        assert_eq!(pivots.len() + k.ncols(), 3);
        assert_eq!(pivots.len(), 1);
        for col in k.columns() {
            for i in 0..2 {
                let row: KVector = (0..3).map(|j| a.at(i, j).clone()).collect();
                assert!(kdot(&row, &col).unwrap().is_zero());
            }
            assert!(!kvec_is_zero(&col));
        }
    }
}

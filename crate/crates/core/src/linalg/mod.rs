//! Linear algebra over the scalar field K (kernels, solving, echelon
//! canonicalization) and over Z/Q (Hermite/Smith normal forms, saturated
//! integer kernels) — the computational substrate of the closure
//! algorithm. All arithmetic is exact.

mod int;
mod kmat;
mod rat;

pub use int::{hnf, snf, IntMatrix};
pub use kmat::KMatrix;
pub use rat::{integer_kernel, lattice_member, RatMatrix};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::scalar::{Field, MPoly, Scalar};

/// A vector over the scalar field.
pub type KVector = Vec<Scalar>;

pub fn kdot(a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    assert_eq!(a.len(), b.len());
    assert!(!a.is_empty(), "dot product of empty vectors has no field");
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Ok(acc)
}

pub fn kvec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|s| s.is_zero())
}

pub fn kvec_add(a: &[Scalar], b: &[Scalar]) -> Result<KVector> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn kvec_scale_rational(v: &[Scalar], q: &BigRational) -> KVector {
    v.iter().map(|s| s.scale_rational(q)).collect()
}

/// A rational matrix R such that for every rational (or integer) vector m,
/// m is orthogonal to all the given K-vectors iff R m = 0. Each K-linear
/// condition expands into finitely many rational rows: one per
/// basis-product coordinate in the multi-quadratic case, one per monomial
/// of the cleared numerator in the transcendental case.
pub fn orthogonality_system(vs: &[KVector], ncols: usize) -> RatMatrix {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for v in vs {
        assert_eq!(v.len(), ncols, "vector length mismatch");
        if v.is_empty() {
            continue;
        }
        if v[0].as_rational().is_some() {
            let row: Vec<BigRational> = v.iter().map(|s| s.as_rational().unwrap().clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        } else if v[0].as_quad_coords().is_some() {
            let dim = v[0].as_quad_coords().unwrap().len();
            for mask in 0..dim {
                let row: Vec<BigRational> =
                    v.iter().map(|s| s.as_quad_coords().unwrap()[mask].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        } else {
            // Clear to the common denominator: m . v = 0 iff
            // sum_j m_j p_j prod_{k != j} q_k = 0 as a polynomial.
            let parts: Vec<(&MPoly, &MPoly)> = v.iter().map(|s| s.as_ratfun().unwrap()).collect();
            let cleared: Vec<MPoly> = (0..v.len())
                .map(|j| {
                    let mut p = parts[j].0.clone();
                    for (k, part) in parts.iter().enumerate() {
                        if k != j {
                            p = p.mul(part.1);
                        }
                    }
                    p
                })
                .collect();
            let mut monomials: Vec<Vec<u32>> = Vec::new();
            for p in &cleared {
                for e in p.terms.keys() {
                    if !monomials.contains(e) {
                        monomials.push(e.clone());
                    }
                }
            }
            monomials.sort();
            for e in &monomials {
                let row: Vec<BigRational> = cleared
                    .iter()
                    .map(|p| p.terms.get(e).cloned().unwrap_or_else(BigRational::zero))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        RatMatrix::zero(0, ncols)
    } else {
        RatMatrix::from_rows(rows)
    }
}

/// Echelon-canonical basis of the column span of the given K-vectors:
/// rows of the RREF of their transpose, returned as vectors.
pub fn column_space_basis(field: &Field, cols: &[KVector], dim: usize) -> Result<Vec<KVector>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let m = KMatrix::from_rows(field, cols.to_vec(), dim)?;
    let r = m.rref()?;
    let mut out = Vec::new();
    for i in 0..r.nrows() {
        let row: KVector = (0..dim).map(|j| r.at(i, j).clone()).collect();
        if !kvec_is_zero(&row) {
            out.push(row);
        }
    }
    Ok(out)
}

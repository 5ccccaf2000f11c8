//! Topological closure of finitely generated subgroups of R^d (plus
//! full-line generators) represented as V ⊕ Λ: a subspace part and a
//! relative lattice part, with membership, density, equality, and
//! annihilator queries.
//!
//! The closure algorithm works through the dual side:
//!
//!   closure(A·(Z^n × R^p)) = A · closure(Z^n × R^p + ker A),
//!   closure(Z^n × R^p + ker A) = { x : m·x ∈ Z  for all m ∈ M },
//!     where M = { m ∈ Z^n × {0}^p : m ⊥ ker A }.
//!
//! A character x ↦ m·x that is integer-valued on the generating group
//! must be integer on Z^n, zero on the line coordinates, and orthogonal
//! to ker A (which contains full lines); the bipolar theorem then gives
//! the closure. With B a basis matrix of M, the preimage {x : Bx ∈ Z^r}
//! splits into ker B ⊕ a free lattice, and its image under A is closed
//! because the preimage contains ker A. The image of the lattice part
//! may intersect the image subspace; the quotient image is a finitely
//! generated closed subgroup, hence discrete, and a unimodular change of
//! basis splits the relations off.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    column_space_basis, hnf, integer_kernel, kdot, kvec_is_zero, orthogonality_system, snf,
    KMatrix, KVector, RatMatrix,
};
use crate::linalg::IntMatrix;
use crate::scalar::{Field, Scalar};

/// Atoms generate g·Z contributions; lines generate full real lines g·R.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub dim: usize,
    pub field: Field,
    pub atoms: Vec<KVector>,
    pub lines: Vec<KVector>,
}

impl GeneratorSet {
    pub fn new(dim: usize, field: Field) -> Self {
        GeneratorSet { dim, field, atoms: Vec::new(), lines: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        for v in self.atoms.iter().chain(&self.lines) {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator has length {}, ambient dimension is {}",
                    v.len(),
                    self.dim
                )));
            }
            for s in v {
                if s.field() != &self.field {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        Ok(())
    }
}

/// A closed subgroup of R^d stored as V ⊕ Λ. The concatenated basis is
/// K-linearly independent, which forces V ∩ span(Λ) = {0} and makes the
/// lattice part discrete.
#[derive(Debug, Clone)]
pub struct ClosedSubgroup {
    dim: usize,
    field: Field,
    v_basis: Vec<KVector>,
    lattice_basis: Vec<KVector>,
}

impl ClosedSubgroup {
    pub fn trivial(dim: usize, field: Field) -> Self {
        ClosedSubgroup { dim, field, v_basis: Vec::new(), lattice_basis: Vec::new() }
    }

    /// Builds a group from explicit bases, checking the V ⊕ Λ invariants.
    pub fn from_parts(
        dim: usize,
        field: Field,
        v_basis: Vec<KVector>,
        lattice_basis: Vec<KVector>,
    ) -> Result<Self> {
        for v in v_basis.iter().chain(&lattice_basis) {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "basis vector has length {}, ambient dimension is {}",
                    v.len(),
                    dim
                )));
            }
            if kvec_is_zero(v) {
                return Err(Error::InvalidOperator("zero vector in subgroup basis".into()));
            }
        }
        let all: Vec<KVector> = v_basis.iter().chain(&lattice_basis).cloned().collect();
        if !all.is_empty() {
            let m = KMatrix::from_columns(&field, all, dim)?;
            if m.kernel_basis()?.ncols() != 0 {
                return Err(Error::InvalidOperator(
                    "subgroup basis is not K-linearly independent".into(),
                ));
            }
        }
        Ok(ClosedSubgroup { dim, field, v_basis, lattice_basis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn v_basis(&self) -> &[KVector] {
        &self.v_basis
    }

    pub fn lattice_basis(&self) -> &[KVector] {
        &self.lattice_basis
    }

    pub fn is_trivial(&self) -> bool {
        self.v_basis.is_empty() && self.lattice_basis.is_empty()
    }

    /// Dense in R^d iff the subspace part is everything.
    pub fn is_dense(&self) -> bool {
        self.v_basis.len() == self.dim
    }

    /// True iff x = v + Σ n_i λ_i with v ∈ V and n integer. Coordinates
    /// in the concatenated basis are unique when they exist; membership
    /// additionally requires the lattice coordinates to be rational
    /// integers.
    pub fn member(&self, x: &[Scalar]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point has length {}, ambient dimension is {}",
                x.len(),
                self.dim
            )));
        }
        if self.v_basis.is_empty() && self.lattice_basis.is_empty() {
            return Ok(kvec_is_zero(x));
        }
        let cols: Vec<KVector> = self.v_basis.iter().chain(&self.lattice_basis).cloned().collect();
        let m = KMatrix::from_columns(&self.field, cols, self.dim)?;
        match m.solve(x)? {
            None => Ok(false),
            Some(coords) => {
                for c in &coords[self.v_basis.len()..] {
                    match c.rational_content() {
                        Some(q) if q.is_integer() => {}
                        _ => return Ok(false),
                    }
                }
                Ok(true)
            }
        }
    }

    /// A nonzero ξ with ξ·v = 0 on the subspace part and ξ·λ_i ∈ Z on
    /// the lattice part; absent iff the group is dense. The choice is
    /// canonical: if V ⊕ span Λ is a proper subspace, ξ is the first
    /// echelon kernel vector of the basis; otherwise ξ pairs to 1 with
    /// the first lattice vector and to 0 with the rest.
    pub fn one_annihilator(&self) -> Result<Option<KVector>> {
        if self.is_dense() {
            return Ok(None);
        }
        let k = self.v_basis.len();
        let q = self.lattice_basis.len();
        let rows: Vec<KVector> = self.v_basis.iter().chain(&self.lattice_basis).cloned().collect();
        if k + q < self.dim {
            let m = KMatrix::from_rows(&self.field, rows, self.dim)?;
            let ker = m.kernel_basis()?;
            debug_assert!(ker.ncols() > 0);
            return Ok(Some(ker.column(0)));
        }
        // Full span: solve ξ·v_i = 0, ξ·λ_1 = 1, ξ·λ_j = 0 (j ≥ 2).
        let m = KMatrix::from_rows(&self.field, rows, self.dim)?;
        let mut rhs = vec![self.field.zero(); k + q];
        rhs[k] = self.field.one();
        let xi = m.solve(&rhs)?.expect("independent rows always admit a solution");
        Ok(Some(xi))
    }

    /// Identical subgroups: equal subspace parts (mutual span
    /// containment) and mutual membership of the lattice bases.
    pub fn equals(&self, other: &ClosedSubgroup) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} vs {}",
                self.dim, other.dim
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.v_basis.len() != other.v_basis.len()
            || self.lattice_basis.len() != other.lattice_basis.len()
        {
            return Ok(false);
        }
        for (a, b) in [(self, other), (other, self)] {
            if !a.v_basis.is_empty() {
                let cols = KMatrix::from_columns(&a.field, b.v_basis.to_vec(), a.dim)?;
                for v in &a.v_basis {
                    if cols.solve(v)?.is_none() {
                        return Ok(false);
                    }
                }
            }
            for lam in &a.lattice_basis {
                if !b.member(lam)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Closure of the sum: feed both decompositions back as generators.
    pub fn group_sum(&self, other: &ClosedSubgroup) -> Result<ClosedSubgroup> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} vs {}",
                self.dim, other.dim
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let gen = GeneratorSet {
            dim: self.dim,
            field: self.field.clone(),
            atoms: self.lattice_basis.iter().chain(&other.lattice_basis).cloned().collect(),
            lines: self.v_basis.iter().chain(&other.v_basis).cloned().collect(),
        };
        closure(&gen)
    }
}

/// The V ⊕ Λ decomposition of the closure of Σ atoms·Z + Σ lines·R.
pub fn closure(gen: &GeneratorSet) -> Result<ClosedSubgroup> {
    gen.validate()?;
    let field = &gen.field;
    let d = gen.dim;

    // Zero generators contribute nothing; duplicates are redundant.
    let mut atoms: Vec<KVector> = Vec::new();
    for a in &gen.atoms {
        if !kvec_is_zero(a) && !atoms.contains(a) {
            atoms.push(a.clone());
        }
    }
    let mut lines: Vec<KVector> = Vec::new();
    for l in &gen.lines {
        if !kvec_is_zero(l) && !lines.contains(l) {
            lines.push(l.clone());
        }
    }
    let n = atoms.len();
    let p = lines.len();
    if n + p == 0 {
        return Ok(ClosedSubgroup::trivial(d, field.clone()));
    }

    // 1. Generator matrix A = [atom columns | line columns].
    let mut cols = atoms.clone();
    cols.extend(lines.clone());
    let a = KMatrix::from_columns(field, cols, d)?;

    // 2. Real kernel of A, exact over K.
    let ker = a.kernel_basis()?;

    // 3. Dual lattice M = {m ∈ Z^n × {0}^p : m ⊥ ker A}: rational
    //    conditions from the kernel plus rows pinning the line
    //    coordinates to zero.
    let mut r = orthogonality_system(&ker.columns(), n + p);
    for j in 0..p {
        let mut row = vec![BigRational::zero(); n + p];
        row[n + j] = BigRational::one();
        r.push_row(row);
    }
    let m = integer_kernel(&r);
    let rank = m.cols;

    // 4. C = {x : Bx ∈ Z^rank} with B = Mᵀ: subspace part ker B and a
    //    free lattice from preimages of the unit vectors.
    let b = RatMatrix::from_int(&m.transpose());
    let v_c = b.kernel();
    let mut xs: Vec<Vec<BigRational>> = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut e = vec![BigRational::zero(); rank];
        e[i] = BigRational::one();
        xs.push(b.solve(&e).expect("B has full row rank: its rows are a lattice basis"));
    }

    // 5. Image subspace V = span_K(A · ker B), echelon-canonical.
    let v_cols = a.mul_rat(&v_c)?;
    let v_basis = column_space_basis(field, &v_cols.columns(), d)?;

    // Lattice candidates w_i = A x_i.
    let w: Vec<KVector> = xs.iter().map(|x| a.mul_rat_vec(x)).collect::<Result<_>>()?;

    // 6. Relations {k ∈ Z^rank : Σ k_i w_i ∈ V}: express membership in V
    //    through a K-annihilator basis of V, extract the rational
    //    conditions, and split them off by a unimodular change of basis.
    let lattice_raw = if rank == 0 {
        Vec::new()
    } else {
        let phi_matrix = KMatrix::from_rows(field, v_basis.clone(), d)?;
        let phi = phi_matrix.kernel_basis()?;
        let mut rel_vectors: Vec<KVector> = Vec::new();
        for c in 0..phi.ncols() {
            let f = phi.column(c);
            let mut u = Vec::with_capacity(rank);
            for wi in &w {
                u.push(kdot(&f, wi)?);
            }
            rel_vectors.push(u);
        }
        let r_rel = orthogonality_system(&rel_vectors, rank);
        let n_rel = integer_kernel(&r_rel);
        let s = n_rel.cols;
        if s == 0 {
            w.clone()
        } else {
            // The relation lattice is saturated (membership in a
            // subspace survives division), so its Smith form is the
            // identity block and the first s columns of U⁻¹ are a basis
            // of it; the remaining columns of U⁻¹ descend to a basis of
            // the quotient lattice.
            let (snf_s, snf_u, _snf_v) = snf(&n_rel);
            for i in 0..s {
                debug_assert!(snf_s.at(i, i).is_one(), "relation lattice must be saturated");
            }
            let uinv = int_inverse(&snf_u);
            let mut out = Vec::new();
            for j in s..rank {
                let mut acc = vec![field.zero(); d];
                for (i, wi) in w.iter().enumerate() {
                    let q = BigRational::from_integer(uinv.at(i, j).clone());
                    if q.is_zero() {
                        continue;
                    }
                    for (t, entry) in wi.iter().enumerate() {
                        acc[t] = acc[t].add(&entry.scale_rational(&q))?;
                    }
                }
                out.push(acc);
            }
            out
        }
    };

    let lattice_basis = canonicalize_lattice(field, d, &lattice_raw)?;
    ClosedSubgroup::from_parts(d, field.clone(), v_basis, lattice_basis)
}

/// Exact inverse of a unimodular integer matrix.
fn int_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows;
    let rat = RatMatrix::from_int(u);
    let mut out = IntMatrix::zero(n, n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        let col = rat.solve(&e).expect("unimodular matrix is invertible");
        for (i, v) in col.into_iter().enumerate() {
            assert!(v.is_integer(), "inverse of unimodular matrix must be integral");
            *out.at_mut(i, j) = v.to_integer();
        }
    }
    out
}

/// Deterministic lattice basis: expand each vector into rational
/// coordinates over a fixed Q-basis of the entries' span, clear
/// denominators, and reduce by column HNF; the resulting unimodular
/// transformation is applied back to the K-vectors. The common
/// denominator is an invariant of the lattice, so the output depends
/// only on the lattice itself, not on the incoming basis.
fn canonicalize_lattice(field: &Field, d: usize, raw: &[KVector]) -> Result<Vec<KVector>> {
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    let coords = rational_coordinates(raw);
    let mut lcm = BigInt::one();
    for col in &coords {
        for v in col {
            lcm = lcm.lcm(v.denom());
        }
    }
    let int_cols: Vec<Vec<BigInt>> = coords
        .iter()
        .map(|col| {
            col.iter()
                .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let mat = IntMatrix::from_cols(int_cols);
    let (h, u) = hnf(&mat);
    let mut out = Vec::new();
    for j in 0..raw.len() {
        if h.col_is_zero(j) {
            continue;
        }
        let mut acc = vec![field.zero(); d];
        for (i, wi) in raw.iter().enumerate() {
            let q = BigRational::from_integer(u.at(i, j).clone());
            if q.is_zero() {
                continue;
            }
            for (t, entry) in wi.iter().enumerate() {
                acc[t] = acc[t].add(&entry.scale_rational(&q))?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Injective Q-linear coordinates for a family of K-vectors: rationals
/// embed as themselves, multi-quadratic entries by their basis
/// coordinates, transcendental entries by the monomial coefficients of
/// their numerators against the product of all distinct denominators.
fn rational_coordinates(vs: &[KVector]) -> Vec<Vec<BigRational>> {
    let probe = &vs[0][0];
    if probe.as_rational().is_some() {
        return vs
            .iter()
            .map(|v| v.iter().map(|s| s.as_rational().unwrap().clone()).collect())
            .collect();
    }
    if probe.as_quad_coords().is_some() {
        return vs
            .iter()
            .map(|v| v.iter().flat_map(|s| s.as_quad_coords().unwrap().iter().cloned()).collect())
            .collect();
    }
    let mut dens: Vec<crate::scalar::MPoly> = Vec::new();
    for v in vs {
        for s in v {
            let (_, den) = s.as_ratfun().unwrap();
            if !dens.contains(den) {
                dens.push(den.clone());
            }
        }
    }
    let mut common = dens[0].clone();
    for dpoly in &dens[1..] {
        common = common.mul(dpoly);
    }
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    let mut numerators: Vec<Vec<crate::scalar::MPoly>> = Vec::new();
    for v in vs {
        let mut nums = Vec::with_capacity(v.len());
        for s in v {
            let (num, den) = s.as_ratfun().unwrap();
            let scaled = num.mul(&common.div_exact(den));
            for e in scaled.terms.keys() {
                if !monomials.contains(e) {
                    monomials.push(e.clone());
                }
            }
            nums.push(scaled);
        }
        numerators.push(nums);
    }
    monomials.sort();
    numerators
        .iter()
        .map(|nums| {
            nums.iter()
                .flat_map(|p| {
                    monomials
                        .iter()
                        .map(|e| p.terms.get(e).cloned().unwrap_or_else(BigRational::zero))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldDescriptor;

    fn qf() -> Field {
        Field::new(FieldDescriptor::rational()).unwrap()
    }

    fn q2() -> Field {
        Field::new(FieldDescriptor::multi_quadratic(&[2])).unwrap()
    }

    fn q23() -> Field {
        Field::new(FieldDescriptor::multi_quadratic(&[2, 3])).unwrap()
    }

    fn v(f: &Field, texts: &[&str]) -> KVector {
        texts.iter().map(|t| f.parse(t).unwrap()).collect()
    }

    fn gens(f: &Field, dim: usize, atoms: &[&[&str]], lines: &[&[&str]]) -> GeneratorSet {
        GeneratorSet {
            dim,
            field: f.clone(),
            atoms: atoms.iter().map(|a| v(f, a)).collect(),
            lines: lines.iter().map(|l| v(f, l)).collect(),
        }
    }

    #[test]
    fn closure_kronecker_dense() {
        // atoms e1, e2, (sqrt2, sqrt3): dense in R^2.
        let f = q23();
        let g =
            closure(&gens(&f, 2, &[&["1", "0"], &["0", "1"], &["sqrt2", "sqrt3"]], &[])).unwrap();
        assert!(g.is_dense());
        assert!(g.lattice_basis().is_empty());
    }

    #[test]
    fn closure_one_d_gcd_lattice() {
        // atoms 1/2, 1/3 in d=1: lattice (1/6)Z.
        let f = qf();
        let g = closure(&gens(&f, 1, &[&["1/2"], &["1/3"]], &[])).unwrap();
        assert!(g.v_basis().is_empty());
        assert_eq!(g.lattice_basis().len(), 1);
        assert_eq!(g.lattice_basis()[0], v(&f, &["1/6"]));
    }

    #[test]
    fn closure_with_line_matches_paper_t() {
        // atoms e1, e2 and line (1, 1/2): the closure equals
        // span{(1,1/2)} + Z(1,0).
        let f = qf();
        let g = closure(&gens(&f, 2, &[&["1", "0"], &["0", "1"]], &[&["1", "1/2"]])).unwrap();
        assert_eq!(g.v_basis().len(), 1);
        assert_eq!(g.v_basis()[0], v(&f, &["1", "1/2"]));
        let t = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![v(&f, &["1", "1/2"])],
            vec![v(&f, &["1", "0"])],
        )
        .unwrap();
        assert!(g.equals(&t).unwrap());
        let t2 = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![v(&f, &["1", "1/2"])],
            vec![v(&f, &["1", "1"])],
        )
        .unwrap();
        assert!(g.equals(&t2).unwrap());
    }

    #[test]
    fn closure_quadratic_mixed_rank() {
        // atoms e1, e2, (sqrt2, 2*sqrt2) over Q(sqrt2):
        // V = span{(1,2)} and a rank-1 lattice, e.g. Z(1,1).
        let f = q2();
        let g = closure(&gens(&f, 2, &[&["1", "0"], &["0", "1"], &["sqrt2", "2*sqrt2"]], &[]))
            .unwrap();
        assert_eq!(g.v_basis().len(), 1);
        assert_eq!(g.v_basis()[0], v(&f, &["1", "2"]));
        assert_eq!(g.lattice_basis().len(), 1);
        let expect = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![v(&f, &["1", "2"])],
            vec![v(&f, &["1", "1"])],
        )
        .unwrap();
        assert!(g.equals(&expect).unwrap());
    }

    #[test]
    fn closure_empty_is_trivial() {
        let f = qf();
        let g = closure(&GeneratorSet::new(3, f)).unwrap();
        assert!(g.is_trivial());
        assert!(!g.is_dense());
    }

    #[test]
    fn closure_ignores_zeros_and_duplicates() {
        let f = qf();
        let g1 = closure(&gens(&f, 2, &[&["1", "0"], &["0", "0"], &["1", "0"]], &[])).unwrap();
        let g2 = closure(&gens(&f, 2, &[&["1", "0"]], &[])).unwrap();
        assert!(g1.equals(&g2).unwrap());
    }

    #[test]
    fn member_examples() {
        let f = qf();
        let g = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![v(&f, &["1", "1/2"])],
            vec![v(&f, &["1", "1"])],
        )
        .unwrap();
        assert!(g.member(&v(&f, &["1", "0"])).unwrap());
        assert!(!g.member(&v(&f, &["1/2", "1/2"])).unwrap());
        assert!(g.member(&v(&f, &["0", "0"])).unwrap());
    }

    #[test]
    fn member_of_trivial_group() {
        let f = qf();
        let g = ClosedSubgroup::trivial(2, f.clone());
        assert!(g.member(&v(&f, &["0", "0"])).unwrap());
        assert!(!g.member(&v(&f, &["1", "0"])).unwrap());
    }

    #[test]
    fn is_dense_examples() {
        let f = qf();
        let full = closure(&gens(&f, 2, &[], &[&["1", "0"], &["0", "1"]])).unwrap();
        assert!(full.is_dense());
        let lattice = closure(&gens(&f, 2, &[&["1", "0"], &["0", "1"]], &[])).unwrap();
        assert!(!lattice.is_dense());
        let line = closure(&gens(&f, 2, &[&["1", "0"], &["0", "1"]], &[&["1", "1/2"]])).unwrap();
        assert!(!line.is_dense());
    }

    #[test]
    fn annihilator_line_plus_lattice() {
        // V = R x {0}, lattice Z(0, 1/2): xi = (0, 2).
        let f = qf();
        let g = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![v(&f, &["1", "0"])],
            vec![v(&f, &["0", "1/2"])],
        )
        .unwrap();
        let xi = g.one_annihilator().unwrap().unwrap();
        assert_eq!(xi, v(&f, &["0", "2"]));
    }

    #[test]
    fn annihilator_absent_for_dense() {
        let f = qf();
        let g = closure(&gens(&f, 2, &[], &[&["1", "0"], &["0", "1"]])).unwrap();
        assert!(g.one_annihilator().unwrap().is_none());
    }

    #[test]
    fn annihilator_full_lattice() {
        // Lattice 3Z x 2Z: xi = (1/3, 0).
        let f = qf();
        let g = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![],
            vec![v(&f, &["3", "0"]), v(&f, &["0", "2"])],
        )
        .unwrap();
        let xi = g.one_annihilator().unwrap().unwrap();
        assert_eq!(xi, v(&f, &["1/3", "0"]));
    }

    #[test]
    fn annihilator_validates_on_basis() {
        let f = q2();
        let g =
            closure(&gens(&f, 2, &[&["1", "0"], &["sqrt2", "0"], &["0", "3/2"]], &[])).unwrap();
        assert!(!g.is_dense());
        let xi = g.one_annihilator().unwrap().unwrap();
        for vb in g.v_basis() {
            assert!(kdot(&xi, vb).unwrap().is_zero());
        }
        for lb in g.lattice_basis() {
            let q = kdot(&xi, lb).unwrap().rational_content().unwrap();
            assert!(q.is_integer());
        }
    }

    #[test]
    fn equals_examples() {
        let f = qf();
        let a = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![],
            vec![v(&f, &["3", "0"]), v(&f, &["0", "2"])],
        )
        .unwrap();
        let b = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![],
            vec![v(&f, &["3", "2"]), v(&f, &["0", "2"])],
        )
        .unwrap();
        assert!(a.equals(&b).unwrap());
        let z2 = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![],
            vec![v(&f, &["1", "0"]), v(&f, &["0", "1"])],
        )
        .unwrap();
        let half = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![],
            vec![v(&f, &["1/2", "0"]), v(&f, &["0", "1"])],
        )
        .unwrap();
        assert!(!z2.equals(&half).unwrap());
    }

    #[test]
    fn group_sum_examples() {
        let f = qf();
        // ({0}^2 x R) + (R^2 x {0}) = R^3.
        let za =
            ClosedSubgroup::from_parts(3, f.clone(), vec![v(&f, &["0", "0", "1"])], vec![]).unwrap();
        let wb = ClosedSubgroup::from_parts(
            3,
            f.clone(),
            vec![v(&f, &["1", "0", "0"]), v(&f, &["0", "1", "0"])],
            vec![],
        )
        .unwrap();
        assert!(za.group_sum(&wb).unwrap().is_dense());
        assert!(!za.is_dense() && !wb.is_dense());

        // G + {0} = G.
        let g =
            ClosedSubgroup::from_parts(3, f.clone(), vec![], vec![v(&f, &["1", "0", "0"])]).unwrap();
        let sum = g.group_sum(&ClosedSubgroup::trivial(3, f.clone())).unwrap();
        assert!(sum.equals(&g).unwrap());

        // ((1/2)Z x {0}) + ({0} x R): V = {0} x R, lattice Z(1/2, 0).
        let l = ClosedSubgroup::from_parts(2, f.clone(), vec![], vec![v(&f, &["1/2", "0"])]).unwrap();
        let axis =
            ClosedSubgroup::from_parts(2, f.clone(), vec![v(&f, &["0", "1"])], vec![]).unwrap();
        let s = l.group_sum(&axis).unwrap();
        let expect = ClosedSubgroup::from_parts(
            2,
            f.clone(),
            vec![v(&f, &["0", "1"])],
            vec![v(&f, &["1/2", "0"])],
        )
        .unwrap();
        assert!(s.equals(&expect).unwrap());
    }

    #[test]
    fn lattice_isolation() {
        // Half of a lattice generator is never a member.
        let f = qf();
        let g = closure(&gens(&f, 2, &[&["1", "0"], &["0", "1"]], &[&["1", "1/2"]])).unwrap();
        for lam in g.lattice_basis() {
            let half: KVector = lam
                .iter()
                .map(|s| s.scale_rational(&BigRational::new(1.into(), 2.into())))
                .collect();
            assert!(!g.member(&half).unwrap());
        }
    }

    #[test]
    fn transcendental_closure() {
        // atoms 1, pi in d=1: dense. atoms pi, 2*pi: lattice pi*Z.
        let f = Field::new(FieldDescriptor::transcendental(&[(
            "pi",
            "3.1415926535897932384626433832795028841971",
        )]))
        .unwrap();
        let g = closure(&gens(&f, 1, &[&["1"], &["pi"]], &[])).unwrap();
        assert!(g.is_dense());
        let g2 = closure(&gens(&f, 1, &[&["pi"], &["2*pi"]], &[])).unwrap();
        assert!(!g2.is_dense());
        assert_eq!(g2.lattice_basis().len(), 1);
        assert!(g2.member(&v(&f, &["pi"])).unwrap());
        assert!(!g2.member(&v(&f, &["pi/2"])).unwrap());
        assert!(!g2.member(&v(&f, &["1"])).unwrap());
    }
}

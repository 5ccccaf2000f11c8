//! Operators L = L^{σ,b} + L^μ: a local diffusion/drift part given by
//! columns σ_j and a drift b, plus a nonlocal part given by a Lévy
//! measure assembled from primitive components. Computes the support
//! group G_μ, the corrected drift c_μ, the period group of bounded
//! solutions, the Liouville verdict, and the explicit counterexample
//! data when the property fails.
//!
//! The jump part always uses the cutoff 1_{|z| <= 1}; whether an atom
//! sits inside the cutoff is decided exactly via sign(|z|^2 - 1), with
//! the boundary |z| = 1 counted inside.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linalg::{kdot, kvec_is_zero, KMatrix, KVector};
use crate::scalar::{Field, Scalar};
use crate::subgroup::{closure, ClosedSubgroup, GeneratorSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomConvention {
    /// The jump term carries the compensator -z·Du 1_{|z| <= 1}.
    Canonical,
    /// The jump term is the plain difference u(x+z) - u(x); converting
    /// to canonical form shifts the drift by weight·z for atoms inside
    /// the cutoff.
    PureDifference,
}

#[derive(Debug, Clone)]
pub enum MeasureComponent {
    Atom { position: KVector, weight: BigRational, convention: AtomConvention },
    /// Uniform surface measure on {|z| = radius}.
    Sphere { radius: Scalar, surface_weight: BigRational },
    /// Symmetric 2α-stable measure supported on span(basis); its symbol
    /// is -scale·|P_U η|^{2α}.
    StableSubspace { basis: Vec<KVector>, alpha: BigRational, scale: BigRational },
    /// Qualitative: declares supp(μ) contains a ball; decisions only,
    /// no symbol evaluation.
    BallSupport { center: KVector, radius: Scalar },
}

#[derive(Debug, Clone)]
pub struct LevyOperator {
    pub dim: usize,
    pub field: Field,
    pub sigma: Vec<KVector>,
    pub drift: KVector,
    pub components: Vec<MeasureComponent>,
    canonical: bool,
}

impl LevyOperator {
    pub fn new(
        dim: usize,
        field: Field,
        sigma: Vec<KVector>,
        drift: KVector,
        components: Vec<MeasureComponent>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidOperator("dimension must be >= 1".into()));
        }
        let check_vec = |v: &KVector, what: &str| -> Result<()> {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{what} has length {}, expected {dim}",
                    v.len()
                )));
            }
            for s in v {
                if s.field() != &field {
                    return Err(Error::FieldMismatch);
                }
            }
            Ok(())
        };
        check_vec(&drift, "drift")?;
        for (j, col) in sigma.iter().enumerate() {
            check_vec(col, &format!("sigma column {j}"))?;
        }
        for (k, comp) in components.iter().enumerate() {
            match comp {
                MeasureComponent::Atom { position, weight, .. } => {
                    check_vec(position, &format!("atom {k}"))?;
                    if kvec_is_zero(position) {
                        return Err(Error::InvalidOperator(
                            "atom at the origin: a Lévy measure lives on R^d \\ {0}".into(),
                        ));
                    }
                    if !weight.is_positive() {
                        return Err(Error::InvalidOperator(format!("atom {k} weight must be > 0")));
                    }
                }
                MeasureComponent::Sphere { radius, surface_weight } => {
                    if radius.field() != &field {
                        return Err(Error::FieldMismatch);
                    }
                    if radius.sign()? <= 0 {
                        return Err(Error::InvalidOperator("sphere radius must be > 0".into()));
                    }
                    if !surface_weight.is_positive() {
                        return Err(Error::InvalidOperator("sphere weight must be > 0".into()));
                    }
                }
                MeasureComponent::StableSubspace { basis, alpha, scale } => {
                    if basis.is_empty() {
                        return Err(Error::InvalidOperator(
                            "stable subspace needs at least one basis vector".into(),
                        ));
                    }
                    for b in basis {
                        check_vec(b, &format!("stable basis vector in component {k}"))?;
                    }
                    let m = KMatrix::from_columns(&field, basis.clone(), dim)?;
                    if m.kernel_basis()?.ncols() != 0 {
                        return Err(Error::InvalidOperator(
                            "stable subspace basis must be K-linearly independent".into(),
                        ));
                    }
                    if !alpha.is_positive() || *alpha >= BigRational::one() {
                        return Err(Error::InvalidOperator("alpha must lie in (0, 1)".into()));
                    }
                    if !scale.is_positive() {
                        return Err(Error::InvalidOperator("stable scale must be > 0".into()));
                    }
                }
                MeasureComponent::BallSupport { center, radius } => {
                    check_vec(center, &format!("ball center in component {k}"))?;
                    if radius.field() != &field {
                        return Err(Error::FieldMismatch);
                    }
                    if radius.sign()? <= 0 {
                        return Err(Error::InvalidOperator("ball radius must be > 0".into()));
                    }
                }
            }
        }
        Ok(LevyOperator { dim, field, sigma, drift, components, canonical: false })
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Exactly decided cutoff test: |z| <= 1 iff sign(|z|^2 - 1) <= 0.
    pub fn inside_unit_ball(z: &KVector) -> Result<bool> {
        let field = z[0].field().clone();
        let mut norm2 = field.zero();
        for c in z {
            norm2 = norm2.add(&c.mul(c)?)?;
        }
        Ok(norm2.sub(&field.one())?.sign()? <= 0)
    }

    /// Canonical form: every pure-difference atom (z, w) inside the
    /// cutoff shifts the drift by w·z; 1-d spheres degenerate to the
    /// atom pair {±r} (the compensator cancels by symmetry).
    pub fn canonicalize(&self) -> Result<LevyOperator> {
        let mut drift = self.drift.clone();
        let mut components = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            match comp {
                MeasureComponent::Atom { position, weight, convention } => {
                    if *convention == AtomConvention::PureDifference
                        && Self::inside_unit_ball(position)?
                    {
                        for (i, zi) in position.iter().enumerate() {
                            drift[i] = drift[i].add(&zi.scale_rational(weight))?;
                        }
                    }
                    components.push(MeasureComponent::Atom {
                        position: position.clone(),
                        weight: weight.clone(),
                        convention: AtomConvention::Canonical,
                    });
                }
                MeasureComponent::Sphere { radius, surface_weight } if self.dim == 1 => {
                    for pos in [vec![radius.clone()], vec![radius.neg()]] {
                        components.push(MeasureComponent::Atom {
                            position: pos,
                            weight: surface_weight.clone(),
                            convention: AtomConvention::Canonical,
                        });
                    }
                }
                other => components.push(other.clone()),
            }
        }
        Ok(LevyOperator {
            dim: self.dim,
            field: self.field.clone(),
            sigma: self.sigma.clone(),
            drift,
            components,
            canonical: true,
        })
    }

    fn std_basis(&self) -> Vec<KVector> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| if i == j { self.field.one() } else { self.field.zero() })
                    .collect()
            })
            .collect()
    }

    /// G_μ, the closure of the group generated by supp(μ). Canonicalizes
    /// internally when needed.
    pub fn support_group(&self) -> Result<(ClosedSubgroup, Vec<String>)> {
        if !self.canonical {
            return self.canonicalize()?.support_group();
        }
        let mut gen = GeneratorSet::new(self.dim, self.field.clone());
        let mut notes = Vec::new();
        for comp in &self.components {
            match comp {
                MeasureComponent::Atom { position, .. } => gen.atoms.push(position.clone()),
                MeasureComponent::Sphere { .. } => {
                    // d >= 2 here; the difference set of a sphere contains
                    // a ball, so the generated group is all of R^d.
                    gen.lines.extend(self.std_basis());
                    notes.push(
                        "sphere component (d >= 2): sphere minus sphere contains a ball, \
                         so supp(mu) generates a dense subgroup; G_mu = R^d"
                            .into(),
                    );
                }
                MeasureComponent::StableSubspace { basis, .. } => {
                    gen.lines.extend(basis.iter().cloned());
                    notes.push(
                        "stable component: supp(mu) is its whole subspace, contributing it to G_mu"
                            .into(),
                    );
                }
                MeasureComponent::BallSupport { .. } => {
                    gen.lines.extend(self.std_basis());
                    notes.push(
                        "ball-support component: supp(mu) contains a ball, whose difference \
                         set is a neighborhood of 0; G_mu = R^d"
                            .into(),
                    );
                }
            }
        }
        Ok((closure(&gen)?, notes))
    }

    /// c_μ = -Σ weight·z over canonical atoms with |z| <= 1 and z ∉ V_μ.
    /// Sphere components contribute 0 by symmetry; stable subspaces are
    /// supported inside V_μ and ball supports force V_μ = R^d, so the
    /// excluded region is empty for both.
    pub fn c_mu(&self, g_mu: &ClosedSubgroup) -> Result<(KVector, Vec<String>)> {
        if !self.canonical {
            let c = self.canonicalize()?;
            let (g, _) = c.support_group()?;
            return c.c_mu(&g);
        }
        let mut notes = Vec::new();
        let v_span = KMatrix::from_columns(&self.field, g_mu.v_basis().to_vec(), self.dim)?;
        let mut acc = vec![self.field.zero(); self.dim];
        for comp in &self.components {
            match comp {
                MeasureComponent::Atom { position, weight, .. } => {
                    let in_ball = Self::inside_unit_ball(position)?;
                    let in_v = if g_mu.v_basis().is_empty() {
                        false
                    } else {
                        v_span.solve(position)?.is_some()
                    };
                    if in_ball && !in_v {
                        for (i, zi) in position.iter().enumerate() {
                            acc[i] = acc[i].sub(&zi.scale_rational(weight))?;
                        }
                    }
                }
                MeasureComponent::Sphere { .. } => {
                    notes.push("sphere component contributes 0 to c_mu (symmetric measure)".into());
                }
                MeasureComponent::StableSubspace { .. } => {
                    notes.push(
                        "stable component contributes 0 to c_mu (supported inside V_mu)".into(),
                    );
                }
                MeasureComponent::BallSupport { .. } => {
                    notes.push(
                        "ball-support component contributes 0 to c_mu (V_mu = R^d, excluded \
                         region empty)"
                            .into(),
                    );
                }
            }
        }
        Ok((acc, notes))
    }

    /// b + c_μ.
    pub fn effective_drift(&self, c_mu: &KVector) -> Result<KVector> {
        let mut out = Vec::with_capacity(self.dim);
        for (b, c) in self.drift.iter().zip(c_mu) {
            out.push(b.add(c)?);
        }
        Ok(out)
    }

    /// closure(G_μ + W_{σ, b+c_μ}).
    pub fn period_group(&self) -> Result<ClosedSubgroup> {
        let op = if self.canonical { self.clone() } else { self.canonicalize()? };
        let (g_mu, _) = op.support_group()?;
        let (c_mu, _) = op.c_mu(&g_mu)?;
        let eff = op.effective_drift(&c_mu)?;
        let mut lines = op.sigma.clone();
        lines.push(eff);
        let w =
            closure(&GeneratorSet { dim: op.dim, field: op.field.clone(), atoms: vec![], lines })?;
        g_mu.group_sum(&w)
    }

    /// Full decision pipeline.
    pub fn decide(&self) -> Result<Verdict> {
        let op = self.canonicalize()?;
        let (g_mu, mut notes) = op.support_group()?;
        let (c_mu, notes2) = op.c_mu(&g_mu)?;
        notes.extend(notes2);
        let eff = op.effective_drift(&c_mu)?;
        let mut lines = op.sigma.clone();
        lines.push(eff.clone());
        let w =
            closure(&GeneratorSet { dim: op.dim, field: op.field.clone(), atoms: vec![], lines })?;
        let period_group = g_mu.group_sum(&w)?;
        let liouville = period_group.is_dense();
        let degenerate = period_group.is_trivial();
        if degenerate {
            notes.push(
                "degenerate operator L = 0 (sigma = 0, effective drift = 0, mu = 0): every \
                 bounded function solves L[u] = 0"
                    .into(),
            );
        }

        let (counterexample, witness) = match period_group.one_annihilator()? {
            None => (None, None),
            Some(xi) => {
                // Any c with xi·c = 1 realizes the H + cZ containment;
                // take the first coordinate direction that pairs
                // nontrivially.
                let j = xi.iter().position(|s| !s.is_zero()).expect("annihilator is nonzero");
                let mut c = vec![op.field.zero(); op.dim];
                c[j] = op.field.one().div(&xi[j])?;
                (Some(Counterexample { xi: xi.clone() }), Some(Witness { h_normal: xi, c }))
            }
        };

        let one_d_form =
            if op.dim == 1 && !liouville { Some(op.one_d_form(&period_group)?) } else { None };

        Ok(Verdict {
            liouville,
            period_group,
            support_group: g_mu,
            c_mu,
            effective_drift: eff,
            counterexample,
            witness,
            one_d_form,
            degenerate,
            notes,
            canonical_operator: op,
        })
    }

    /// For d = 1 without Liouville the operator is a pure jump operator
    /// on a lattice gZ: report g and the integer position of each atom.
    fn one_d_form(&self, period_group: &ClosedSubgroup) -> Result<OneDForm> {
        debug_assert!(self.canonical);
        if period_group.lattice_basis().is_empty() {
            // mu = 0, the degenerate operator.
            return Ok(OneDForm { g: self.field.zero(), atom_table: Vec::new() });
        }
        let g = period_group.lattice_basis()[0][0].clone();
        let mut atom_table = Vec::new();
        for comp in &self.components {
            if let MeasureComponent::Atom { position, weight, .. } = comp {
                let ratio = position[0].div(&g)?;
                let n = match ratio.rational_content() {
                    Some(q) if q.is_integer() => q.to_integer(),
                    _ => {
                        return Err(Error::InvalidOperator(
                            "non-Liouville 1-d operator with an atom off the period lattice"
                                .into(),
                        ))
                    }
                };
                atom_table.push(OneDAtom {
                    n,
                    position: position[0].clone(),
                    weight: weight.clone(),
                });
            }
        }
        Ok(OneDForm { g, atom_table })
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    /// u(x) = cos(2π ξ·x) is a bounded nonconstant solution.
    pub xi: KVector,
}

#[derive(Debug, Clone)]
pub struct Witness {
    /// supp(μ) + W ⊆ H + cZ with H = h_normal^⊥ and h_normal·c = 1.
    pub h_normal: KVector,
    pub c: KVector,
}

/// L[u](x) = Σ_n (u(x + n g) - u(x)) ω_n.
#[derive(Debug, Clone)]
pub struct OneDForm {
    pub g: Scalar,
    pub atom_table: Vec<OneDAtom>,
}

#[derive(Debug, Clone)]
pub struct OneDAtom {
    pub n: BigInt,
    pub position: Scalar,
    pub weight: BigRational,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub liouville: bool,
    pub period_group: ClosedSubgroup,
    pub support_group: ClosedSubgroup,
    pub c_mu: KVector,
    pub effective_drift: KVector,
    pub counterexample: Option<Counterexample>,
    pub witness: Option<Witness>,
    pub one_d_form: Option<OneDForm>,
    pub degenerate: bool,
    pub notes: Vec<String>,
    pub canonical_operator: LevyOperator,
}

impl Verdict {
    /// Exact checks of the internal consistency contract: the verdict,
    /// density, counterexample presence, and witness presence agree, and
    /// the annihilator pairs integrally with every atom and annihilates
    /// the σ columns and the effective drift.
    pub fn check_consistency(&self) -> Result<()> {
        let dense = self.period_group.is_dense();
        if self.liouville != dense
            || self.liouville != self.counterexample.is_none()
            || self.liouville != self.witness.is_none()
        {
            return Err(Error::InvalidOperator("verdict consistency violated".into()));
        }
        if let Some(ce) = &self.counterexample {
            for comp in &self.canonical_operator.components {
                if let MeasureComponent::Atom { position, .. } = comp {
                    let pairing = kdot(&ce.xi, position)?;
                    match pairing.rational_content() {
                        Some(q) if q.is_integer() => {}
                        _ => {
                            return Err(Error::InvalidOperator(
                                "annihilator does not pair integrally with an atom".into(),
                            ))
                        }
                    }
                }
            }
            for col in &self.canonical_operator.sigma {
                if !kdot(&ce.xi, col)?.is_zero() {
                    return Err(Error::InvalidOperator(
                        "annihilator does not annihilate a sigma column".into(),
                    ));
                }
            }
            if !kdot(&ce.xi, &self.effective_drift)?.is_zero() {
                return Err(Error::InvalidOperator(
                    "annihilator does not annihilate the effective drift".into(),
                ));
            }
            if let Some(w) = &self.witness {
                if !kdot(&w.h_normal, &w.c)?.is_one() {
                    return Err(Error::InvalidOperator("witness pairing is not 1".into()));
                }
            }
        }
        Ok(())
    }
}

//! Floating-point verification layer: evaluate the characteristic symbol
//! ψ(η) of the operator on plane waves, confirm that constructed
//! counterexamples solve L[u] = 0, scan the symbol's zero set against
//! the exact period group, and brute-force-validate group closures on
//! small instances. Exactness lives in the other modules; here double
//! precision with documented tolerances is the contract.

mod special;

pub use special::{j0, sinc, sphere_area, sphere_average};

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::kdot;
use crate::operator::{LevyOperator, MeasureComponent};
use crate::scalar::Scalar;
use crate::subgroup::ClosedSubgroup;

/// Residual threshold for valid annihilators.
pub const ANNIHILATOR_TOL: f64 = 1e-10;

/// A double-precision view of a canonical operator. Cutoff membership of
/// each atom is copied from the exact decision, not re-derived from
/// floats.
#[derive(Debug, Clone)]
pub struct FloatOperator {
    pub dim: usize,
    pub sigma: Vec<Vec<f64>>,
    pub drift: Vec<f64>,
    pub atoms: Vec<FloatAtom>,
    pub stables: Vec<FloatStable>,
    pub spheres: Vec<FloatSphere>,
}

#[derive(Debug, Clone)]
pub struct FloatAtom {
    pub z: Vec<f64>,
    pub weight: f64,
    pub in_ball: bool,
}

#[derive(Debug, Clone)]
pub struct FloatStable {
    /// Orthonormal basis of the supporting subspace.
    pub onb: Vec<Vec<f64>>,
    pub two_alpha: f64,
    pub scale: f64,
}

#[derive(Debug, Clone)]
pub struct FloatSphere {
    pub radius: f64,
    pub surface_weight: f64,
}

fn to_f64_vec(v: &[Scalar]) -> Result<Vec<f64>> {
    v.iter().map(|s| s.approx_f64()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl FloatOperator {
    /// Canonicalizes internally; ball-support components admit no symbol.
    pub fn new(op: &LevyOperator) -> Result<Self> {
        let op = if op.is_canonical() { op.clone() } else { op.canonicalize()? };
        let mut atoms = Vec::new();
        let mut stables = Vec::new();
        let mut spheres = Vec::new();
        for comp in &op.components {
            match comp {
                MeasureComponent::Atom { position, weight, .. } => {
                    atoms.push(FloatAtom {
                        z: to_f64_vec(position)?,
                        weight: crate::scalar::rat_to_f64(weight),
                        in_ball: LevyOperator::inside_unit_ball(position)?,
                    });
                }
                MeasureComponent::StableSubspace { basis, alpha, scale } => {
                    let raw: Vec<Vec<f64>> = basis.iter().map(|b| to_f64_vec(b)).collect::<Result<_>>()?;
                    stables.push(FloatStable {
                        onb: gram_schmidt(&raw),
                        two_alpha: 2.0 * crate::scalar::rat_to_f64(alpha),
                        scale: crate::scalar::rat_to_f64(scale),
                    });
                }
                MeasureComponent::Sphere { radius, surface_weight } => {
                    spheres.push(FloatSphere {
                        radius: radius.approx_f64()?,
                        surface_weight: crate::scalar::rat_to_f64(surface_weight),
                    });
                }
                MeasureComponent::BallSupport { .. } => {
                    return Err(Error::UnsupportedComponent(
                        "ball-support components are decision-only; the symbol is not \
                         evaluable"
                            .into(),
                    ));
                }
            }
        }
        Ok(FloatOperator {
            dim: op.dim,
            sigma: op.sigma.iter().map(|c| to_f64_vec(c)).collect::<Result<_>>()?,
            drift: to_f64_vec(&op.drift)?,
            atoms,
            stables,
            spheres,
        })
    }

    /// ψ(η): the multiplier of the operator on e^{i η·x}.
    pub fn symbol(&self, eta: &[f64]) -> Result<Complex64> {
        assert_eq!(eta.len(), self.dim, "frequency dimension mismatch");
        let mut psi = Complex64::new(0.0, 0.0);
        for col in &self.sigma {
            let s = dot(col, eta);
            psi.re -= s * s;
        }
        psi.im += dot(&self.drift, eta);
        for atom in &self.atoms {
            let phase = dot(&atom.z, eta);
            let jump = Complex64::new(phase.cos() - 1.0, phase.sin());
            psi += atom.weight * jump;
            if atom.in_ball {
                psi.im -= atom.weight * phase;
            }
        }
        for st in &self.stables {
            let proj2: f64 = st.onb.iter().map(|o| dot(o, eta).powi(2)).sum();
            psi.re -= st.scale * proj2.sqrt().powf(st.two_alpha);
        }
        for sp in &self.spheres {
            let avg = sphere_average(self.dim, sp.radius * norm(eta))?;
            psi.re += sp.surface_weight * sphere_area(self.dim, sp.radius) * (avg - 1.0);
        }
        if !psi.re.is_finite() || !psi.im.is_finite() {
            return Err(Error::QuadratureFailure("symbol evaluated to a non-finite value".into()));
        }
        Ok(psi)
    }

    /// L[u](x) for u(y) = cos(2π ξ·y), assembled from direct formulas:
    /// analytic derivatives for the local part, plain differences for
    /// atoms, the known plane-wave action for stable and sphere parts.
    /// An independent path from `symbol`.
    pub fn apply_to_wave(&self, xi: &[f64], x: &[f64]) -> Result<f64> {
        let tau = 2.0 * std::f64::consts::PI;
        let phase = tau * dot(xi, x);
        let mut out = 0.0;
        for col in &self.sigma {
            let s = tau * dot(col, xi);
            out -= s * s * phase.cos();
        }
        out -= tau * dot(&self.drift, xi) * phase.sin();
        for atom in &self.atoms {
            let shifted: Vec<f64> = x.iter().zip(&atom.z).map(|(a, b)| a + b).collect();
            let mut term = (tau * dot(xi, &shifted)).cos() - phase.cos();
            if atom.in_ball {
                term += tau * dot(xi, &atom.z) * phase.sin();
            }
            out += atom.weight * term;
        }
        for st in &self.stables {
            let proj2: f64 = st.onb.iter().map(|o| (tau * dot(o, xi)).powi(2)).sum();
            out -= st.scale * proj2.sqrt().powf(st.two_alpha) * phase.cos();
        }
        for sp in &self.spheres {
            let avg = sphere_average(self.dim, sp.radius * tau * norm(xi))?;
            out += sp.surface_weight * sphere_area(self.dim, sp.radius) * (avg - 1.0) * phase.cos();
        }
        Ok(out)
    }
}

fn gram_schmidt(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut onb: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for o in &onb {
            let c = dot(&w, o);
            for (wi, oi) in w.iter_mut().zip(o) {
                *wi -= c * oi;
            }
        }
        let n = norm(&w);
        if n > 1e-12 {
            for wi in w.iter_mut() {
                *wi /= n;
            }
            onb.push(w);
        }
    }
    onb
}

/// |ψ(2π ξ)| for an exact annihilator ξ of the operator's period group.
/// The precondition is enforced exactly: ξ must be nonzero, annihilate
/// the subspace basis, and pair integrally with the lattice basis.
pub fn check_annihilator(op: &LevyOperator, xi: &[Scalar]) -> Result<f64> {
    let group = op.period_group()?;
    if group.is_dense() {
        return Err(Error::UsageError(
            "the operator satisfies the Liouville property: its period group is dense and \
             has no nonzero annihilator"
                .into(),
        ));
    }
    validate_annihilator(&group, xi)?;
    let fop = FloatOperator::new(op)?;
    let xif = to_f64_vec(xi)?;
    let eta: Vec<f64> = xif.iter().map(|v| 2.0 * std::f64::consts::PI * v).collect();
    Ok(fop.symbol(&eta)?.norm())
}

fn validate_annihilator(group: &ClosedSubgroup, xi: &[Scalar]) -> Result<()> {
    if xi.iter().all(|s| s.is_zero()) {
        return Err(Error::UsageError("annihilator must be nonzero".into()));
    }
    for v in group.v_basis() {
        if !kdot(xi, v)?.is_zero() {
            return Err(Error::UsageError(
                "proposed annihilator does not annihilate the subspace part".into(),
            ));
        }
    }
    for lam in group.lattice_basis() {
        match kdot(xi, lam)?.rational_content() {
            Some(q) if q.is_integer() => {}
            _ => {
                return Err(Error::UsageError(
                    "proposed annihilator does not pair integrally with the lattice part".into(),
                ))
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ZeroSetReport {
    pub n_samples: usize,
    pub seed: u64,
    /// Residuals |ψ(2π k ξ)| over integer multiples of the annihilator
    /// (just ψ(0) when the group is dense).
    pub zero_family_max_residual: f64,
    pub zero_family_pass: bool,
    /// Margin statistics |ψ| at perturbed points ξ + δ, 0.1 <= |δ| <= 0.5;
    /// reported, not asserted.
    pub perturbed_min_margin: f64,
    pub perturbed_mean_margin: f64,
    pub perturbed_max_re: f64,
}

/// Samples the dual family {k·ξ} of the period group (expected zeros of
/// the symbol) and perturbations off it (expected nonzeros).
pub fn zero_set_scan(
    op: &LevyOperator,
    group: &ClosedSubgroup,
    n_samples: usize,
    seed: u64,
) -> Result<ZeroSetReport> {
    let fop = FloatOperator::new(op)?;
    let tau = 2.0 * std::f64::consts::PI;
    let xi0: Option<Vec<f64>> = match group.one_annihilator()? {
        Some(xi) => Some(to_f64_vec(&xi)?),
        None => None,
    };
    let d = fop.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_max = 0.0f64;
    for _ in 0..n_samples {
        let k = rng.gen_range(-20i64..=20) as f64;
        let eta: Vec<f64> = match &xi0 {
            Some(x) => x.iter().map(|v| tau * k * v).collect(),
            None => vec![0.0; d],
        };
        zero_max = zero_max.max(fop.symbol(&eta)?.norm());
    }
    let mut min_margin = f64::INFINITY;
    let mut sum_margin = 0.0;
    let mut max_re = f64::NEG_INFINITY;
    for _ in 0..n_samples {
        let k = rng.gen_range(-20i64..=20) as f64;
        let base: Vec<f64> = match &xi0 {
            Some(x) => x.iter().map(|v| k * v).collect(),
            None => vec![0.0; d],
        };
        let delta = loop {
            let cand: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..=0.5)).collect();
            let r = norm(&cand);
            if (0.1..=0.5).contains(&r) {
                break cand;
            }
        };
        let eta: Vec<f64> = base.iter().zip(&delta).map(|(a, b)| tau * (a + b)).collect();
        let psi = fop.symbol(&eta)?;
        min_margin = min_margin.min(psi.norm());
        sum_margin += psi.norm();
        max_re = max_re.max(psi.re);
    }
    Ok(ZeroSetReport {
        n_samples,
        seed,
        zero_family_max_residual: zero_max,
        zero_family_pass: zero_max <= ANNIHILATOR_TOL,
        perturbed_min_margin: min_margin,
        perturbed_mean_margin: sum_margin / n_samples.max(1) as f64,
        perturbed_max_re: max_re,
    })
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Max coefficient magnitude N (>= 1, <= 10^4).
    pub n_max: i64,
    /// Confinement tolerance; coverage uses 10x this.
    pub eps: f64,
    /// Number of pseudo-random coverage targets.
    pub targets: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { n_max: 10_000, eps: 0.05, targets: 200, seed: 42 }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleReport {
    /// Every combination Σ n_i g_i with |n_i| <= N stays within eps of
    /// the predicted group.
    pub confined: bool,
    pub max_generator_distance: f64,
    /// Fraction of random unit-box targets, snapped onto the predicted
    /// group, approximated within 10·eps by some enumerated combination.
    /// Detects over-prediction: a predicted group finer than the actual
    /// closure contains points no combination reaches.
    pub covered_fraction: f64,
    pub n_max: i64,
    pub eps: f64,
    pub targets: usize,
    pub seed: u64,
    pub notes: Vec<String>,
}

/// Distance queries against the predicted group's float bases: subtract
/// the V-projection, round the lattice coordinates in the quotient,
/// measure the rest. The subspace projection uses an orthonormal basis
/// and the lattice basis is size-reduced first; exact-arithmetic HNF
/// bases can be arbitrarily skewed, and solving coordinates against them
/// directly loses enough precision to report spurious distances.
struct GroupMetric {
    /// Orthonormal basis of the subspace part.
    v_onb: Vec<Vec<f64>>,
    /// Size-reduced basis of the lattice part projected onto V-perp
    /// (spanning the same lattice modulo V as the original).
    lam: Vec<Vec<f64>>,
    /// (ΛᵀΛ)⁻¹Λᵀ for the reduced lattice basis.
    lam_pinv: Vec<Vec<f64>>,
}

impl GroupMetric {
    fn new(group: &ClosedSubgroup) -> Result<Self> {
        let dim = group.dim();
        let mut v_cols: Vec<Vec<f64>> = Vec::new();
        for v in group.v_basis() {
            v_cols.push(to_f64_vec(v)?);
        }
        let v_onb = gram_schmidt(&v_cols);
        let mut lam: Vec<Vec<f64>> = Vec::new();
        for l in group.lattice_basis() {
            let mut col = to_f64_vec(l)?;
            for o in &v_onb {
                let c = dot(&col, o);
                for (x, oi) in col.iter_mut().zip(o) {
                    *x -= c * oi;
                }
            }
            lam.push(col);
        }
        size_reduce(&mut lam);
        let k = lam.len();
        let mut lam_pinv = vec![vec![0.0; dim]; k];
        if k > 0 {
            let mut gram = vec![vec![0.0; k]; k];
            for i in 0..k {
                for j in 0..k {
                    gram[i][j] = dot(&lam[i], &lam[j]);
                }
            }
            let inv = invert(&mut gram);
            for i in 0..k {
                for t in 0..dim {
                    lam_pinv[i][t] = (0..k).map(|j| inv[i][j] * lam[j][t]).sum();
                }
            }
        }
        Ok(GroupMetric { v_onb, lam, lam_pinv })
    }

    /// Nearest group point: the V-component of x plus the Babai-rounded
    /// lattice point of the V-perp component.
    fn snap(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        let mut perp = x.to_vec();
        for o in &self.v_onb {
            let c = dot(x, o);
            for ((p, e), oi) in perp.iter_mut().zip(out.iter_mut()).zip(o) {
                *p -= c * oi;
                *e += c * oi;
            }
        }
        for (i, col) in self.lam.iter().enumerate() {
            let n = dot(&self.lam_pinv[i], &perp).round();
            for (e, c) in out.iter_mut().zip(col) {
                *e += n * c;
            }
        }
        out
    }

    fn distance(&self, x: &[f64]) -> f64 {
        let s = self.snap(x);
        let mut acc = 0.0;
        for (a, b) in x.iter().zip(&s) {
            acc += (a - b) * (a - b);
        }
        acc.sqrt()
    }
}

/// Pairwise (Lagrange-style) size reduction: replaces vectors by shorter
/// integer combinations until stable. Unimodular, so the spanned lattice
/// is unchanged; the point is numerical conditioning, not a reduced
/// output basis.
fn size_reduce(basis: &mut [Vec<f64>]) {
    if basis.len() < 2 {
        return;
    }
    for _ in 0..64 {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let denom = dot(&basis[j], &basis[j]);
                if denom == 0.0 {
                    continue;
                }
                let q = (dot(&basis[i], &basis[j]) / denom).round();
                if q != 0.0 {
                    let bj = basis[j].clone();
                    for (a, b) in basis[i].iter_mut().zip(&bj) {
                        *a -= q * b;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn invert(a: &mut [Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for i in 0..n {
            if i != col && a[i][col] != 0.0 {
                let f = a[i][col];
                for j in 0..n {
                    a[i][j] -= f * a[col][j];
                    inv[i][j] -= f * inv[col][j];
                }
            }
        }
    }
    inv
}

const ENUM_BUDGET: u64 = 1 << 24;
const HALF_TABLE_CAP: u64 = 1 << 20;

/// Brute-force consistency check of a predicted closure against its
/// generators: confinement of every bounded-coefficient combination, and
/// coverage of random ambient targets by the combinations (dense
/// predictions should cover the unit box; sparse ones should not).
pub fn density_oracle(
    generators: &[Vec<f64>],
    predicted: &ClosedSubgroup,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    let d = predicted.dim();
    if generators.len() > 4 {
        return Err(Error::CostGuardExceeded(format!(
            "{} generators exceed the limit of 4",
            generators.len()
        )));
    }
    if cfg.n_max > 10_000 || cfg.n_max < 1 {
        return Err(Error::CostGuardExceeded(format!(
            "coefficient bound N = {} outside [1, 10000]",
            cfg.n_max
        )));
    }
    if d > 3 {
        return Err(Error::CostGuardExceeded(format!("dimension {d} exceeds the limit of 3")));
    }
    if cfg.eps <= 0.0 {
        return Err(Error::UsageError("eps must be positive".into()));
    }
    for g in generators {
        if g.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "generator length {} vs ambient dimension {d}",
                g.len()
            )));
        }
    }
    let metric = GroupMetric::new(predicted)?;
    let mut notes = Vec::new();
    let n = cfg.n_max;

    // Confinement. dist(Σ n_i g_i) <= Σ |n_i| dist(g_i) because the
    // group is closed under addition, so small generator distances bound
    // every combination; a generator already beyond eps is itself a
    // violating combination. Only the middle zone needs enumeration.
    let dists: Vec<f64> = generators.iter().map(|g| metric.distance(g)).collect();
    let max_gen_dist = dists.iter().cloned().fold(0.0, f64::max);
    let confined = if dists.iter().any(|&x| x > cfg.eps) {
        notes.push("a single generator lies farther than eps from the predicted group".into());
        false
    } else if (n as f64) * dists.iter().sum::<f64>() <= cfg.eps {
        notes.push("confined via the subadditive bound N·Σ dist(g_i) <= eps".into());
        true
    } else {
        let total = (2 * n as u64 + 1).checked_pow(generators.len() as u32);
        match total {
            Some(t) if t <= ENUM_BUDGET => {
                notes.push(format!("confinement checked by full enumeration of {t} combinations"));
                let mut ok = true;
                let mut coeffs = vec![-n; generators.len()];
                'outer: loop {
                    let mut point = vec![0.0; d];
                    for (c, g) in coeffs.iter().zip(generators) {
                        for (p, gi) in point.iter_mut().zip(g) {
                            *p += *c as f64 * gi;
                        }
                    }
                    if metric.distance(&point) > cfg.eps {
                        ok = false;
                        break 'outer;
                    }
                    let mut i = 0;
                    loop {
                        if i == coeffs.len() {
                            break 'outer;
                        }
                        coeffs[i] += 1;
                        if coeffs[i] <= n {
                            break;
                        }
                        coeffs[i] = -n;
                        i += 1;
                    }
                }
                ok
            }
            _ => {
                return Err(Error::CostGuardExceeded(
                    "confinement needs enumeration beyond the budget; reduce N or the \
                     generator count"
                        .into(),
                ))
            }
        }
    };

    // Coverage via a meet-in-the-middle table: combinations a + b with a
    // from one generator half and b from the other, the larger half
    // bucketed on a grid of cell size 10·eps.
    let tol = 10.0 * cfg.eps;
    let split = generators.len().div_ceil(2);
    let (ha, hb) = generators.split_at(split);
    let list_a = enumerate_half(ha, n, d, &mut notes);
    let list_b = enumerate_half(hb, n, d, &mut notes);
    let (iter_side, grid_side) =
        if list_a.len() <= list_b.len() { (&list_a, &list_b) } else { (&list_b, &list_a) };
    let grid = bucket(grid_side, tol);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut covered = 0usize;
    for _ in 0..cfg.targets {
        let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
        let t = metric.snap(&raw);
        'search: for a in iter_side {
            let q: Vec<f64> = t.iter().zip(a).map(|(x, y)| x - y).collect();
            if grid_lookup(&grid, &q, tol) {
                covered += 1;
                break 'search;
            }
        }
    }

    Ok(OracleReport {
        confined,
        max_generator_distance: max_gen_dist,
        covered_fraction: covered as f64 / cfg.targets.max(1) as f64,
        n_max: cfg.n_max,
        eps: cfg.eps,
        targets: cfg.targets,
        seed: cfg.seed,
        notes,
    })
}

fn enumerate_half(gens: &[Vec<f64>], n: i64, d: usize, notes: &mut Vec<String>) -> Vec<Vec<f64>> {
    if gens.is_empty() {
        return vec![vec![0.0; d]];
    }
    let per_coef = ((HALF_TABLE_CAP as f64).powf(1.0 / gens.len() as f64) as u64 - 1) / 2;
    let range = n.min(per_coef as i64).max(1);
    if range < n {
        notes.push(format!(
            "coverage search capped coefficients at ±{range} (of N = {n}) for a {}-generator \
             half",
            gens.len()
        ));
    }
    let mut out = Vec::new();
    let mut coeffs = vec![-range; gens.len()];
    loop {
        let mut point = vec![0.0; d];
        for (c, g) in coeffs.iter().zip(gens) {
            for (p, gi) in point.iter_mut().zip(g) {
                *p += *c as f64 * gi;
            }
        }
        out.push(point);
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] <= range {
                break;
            }
            coeffs[i] = -range;
            i += 1;
        }
    }
}

type Grid = HashMap<[i64; 3], Vec<[f64; 3]>>;

fn grid_key(p: &[f64], cell: f64) -> [i64; 3] {
    let mut k = [0i64; 3];
    for (i, v) in p.iter().enumerate() {
        k[i] = (v / cell).floor() as i64;
    }
    k
}

fn bucket(points: &[Vec<f64>], cell: f64) -> Grid {
    let mut grid: Grid = HashMap::new();
    for p in points {
        let mut padded = [0.0f64; 3];
        for (i, v) in p.iter().enumerate() {
            padded[i] = *v;
        }
        grid.entry(grid_key(p, cell)).or_default().push(padded);
    }
    grid
}

fn grid_lookup(grid: &Grid, q: &[f64], tol: f64) -> bool {
    let center = grid_key(q, tol);
    let d = q.len();
    let deltas: &[i64] = &[-1, 0, 1];
    let mut stack: Vec<[i64; 3]> = Vec::new();
    // Enumerate neighbor cells in up to 3 dims.
    for &dx in deltas {
        for &dy in if d >= 2 { deltas } else { &[0][..] } {
            for &dz in if d >= 3 { deltas } else { &[0][..] } {
                stack.push([center[0] + dx, center[1] + dy, center[2] + dz]);
            }
        }
    }
    for key in stack {
        if let Some(pts) = grid.get(&key) {
            for p in pts {
                let mut s = 0.0;
                for i in 0..d {
                    let diff = q[i] - p[i];
                    s += diff * diff;
                }
                if s.sqrt() <= tol {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::AtomConvention;
    use crate::scalar::{Field, FieldDescriptor};
    use crate::subgroup::{closure, GeneratorSet};
    use num_rational::BigRational;

    fn qf() -> Field {
        Field::new(FieldDescriptor::rational()).unwrap()
    }

    fn v(f: &Field, texts: &[&str]) -> Vec<Scalar> {
        texts.iter().map(|t| f.parse(t).unwrap()).collect()
    }

    fn atom(f: &Field, pos: &[&str], w: i64, conv: AtomConvention) -> MeasureComponent {
        MeasureComponent::Atom {
            position: v(f, pos),
            weight: BigRational::from_integer(w.into()),
            convention: conv,
        }
    }

    fn laplacian(f: &Field) -> LevyOperator {
        LevyOperator::new(
            2,
            f.clone(),
            vec![v(f, &["1", "0"]), v(f, &["0", "1"])],
            v(f, &["0", "0"]),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn symbol_of_laplacian() {
        let f = qf();
        let fop = FloatOperator::new(&laplacian(&f)).unwrap();
        let psi = fop.symbol(&[1.0, 0.0]).unwrap();
        assert!((psi.re + 1.0).abs() < 1e-14 && psi.im.abs() < 1e-14);
    }

    #[test]
    fn symbol_vanishes_at_zero() {
        let f = qf();
        let op = LevyOperator::new(
            3,
            f.clone(),
            vec![],
            v(&f, &["0", "0", "0"]),
            vec![MeasureComponent::Sphere { radius: f.one(), surface_weight: BigRational::from_integer(1.into()) }],
        )
        .unwrap();
        let fop = FloatOperator::new(&op).unwrap();
        let psi = fop.symbol(&[0.0, 0.0, 0.0]).unwrap();
        assert!(psi.norm() < 1e-14);
    }

    #[test]
    fn symbol_cancels_on_period_annihilator() {
        // Drift (1,0) written as pure differences with atoms (0,1/2),
        // (0,3/2): eta = 2*pi*(0,2) lands every atom on a full period
        // and the drift is orthogonal.
        let f = qf();
        let op = LevyOperator::new(
            2,
            f.clone(),
            vec![],
            v(&f, &["1", "0"]),
            vec![
                atom(&f, &["0", "1/2"], 1, AtomConvention::PureDifference),
                atom(&f, &["0", "3/2"], 1, AtomConvention::PureDifference),
            ],
        )
        .unwrap();
        let fop = FloatOperator::new(&op).unwrap();
        let psi = fop.symbol(&[0.0, 4.0 * std::f64::consts::PI]).unwrap();
        assert!(psi.norm() < 1e-10, "psi = {psi}");
        // And the residual through the checked entry point.
        let res = check_annihilator(&op, &v(&f, &["0", "2"])).unwrap();
        assert!(res < 1e-10);
    }

    #[test]
    fn check_annihilator_rejects_liouville_operator() {
        let f = qf();
        let err = check_annihilator(&laplacian(&f), &v(&f, &["1", "0"])).unwrap_err();
        assert!(matches!(err, Error::UsageError(_)));
    }

    #[test]
    fn check_annihilator_one_d_symmetric() {
        let f = qf();
        let op = LevyOperator::new(
            1,
            f.clone(),
            vec![],
            v(&f, &["0"]),
            vec![
                atom(&f, &["1"], 1, AtomConvention::Canonical),
                atom(&f, &["-1"], 1, AtomConvention::Canonical),
            ],
        )
        .unwrap();
        let res = check_annihilator(&op, &v(&f, &["1"])).unwrap();
        assert!(res < 1e-10);
    }

    #[test]
    fn ball_support_has_no_symbol() {
        let f = qf();
        let op = LevyOperator::new(
            2,
            f.clone(),
            vec![],
            v(&f, &["0", "0"]),
            vec![MeasureComponent::BallSupport { center: v(&f, &["0", "0"]), radius: f.one() }],
        )
        .unwrap();
        assert!(matches!(FloatOperator::new(&op), Err(Error::UnsupportedComponent(_))));
    }

    #[test]
    fn wave_action_matches_symbol() {
        let f = qf();
        let op = LevyOperator::new(
            2,
            f.clone(),
            vec![v(&f, &["1", "0"])],
            v(&f, &["0", "1/3"]),
            vec![
                atom(&f, &["1", "0"], 1, AtomConvention::Canonical),
                atom(&f, &["0", "2"], 2, AtomConvention::Canonical),
            ],
        )
        .unwrap();
        let fop = FloatOperator::new(&op).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        for (xi, x) in [
            (vec![0.3, -0.7], vec![0.1, 0.2]),
            (vec![1.5, 0.25], vec![-1.0, 3.0]),
            (vec![0.0, 1.0], vec![0.5, 0.5]),
        ] {
            let direct = fop.apply_to_wave(&xi, &x).unwrap();
            let eta: Vec<f64> = xi.iter().map(|v| tau * v).collect();
            let psi = fop.symbol(&eta).unwrap();
            let via_symbol = (psi * Complex64::new(0.0, tau * dot(&xi, &x)).exp()).re;
            assert!(
                (direct - via_symbol).abs() <= 1e-9,
                "paths disagree: {direct} vs {via_symbol}"
            );
        }
    }

    #[test]
    fn zero_set_scan_mean_value_operator() {
        // Mean-value operator in d=3: the dual family is {0} and every
        // perturbed sample has strictly negative real part.
        let f = qf();
        let op = LevyOperator::new(
            3,
            f.clone(),
            vec![],
            v(&f, &["0", "0", "0"]),
            vec![MeasureComponent::Sphere { radius: f.one(), surface_weight: BigRational::from_integer(1.into()) }],
        )
        .unwrap();
        let group = op.period_group().unwrap();
        assert!(group.is_dense());
        let report = zero_set_scan(&op, &group, 100, 7).unwrap();
        assert!(report.zero_family_pass);
        assert!(report.perturbed_max_re < -1e-6);
    }

    #[test]
    fn oracle_kronecker_dense_line() {
        // Generators {sqrt2, sqrt3} in d=1 against the dense prediction.
        let f = Field::new(FieldDescriptor::multi_quadratic(&[2, 3])).unwrap();
        let gen = GeneratorSet {
            dim: 1,
            field: f.clone(),
            atoms: vec![v(&f, &["sqrt2"]), v(&f, &["sqrt3"])],
            lines: vec![],
        };
        let predicted = closure(&gen).unwrap();
        assert!(predicted.is_dense());
        let gens =
            vec![vec![2f64.sqrt()], vec![3f64.sqrt()]];
        let report = density_oracle(&gens, &predicted, &OracleConfig::default()).unwrap();
        assert!(report.confined);
        assert!(report.covered_fraction >= 0.99);
    }

    #[test]
    fn oracle_gcd_lattice() {
        let f = qf();
        let gen = GeneratorSet {
            dim: 1,
            field: f.clone(),
            atoms: vec![v(&f, &["1/2"]), v(&f, &["1/3"])],
            lines: vec![],
        };
        let predicted = closure(&gen).unwrap();
        let gens = vec![vec![0.5], vec![1.0 / 3.0]];
        let report = density_oracle(&gens, &predicted, &OracleConfig::default()).unwrap();
        assert!(report.confined);
        assert!((report.covered_fraction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_detects_over_prediction() {
        // Generator {1} against the deliberately wrong prediction
        // (1/2)Z: confined, but only about half the targets are covered.
        let f = qf();
        let predicted =
            ClosedSubgroup::from_parts(1, f.clone(), vec![], vec![v(&f, &["1/2"])]).unwrap();
        let cfg = OracleConfig { eps: 0.025, targets: 400, ..OracleConfig::default() };
        let report = density_oracle(&[vec![1.0]], &predicted, &cfg).unwrap();
        assert!(report.confined);
        assert!(
            (report.covered_fraction - 0.5).abs() < 0.15,
            "covered {}",
            report.covered_fraction
        );
    }

    #[test]
    fn oracle_detects_under_prediction() {
        // Generators {1/2, 1/3} against the deliberately coarse
        // prediction Z: the generator 1/2 alone violates confinement.
        let f = qf();
        let predicted =
            ClosedSubgroup::from_parts(1, f.clone(), vec![], vec![v(&f, &["1"])]).unwrap();
        let report =
            density_oracle(&[vec![0.5], vec![1.0 / 3.0]], &predicted, &OracleConfig::default())
                .unwrap();
        assert!(!report.confined);
    }

    #[test]
    fn oracle_cost_guard() {
        let f = qf();
        let predicted = ClosedSubgroup::trivial(1, f.clone());
        let gens = vec![vec![1.0]; 5];
        assert!(matches!(
            density_oracle(&gens, &predicted, &OracleConfig::default()),
            Err(Error::CostGuardExceeded(_))
        ));
        let cfg = OracleConfig { n_max: 20_000, ..OracleConfig::default() };
        assert!(matches!(
            density_oracle(&[vec![1.0]], &predicted, &cfg),
            Err(Error::CostGuardExceeded(_))
        ));
    }

    #[test]
    fn oracle_deterministic() {
        let f = qf();
        let gen = GeneratorSet {
            dim: 1,
            field: f.clone(),
            atoms: vec![v(&f, &["1/2"]), v(&f, &["1/3"])],
            lines: vec![],
        };
        let predicted = closure(&gen).unwrap();
        let gens = vec![vec![0.5], vec![1.0 / 3.0]];
        let a = density_oracle(&gens, &predicted, &OracleConfig::default()).unwrap();
        let b = density_oracle(&gens, &predicted, &OracleConfig::default()).unwrap();
        assert_eq!(a.covered_fraction, b.covered_fraction);
        assert_eq!(a.max_generator_distance, b.max_generator_distance);
    }
}

//! Exact arithmetic in a declared computable subfield K of R.
//!
//! Three plugins: the rationals, multi-quadratic extensions
//! Q(sqrt(d_1), ..., sqrt(d_m)), and purely transcendental extensions
//! Q(t_1, ..., t_k) whose generators carry user-supplied decimal
//! enclosures and a user-asserted algebraic independence. Zero-testing is
//! exact in all three; sign determination refines interval enclosures
//! until zero is excluded.

mod dyadic;
mod mpoly;
mod parse;

pub use dyadic::{Dyadic, Interval, RatInterval};
pub use mpoly::{rat_to_f64, MPoly};

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign refinement for multi-quadratic scalars starts here and doubles.
const SIGN_START_BITS: u32 = 64;
/// Transcendental enclosures are capped by the symbol budget; beyond this
/// working precision we report failure instead of looping.
const SIGN_CAP_BITS: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Rational,
    MultiQuadratic { radicands: Vec<i64> },
    Transcendental { symbols: Vec<(String, String)> },
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor::Rational
    }

    pub fn multi_quadratic(radicands: &[i64]) -> Self {
        FieldDescriptor::MultiQuadratic { radicands: radicands.to_vec() }
    }

    pub fn transcendental(symbols: &[(&str, &str)]) -> Self {
        FieldDescriptor::Transcendental {
            symbols: symbols.iter().map(|(n, e)| (n.to_string(), e.to_string())).collect(),
        }
    }
}

#[derive(Debug)]
pub(crate) struct QuadBasis {
    pub radicands: Vec<i64>,
    /// `products[mask]` = product of the radicands selected by `mask`;
    /// `products[s] * products[t] = products[s & t]^2 * products[s ^ t]`
    /// is the multiplication table.
    pub products: Vec<BigInt>,
    pub mask_of_product: HashMap<BigInt, usize>,
}

#[derive(Debug)]
pub(crate) struct TransBasis {
    pub names: Vec<String>,
    pub index: HashMap<String, usize>,
    pub enclosures: Vec<RatInterval>,
    /// Echoed in reports: soundness of zero-testing is conditional on it.
    pub assertion: String,
}

#[derive(Debug)]
pub(crate) struct FieldInner {
    pub desc: FieldDescriptor,
    pub quad: Option<QuadBasis>,
    pub trans: Option<TransBasis>,
}

/// Shared handle to a constructed field; cloning is cheap.
#[derive(Debug, Clone)]
pub struct Field(pub(crate) Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

fn is_squarefree(mut n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The 2^m subset products are Q-linearly independent iff no nonempty
/// subset of the radicands multiplies to a perfect square, i.e. iff the
/// radicands' prime-exponent vectors are independent over GF(2).
fn radicands_independent(rads: &[i64]) -> bool {
    let mut primes: Vec<i64> = Vec::new();
    for &r in rads {
        for p in prime_factors(r) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    let mut rows: Vec<u64> = rads
        .iter()
        .map(|&r| {
            let mut bits = 0u64;
            for (i, &p) in primes.iter().enumerate() {
                if r % p == 0 {
                    bits |= 1 << i;
                }
            }
            bits
        })
        .collect();
    // GF(2) elimination.
    let mut rank = 0;
    for col in 0..primes.len() {
        if let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] & (1 << col) != 0) {
            rows.swap(rank, pivot);
            for i in 0..rows.len() {
                if i != rank && rows[i] & (1 << col) != 0 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank == rads.len()
}

fn parse_decimal_enclosure(name: &str, text: &str) -> Result<RatInterval> {
    let mut s = text.trim();
    for ell in ["...", "\u{2026}"] {
        if let Some(stripped) = s.strip_suffix(ell) {
            s = stripped;
        }
    }
    let bad = |msg: &str| Error::BadEnclosure(name.to_string(), msg.to_string());
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("empty enclosure"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("enclosure must be a plain decimal"));
    }
    if frac_part.len() < 30 {
        return Err(bad("need at least 30 fractional digits (width <= 1e-30)"));
    }
    let whole: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad("unparsable digits"))?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let lo = BigRational::new(whole, denom.clone());
    let width = BigRational::new(BigInt::one(), denom);
    // Digits are read as a truncation of the true value.
    let (lo, hi) = if neg { (-(&lo + &width), -lo) } else { (lo.clone(), lo + width) };
    Ok(RatInterval { lo, hi })
}

impl Field {
    /// Validates the descriptor and precomputes the basis data.
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        let mut quad = None;
        let mut trans = None;
        match &desc {
            FieldDescriptor::Rational => {}
            FieldDescriptor::MultiQuadratic { radicands } => {
                for &r in radicands {
                    if !is_squarefree(r) {
                        return Err(Error::NonSquarefreeRadicand(r));
                    }
                }
                for (i, &r) in radicands.iter().enumerate() {
                    if radicands[..i].contains(&r) {
                        return Err(Error::NonSquarefreeRadicand(r));
                    }
                }
                if !radicands_independent(radicands) {
                    return Err(Error::DependentRadicands(format!("{radicands:?}")));
                }
                let m = radicands.len();
                let mut products = Vec::with_capacity(1 << m);
                let mut mask_of_product = HashMap::new();
                for mask in 0..(1usize << m) {
                    let mut p = BigInt::one();
                    for (i, &r) in radicands.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            p *= r;
                        }
                    }
                    mask_of_product.insert(p.clone(), mask);
                    products.push(p);
                }
                quad = Some(QuadBasis { radicands: radicands.clone(), products, mask_of_product });
            }
            FieldDescriptor::Transcendental { symbols } => {
                let mut names = Vec::new();
                let mut index = HashMap::new();
                let mut enclosures = Vec::new();
                for (name, enc) in symbols {
                    if name.is_empty()
                        || !name.chars().next().unwrap().is_ascii_alphabetic()
                        || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        || looks_like_sqrt_token(name)
                    {
                        return Err(Error::BadEnclosure(name.clone(), "invalid symbol name".into()));
                    }
                    if index.contains_key(name) {
                        return Err(Error::DuplicateSymbol(name.clone()));
                    }
                    enclosures.push(parse_decimal_enclosure(name, enc)?);
                    index.insert(name.clone(), names.len());
                    names.push(name.clone());
                }
                let assertion = format!(
                    "symbols {{{}}} are asserted algebraically independent over Q; \
                     zero-tests are sound only under this assertion",
                    names.join(", ")
                );
                trans = Some(TransBasis { names, index, enclosures, assertion });
            }
        }
        Ok(Field(Arc::new(FieldInner { desc, quad, trans })))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn independence_assertion(&self) -> Option<&str> {
        self.0.trans.as_ref().map(|t| t.assertion.as_str())
    }

    fn quad_dim(&self) -> usize {
        self.0.quad.as_ref().map(|q| 1 << q.radicands.len()).unwrap_or(1)
    }

    fn nvars(&self) -> usize {
        self.0.trans.as_ref().map(|t| t.names.len()).unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        let repr = match &self.0.desc {
            FieldDescriptor::Rational => Repr::Rational(q),
            FieldDescriptor::MultiQuadratic { .. } => {
                let mut coords = vec![BigRational::zero(); self.quad_dim()];
                coords[0] = q;
                Repr::Quadratic(coords)
            }
            FieldDescriptor::Transcendental { .. } => {
                let n = self.nvars();
                Repr::Transcendental { num: MPoly::constant(n, q), den: MPoly::one(n) }
            }
        };
        Scalar { field: self.clone(), repr }
    }

    /// sqrt(v) where v is a subset product of the radicands.
    pub fn sqrt_of(&self, v: i64) -> Result<Scalar> {
        let quad = self.0.quad.as_ref().ok_or_else(|| Error::UnknownToken(format!("sqrt{v}")))?;
        let mask = *quad
            .mask_of_product
            .get(&BigInt::from(v))
            .ok_or_else(|| Error::UnknownToken(format!("sqrt{v}")))?;
        let mut coords = vec![BigRational::zero(); self.quad_dim()];
        coords[mask] = BigRational::one();
        Ok(Scalar { field: self.clone(), repr: Repr::Quadratic(coords) })
    }

    pub fn symbol(&self, name: &str) -> Result<Scalar> {
        let trans = self.0.trans.as_ref().ok_or_else(|| Error::UnknownToken(name.to_string()))?;
        let &i = trans.index.get(name).ok_or_else(|| Error::UnknownToken(name.to_string()))?;
        let n = self.nvars();
        Ok(Scalar {
            field: self.clone(),
            repr: Repr::Transcendental { num: MPoly::var(n, i), den: MPoly::one(n) },
        })
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        parse::parse_scalar(text, self)
    }
}

fn looks_like_sqrt_token(name: &str) -> bool {
    name.strip_prefix("sqrt").map(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())).unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Repr {
    Rational(BigRational),
    /// Coordinates over the subset-product basis, index = radicand mask.
    Quadratic(Vec<BigRational>),
    /// num/den, gcd-reduced, den monic and nonzero.
    Transcendental { num: MPoly, den: MPoly },
}

/// An exact element of the field, canonical so that representation
/// equality coincides with value equality.
#[derive(Debug, Clone)]
pub struct Scalar {
    pub(crate) field: Field,
    pub(crate) repr: Repr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    fn check_same_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Quadratic(a), Repr::Quadratic(b)) => {
                Repr::Quadratic(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Repr::Transcendental { num: n1, den: d1 }, Repr::Transcendental { num: n2, den: d2 }) => {
                canonical_ratfun(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
            }
            _ => unreachable!("repr kind always matches the field kind"),
        };
        Ok(Scalar { field: self.field.clone(), repr })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Quadratic(a) => Repr::Quadratic(a.iter().map(|x| -x).collect()),
            Repr::Transcendental { num, den } => Repr::Transcendental { num: num.neg(), den: den.clone() },
        };
        Scalar { field: self.field.clone(), repr }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Quadratic(a), Repr::Quadratic(b)) => {
                let quad = self.field.0.quad.as_ref().unwrap();
                let dim = a.len();
                let mut out = vec![BigRational::zero(); dim];
                for (s, ca) in a.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (t, cb) in b.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let factor = &quad.products[s & t];
                        out[s ^ t] += ca * cb * BigRational::from_integer(factor.clone());
                    }
                }
                Repr::Quadratic(out)
            }
            (Repr::Transcendental { num: n1, den: d1 }, Repr::Transcendental { num: n2, den: d2 }) => {
                canonical_ratfun(n1.mul(n2), d1.mul(d2))
            }
            _ => unreachable!(),
        };
        Ok(Scalar { field: self.field.clone(), repr })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZeroScalar);
        }
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Ok(Scalar {
                field: self.field.clone(),
                repr: Repr::Rational(a / b),
            }),
            (Repr::Quadratic(_), Repr::Quadratic(_)) => self.mul(&other.quad_inverse()?),
            (Repr::Transcendental { num: n1, den: d1 }, Repr::Transcendental { num: n2, den: d2 }) => {
                Ok(Scalar {
                    field: self.field.clone(),
                    repr: canonical_ratfun(n1.mul(d2), d1.mul(n2)),
                })
            }
            _ => unreachable!(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a * q),
            Repr::Quadratic(a) => Repr::Quadratic(a.iter().map(|x| x * q).collect()),
            Repr::Transcendental { num, den } => {
                if q.is_zero() {
                    let n = num.nvars;
                    Repr::Transcendental { num: MPoly::zero(n), den: MPoly::one(n) }
                } else {
                    Repr::Transcendental { num: num.scale(q), den: den.clone() }
                }
            }
        };
        Scalar { field: self.field.clone(), repr }
    }

    /// 1/a for the multi-quadratic plugin: product of all nontrivial
    /// conjugates divided by the (rational) norm.
    fn quad_inverse(&self) -> Result<Scalar> {
        let coords = match &self.repr {
            Repr::Quadratic(c) => c,
            _ => unreachable!(),
        };
        let m = self.field.0.quad.as_ref().unwrap().radicands.len();
        let mut prod = self.field.one();
        for flips in 1..(1u32 << m) {
            let conj: Vec<BigRational> = coords
                .iter()
                .enumerate()
                .map(|(mask, c)| {
                    if ((mask as u32) & flips).count_ones() % 2 == 1 {
                        -c
                    } else {
                        c.clone()
                    }
                })
                .collect();
            let conj = Scalar { field: self.field.clone(), repr: Repr::Quadratic(conj) };
            prod = prod.mul(&conj)?;
        }
        let norm = self.mul(&prod)?;
        let norm_q = norm
            .rational_content()
            .expect("norm of a multi-quadratic element is rational");
        debug_assert!(!norm_q.is_zero());
        Ok(prod.scale_rational(&norm_q.recip()))
    }

    /// True iff the real value is exactly zero. Decidable in all three
    /// plugins; for transcendental fields this is sound under the
    /// asserted algebraic independence of the symbols.
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(a) => a.is_zero(),
            Repr::Quadratic(c) => c.iter().all(|x| x.is_zero()),
            Repr::Transcendental { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(a) => a.is_one(),
            Repr::Quadratic(c) => c[0].is_one() && c[1..].iter().all(|x| x.is_zero()),
            Repr::Transcendental { num, den } => num == den,
        }
    }

    /// Exact sign in {-1, 0, +1}.
    pub fn sign(&self) -> Result<i8> {
        if self.is_zero() {
            return Ok(0);
        }
        match &self.repr {
            Repr::Rational(a) => Ok(if a.is_positive() { 1 } else { -1 }),
            Repr::Quadratic(_) => {
                // Nonzero, so doubling the precision terminates.
                let mut p = SIGN_START_BITS;
                loop {
                    let iv = self.enclosure(p)?;
                    if let Some(s) = iv.definite_sign() {
                        return Ok(s);
                    }
                    p *= 2;
                }
            }
            Repr::Transcendental { num, den } => {
                let args = &self.field.0.trans.as_ref().unwrap().enclosures;
                let ni = num.eval_interval(args);
                let di = den.eval_interval(args);
                let sn = definite_rat_sign(&ni).ok_or_else(|| {
                    Error::InsufficientPrecision("symbol enclosures cannot separate the numerator from zero".into())
                })?;
                let sd = definite_rat_sign(&di).ok_or_else(|| {
                    Error::InsufficientPrecision("symbol enclosures cannot separate the denominator from zero".into())
                })?;
                Ok(sn * sd)
            }
        }
    }

    /// The rational value when the scalar lies in Q, `None` otherwise.
    pub fn rational_content(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rational(a) => Some(a.clone()),
            Repr::Quadratic(c) => {
                if c[1..].iter().all(|x| x.is_zero()) {
                    Some(c[0].clone())
                } else {
                    None
                }
            }
            Repr::Transcendental { num, den } => {
                // Canonical form reduces rational values to constants.
                let n = num.constant_value()?;
                let d = den.constant_value()?;
                Some(n / d)
            }
        }
    }

    /// Interval of width <= 2^-p containing the value.
    pub fn enclosure(&self, p: u32) -> Result<Interval> {
        assert!(p >= 1, "precision must be >= 1 bit");
        match &self.repr {
            Repr::Rational(a) => Ok(Interval::from_rational(a, p + 1)),
            Repr::Quadratic(coords) => {
                let quad = self.field.0.quad.as_ref().unwrap();
                let bound: BigRational = coords.iter().map(|c| c.abs()).sum::<BigRational>()
                    * BigRational::from_integer(BigInt::from(
                        quad.products.last().map(|b| b.sqrt() + 1u32).unwrap_or_else(|| BigInt::one()),
                    ));
                let extra = (bound.ceil().to_integer().bits() as u32) + 1;
                let w = p + 2 + extra;
                let mut acc = RatInterval::point(BigRational::zero());
                for (mask, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = if mask == 0 {
                        RatInterval::point(c.clone())
                    } else {
                        sqrt_enclosure(&quad.products[mask], w).scale(c)
                    };
                    acc = acc.add(&term);
                }
                Ok(acc.to_dyadic(p + 2))
            }
            Repr::Transcendental { num, den } => {
                let args = &self.field.0.trans.as_ref().unwrap().enclosures;
                let ni = num.eval_interval(args);
                let di = den.eval_interval(args);
                if di.contains_zero() {
                    return Err(Error::InsufficientPrecision(
                        "denominator enclosure straddles zero".into(),
                    ));
                }
                let q = ni.mul(&di.recip());
                let budget = BigRational::new(BigInt::one(), BigInt::one() << ((p + 1).min(SIGN_CAP_BITS) as usize));
                if q.width() > budget || p > SIGN_CAP_BITS {
                    return Err(Error::InsufficientPrecision(format!(
                        "symbol enclosure budget exhausted before 2^-{p}"
                    )));
                }
                Ok(q.to_dyadic(p + 2))
            }
        }
    }

    /// Double-precision approximation via a 64-bit enclosure.
    pub fn approx_f64(&self) -> Result<f64> {
        match &self.repr {
            Repr::Rational(a) => Ok(Interval::from_rational(a, 64).midpoint_f64()),
            _ => Ok(self.enclosure(64)?.midpoint_f64()),
        }
    }

    pub(crate) fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub(crate) fn as_quad_coords(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Quadratic(c) => Some(c),
            _ => None,
        }
    }

    pub(crate) fn as_ratfun(&self) -> Option<(&MPoly, &MPoly)> {
        match &self.repr {
            Repr::Transcendental { num, den } => Some((num, den)),
            _ => None,
        }
    }

    /// Grammar-compatible rendering; `parse` of the output returns an
    /// equal scalar.
    pub fn render(&self) -> String {
        match &self.repr {
            Repr::Rational(a) => render_rational(a),
            Repr::Quadratic(coords) => {
                let quad = self.field.0.quad.as_ref().unwrap();
                let mut parts: Vec<(bool, String)> = Vec::new();
                for (mask, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = c.abs();
                    let body = if mask == 0 {
                        render_rational(&mag)
                    } else if mag.is_one() {
                        format!("sqrt{}", quad.products[mask])
                    } else {
                        format!("{}*sqrt{}", render_rational(&mag), quad.products[mask])
                    };
                    parts.push((neg, body));
                }
                join_signed(parts)
            }
            Repr::Transcendental { num, den } => {
                let names = &self.field.0.trans.as_ref().unwrap().names;
                if den.is_one() {
                    render_poly(num, names)
                } else {
                    format!("({})/({})", render_poly(num, names), render_poly(den, names))
                }
            }
        }
    }
}

fn definite_rat_sign(iv: &RatInterval) -> Option<i8> {
    if iv.lo.is_positive() {
        Some(1)
    } else if iv.hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}

/// [floor, floor+1] / 2^w around sqrt(d * 4^w).
fn sqrt_enclosure(d: &BigInt, w: u32) -> RatInterval {
    let scaled = d << (2 * w as usize);
    let s = scaled.sqrt();
    let denom = BigInt::one() << (w as usize);
    RatInterval {
        lo: BigRational::new(s.clone(), denom.clone()),
        hi: BigRational::new(s + 1u32, denom),
    }
}

fn canonical_ratfun(num: MPoly, den: MPoly) -> Repr {
    assert!(!den.is_zero(), "zero denominator in rational function");
    if num.is_zero() {
        let n = num.nvars;
        return Repr::Transcendental { num: MPoly::zero(n), den: MPoly::one(n) };
    }
    let g = mpoly::gcd(&num, &den);
    let num = num.div_exact(&g);
    let den = den.div_exact(&g);
    let lc = den.leading_coeff().recip();
    Repr::Transcendental { num: num.scale(&lc), den: den.scale(&lc) }
}

fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn render_poly(p: &MPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (e, c) in p.terms.iter().rev() {
        let neg = c.is_negative();
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || e.iter().all(|&k| k == 0) {
            factors.push(render_rational(&mag));
        }
        for (v, &k) in e.iter().enumerate() {
            for _ in 0..k {
                factors.push(names[v].clone());
            }
        }
        parts.push((neg, factors.join("*")));
    }
    join_signed(parts)
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

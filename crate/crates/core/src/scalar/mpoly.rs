//! Multivariate polynomials over Q, just enough machinery for rational
//! functions in a fixed set of transcendental symbols: ring arithmetic,
//! exact division, gcd by primitive pseudo-remainder sequences, and
//! interval evaluation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::RatInterval;

/// Terms keyed by exponent vector (graded by the `BTreeMap` order on the
/// vectors, which is lexicographic and therefore a valid monomial order
/// for leading-term division).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        MPoly { nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.nvars])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, BigRational>, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, e, ca * cb);
            }
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Leading term under the monomial order (largest exponent vector).
    fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Exact division; panics if `d` does not divide `self`.
    /// Leading-term peeling is valid because for an exact quotient the
    /// leading term of the dividend is the product of the leading terms.
    pub fn div_exact(&self, d: &MPoly) -> MPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.nvars);
        let (de, dc) = {
            let (e, c) = d.leading().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let qe: Vec<u32> = re
                .iter()
                .zip(&de)
                .map(|(a, b)| a.checked_sub(*b).expect("non-exact polynomial division"))
                .collect();
            let qc = rc / &dc;
            let mut t = BTreeMap::new();
            t.insert(qe, qc);
            let term = MPoly { nvars: self.nvars, terms: t };
            quo = quo.add(&term);
            rem = rem.sub(&term.mul(d));
        }
        quo
    }

    /// Coefficients of `self` as a univariate polynomial in `var`,
    /// index = degree in `var`, each coefficient a polynomial with
    /// `var`-exponent zero.
    fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            Self::insert_term(&mut out[k].terms, e2, c.clone());
        }
        out
    }

    fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut terms = BTreeMap::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[var] = k as u32;
                Self::insert_term(&mut terms, e2, c.clone());
            }
        }
        MPoly { nvars, terms }
    }

    /// Content of `self` viewed in (Q[others])[var]: gcd of the
    /// `var`-coefficients.
    fn content_in(&self, var: usize) -> MPoly {
        let mut g = MPoly::zero(self.nvars);
        for c in self.coeffs_in(var) {
            if !c.is_zero() {
                g = gcd(&g, &c);
            }
        }
        g
    }

    /// Normalize so the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn eval_interval(&self, args: &[RatInterval]) -> RatInterval {
        debug_assert_eq!(args.len(), self.nvars);
        // Precompute interval powers per variable.
        let mut pows: Vec<Vec<RatInterval>> = Vec::with_capacity(self.nvars);
        for (v, arg) in args.iter().enumerate() {
            let maxd = self.degree_in(v) as usize;
            let mut p = Vec::with_capacity(maxd + 1);
            p.push(RatInterval::point(BigRational::one()));
            for k in 1..=maxd {
                let prev = p[k - 1].clone();
                p.push(prev.mul(arg));
            }
            pows.push(p);
        }
        let mut acc = RatInterval::point(BigRational::zero());
        for (e, c) in &self.terms {
            let mut t = RatInterval::point(c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&pows[v][k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval_f64(&self, args: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (v, &k) in e.iter().enumerate() {
                t *= args[v].powi(k as i32);
            }
            acc += t;
        }
        acc
    }
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Gcd over Q[x1..xn], monic-normalized. Recursive primitive PRS: treat
/// the last relevant variable as the main one, coefficients in the
/// remaining variables.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    // Pick the highest variable occurring in either.
    let var = (0..a.nvars).rev().find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0);
    let var = match var {
        None => return MPoly::one(a.nvars), // both nonzero constants
        Some(v) => v,
    };
    let ca = a.content_in(var);
    let cb = b.content_in(var);
    let cg = gcd(&ca, &cb);
    let pa = a.div_exact(&ca);
    let pb = b.div_exact(&cb);
    let mut f = pa;
    let mut g = pb;
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        let rc = r.content_in(var);
        f = g;
        g = r.div_exact(&rc);
        if g.degree_in(var) == 0 {
            // Coprime in the main variable.
            return cg.monic();
        }
    }
    cg.mul(&g).monic()
}

/// Pseudo-remainder of f by g in the variable `var`:
/// lc(g)^(deg f - deg g + 1) * f = q*g + r with deg_var r < deg_var g.
fn pseudo_rem(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let dg = g.degree_in(var);
    let gc = g.coeffs_in(var);
    let lcg = gc[dg as usize].clone();
    let mut fc = f.coeffs_in(var);
    while fc.len() as u32 > dg && fc.len() > 1 {
        let df = (fc.len() - 1) as u32;
        let lead = fc[df as usize].clone();
        if lead.is_zero() {
            fc.pop();
            continue;
        }
        // f := lc(g)*f - lead * x^(df-dg) * g
        for c in fc.iter_mut() {
            *c = c.mul(&lcg);
        }
        let shift = (df - dg) as usize;
        for (k, gk) in gc.iter().enumerate() {
            let idx = k + shift;
            let sub = lead.mul(gk);
            fc[idx] = fc[idx].sub(&sub);
        }
        debug_assert!(fc[df as usize].is_zero());
        fc.pop();
        while fc.len() > 1 && fc.last().map(|c| c.is_zero()).unwrap_or(false) {
            fc.pop();
        }
    }
    MPoly::from_coeffs_in(f.nvars, var, &fc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn gcd_univariate() {
        // (x^2 - 1) and (x - 1) -> x - 1
        let x = MPoly::var(1, 0);
        let a = x.mul(&x).sub(&MPoly::one(1));
        let b = x.sub(&MPoly::one(1));
        let g = gcd(&a, &b);
        assert_eq!(g, b.monic());
    }

    #[test]
    fn gcd_bivariate() {
        // (x*y + x) and (y^2 - 1) share (y + 1)
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let a = x.mul(&y).add(&x);
        let b = y.mul(&y).sub(&MPoly::one(2));
        let g = gcd(&a, &b);
        let expect = y.add(&MPoly::one(2));
        assert_eq!(g, expect);
    }

    #[test]
    fn exact_division_roundtrip() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let a = x.add(&y).mul(&x.sub(&y)).scale(&c(3));
        let d = x.add(&y);
        assert_eq!(a.div_exact(&d), x.sub(&y).scale(&c(3)));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let x = MPoly::var(1, 0);
        let a = x.mul(&x).add(&MPoly::one(1));
        let b = x.clone();
        assert!(gcd(&a, &b).is_one());
    }
}

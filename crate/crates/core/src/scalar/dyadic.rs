//! Arbitrary-precision dyadic rationals and outward-rounded interval
//! arithmetic. These back the `enclosure` and `sign` operations; all
//! rounding is directed so that intervals never shrink below the truth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `mant * 2^exp`, not necessarily normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }
    }

    /// Largest dyadic with denominator 2^p that is <= q.
    pub fn from_rational_floor(q: &BigRational, p: u32) -> Self {
        let scaled = q.numer() << p;
        Dyadic { mant: scaled.div_floor(q.denom()), exp: -(p as i64) }
    }

    /// Smallest dyadic with denominator 2^p that is >= q.
    pub fn from_rational_ceil(q: &BigRational, p: u32) -> Self {
        let scaled = q.numer() << p;
        Dyadic { mant: scaled.div_ceil(q.denom()), exp: -(p as i64) }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Shift the mantissa so at most ~64 significant bits remain, then
        // scale back; avoids overflow for very long mantissas.
        let bits = self.mant.bits() as i64;
        let drop = (bits - 64).max(0);
        let m = (&self.mant >> (drop as usize)).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.exp + drop).min(i32::MAX as i64) as i32)
    }

    fn cmp_val(&self, other: &Dyadic) -> std::cmp::Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        a.cmp(&b)
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints, `lo <= hi`.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    /// Encloses a rational exactly when it is dyadic, within 2^-p otherwise.
    pub fn from_rational(q: &BigRational, p: u32) -> Self {
        let lo = Dyadic::from_rational_floor(q, p);
        let hi = Dyadic::from_rational_ceil(q, p);
        Interval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// +1 if the whole interval is positive, -1 if negative, None otherwise.
    pub fn definite_sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.mant.is_zero() && self.hi.mant.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: dy_add(&self.lo, &other.lo), hi: dy_add(&self.hi, &other.hi) }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: Dyadic { mant: -&self.hi.mant, exp: self.hi.exp },
            hi: Dyadic { mant: -&self.lo.mant, exp: self.lo.exp },
        }
    }

    /// Scale by an exact rational, rounding endpoints outward at 2^-p.
    pub fn scale_rational(&self, q: &BigRational, p: u32) -> Interval {
        let (a, b) = (self.lo.to_rational() * q, self.hi.to_rational() * q);
        let (lo, hi) = if q.is_negative() { (b, a) } else { (a, b) };
        Interval {
            lo: Dyadic::from_rational_floor(&lo, p),
            hi: Dyadic::from_rational_ceil(&hi, p),
        }
    }
}

fn dy_add(a: &Dyadic, b: &Dyadic) -> Dyadic {
    let e = a.exp.min(b.exp);
    let ma = &a.mant << ((a.exp - e) as usize);
    let mb = &b.mant << ((b.exp - e) as usize);
    Dyadic { mant: ma + mb, exp: e }
}

/// Exact interval arithmetic over rational endpoints, used for the
/// transcendental plugin where symbol enclosures are rational intervals.
#[derive(Debug, Clone)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(q: BigRational) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, q: &BigRational) -> RatInterval {
        let (a, b) = (&self.lo * q, &self.hi * q);
        if q.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// 1/self; caller must ensure the interval excludes zero.
    pub fn recip(&self) -> RatInterval {
        RatInterval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn to_dyadic(&self, p: u32) -> Interval {
        Interval {
            lo: Dyadic::from_rational_floor(&self.lo, p),
            hi: Dyadic::from_rational_ceil(&self.hi, p),
        }
    }
}

impl std::cmp::PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp_val(other))
    }
}

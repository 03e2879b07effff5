//! Checked 128-bit integer helpers and an exact rational type.
//!
//! Every operation that can overflow returns [`Error::Overflow`] instead of
//! wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::error::{Error, Result};

#[inline]
pub fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
pub fn neg(a: i128) -> Result<i128> {
    a.checked_neg().ok_or(Error::Overflow)
}

/// Inner product of two equally long slices.
pub fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .try_fold(0i128, |acc, (&x, &y)| add(acc, mul(x, y)?))
}

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    // Only i128::MIN has no positive counterpart; callers never pass it.
    a as i128
}

pub fn lcm(a: i128, b: i128) -> Result<i128> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    mul((a / gcd(a, b)).abs(), b.abs())
}

/// Euclidean remainder: the unique `r` in `[0, b)` with `a ≡ r (mod b)`.
pub fn mod_reduce(a: i128, b: i128) -> Result<i128> {
    if b <= 0 {
        return Err(Error::NonPositiveModulus);
    }
    Ok(a.rem_euclid(b))
}

pub fn floor_div(a: i128, b: i128) -> Result<i128> {
    if b == 0 {
        return Err(Error::ZeroDenominator);
    }
    a.checked_div_euclid(b)
        .map(|q| if b < 0 && a.rem_euclid(b) != 0 { q - 1 } else { q })
        .ok_or(Error::Overflow)
}

pub fn ceil_div(a: i128, b: i128) -> Result<i128> {
    neg(floor_div(neg(a)?, b)?)
}

/// An exact fraction with positive denominator in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = neg(num)?;
            den = neg(den)?;
        }
        Ok(Rational { num, den })
    }

    pub const fn integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn signum(&self) -> i128 {
        self.num.signum()
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let g = gcd(self.den, rhs.den);
        let l = mul(self.den / g, rhs.den)?;
        let n = add(mul(self.num, l / self.den)?, mul(rhs.num, l / rhs.den)?)?;
        Rational::new(n, l)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Rational {
            num: neg(self.num)?,
            den: self.den,
        })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        // Cross-cancel first to keep intermediates small.
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        Rational::new(
            mul(self.num / g1, rhs.num / g2)?,
            mul(self.den / g2, rhs.den / g1)?,
        )
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(Error::ZeroDenominator);
        }
        self.checked_mul(Rational::new(rhs.den, rhs.num)?)
    }

    pub fn mul_int(self, k: i128) -> Result<Self> {
        self.checked_mul(Rational::integer(k))
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(&self) -> i128 {
        let q = self.num.div_euclid(self.den);
        if self.num.rem_euclid(self.den) == 0 {
            q
        } else {
            q + 1
        }
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare by continued-fraction expansion; never overflows.
        let (mut a, mut b, mut c, mut d) = (self.num, self.den, other.num, other.den);
        let mut flipped = false;
        loop {
            let (qa, ra) = (a.div_euclid(b), a.rem_euclid(b));
            let (qc, rc) = (c.div_euclid(d), c.rem_euclid(d));
            let ord = match qa.cmp(&qc) {
                Ordering::Equal => match (ra == 0, rc == 0) {
                    (true, true) => Ordering::Equal,
                    (true, false) => Ordering::Less,
                    (false, true) => Ordering::Greater,
                    (false, false) => {
                        // a/b = q + ra/b, compare ra/b with rc/d via reciprocals.
                        (a, b, c, d) = (b, ra, d, rc);
                        flipped = !flipped;
                        continue;
                    }
                },
                o => o,
            };
            return if flipped { ord.reverse() } else { ord };
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: i128 = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => s.parse::<i128>().map(Rational::integer).map_err(|_| bad()),
        }
    }
}

/// A point of the rational plane, used for polygon vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn integer(x: i128, y: i128) -> Self {
        RationalPoint::new(Rational::integer(x), Rational::integer(y))
    }

    pub fn origin() -> Self {
        RationalPoint::integer(0, 0)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(RationalPoint::new(
            self.x.checked_add(rhs.x)?,
            self.y.checked_add(rhs.y)?,
        ))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(RationalPoint::new(
            self.x.checked_sub(rhs.x)?,
            self.y.checked_sub(rhs.y)?,
        ))
    }

    /// z-component of `self × rhs`.
    pub fn cross(self, rhs: Self) -> Result<Rational> {
        self.x.checked_mul(rhs.y)?.checked_sub(self.y.checked_mul(rhs.x)?)
    }
}

/// Integers serialize as numbers, other values as `"p/q"` strings.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i128(self.num)
        } else {
            s.collect_str(self)
        }
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

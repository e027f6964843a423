//! Rationals extended by a single point at infinity.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, Signed, Zero};

use crate::{Error, Result};

/// A rational number or `∞`. `∞` absorbs addition and dominates every
/// finite value; `∞ == ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(BigRational),
    Infinite,
}

impl ExtRational {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinite => None,
        }
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl From<Option<&BigRational>> for ExtRational {
    fn from(q: Option<&BigRational>) -> Self {
        q.map_or(ExtRational::Infinite, |q| ExtRational::Finite(q.clone()))
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinite,
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{q}"),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(ExtRational::Infinite),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

/// Parses `"p/q"` or an integer. A zero denominator is an error.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a BigRational>>(qs: I) -> BigInt {
    use num::Integer;
    qs.into_iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()))
}

/// Renders an exact rational with `digits` significant decimal digits,
/// rounding half to even, in positional notation.
pub fn to_significant_digits(q: &BigRational, digits: usize) -> String {
    use num::Integer;
    assert!(digits > 0);
    if q.is_zero() {
        return format!("0.{}", "0".repeat(digits - 1));
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::from(1), num::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }
    // scaled = a * 10^(digits-1-e), rounded half-even to an integer
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow(shift);
    let (fl, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    let mut m = match twice.cmp(scaled.denom()) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_odd() {
                fl + 1
            } else {
                fl
            }
        }
    };
    let mut shift = shift;
    if m.to_string().len() > digits {
        // rounding carried into a new digit, e.g. 9.99.. -> 10.0..
        m /= 10;
        shift -= 1;
    }
    let ds = m.to_string();
    let body = if shift <= 0 {
        format!("{}{}", ds, "0".repeat((-shift) as usize))
    } else if (shift as usize) < ds.len() {
        let (i, f) = ds.split_at(ds.len() - shift as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{}", "0".repeat(shift as usize - ds.len()), ds)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

//! Exact coordinates.
//!
//! Filtration values are parsed from decimal text into exact rationals so that
//! grade equality never depends on rounding. The common case (integers and short
//! decimals) is stored inline as a ratio of machine integers; anything larger falls
//! back to arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GradeError;

/// An exact rational number in canonical (reduced) form.
#[derive(Clone)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Rational::Small(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    /// Approximate value, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn max_of<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => {
                if a.denom() == b.denom() {
                    a.numer().cmp(b.numer())
                } else {
                    a.cmp(b)
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Canonical form: a value representable as Small is never stored as Big.
        match self {
            Rational::Small(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Canonical decimal: no exponent, no trailing zeros, no `.` for integers.
/// Values without a terminating decimal expansion are written as `p/q`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Rational::Small(r) = self {
            if *r.denom() == 1 {
                return write!(f, "{}", r.numer());
            }
        }
        let big = self.to_big();
        let (numer, denom) = (big.numer().clone(), big.denom().clone());
        if denom.is_one() {
            return write!(f, "{}", numer);
        }
        let two = BigInt::from(2u8);
        let five = BigInt::from(5u8);
        let (mut rest, mut twos, mut fives) = (denom.clone(), 0u32, 0u32);
        while rest.is_even() {
            rest /= &two;
            twos += 1;
        }
        while (&rest % &five).is_zero() {
            rest /= &five;
            fives += 1;
        }
        if !rest.is_one() {
            return write!(f, "{}/{}", numer, denom);
        }
        let places = twos.max(fives);
        let scale = num_traits::pow(BigInt::from(10u8), places as usize);
        let scaled = numer.clone() * scale / denom;
        let digits = scaled.abs().to_string();
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places - digits.len() + 1), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        let sign = if numer.is_negative() { "-" } else { "" };
        write!(f, "{}{}.{}", sign, int_part, frac_part)
    }
}

impl FromStr for Rational {
    type Err = GradeError;

    /// Accepts `[-+]digits[.digits][e[-+]digits]` and `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || GradeError::InvalidNumber(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.parse().map_err(|_| invalid())?;
            let q: BigInt = q.parse().map_err(|_| invalid())?;
            if q.is_zero() || !q.is_positive() {
                return Err(invalid());
            }
            return Ok(Rational::from_big(BigRational::new(p, q)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..].parse().map_err(|_| invalid())?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (negative, body) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(invalid());
        }
        let digits = format!("{}{}", int_part, frac_part);
        let mut numer: BigInt = digits.parse().map_err(|_| invalid())?;
        if negative {
            numer = -numer;
        }
        let shift = exponent - frac_part.len() as i64;
        if shift.unsigned_abs() > 10_000 {
            return Err(invalid());
        }
        let power = num_traits::pow(BigInt::from(10u8), shift.unsigned_abs() as usize);
        let value = if shift >= 0 {
            BigRational::from_integer(numer * power)
        } else {
            BigRational::new(numer, power)
        };
        Ok(Rational::from_big(value))
    }
}

/// Dense rank of each value, and the distinct values in increasing order.
pub(crate) fn rank_values(values: Vec<&Rational>) -> (Vec<u32>, Vec<Rational>) {
    let mut ranks = vec![0u32; values.len()];
    let mut distinct: Vec<Rational> = Vec::new();
    let ints: Option<Vec<(i64, u32)>> = values
        .iter()
        .zip(0..)
        .map(|(v, i)| Some((v.as_i64()?, i)))
        .collect();
    match ints {
        Some(mut keyed) => {
            keyed.sort_unstable();
            for (k, (v, i)) in keyed.iter().enumerate() {
                if k == 0 || keyed[k - 1].0 != *v {
                    distinct.push(Rational::from_integer(*v));
                }
                ranks[*i as usize] = distinct.len() as u32 - 1;
            }
        }
        None => {
            let mut keyed: Vec<(&Rational, u32)> = values.iter().copied().zip(0..).collect();
            keyed.sort_unstable();
            for (k, (v, i)) in keyed.iter().enumerate() {
                if k == 0 || keyed[k - 1].0 != *v {
                    distinct.push((*v).clone());
                }
                ranks[*i as usize] = distinct.len() as u32 - 1;
            }
        }
    }
    (ranks, distinct)
}

/// A value extended with the two sentinels used for dendrogram times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T> Extended<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Extended<U> {
        match self {
            Extended::NegInf => Extended::NegInf,
            Extended::Finite(t) => Extended::Finite(f(t)),
            Extended::PosInf => Extended::PosInf,
        }
    }

    pub fn as_ref(&self) -> Extended<&T> {
        match self {
            Extended::NegInf => Extended::NegInf,
            Extended::Finite(t) => Extended::Finite(t),
            Extended::PosInf => Extended::PosInf,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(t) => write!(f, "{}", t),
            Extended::PosInf => write!(f, "inf"),
        }
    }
}

/// Dendrogram time on exact coordinates.
pub type Scalar = Extended<Rational>;

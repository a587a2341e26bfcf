//! Exact rational scalars.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseRationalError;

/// Arbitrary precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

/// How to turn an exact value into a fixed number of decimals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    HalfEven,
    /// Toward positive infinity.
    Up,
    /// Toward negative infinity.
    Down,
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigs(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Rational {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> Ordering {
        self.0.numer().sign().cmp(&Sign::NoSign)
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    pub fn min(self, other: Rational) -> Rational {
        if other < self { other } else { self }
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self { other } else { self }
    }

    /// Approximation for logging and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Remainder in `[0, m)` for a positive modulus.
    pub fn rem_euclid(&self, m: &Rational) -> Rational {
        let q = (self / m).floor();
        self - &(m * &Rational::from_int(q))
    }

    /// Always `p/q`, even for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    pub fn to_decimal(&self, places: u32, mode: Rounding) -> String {
        let scale = num_traits::pow(BigInt::from(10), places as usize);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let (num, den) = (scaled.numer(), scaled.denom());
        let fl = num.div_floor(den);
        let rem = num - &fl * den;
        let rounded = if rem.is_zero() {
            fl
        } else {
            match mode {
                Rounding::Down => fl,
                Rounding::Up => fl + 1,
                Rounding::HalfEven => {
                    let twice: BigInt = rem * 2;
                    match twice.cmp(den) {
                        Ordering::Less => fl,
                        Ordering::Greater => fl + 1,
                        Ordering::Equal => {
                            if fl.is_even() {
                                fl
                            } else {
                                fl + 1
                            }
                        }
                    }
                }
            }
        };
        let neg = rounded.is_negative();
        let digits = rounded.abs().to_string();
        let body = if places == 0 {
            digits
        } else {
            let p = places as usize;
            let padded = format!("{:0>width$}", digits, width = p + 1);
            let (int_part, frac) = padded.split_at(padded.len() - p);
            format!("{int_part}.{frac}")
        };
        if neg { format!("-{body}") } else { body }
    }

    /// Decimal expansion when it terminates within `max_places`, else `None`.
    pub fn terminating_decimal(&self, max_places: u32) -> Option<String> {
        for places in 0..=max_places {
            let s = num_traits::pow(BigInt::from(10), places as usize);
            if (self.numer() * &s) % self.denom() == BigInt::zero() {
                return Some(self.to_decimal(places, Rounding::Down));
            }
        }
        None
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_int(v as u64)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_int(v)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p/q`, integers, and finite decimals such as `0.95`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ParseRationalError(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Rational::from_bigs(p, q));
        }
        if let Some((ip, fp)) = t.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = ip.starts_with('-');
            let ip_digits = ip.trim_start_matches(['-', '+']);
            if !ip_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let whole: BigInt = format!("{}{}", if ip_digits.is_empty() { "0" } else { ip_digits }, fp)
                .parse()
                .map_err(|_| bad())?;
            let den = num_traits::pow(BigInt::from(10), fp.len());
            let r = Rational::from_bigs(whole, den);
            return Ok(if neg { -r } else { r });
        }
        let p: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rational::from_int(p))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(v) => Ok(Rational::from_int(v)),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                Rational(self.0.$m(&o.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational((&self.0).$m(o.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: &'b Rational) -> Rational {
                Rational((&self.0).$m(&o.0))
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, o: Rational) {
                self.0.$am(o.0);
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $am(&mut self, o: &'a Rational) {
                self.0.$am(&o.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

/// Shorthand for `Rational::new`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_fraction_string(), "-3/2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("65/14".parse::<Rational>().unwrap(), q(65, 14));
        assert_eq!("0.95".parse::<Rational>().unwrap(), q(19, 20));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn decimals() {
        let x = q(6272, 114075);
        assert_eq!(x.to_decimal(3, Rounding::Down), "0.054");
        assert_eq!(x.to_decimal(3, Rounding::HalfEven), "0.055");
        assert_eq!(q(1, 8).to_decimal(2, Rounding::HalfEven), "0.12");
        assert_eq!(q(3, 8).to_decimal(2, Rounding::HalfEven), "0.38");
        assert_eq!(q(-1, 3).to_decimal(2, Rounding::Up), "-0.33");
        assert_eq!(q(-1, 3).to_decimal(2, Rounding::Down), "-0.34");
        assert_eq!(q(5, 1).to_decimal(0, Rounding::Up), "5");
        assert_eq!(q(12, 5).terminating_decimal(3).unwrap(), "2.4");
        assert!(q(13, 6).terminating_decimal(6).is_none());
    }

    #[test]
    fn floor_ceil_rem() {
        assert_eq!(q(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(q(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(q(7, 1).ceil(), BigInt::from(7));
        assert_eq!(q(-1, 2).rem_euclid(&q(10, 1)), q(19, 2));
        assert_eq!(q(25, 1).rem_euclid(&q(10, 1)), q(5, 1));
    }

    #[test]
    fn serde_roundtrip() {
        let v = serde_json::to_string(&q(3, 1)).unwrap();
        assert_eq!(v, "\"3/1\"");
        let back: Rational = serde_json::from_str(&v).unwrap();
        assert_eq!(back, q(3, 1));
        let int: Rational = serde_json::from_str("4").unwrap();
        assert_eq!(int, q(4, 1));
    }
}

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::BoundsError;
use crate::rational::{Rounding, Rational};

/// Decimal places used for the certified enclosure.
pub const ENCLOSURE_PLACES: u32 = 7;

/// The real `degree`-th root of a positive rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootConstant {
    pub radicand: Rational,
    pub degree: u32,
}

/// `lo <= root <= hi`, checked in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn ten_pow(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

impl RootConstant {
    pub fn new(radicand: Rational, degree: u32) -> Result<RootConstant, BoundsError> {
        if !radicand.is_positive() || degree < 2 {
            return Err(BoundsError::NonPositiveCoefficient);
        }
        Ok(RootConstant { radicand, degree })
    }

    pub fn sqrt(radicand: Rational) -> Result<RootConstant, BoundsError> {
        RootConstant::new(radicand, 2)
    }

    pub fn cbrt(radicand: Rational) -> Result<RootConstant, BoundsError> {
        RootConstant::new(radicand, 3)
    }

    /// `radicand * 10^(places * degree)`, whose root is the constant scaled by `10^places`.
    fn scaled(&self, places: u32) -> Rational {
        &self.radicand * Rational::from(ten_pow(places * self.degree))
    }

    /// `floor(root * 10^places)` together with whether that floor is exact.
    fn floor_scaled(&self, places: u32) -> (BigInt, bool) {
        let s = self.scaled(places);
        let c = s.floor().nth_root(self.degree);
        let exact = Rational::from(c.pow(self.degree)) == s;
        (c, exact)
    }

    /// Compares `(c + 1/2)^degree` against the scaled radicand.
    fn half_cmp(&self, c: &BigInt, places: u32) -> Ordering {
        let two = BigInt::from(2);
        let lhs = Rational::from((c * &two + BigInt::one()).pow(self.degree));
        let rhs = self.scaled(places) * Rational::from(two.pow(self.degree));
        lhs.cmp(&rhs)
    }

    pub fn enclosure(&self, places: u32) -> Enclosure {
        let (c, exact) = self.floor_scaled(places);
        let unit = Rational::from_bigs(BigInt::one(), ten_pow(places));
        let lo = Rational::from(c.clone()) * &unit;
        let hi = if exact { lo.clone() } else { Rational::from(c + 1) * &unit };
        Enclosure { lo, hi }
    }

    /// Enclosure of width at most `10^-6`.
    pub fn certified(&self) -> Enclosure {
        self.enclosure(ENCLOSURE_PLACES)
    }

    /// Whether `lo^d <= radicand <= hi^d`.
    pub fn encloses(&self, e: &Enclosure) -> bool {
        !e.lo.is_negative() && e.lo.pow(self.degree) <= self.radicand && self.radicand <= e.hi.pow(self.degree)
    }

    /// Exact decimal rendering with `places` digits.
    pub fn to_decimal(&self, places: u32, mode: Rounding) -> String {
        let (c, exact) = self.floor_scaled(places);
        let digits = match mode {
            _ if exact => c,
            Rounding::Down => c,
            Rounding::Up => c + 1,
            Rounding::HalfEven => match self.half_cmp(&c, places) {
                Ordering::Less => c + 1,
                Ordering::Greater => c,
                Ordering::Equal if (&c % 2u32).is_positive() => c + 1,
                Ordering::Equal => c,
            },
        };
        Rational::from_bigs(digits, ten_pow(places)).to_decimal(places, Rounding::Down)
    }

    pub fn to_f64(&self) -> f64 {
        self.radicand.to_f64().powf(1.0 / self.degree as f64)
    }

    /// The same root times `x >= 0`, folded into the radicand.
    pub fn times(&self, x: &Rational) -> Result<RootConstant, BoundsError> {
        RootConstant::new(&self.radicand * x.pow(self.degree), self.degree)
    }
}

impl fmt::Display for RootConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.degree {
            2 => "√".to_string(),
            3 => "∛".to_string(),
            d => format!("{d}√"),
        };
        write!(f, "{sign}({})", self.radicand)
    }
}

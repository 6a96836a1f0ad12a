//! Exact arithmetic foundation: normalized rationals, dyadic rationals and
//! primitive integer tuples representing points of projective space.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Builds a fraction in lowest terms with a positive denominator.
pub fn normalize_ratio<T>(num: T, den: T) -> Result<Ratio<T>>
where
    T: Integer + Clone,
{
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Ratio::new(num, den))
}

/// [`normalize_ratio`] over arbitrary-precision integers.
pub fn normalize_rational(num: BigInt, den: BigInt) -> Result<Rational> {
    normalize_ratio(num, den)
}

/// Parses `p/q` or `p` (optional sign, `q != 0`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = parse_int(num)?;
    let den = parse_int(den)?;
    normalize_rational(num, den)
}

pub(crate) fn parse_int(text: &str) -> Result<BigInt> {
    let text = text.trim();
    let digits = text.strip_prefix('+').unwrap_or(text);
    BigInt::from_str(digits).map_err(|_| Error::Parse(format!("not an integer: {text:?}")))
}

/// Renders a rational as `p/q`, keeping the denominator even when it is 1.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Is the denominator of `r` a power of two?
pub fn is_dyadic<T>(r: &Ratio<T>) -> bool
where
    T: Integer + Clone,
{
    let mut d = r.denom().clone();
    let two = T::one() + T::one();
    while d.is_even() {
        d = d / two.clone();
    }
    d.is_one()
}

/// A dyadic rational `odd_numerator / 2^exponent` in lowest terms.
///
/// Zero is stored as `(0, 0)`; an integer has exponent 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    odd_numerator: BigInt,
    exponent: u64,
}

impl DyadicRational {
    pub fn odd_numerator(&self) -> &BigInt {
        &self.odd_numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.odd_numerator.clone(), BigInt::one() << self.exponent)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.odd_numerator, self.exponent)
    }
}

pub fn to_dyadic(r: &Rational) -> Result<DyadicRational> {
    let den = r.denom();
    let exponent = den.trailing_zeros().unwrap_or(0);
    if (den >> exponent) != BigInt::one() {
        return Err(Error::NotDyadic);
    }
    Ok(DyadicRational {
        odd_numerator: r.numer().clone(),
        exponent,
    })
}

/// A point of `P^n(Q)` as a primitive integer tuple whose first nonzero
/// coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Dimension `n` of the ambient projective space.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn projective_normalize(coords: Vec<BigInt>) -> Result<ProjectivePoint> {
    let g = coords
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Err(Error::NotProjectivePoint);
    }
    let lead_negative = coords
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    let g = if lead_negative { -g } else { g };
    Ok(ProjectivePoint {
        coords: coords.into_iter().map(|c| c / &g).collect(),
    })
}

/// Parses a comma-separated integer list such as `4,6,10`.
pub fn parse_projective(text: &str) -> Result<ProjectivePoint> {
    let coords = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(parse_int)
        .collect::<Result<Vec<_>>>()?;
    projective_normalize(coords)
}

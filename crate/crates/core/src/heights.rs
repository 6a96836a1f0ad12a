//! Heights of rational projective points and the `?`-based height of a
//! lattice `Z + Zθ1 + … + Zθn`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{Coordinate, JpVector};
use crate::error::{Error, Result};
use crate::minkowski::{qmark_nd, qmark_quadratic, qmark_rational, QMarkValue, SourceKind};
use crate::numbers::ProjectivePoint;
use crate::Rational;

/// Jacobi–Perron step budget used when none is given.
pub const DEFAULT_JP_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeightFormula {
    MaxCoords,
    ClearedDenominators,
    DyadicProduct,
    DenominatorProduct,
}

impl HeightFormula {
    pub fn as_str(self) -> &'static str {
        match self {
            HeightFormula::MaxCoords => "max_coords",
            HeightFormula::ClearedDenominators => "cleared_denominators",
            HeightFormula::DyadicProduct => "dyadic_product",
            HeightFormula::DenominatorProduct => "denominator_product",
        }
    }
}

impl fmt::Display for HeightFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightValue {
    pub value: BigInt,
    pub formula_used: HeightFormula,
}

/// `max |x_i|` of a primitive integer representative.
pub fn height_projective(x: &ProjectivePoint) -> HeightValue {
    let value = x.coords().iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::one);
    HeightValue {
        value,
        formula_used: HeightFormula::MaxCoords,
    }
}

/// The integer tuple `(q1⋯qn, p1·Q1, …, pn·Qn)` with `Qi = Π_{j≠i} qj`,
/// obtained by multiplying `(1, p1/q1, …, pn/qn)` by `q1⋯qn`.
pub fn clear_denominators(entries: &[Rational]) -> Vec<BigInt> {
    let product: BigInt = entries.iter().map(|r| r.denom().clone()).product();
    std::iter::once(product.clone())
        .chain(entries.iter().map(|r| r.numer() * (&product / r.denom())))
        .collect()
}

/// Height of `(1, p1/q1, …, pn/qn)` as the max of the cleared tuple.
///
/// No common factor is removed from the cleared tuple, so the value is a
/// multiple of the projective height of the same point. This keeps the
/// height of a dyadic tuple equal to the product of its denominators.
pub fn height_rational_tuple(entries: &[Rational]) -> HeightValue {
    let value = clear_denominators(entries)
        .into_iter()
        .map(|c| c.abs())
        .max()
        .expect("cleared tuple is never empty");
    HeightValue {
        value,
        formula_used: HeightFormula::ClearedDenominators,
    }
}

/// Input data for the `?`-height: the lattice generators and the rank of
/// its ordered group, which only the classifier consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct K0ModuleData {
    n: usize,
    rank: u64,
    thetas: Vec<Coordinate>,
}

impl K0ModuleData {
    /// Reduces every generator modulo 1.
    pub fn new(n: usize, rank: u64, thetas: Vec<Coordinate>) -> Result<Self> {
        if n == 0 || rank == 0 {
            return Err(Error::Invalid("n and rank must be positive".into()));
        }
        if thetas.len() != n {
            return Err(Error::Invalid(format!("expected {n} generators, got {}", thetas.len())));
        }
        let thetas = thetas.iter().map(Coordinate::fract).collect::<Result<Vec<_>>>()?;
        Ok(K0ModuleData { n, rank, thetas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn thetas(&self) -> &[Coordinate] {
        &self.thetas
    }
}

/// A `?`-height together with the image it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptHeight {
    pub image: Vec<QMarkValue>,
    pub height: HeightValue,
}

pub fn script_height(data: &K0ModuleData) -> Result<HeightValue> {
    script_height_with(data, DEFAULT_JP_STEPS).map(|h| h.height)
}

/// `H(1, ?ⁿ(θ1, …, θn))`. One-dimensional inputs go through the regular
/// continued fraction; higher dimensions through Jacobi–Perron.
pub fn script_height_with(data: &K0ModuleData, max_steps: usize) -> Result<ScriptHeight> {
    let image = match data.thetas.as_slice() {
        [Coordinate::Rational(r)] => vec![qmark_rational(r)?],
        [Coordinate::Quadratic(s)] => vec![qmark_quadratic(s)?],
        thetas => qmark_nd(&JpVector::from_coordinates(thetas)?, max_steps)?,
    };
    if image.iter().any(|v| v.source_kind == SourceKind::Truncated) {
        return Err(Error::HeightUndefined);
    }
    let entries: Vec<Rational> = image.iter().map(|v| v.value.clone()).collect();
    let mut height = height_rational_tuple(&entries);
    let product: BigInt = entries.iter().map(|r| r.denom().clone()).product();
    debug_assert_eq!(height.value, product);
    height.formula_used = if image.iter().all(|v| v.is_dyadic) {
        HeightFormula::DyadicProduct
    } else {
        HeightFormula::DenominatorProduct
    };
    Ok(ScriptHeight { image, height })
}

/// `true` when `value` is a power of two.
pub fn is_power_of_two(value: &BigInt) -> bool {
    value.is_positive() && (value & (value - BigInt::one())).is_zero()
}

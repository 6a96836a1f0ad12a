use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::contfrac::surd::QuadraticSurd;
use crate::error::{Error, Result};
use crate::numbers::parse_int;

/// An integer 2×2 matrix `(a, b; c, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Matrix2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Matrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Swaps the columns: `(a, b; c, d) -> (b, a; d, c)`.
    ///
    /// Acting by the swapped matrix turns `(b·θ + a)/(d·θ + c)` into the
    /// basis-change form `(a + b·θ)/(c + d·θ)`.
    pub fn column_swap(&self) -> Matrix2 {
        Matrix2::new(self.b.clone(), self.a.clone(), self.d.clone(), self.c.clone())
    }

    /// All unimodular matrices with entries in `[-bound, bound]`, in
    /// lexicographic order of `(a, b, c, d)`.
    pub fn unimodular_box(bound: i64) -> Vec<Matrix2> {
        let range = || -bound..=bound;
        let mut out = Vec::new();
        for a in range() {
            for b in range() {
                for c in range() {
                    for d in range() {
                        if (a * d - b * c).abs() == 1 {
                            out.push(Matrix2::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Matrix2 {
    type Err = Error;

    /// Parses `a,b;c,d`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a,b;c,d, got {text:?}"));
        let (top, bottom) = text.split_once(';').ok_or_else(bad)?;
        let (a, b) = top.split_once(',').ok_or_else(bad)?;
        let (c, d) = bottom.split_once(',').ok_or_else(bad)?;
        Ok(Matrix2 {
            a: parse_int(a)?,
            b: parse_int(b)?,
            c: parse_int(c)?,
            d: parse_int(d)?,
        })
    }
}

/// The linear-fractional image `(a·θ + b)/(c·θ + d)` under a unimodular `g`.
///
/// This is a left action: `moebius_apply(g·h, θ) = moebius_apply(g, moebius_apply(h, θ))`.
pub fn moebius_apply(g: &Matrix2, theta: &QuadraticSurd) -> Result<QuadraticSurd> {
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    theta.mobius(&g.a, &g.b, &g.c, &g.d)
}

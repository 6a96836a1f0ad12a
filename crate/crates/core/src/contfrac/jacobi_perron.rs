//! The Jacobi–Perron algorithm over exact scalars.
//!
//! One step maps `x = (x1, …, xn)` with `x1 != 0` to
//! `y_i = x_{i+1}/x1 − a_i` (`i < n`) and `y_n = 1/x1 − a_n`, where the digits
//! are `a_i = ⌊x_{i+1}/x1⌋` and `a_n = ⌊1/x1⌋`. For `n = 1` this is the Gauss
//! map, so the digits are the regular continued fraction digits.
//!
//! When `x1 = 0` but the vector is nonzero, coordinates are rotated left until
//! the first one is nonzero; each such event is kept as a [`ShiftMarker`].

use std::collections::HashMap;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::contfrac::field::{NumberField, NumberFieldElement};
use crate::contfrac::surd::QuadraticSurd;
use crate::error::{Error, Result};
use crate::numbers::parse_rational;
use crate::Rational;

/// Exact scalars the Jacobi–Perron step can run on.
pub trait JpScalar: Clone + Eq + Hash {
    fn is_zero(&self) -> bool;
    fn floor(&self) -> Result<BigInt>;
    fn recip(&self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn sub_integer(&self, m: &BigInt) -> Self;
}

impl JpScalar for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn floor(&self) -> Result<BigInt> {
        Ok(num_rational::Ratio::floor(self).to_integer())
    }

    fn recip(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::ZeroDenominator);
        }
        Ok(num_rational::Ratio::recip(self))
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }

    fn sub_integer(&self, m: &BigInt) -> Self {
        self - Rational::from_integer(m.clone())
    }
}

impl JpScalar for NumberFieldElement {
    fn is_zero(&self) -> bool {
        NumberFieldElement::is_zero(self)
    }

    fn floor(&self) -> Result<BigInt> {
        NumberFieldElement::floor(self)
    }

    fn recip(&self) -> Result<Self> {
        self.inverse()
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        NumberFieldElement::mul(self, other)
    }

    fn sub_integer(&self, m: &BigInt) -> Self {
        NumberFieldElement::sub_integer(self, m)
    }
}

/// The step at which coordinates were rotated, and by how many places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftMarker {
    pub step: usize,
    pub rotations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JpExpansion {
    n: usize,
    digit_vectors: Vec<Vec<BigInt>>,
    shift_markers: Vec<ShiftMarker>,
    period_start: Option<usize>,
    terminated: bool,
}

impl JpExpansion {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn digit_vectors(&self) -> &[Vec<BigInt>] {
        &self.digit_vectors
    }

    pub fn shift_markers(&self) -> &[ShiftMarker] {
        &self.shift_markers
    }

    /// Index of the first digit vector of the repeating block.
    pub fn period_start(&self) -> Option<usize> {
        self.period_start
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn is_periodic(&self) -> bool {
        self.period_start.is_some()
    }

    /// Neither terminated nor periodic within the step budget.
    pub fn is_truncated(&self) -> bool {
        !self.terminated && self.period_start.is_none()
    }

    /// Digit stream of coordinate `i` (0-based): `a_i + 1` for `i < n − 1`
    /// and `a_n` for the last coordinate, so every entry is at least 1.
    pub fn stream(&self, i: usize) -> Vec<BigInt> {
        let last = self.n - 1;
        self.digit_vectors
            .iter()
            .map(|a| if i == last { a[i].clone() } else { &a[i] + 1 })
            .collect()
    }
}

pub fn jp_expand<S: JpScalar>(x: &[S], max_steps: usize) -> Result<JpExpansion> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Invalid("empty vector".into()));
    }
    for c in x {
        if !c.floor()?.is_zero() {
            return Err(Error::OutOfRange("coordinates must lie in [0, 1)".into()));
        }
    }
    let mut state = x.to_vec();
    let mut seen: HashMap<Vec<S>, usize> = HashMap::new();
    let mut out = JpExpansion {
        n,
        digit_vectors: Vec::new(),
        shift_markers: Vec::new(),
        period_start: None,
        terminated: false,
    };
    loop {
        if state.iter().all(JpScalar::is_zero) {
            out.terminated = true;
            return Ok(out);
        }
        if let Some(&start) = seen.get(&state) {
            out.period_start = Some(start);
            return Ok(out);
        }
        let step = out.digit_vectors.len();
        if step == max_steps {
            return Ok(out);
        }
        seen.insert(state.clone(), step);
        let mut rotations = 0;
        while state[0].is_zero() {
            state.rotate_left(1);
            rotations += 1;
        }
        if rotations > 0 {
            out.shift_markers.push(ShiftMarker { step, rotations });
        }
        let inv = state[0].recip()?;
        let mut digits = Vec::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let ratio = state[i + 1].mul(&inv)?;
            let a = ratio.floor()?;
            next.push(ratio.sub_integer(&a));
            digits.push(a);
        }
        let a = inv.floor()?;
        next.push(inv.sub_integer(&a));
        digits.push(a);
        out.digit_vectors.push(digits);
        state = next;
    }
}

/// A single input coordinate as written by a user.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinate {
    Rational(Rational),
    Quadratic(QuadraticSurd),
    Field(NumberFieldElement),
}

impl Coordinate {
    /// Reduction modulo 1.
    pub fn fract(&self) -> Result<Coordinate> {
        Ok(match self {
            Coordinate::Rational(r) => Coordinate::Rational(r - r.floor()),
            Coordinate::Quadratic(s) => Coordinate::Quadratic(s.fract()),
            Coordinate::Field(e) => Coordinate::Field(e.sub_integer(&e.floor()?)),
        })
    }
}

impl std::fmt::Display for Coordinate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coordinate::Rational(r) => write!(f, "{}", crate::numbers::fmt_rational(r)),
            Coordinate::Quadratic(s) => write!(f, "{s}"),
            Coordinate::Field(e) => write!(f, "{e}"),
        }
    }
}

impl FromStr for Coordinate {
    type Err = Error;

    /// Field elements contain `poly:`, surds contain `sqrt(`; anything else
    /// is read as a rational.
    fn from_str(text: &str) -> Result<Self> {
        if text.contains("poly:") {
            text.parse().map(Coordinate::Field)
        } else if text.contains("sqrt(") {
            text.parse().map(Coordinate::Quadratic)
        } else {
            parse_rational(text).map(Coordinate::Rational)
        }
    }
}

/// A coordinate vector living in a single exact domain.
#[derive(Debug, Clone, PartialEq)]
pub enum JpVector {
    Rational(Vec<Rational>),
    Field(Vec<NumberFieldElement>),
}

impl JpVector {
    /// Moves all coordinates into one domain: `Q` if every coordinate is
    /// rational, otherwise the single number field they share.
    pub fn from_coordinates(coords: &[Coordinate]) -> Result<JpVector> {
        let mut field: Option<Arc<NumberField>> = None;
        let mut adopt = |candidate: &Arc<NumberField>| -> Result<()> {
            match &field {
                None => field = Some(candidate.clone()),
                Some(f) if f.same_root(candidate) => {}
                Some(_) => return Err(Error::IncompatibleFields),
            }
            Ok(())
        };
        let mut embedded = Vec::with_capacity(coords.len());
        for c in coords {
            match c {
                Coordinate::Rational(_) => embedded.push(None),
                Coordinate::Quadratic(s) => {
                    let e = NumberFieldElement::from_surd(s)?;
                    adopt(e.field())?;
                    embedded.push(Some(e));
                }
                Coordinate::Field(e) => {
                    adopt(e.field())?;
                    embedded.push(Some(e.clone()));
                }
            }
        }
        let Some(field) = field else {
            return Ok(JpVector::Rational(
                coords
                    .iter()
                    .map(|c| match c {
                        Coordinate::Rational(r) => r.clone(),
                        _ => unreachable!("no field was adopted"),
                    })
                    .collect(),
            ));
        };
        let elements = coords
            .iter()
            .zip(embedded)
            .map(|(c, e)| match (c, e) {
                (Coordinate::Rational(r), _) => Ok(NumberFieldElement::from_rational(field.clone(), r.clone())),
                (_, Some(e)) => e.rebind(&field),
                _ => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JpVector::Field(elements))
    }

    pub fn len(&self) -> usize {
        match self {
            JpVector::Rational(v) => v.len(),
            JpVector::Field(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn expand(&self, max_steps: usize) -> Result<JpExpansion> {
        match self {
            JpVector::Rational(v) => jp_expand(v, max_steps),
            JpVector::Field(v) => jp_expand(v, max_steps),
        }
    }
}

/// Shorthand used by tests and fixtures: `(frac(∛2), frac(∛4))` in `Q(∛2)`.
pub fn cube_root_two_pair() -> Vec<NumberFieldElement> {
    let q = |n: i64| Rational::from_integer(BigInt::from(n));
    let field = NumberField::new(
        vec![BigInt::from(-2), BigInt::zero(), BigInt::zero(), BigInt::one()],
        q(1),
        q(2),
    )
    .expect("x^3 - 2 is irreducible with one root in [1, 2]");
    vec![
        NumberFieldElement::new(field.clone(), vec![q(-1), q(1), q(0)]).unwrap(),
        NumberFieldElement::new(field, vec![q(-1), q(0), q(1)]).unwrap(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::cf::{cf_expand_quadratic, cf_expand_rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn digits(e: &JpExpansion) -> Vec<Vec<i64>> {
        e.digit_vectors()
            .iter()
            .map(|v| v.iter().map(|d| i64::try_from(d).unwrap()).collect())
            .collect()
    }

    #[test]
    fn one_dimensional_rational() {
        let e = jp_expand(&[q(2, 5)], 100).unwrap();
        assert_eq!(digits(&e), vec![vec![2], vec![2]]);
        assert!(e.terminated());
    }

    #[test]
    fn two_dimensional_rational() {
        let e = jp_expand(&[q(2, 3), q(1, 3)], 100).unwrap();
        assert_eq!(digits(&e), vec![vec![0, 1], vec![1, 2]]);
        assert!(e.terminated());
        assert_eq!(e.stream(0), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(e.stream(1), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn zero_vector_is_empty() {
        let e = jp_expand(&[q(0, 1), q(0, 1)], 10).unwrap();
        assert!(e.terminated() && e.digit_vectors().is_empty());
    }

    #[test]
    fn shift_rule() {
        // (0, 1/2): first coordinate vanishes, rotate to (1/2, 0)
        let e = jp_expand(&[q(0, 1), q(1, 2)], 10).unwrap();
        assert_eq!(e.shift_markers(), &[ShiftMarker { step: 0, rotations: 1 }]);
        assert_eq!(digits(&e), vec![vec![0, 2]]);
        assert!(e.terminated());
        // (0, 0, 1/3) needs two rotations
        let e = jp_expand(&[q(0, 1), q(0, 1), q(1, 3)], 10).unwrap();
        assert_eq!(e.shift_markers(), &[ShiftMarker { step: 0, rotations: 2 }]);
    }

    #[test]
    fn range_checks() {
        assert!(matches!(jp_expand(&[q(1, 1)], 10), Err(Error::OutOfRange(_))));
        assert!(matches!(jp_expand(&[q(-1, 3)], 10), Err(Error::OutOfRange(_))));
        assert!(matches!(jp_expand::<Rational>(&[], 10), Err(Error::Invalid(_))));
    }

    #[test]
    fn truncation() {
        let e = jp_expand(&[q(13, 21)], 3).unwrap();
        assert!(e.is_truncated());
        assert_eq!(e.digit_vectors().len(), 3);
    }

    #[test]
    fn cubic_pair_is_periodic() {
        let e = jp_expand(&cube_root_two_pair(), 200).unwrap();
        assert_eq!(e.period_start(), Some(1));
        assert_eq!(digits(&e), vec![vec![2, 3], vec![3, 3]]);
    }

    #[test]
    fn gauss_map_matches_continued_fractions() {
        for den in 1..=100i64 {
            for num in 0..den {
                let r = q(num, den);
                let e = jp_expand(&[r.clone()], 1000).unwrap();
                let flat: Vec<BigInt> = e.digit_vectors().iter().map(|v| v[0].clone()).collect();
                assert_eq!(flat, cf_expand_rational(&r).digits());
            }
        }
        for text in ["(-1+sqrt(2))/1", "(-1+sqrt(3))/1", "(-1+sqrt(5))/2", "(-2+sqrt(7))/1", "(1+sqrt(13))/6"] {
            let s: QuadraticSurd = text.parse().unwrap();
            let v = JpVector::from_coordinates(&[Coordinate::Quadratic(s.clone())]).unwrap();
            let e = v.expand(1000).unwrap();
            let cf = cf_expand_quadratic(&s);
            let flat: Vec<BigInt> = e.digit_vectors().iter().map(|v| v[0].clone()).collect();
            assert_eq!(flat, cf.digits(), "{text}");
            assert_eq!(e.period_start(), cf.period_start(), "{text}");
        }
    }

    #[test]
    fn rational_vectors_terminate() {
        for d1 in 1..=12i64 {
            for n1 in 0..d1 {
                for d2 in 1..=12i64 {
                    for n2 in 0..d2 {
                        let e = jp_expand(&[q(n1, d1), q(n2, d2)], 10_000).unwrap();
                        assert!(e.terminated());
                        for a in e.digit_vectors() {
                            assert!(a[0] >= BigInt::zero() && a[1] >= BigInt::one());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coordinate_unification() {
        let half = Coordinate::Rational(q(1, 2));
        let s = Coordinate::Quadratic("(-1+sqrt(2))/1".parse().unwrap());
        let t = Coordinate::Quadratic("(-1+sqrt(3))/1".parse().unwrap());
        assert!(matches!(JpVector::from_coordinates(&[half.clone(), half.clone()]).unwrap(), JpVector::Rational(_)));
        assert!(matches!(JpVector::from_coordinates(&[s.clone(), half]).unwrap(), JpVector::Field(_)));
        assert_eq!(JpVector::from_coordinates(&[s, t]), Err(Error::IncompatibleFields));
        let c: Coordinate = "poly: -2,0,0,1; coords: -1,1; interval: 1,2".parse().unwrap();
        assert!(matches!(c, Coordinate::Field(_)));
    }
}

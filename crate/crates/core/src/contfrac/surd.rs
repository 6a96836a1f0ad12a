//! Quadratic irrationals `r + s·√d` with `d` squarefree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numbers::parse_int;
use crate::Rational;

/// A real quadratic irrational stored as `r + s·√d` with `s != 0` and `d`
/// free of small square factors. Equality and ordering are exact, also
/// between representations whose radicands differ by a square.
///
/// The classical `(P + √D)/Q` form with `Q | D − P²` is available through
/// [`QuadraticSurd::pq_form`].
#[derive(Debug, Clone)]
pub struct QuadraticSurd {
    rational: Rational,
    coeff: Rational,
    radicand: BigInt,
}

/// Radicands below this are reduced to their squarefree part exactly.
const EXACT_SPLIT_LIMIT: u64 = 1_000_000_000_000;
/// Above the limit only square factors of primes below this are removed.
const SMALL_PRIME_LIMIT: u64 = 10_000;

/// Splits `d > 0` as `k² · d0`. `d0` is squarefree whenever
/// `d < 10^12`; larger radicands keep any square factor built from primes
/// above `10^4`.
fn squarefree_split(d: &BigInt) -> (BigInt, BigInt) {
    if let Some(small) = d.to_u64().filter(|v| *v < EXACT_SPLIT_LIMIT) {
        let (k, d0) = split_u64(small);
        return (k.into(), d0.into());
    }
    let mut rest = d.clone();
    let mut k = BigInt::one();
    let mut free = BigInt::one();
    for p in 2..SMALL_PRIME_LIMIT {
        let p = BigInt::from(p);
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= &p;
        }
    }
    (k, free * rest)
}

fn split_u64(mut rest: u64) -> (u64, u64) {
    let (mut k, mut free) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (k, free * rest)
}

impl QuadraticSurd {
    /// The surd `(p + √d) / q`.
    pub fn new(p: BigInt, d: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::Invalid("negative radicand".into()));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(Error::RationalInput);
        }
        let (k, d0) = squarefree_split(&d);
        Ok(QuadraticSurd {
            rational: Rational::new(p, q.clone()),
            coeff: Rational::new(k, q),
            radicand: d0,
        })
    }

    /// `r + s·√d` from parts; `d` must be squarefree and greater than 1.
    pub(crate) fn from_parts(rational: Rational, coeff: Rational, radicand: BigInt) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::RationalInput);
        }
        Ok(QuadraticSurd {
            rational,
            coeff,
            radicand,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn irrational_coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Radicand `d` of `r + s·√d`.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// `(P, D, Q)` with value `(P + √D)/Q`, `D` non-square and `Q | D − P²`.
    pub fn pq_form(&self) -> (BigInt, BigInt, BigInt) {
        let l = self.rational.denom().lcm(self.coeff.denom());
        let mut p = self.rational.numer() * (&l / self.rational.denom());
        let mut b = self.coeff.numer() * (&l / self.coeff.denom());
        let mut q = l;
        if b.is_negative() {
            p = -p;
            b = -b;
            q = -q;
        }
        let mut d = &b * &b * &self.radicand;
        if !((&d - &p * &p) % &q).is_zero() {
            let m = q.abs();
            p *= &m;
            d *= &q * &q;
            q *= &m;
        }
        (p, d, q)
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            rational: self.rational.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn floor(&self) -> BigInt {
        let (p, d, q) = self.pq_form();
        let s = d.sqrt();
        if q.is_positive() {
            (p + s).div_floor(&q)
        } else {
            (-p - s - BigInt::one()).div_floor(&(-q))
        }
    }

    /// Fractional part, as a surd in `(0, 1)`.
    pub fn fract(&self) -> Self {
        self.sub_integer(&self.floor())
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadraticSurd {
            rational: &self.rational + r,
            coeff: self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn sub_integer(&self, m: &BigInt) -> Self {
        self.add_rational(&Rational::from_integer(-m.clone()))
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let u = &self.rational - r;
        sign_of_sum(&u, &self.coeff, &self.radicand)
    }

    /// `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        self.cmp_rational(&Rational::zero()) != Ordering::Less
            && self.cmp_rational(&Rational::one()) != Ordering::Greater
    }

    /// The Möbius image `(a·x + b)/(c·x + d)`.
    pub(crate) fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Result<Self> {
        let to_q = |x: &BigInt| Rational::from_integer(x.clone());
        let num_r = &self.rational * to_q(a) + to_q(b);
        let num_s = &self.coeff * to_q(a);
        let den_r = &self.rational * to_q(c) + to_q(d);
        let den_s = &self.coeff * to_q(c);
        if den_r.is_zero() && den_s.is_zero() {
            return Err(Error::Pole);
        }
        // (nr + ns√d)(dr − ds√d) / (dr² − ds²·d)
        let dd = to_q(&self.radicand);
        let norm = &den_r * &den_r - &den_s * &den_s * &dd;
        let r = (&num_r * &den_r - &num_s * &den_s * &dd) / &norm;
        let s = (&num_s * &den_r - &num_r * &den_s) / &norm;
        QuadraticSurd::from_parts(r, s, self.radicand.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        let s = self.coeff.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        r + s * d.sqrt()
    }
}

/// Sign of `u + s·√d` for `s != 0`.
fn sign_of_sum(u: &Rational, s: &Rational, d: &BigInt) -> Ordering {
    let su = u.cmp(&Rational::zero());
    let ss = s.cmp(&Rational::zero());
    if su == Ordering::Equal || su == ss {
        return ss;
    }
    let lhs = u * u;
    let rhs = s * s * Rational::from_integer(d.clone());
    if lhs > rhs {
        su
    } else {
        ss
    }
}

impl QuadraticSurd {
    /// `other`'s irrational coefficient rewritten over `self`'s radicand, when
    /// both radicands differ by a rational square.
    fn align(&self, other: &Self) -> Option<Rational> {
        if self.radicand == other.radicand {
            return Some(other.coeff.clone());
        }
        let product = &self.radicand * &other.radicand;
        let m = product.sqrt();
        if &m * &m != product {
            return None;
        }
        // √d2 = √(d1·d2)/√d1 = m·√d1/d1
        Some(&other.coeff * Rational::new(m, self.radicand.clone()))
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational && self.align(other).is_some_and(|c| c == self.coeff)
    }
}

impl Eq for QuadraticSurd {}

impl std::hash::Hash for QuadraticSurd {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rational.hash(state);
    }
}

/// Comparable only within one quadratic field.
impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let aligned = self.align(other)?;
        let u = &self.rational - &other.rational;
        let s = &self.coeff - &aligned;
        if s.is_zero() {
            return Some(u.cmp(&Rational::zero()));
        }
        Some(sign_of_sum(&u, &s, &self.radicand))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, d, q) = self.pq_form();
        write!(f, "({p}+sqrt({d}))/{q}")
    }
}

impl std::str::FromStr for QuadraticSurd {
    type Err = Error;

    /// Accepts `(P+sqrt(D))/Q`, `(P-sqrt(D))/Q`, `(P+sqrt(D))` and `sqrt(D)`.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected (P+sqrt(D))/Q, got {text:?}"));
        let (body, q) = match compact.rsplit_once(")/") {
            Some((b, q)) => (format!("{b})"), parse_int(q)?),
            None => (compact.clone(), BigInt::one()),
        };
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(&body);
        let pos = body.find("sqrt(").ok_or_else(bad)?;
        let (head, tail) = body.split_at(pos);
        let d = tail
            .strip_prefix("sqrt(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let d = parse_int(d)?;
        let (p, negate) = if head.is_empty() {
            (BigInt::zero(), false)
        } else if let Some(p) = head.strip_suffix('+') {
            (parse_int(p)?, false)
        } else if let Some(p) = head.strip_suffix('-') {
            let p = if p.is_empty() { BigInt::zero() } else { parse_int(p)? };
            (p, true)
        } else {
            return Err(bad());
        };
        if negate {
            QuadraticSurd::new(-p, d, -q)
        } else {
            QuadraticSurd::new(p, d, q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> QuadraticSurd {
        text.parse().unwrap()
    }

    #[test]
    fn squarefree_parts() {
        for (d, k, d0) in [(8, 2, 2), (12, 2, 3), (72, 6, 2), (30, 1, 30), (2, 1, 2), (50, 5, 2)] {
            assert_eq!(
                squarefree_split(&BigInt::from(d)),
                (BigInt::from(k), BigInt::from(d0)),
                "d = {d}"
            );
        }
    }

    #[test]
    fn large_radicands_stay_fast_and_exact() {
        // 1000003 and 999983 are primes above the small-prime limit
        let p = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let big = &p * &p * BigInt::from(7) * BigInt::from(10).pow(10);
        let (k, d0) = squarefree_split(&big);
        assert_eq!(&k * &k * &d0, big);
        let x = QuadraticSurd::new(0.into(), big, 1.into()).unwrap();
        let y = QuadraticSurd::new(0.into(), BigInt::from(7) * BigInt::from(10).pow(10), 1.into())
            .unwrap()
            .add_rational(&Rational::zero());
        let scaled = QuadraticSurd::from_parts(Rational::zero(), y.irrational_coeff() * Rational::from_integer(p), y.radicand().clone()).unwrap();
        assert_eq!(x, scaled);
        assert!(x > y);
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(s("(2+sqrt(8))/2"), s("(1+sqrt(2))/1"));
        assert_eq!(s("(-1+sqrt(2))/1"), s("(1-sqrt(2))/-1"));
        assert_eq!(s("sqrt(2)").floor(), BigInt::from(1));
    }

    #[test]
    fn rejects_squares() {
        assert_eq!(
            QuadraticSurd::new(1.into(), 9.into(), 2.into()),
            Err(Error::RationalInput)
        );
        assert_eq!(
            QuadraticSurd::new(1.into(), 2.into(), 0.into()),
            Err(Error::ZeroDenominator)
        );
        assert!(matches!("(1+sqr(2))/3".parse::<QuadraticSurd>(), Err(Error::Parse(_))));
    }

    #[test]
    fn pq_form_divisibility() {
        for text in ["(-1+sqrt(2))/1", "(2+sqrt(2))/2", "(1+sqrt(7))/3", "(3-sqrt(5))/4", "(5+sqrt(12))/-7"] {
            let x = s(text);
            let (p, d, q) = x.pq_form();
            assert!(((&d - &p * &p) % &q).is_zero(), "{text}");
            let back = QuadraticSurd::new(p, d, q).unwrap();
            assert_eq!(back, x, "{text}");
        }
    }

    #[test]
    fn floors_and_comparisons() {
        let cases = [
            ("(-1+sqrt(2))/1", 0),
            ("(1-sqrt(2))/1", -1),
            ("(2+sqrt(2))/2", 1),
            ("(1+sqrt(7))/-3", -2),
            ("(0+sqrt(1000001))/1", 1000),
        ];
        for (text, fl) in cases {
            let x = s(text);
            assert_eq!(x.floor(), BigInt::from(fl), "{text}");
            assert_eq!(x.floor(), BigInt::from(x.to_f64().floor() as i64), "{text}");
        }
        let x = s("(-1+sqrt(2))/1");
        assert!(x.in_unit_interval());
        assert_eq!(x.cmp_rational(&Rational::new(2.into(), 5.into())), Ordering::Greater);
        assert_eq!(x.cmp_rational(&Rational::new(5.into(), 12.into())), Ordering::Less);
        assert!(x < s("(0+sqrt(2))/2"));
    }
}

//! Regular continued fractions: finite ones for rationals and eventually
//! periodic ones for quadratic irrationals.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::contfrac::surd::QuadraticSurd;
use crate::error::{Error, Result};
use crate::numbers::parse_int;
use crate::Rational;

/// `[a0; a1, a2, …]`, finite or eventually periodic.
///
/// Finite expansions are kept canonical (last digit at least 2 unless the
/// expansion is the bare integer `[a0]`); periodic ones carry the minimal
/// period starting at the earliest possible index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    integer_part: BigInt,
    digits: Vec<BigInt>,
    period_start: Option<usize>,
}

/// The value of a continued fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CfValue {
    Rational(Rational),
    Quadratic(QuadraticSurd),
}

impl fmt::Display for CfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfValue::Rational(r) => write!(f, "{}", crate::numbers::fmt_rational(r)),
            CfValue::Quadratic(s) => write!(f, "{s}"),
        }
    }
}

fn check_digits(digits: &[BigInt]) -> Result<()> {
    if digits.iter().any(|d| !d.is_positive()) {
        return Err(Error::Invalid("continued fraction digits must be >= 1".into()));
    }
    Ok(())
}

impl ContinuedFraction {
    /// A finite expansion; a trailing digit 1 is folded into its predecessor.
    pub fn finite(integer_part: BigInt, mut digits: Vec<BigInt>) -> Result<Self> {
        check_digits(&digits)?;
        let mut integer_part = integer_part;
        if digits.last().is_some_and(|d| d.is_one()) {
            digits.pop();
            match digits.last_mut() {
                Some(prev) => *prev += 1,
                None => integer_part += 1,
            }
        }
        Ok(ContinuedFraction {
            integer_part,
            digits,
            period_start: None,
        })
    }

    /// `[a0; prefix, (period)]` reduced to minimal period and shortest prefix.
    pub fn periodic(integer_part: BigInt, prefix: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("empty period".into()));
        }
        check_digits(&prefix)?;
        check_digits(&period)?;
        let len = period.len();
        let minimal = (1..=len)
            .find(|&p| len % p == 0 && (p..len).all(|i| period[i] == period[i - p]))
            .unwrap_or(len);
        let mut period: Vec<BigInt> = period[..minimal].to_vec();
        let mut prefix = prefix;
        while prefix.last().is_some_and(|d| Some(d) == period.last()) {
            prefix.pop();
            period.rotate_right(1);
        }
        let start = prefix.len();
        prefix.extend(period);
        Ok(ContinuedFraction {
            integer_part,
            digits: prefix,
            period_start: Some(start),
        })
    }

    pub fn integer_part(&self) -> &BigInt {
        &self.integer_part
    }

    /// Digits after the integer part; for periodic expansions the first
    /// period is included once.
    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    pub fn period_start(&self) -> Option<usize> {
        self.period_start
    }

    pub fn is_periodic(&self) -> bool {
        self.period_start.is_some()
    }

    pub fn prefix(&self) -> &[BigInt] {
        &self.digits[..self.period_start.unwrap_or(self.digits.len())]
    }

    pub fn period(&self) -> &[BigInt] {
        match self.period_start {
            Some(s) => &self.digits[s..],
            None => &[],
        }
    }

    /// The first `count` digits after the integer part, unrolling the period.
    pub fn digit_stream(&self, count: usize) -> Vec<BigInt> {
        match self.period_start {
            None => self.digits.iter().take(count).cloned().collect(),
            Some(s) => {
                let period = &self.digits[s..];
                (0..count)
                    .map(|i| {
                        if i < s {
                            self.digits[i].clone()
                        } else {
                            period[(i - s) % period.len()].clone()
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[BigInt]| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
        if self.digits.is_empty() {
            return write!(f, "[{}]", self.integer_part);
        }
        write!(f, "[{}; ", self.integer_part)?;
        let prefix = self.prefix();
        write!(f, "{}", join(prefix))?;
        if self.is_periodic() {
            if !prefix.is_empty() {
                write!(f, ", ")?;
            }
            write!(f, "({})", join(self.period()))?;
        }
        write!(f, "]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `[a0]`, `[a0; a1, a2]` and `[a0; a1, (p1, p2)]`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [a0; a1, … (p1, …)], got {text:?}"));
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (head, rest) = match inner.split_once(';') {
            Some((h, r)) => (h, r),
            None => (inner, ""),
        };
        let a0 = parse_int(head)?;
        let (finite_part, period_part) = match rest.split_once('(') {
            Some((f, p)) => (f, Some(p.trim().strip_suffix(')').ok_or_else(bad)?)),
            None => (rest, None),
        };
        let list = |s: &str| -> Result<Vec<BigInt>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(parse_int)
                .collect()
        };
        let prefix = list(finite_part)?;
        match period_part {
            Some(p) => ContinuedFraction::periodic(a0, prefix, list(p)?),
            None => ContinuedFraction::finite(a0, prefix),
        }
    }
}

/// Euclidean expansion `(a0, [a1, …])` of any fraction over an integer type.
pub fn expand_ratio<T>(r: &Ratio<T>) -> (T, Vec<T>)
where
    T: Integer + Clone,
{
    let (a0, mut rem) = r.numer().div_mod_floor(r.denom());
    let mut den = r.denom().clone();
    let mut digits = Vec::new();
    while !rem.is_zero() {
        let (q, next) = den.div_mod_floor(&rem);
        digits.push(q);
        den = rem;
        rem = next;
    }
    (a0, digits)
}

pub fn cf_expand_rational(r: &Rational) -> ContinuedFraction {
    let (integer_part, digits) = expand_ratio(r);
    ContinuedFraction {
        integer_part,
        digits,
        period_start: None,
    }
}

/// Exact periodic expansion, detected by repetition of the `(P, Q)` state of
/// the complete quotients `(P + √D)/Q`.
pub fn cf_expand_quadratic(s: &QuadraticSurd) -> ContinuedFraction {
    let (mut p, d, mut q) = s.pq_form();
    let root = d.sqrt();
    let floor_of = |p: &BigInt, q: &BigInt| -> BigInt {
        if q.is_positive() {
            (p + &root).div_floor(q)
        } else {
            (-p - &root - BigInt::one()).div_floor(&(-q))
        }
    };
    let integer_part = floor_of(&p, &q);
    let mut a = integer_part.clone();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        let next_p = &a * &q - &p;
        let next_q = (&d - &next_p * &next_p) / &q;
        p = next_p;
        q = next_q;
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            return ContinuedFraction {
                integer_part,
                digits,
                period_start: Some(start),
            };
        }
        seen.insert((p.clone(), q.clone()), digits.len());
        a = floor_of(&p, &q);
        digits.push(a.clone());
    }
}

/// 2×2 product of the matrices `(a 1; 1 0)` over the given digits.
fn convergent_matrix<'a>(digits: impl IntoIterator<Item = &'a BigInt>) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for a in digits {
        m = [
            &m[0] * a + &m[1],
            m[0].clone(),
            &m[2] * a + &m[3],
            m[2].clone(),
        ];
    }
    m
}

pub fn cf_eval(cf: &ContinuedFraction) -> CfValue {
    let head = std::iter::once(&cf.integer_part).chain(cf.prefix());
    let [p, p1, q, q1] = convergent_matrix(head);
    if !cf.is_periodic() {
        return CfValue::Rational(Rational::new(p, q));
    }
    // Purely periodic tail y = (u·y + v)/(w·y + z), the root greater than 1.
    let [u, v, w, z] = convergent_matrix(cf.period());
    let b = &u - &z;
    let disc = &b * &b + BigInt::from(4) * &w * &v;
    let tail = QuadraticSurd::new(b, disc, BigInt::from(2) * &w)
        .expect("periodic tail of a continued fraction is irrational");
    let value = tail
        .mobius(&p, &p1, &q, &q1)
        .expect("convergent matrices are invertible");
    CfValue::Quadratic(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn surd(text: &str) -> QuadraticSurd {
        text.parse().unwrap()
    }

    /// Hand Euclid: digits of p/q by repeated division with remainder.
    fn euclid_oracle(mut p: i64, mut q: i64) -> (i64, Vec<i64>) {
        let a0 = p.div_euclid(q);
        p -= a0 * q;
        let mut out = Vec::new();
        while p != 0 {
            out.push(q / p);
            let r = q % p;
            q = p;
            p = r;
        }
        (a0, out)
    }

    #[test]
    fn rational_examples() {
        let cf = cf_expand_rational(&q(3, 5));
        assert_eq!(cf.to_string(), "[0; 1, 1, 2]");
        assert_eq!(cf_expand_rational(&q(1, 2)).to_string(), "[0; 2]");
        assert_eq!(cf_expand_rational(&q(7, 3)).to_string(), "[2; 3]");
        assert_eq!(cf_expand_rational(&q(3, 1)).to_string(), "[3]");
        assert_eq!(cf_expand_rational(&q(-7, 3)).to_string(), "[-3; 1, 2]");
        assert_eq!(euclid_oracle(3, 5), (0, vec![1, 1, 2]));
    }

    #[test]
    fn generic_integer_expansion() {
        let (a0, ds) = expand_ratio(&Ratio::new(355i64, 113));
        assert_eq!((a0, ds), (3, vec![7, 16]));
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(cf_expand_quadratic(&surd("(-1+sqrt(2))/1")).to_string(), "[0; (2)]");
        assert_eq!(cf_expand_quadratic(&surd("(-1+sqrt(5))/2")).to_string(), "[0; (1)]");
        assert_eq!(cf_expand_quadratic(&surd("(-1+sqrt(3))/1")).to_string(), "[0; (1, 2)]");
        assert_eq!(cf_expand_quadratic(&surd("(1+sqrt(2))/1")).to_string(), "[2; (2)]");
        assert_eq!(cf_expand_quadratic(&surd("(2+sqrt(2))/2")).to_string(), "[1; 1, (2)]");
        assert_eq!(cf_expand_quadratic(&surd("sqrt(7)")).to_string(), "[2; (1, 1, 1, 4)]");
        assert_eq!(cf_expand_quadratic(&surd("(0-sqrt(2))/1")).to_string(), "[-2; 1, 1, (2)]");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf_eval(&"[0; 1, 1, 2]".parse().unwrap()), CfValue::Rational(q(3, 5)));
        assert_eq!(cf_eval(&"[3]".parse().unwrap()), CfValue::Rational(q(3, 1)));
        assert_eq!(
            cf_eval(&"[0; (2)]".parse().unwrap()),
            CfValue::Quadratic(surd("(-1+sqrt(2))/1"))
        );
        assert_eq!(
            cf_eval(&"[1; 1, (2)]".parse().unwrap()),
            CfValue::Quadratic(surd("(2+sqrt(2))/2"))
        );
    }

    #[test]
    fn canonical_forms() {
        let cf = ContinuedFraction::finite(0.into(), big(&[2, 1])).unwrap();
        assert_eq!(cf.to_string(), "[0; 3]");
        let cf = ContinuedFraction::finite(0.into(), big(&[1])).unwrap();
        assert_eq!(cf.to_string(), "[1]");
        let cf = ContinuedFraction::periodic(0.into(), big(&[1, 2, 1, 2]), big(&[1, 2, 1, 2])).unwrap();
        assert_eq!(cf.to_string(), "[0; (1, 2)]");
        let cf = ContinuedFraction::periodic(0.into(), big(&[3, 2]), big(&[1, 2])).unwrap();
        assert_eq!(cf.to_string(), "[0; 3, (2, 1)]");
        assert!(ContinuedFraction::finite(0.into(), big(&[2, 0])).is_err());
        assert!(ContinuedFraction::periodic(0.into(), vec![], vec![]).is_err());
        assert_eq!(cf.digit_stream(6), big(&[3, 2, 1, 2, 1, 2]));
    }

    #[test]
    fn parse_display_round_trip() {
        for text in ["[0; 1, 1, 2]", "[3]", "[0; (2)]", "[1; 1, (2)]", "[-2; 5, (1, 3)]"] {
            let cf: ContinuedFraction = text.parse().unwrap();
            assert_eq!(cf.to_string(), text);
        }
        assert_eq!(
            "[1; 1 (2)]".parse::<ContinuedFraction>().unwrap().to_string(),
            "[1; 1, (2)]"
        );
        assert!("0; 1".parse::<ContinuedFraction>().is_err());
    }

    #[test]
    fn rational_round_trip_exhaustive() {
        for den in 1..=500i64 {
            for num in 0..=den {
                let r = q(num, den);
                let cf = cf_expand_rational(&r);
                if let Some(last) = cf.digits().last() {
                    assert!(last >= &BigInt::from(2));
                }
                assert_eq!(cf_eval(&cf), CfValue::Rational(r));
            }
        }
    }

    #[test]
    fn expansion_matches_euclid_oracle() {
        for den in 1..=60i64 {
            for num in -den..=2 * den {
                let (a0, ds) = euclid_oracle(num, den);
                let cf = cf_expand_rational(&q(num, den));
                assert_eq!(cf.integer_part(), &BigInt::from(a0));
                assert_eq!(cf.digits(), big(&ds).as_slice());
            }
        }
    }

    #[test]
    fn quadratic_round_trip_and_minimal_period() {
        for d in 2..60i64 {
            let root = (d as f64).sqrt() as i64;
            if root * root == d {
                continue;
            }
            for p in -3..4 {
                for qq in [1i64, 2, 3, -2, 5] {
                    let x = QuadraticSurd::new(p.into(), d.into(), qq.into()).unwrap();
                    let cf = cf_expand_quadratic(&x);
                    assert_eq!(cf_eval(&cf), CfValue::Quadratic(x.clone()));
                    let period = cf.period();
                    let l = period.len();
                    for shorter in 1..l {
                        if l % shorter == 0 {
                            assert!((shorter..l).any(|i| period[i] != period[i - shorter]));
                        }
                    }
                    let reparsed = ContinuedFraction::periodic(
                        cf.integer_part().clone(),
                        cf.prefix().to_vec(),
                        cf.period().to_vec(),
                    )
                    .unwrap();
                    assert_eq!(reparsed, cf);
                }
            }
        }
    }
}

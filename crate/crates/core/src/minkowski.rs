//! The Minkowski question-mark function
//! `?(x) = a0 + 2 Σ_{k≥1} (−1)^{k+1} / 2^{a1+…+ak}` for `x = [a0; a1, a2, …]`,
//! evaluated exactly on rationals (finite sums) and on quadratic irrationals
//! (geometric summation of the periodic tail), together with its inverse,
//! an `n`-dimensional variant over Jacobi–Perron digit streams, and
//! difference-quotient probes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::contfrac::{
    cf_eval, cf_expand_quadratic, cf_expand_rational, moebius_apply, CfValue, ContinuedFraction, JpVector, Matrix2,
    QuadraticSurd,
};
use crate::error::{Error, Result};
use crate::numbers::{to_dyadic, DyadicRational};
use crate::Rational;

/// Largest digit sum (a power-of-two exponent) evaluated exactly.
pub const MAX_DIGIT_SUM: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceKind {
    Rational,
    Quadratic,
    JpPeriodic,
    Truncated,
}

impl SourceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::Rational => "rational",
            SourceKind::Quadratic => "quadratic",
            SourceKind::JpPeriodic => "jp_periodic",
            SourceKind::Truncated => "truncated",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated coordinate of `?` or `?ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMarkValue {
    pub value: Rational,
    pub is_dyadic: bool,
    pub source_kind: SourceKind,
    /// Digits consumed: the CF length, or the number of JP steps.
    pub digits_used: usize,
    /// For truncated evaluations, an interval that contains the limit.
    pub bracket: Option<(Rational, Rational)>,
}

impl QMarkValue {
    fn new(value: Rational, source_kind: SourceKind, digits_used: usize) -> Self {
        let is_dyadic = to_dyadic(&value).is_ok();
        QMarkValue {
            value,
            is_dyadic,
            source_kind,
            digits_used,
            bracket: None,
        }
    }
}

fn partial_sums(digits: &[BigInt], start: u64) -> Result<Vec<u64>> {
    let mut acc = start;
    digits
        .iter()
        .map(|d| {
            let d = d
                .to_u64()
                .filter(|d| *d >= 1)
                .ok_or_else(|| Error::OutOfRange(format!("digit {d} outside the exact range")))?;
            acc = acc
                .checked_add(d)
                .filter(|s| *s <= MAX_DIGIT_SUM)
                .ok_or_else(|| Error::OutOfRange("digit sum too large for exact evaluation".into()))?;
            Ok(acc)
        })
        .collect()
}

/// `2 Σ_k ε_k 2^{−s_k}` where `ε` alternates starting from `+1` (or `−1`).
fn alternating_sum(sums: &[u64], first_positive: bool) -> Rational {
    let Some(&top) = sums.last() else {
        return Rational::zero();
    };
    let mut num = BigInt::zero();
    for (k, &s) in sums.iter().enumerate() {
        let term = BigInt::one() << (top - s);
        if (k % 2 == 0) == first_positive {
            num += term;
        } else {
            num -= term;
        }
    }
    Rational::new(num << 1u32, BigInt::one() << top)
}

/// `?` of a finite digit list with integer part `a0`.
fn qmark_finite(a0: &BigInt, digits: &[BigInt]) -> Result<Rational> {
    let sums = partial_sums(digits, 0)?;
    Ok(Rational::from_integer(a0.clone()) + alternating_sum(&sums, true))
}

/// `?` of `[a0; prefix, (period)]` in closed form.
fn qmark_periodic(a0: &BigInt, prefix: &[BigInt], period: &[BigInt]) -> Result<Rational> {
    let head = partial_sums(prefix, 0)?;
    let offset = head.last().copied().unwrap_or(0);
    let block_sums = partial_sums(period, offset)?;
    let block = alternating_sum(&block_sums, prefix.len() % 2 == 0);
    let total = block_sums.last().copied().unwrap_or(offset) - offset;
    let decay = Rational::new(BigInt::one(), BigInt::one() << total);
    let ratio = if period.len() % 2 == 0 { decay } else { -decay };
    let tail = block / (Rational::one() - ratio);
    Ok(Rational::from_integer(a0.clone()) + alternating_sum(&head, true) + tail)
}

/// `?` of any finite or eventually periodic continued fraction, using
/// `?(x + m) = ?(x) + m` outside the unit interval.
pub fn qmark_cf(cf: &ContinuedFraction) -> Result<Rational> {
    if cf.is_periodic() {
        qmark_periodic(cf.integer_part(), cf.prefix(), cf.period())
    } else {
        qmark_finite(cf.integer_part(), cf.digits())
    }
}

/// `?` on any real rational or quadratic surd (integer-translation extension).
pub fn qmark_extended(x: &CfValue) -> Result<Rational> {
    match x {
        CfValue::Rational(r) => qmark_cf(&cf_expand_rational(r)),
        CfValue::Quadratic(s) => qmark_cf(&cf_expand_quadratic(s)),
    }
}

pub fn qmark_rational(r: &Rational) -> Result<QMarkValue> {
    if r.is_negative() || r > &Rational::one() {
        return Err(Error::OutOfRange("?(x) needs 0 <= x <= 1".into()));
    }
    let cf = cf_expand_rational(r);
    let value = qmark_cf(&cf)?;
    let out = QMarkValue::new(value, SourceKind::Rational, cf.digits().len());
    debug_assert!(out.is_dyadic);
    Ok(out)
}

pub fn qmark_quadratic(s: &QuadraticSurd) -> Result<QMarkValue> {
    if !s.in_unit_interval() {
        return Err(Error::OutOfRange("?(x) needs 0 <= x <= 1".into()));
    }
    let cf = cf_expand_quadratic(s);
    let value = qmark_cf(&cf)?;
    debug_assert!(brackets_hold(&cf, &value));
    let out = QMarkValue::new(value, SourceKind::Quadratic, cf.digits().len());
    debug_assert!(!out.is_dyadic);
    Ok(out)
}

/// Truncations of the series at even length underestimate the limit and at
/// odd length overestimate it (checked over three periods).
fn brackets_hold(cf: &ContinuedFraction, limit: &Rational) -> bool {
    let count = cf.prefix().len() + 3 * cf.period().len();
    let stream = cf.digit_stream(count);
    (1..=count).all(|m| {
        let Ok(partial) = qmark_finite(cf.integer_part(), &stream[..m]) else {
            return true;
        };
        if m % 2 == 0 {
            &partial < limit
        } else {
            &partial > limit
        }
    })
}

/// Inverse of `?` on rationals in `[0, 1]`: dyadic values come back as
/// rationals, all other rationals as quadratic surds.
///
/// The binary expansion `0.0^{a1−1} 1^{a2} 0^{a3} …` is decoded run by run
/// into continued fraction digits. Terminating expansions are first rewritten
/// to end in an infinite run of ones.
pub fn qmark_inverse(v: &Rational) -> Result<CfValue> {
    if v.is_negative() || v > &Rational::one() {
        return Err(Error::OutOfRange("?^-1(y) needs 0 <= y <= 1".into()));
    }
    if v.is_zero() || v.is_one() {
        return Ok(CfValue::Rational(v.clone()));
    }
    match to_dyadic(v) {
        Ok(d) => inverse_dyadic(&d),
        Err(_) => inverse_periodic(v),
    }
}

fn inverse_dyadic(d: &DyadicRational) -> Result<CfValue> {
    let k = d.exponent();
    let numer = d.odd_numerator();
    // bits b_1 … b_k of numer / 2^k, then replace the final 1 by 0111…
    let mut bits: Vec<bool> = (0..k).rev().map(|i| numer.bit(i)).collect();
    *bits.last_mut().expect("0 < v < 1 has at least one bit") = false;
    let mut runs: Vec<u64> = vec![0];
    let mut current = false;
    for bit in bits {
        if bit != current {
            runs.push(0);
            current = bit;
        }
        *runs.last_mut().unwrap() += 1;
    }
    runs[0] += 1;
    let digits = runs.into_iter().map(BigInt::from).collect();
    Ok(cf_eval(&ContinuedFraction::finite(BigInt::zero(), digits)?))
}

fn inverse_periodic(v: &Rational) -> Result<CfValue> {
    let q = v.denom().clone();
    let mut r = v.numer().clone();
    let next_bit = |r: &BigInt| (r << 1u32) >= q;
    let mut runs: Vec<u64> = Vec::new();
    let mut seen: HashMap<(BigInt, bool), usize> = HashMap::new();
    let mut expect = false;
    let start = loop {
        let k = runs.len();
        if k >= 1 {
            if let Some(&j) = seen.get(&(r.clone(), expect)) {
                break j;
            }
            seen.insert((r.clone(), expect), k);
        }
        let mut len = 0u64;
        while next_bit(&r) == expect {
            r <<= 1u32;
            if expect {
                r -= &q;
            }
            len += 1;
        }
        runs.push(len);
        expect = !expect;
    };
    runs[0] += 1;
    let mut digits: Vec<BigInt> = runs.into_iter().map(BigInt::from).collect();
    let period = digits.split_off(start);
    Ok(cf_eval(&ContinuedFraction::periodic(BigInt::zero(), digits, period)?))
}

/// The dyadic shift `2 Σ_{k=1}^{N} (−1)^{k+1} 2^{−(b1+…+bk)}` picked up by `?`
/// when a prefix `b1 … bN` is prepended to a continued fraction tail.
pub fn prefix_shift(prefix: &[BigInt]) -> Result<DyadicRational> {
    if prefix.is_empty() {
        return Err(Error::Invalid("empty prefix".into()));
    }
    if prefix.iter().any(|b| !b.is_positive()) {
        return Err(Error::Invalid("prefix digits must be >= 1".into()));
    }
    let sums = partial_sums(prefix, 0)?;
    to_dyadic(&alternating_sum(&sums, true))
}

/// Exact evidence on whether `?(g·θ) − ?(θ)` is dyadic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceProbe {
    pub theta: QuadraticSurd,
    pub image: QuadraticSurd,
    pub qmark_theta: Rational,
    pub qmark_image: Rational,
    pub difference: Rational,
    pub is_dyadic: bool,
}

pub fn dyadic_difference_probe(theta: &QuadraticSurd, g: &Matrix2) -> Result<DifferenceProbe> {
    if !theta.in_unit_interval() {
        return Err(Error::OutOfRange("probe needs 0 <= theta <= 1".into()));
    }
    let image = moebius_apply(g, theta)?;
    let qmark_theta = qmark_cf(&cf_expand_quadratic(theta))?;
    let qmark_image = qmark_cf(&cf_expand_quadratic(&image))?;
    let difference = &qmark_image - &qmark_theta;
    let is_dyadic = to_dyadic(&difference).is_ok();
    Ok(DifferenceProbe {
        theta: theta.clone(),
        image,
        qmark_theta,
        qmark_image,
        difference,
        is_dyadic,
    })
}

/// Tally of [`dyadic_difference_probe`] over every unimodular matrix with
/// entries bounded by `bound` and every given surd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub bound: i64,
    pub matrices: usize,
    pub evaluations: usize,
    pub dyadic: usize,
    pub fraction: Rational,
}

pub fn unimodular_scan(thetas: &[QuadraticSurd], bound: i64) -> Result<ScanReport> {
    let matrices = Matrix2::unimodular_box(bound);
    let mut evaluations = 0;
    let mut dyadic = 0;
    for theta in thetas {
        for g in &matrices {
            let probe = dyadic_difference_probe(theta, g)?;
            evaluations += 1;
            dyadic += usize::from(probe.is_dyadic);
        }
    }
    let fraction = if evaluations == 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::from(dyadic), BigInt::from(evaluations))
    };
    Ok(ScanReport {
        bound,
        matrices: matrices.len(),
        evaluations,
        dyadic,
        fraction,
    })
}

/// The `n`-dimensional map: each coordinate is `?` evaluated on its
/// Jacobi–Perron digit stream (see [`crate::contfrac::JpExpansion::stream`]).
pub fn qmark_nd(x: &JpVector, max_steps: usize) -> Result<Vec<QMarkValue>> {
    let expansion = x.expand(max_steps)?;
    let zero = BigInt::zero();
    (0..x.len())
        .map(|i| {
            let stream = expansion.stream(i);
            let used = stream.len();
            if expansion.terminated() {
                return Ok(QMarkValue::new(qmark_finite(&zero, &stream)?, SourceKind::Rational, used));
            }
            if let Some(start) = expansion.period_start() {
                let value = qmark_periodic(&zero, &stream[..start], &stream[start..])?;
                return Ok(QMarkValue::new(value, SourceKind::JpPeriodic, used));
            }
            let sums = partial_sums(&stream, 0)?;
            let partial = alternating_sum(&sums, true);
            let width = Rational::new(BigInt::one(), BigInt::one() << sums.last().copied().unwrap_or(0));
            let other = if used % 2 == 0 { &partial + width } else { &partial - width };
            let bracket = if partial <= other {
                (partial.clone(), other)
            } else {
                (other, partial.clone())
            };
            let mut out = QMarkValue::new(partial, SourceKind::Truncated, used);
            out.bracket = Some(bracket);
            Ok(out)
        })
        .collect()
}

/// Symmetric difference quotients of `?` at a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeProbe {
    pub point: Rational,
    pub step_exponents: Vec<u32>,
    pub ratios: Vec<Rational>,
}

pub fn derivative_probe(x: &Rational, step_exponents: &[u32]) -> Result<DerivativeProbe> {
    let mut ratios = Vec::with_capacity(step_exponents.len());
    for &j in step_exponents {
        if j == 0 {
            return Err(Error::Invalid("step exponents must be positive".into()));
        }
        let h = Rational::new(BigInt::one(), BigInt::one() << j);
        let (left, right) = (x - &h, x + &h);
        if !left.is_positive() || right >= Rational::one() {
            return Err(Error::OutOfRange(format!("x ± 2^-{j} leaves (0, 1)")));
        }
        let diff = qmark_rational(&right)?.value - qmark_rational(&left)?.value;
        ratios.push(diff.abs() / (h * Rational::from_integer(BigInt::from(2))));
    }
    Ok(DerivativeProbe {
        point: x.clone(),
        step_exponents: step_exponents.to_vec(),
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::jacobi_perron::cube_root_two_pair;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn surd(text: &str) -> QuadraticSurd {
        text.parse().unwrap()
    }

    /// Independent oracle: bisection on the monotone map `?` over the
    /// Stern–Brocot mediants. `?(x)` of the mediant path equals the binary
    /// number whose bits record left/right turns, so walking the bits of `v`
    /// walks the tree to `?^{-1}(v)` for dyadic `v`.
    fn mediant_inverse(v: &Rational) -> Rational {
        let (mut lo_n, mut lo_d, mut hi_n, mut hi_d) = (0i64, 1i64, 1i64, 1i64);
        let (mut lo_v, mut hi_v) = (q(0, 1), q(1, 1));
        loop {
            let (m_n, m_d) = (lo_n + hi_n, lo_d + hi_d);
            let mid_v = (&lo_v + &hi_v) / Rational::from_integer(2.into());
            match v.cmp(&mid_v) {
                std::cmp::Ordering::Equal => return q(m_n, m_d),
                std::cmp::Ordering::Less => {
                    hi_n = m_n;
                    hi_d = m_d;
                    hi_v = mid_v;
                }
                std::cmp::Ordering::Greater => {
                    lo_n = m_n;
                    lo_d = m_d;
                    lo_v = mid_v;
                }
            }
        }
    }

    #[test]
    fn rational_examples() {
        assert_eq!(qmark_rational(&q(0, 1)).unwrap().value, q(0, 1));
        assert_eq!(qmark_rational(&q(1, 1)).unwrap().value, q(1, 1));
        assert_eq!(qmark_rational(&q(1, 3)).unwrap().value, q(1, 4));
        assert_eq!(qmark_rational(&q(3, 5)).unwrap().value, q(5, 8));
        assert!(qmark_rational(&q(3, 5)).unwrap().is_dyadic);
        assert!(matches!(qmark_rational(&q(4, 3)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn quadratic_examples() {
        let cases = [("(-1+sqrt(2))/1", q(2, 5)), ("(-1+sqrt(5))/2", q(2, 3)), ("(-1+sqrt(3))/1", q(6, 7))];
        for (text, expected) in cases {
            let v = qmark_quadratic(&surd(text)).unwrap();
            assert_eq!(v.value, expected, "{text}");
            assert!(!v.is_dyadic);
            assert_eq!(v.source_kind, SourceKind::Quadratic);
        }
        assert!(matches!(qmark_quadratic(&surd("sqrt(2)")), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn extended_values() {
        assert_eq!(qmark_extended(&CfValue::Quadratic(surd("sqrt(2)"))).unwrap(), q(7, 5));
        assert_eq!(qmark_extended(&CfValue::Quadratic(surd("(2+sqrt(2))/2"))).unwrap(), q(9, 5));
        assert_eq!(qmark_extended(&CfValue::Rational(q(-2, 3))).unwrap(), q(-3, 4));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(qmark_inverse(&q(1, 2)).unwrap(), CfValue::Rational(q(1, 2)));
        assert_eq!(qmark_inverse(&q(1, 4)).unwrap(), CfValue::Rational(q(1, 3)));
        assert_eq!(qmark_inverse(&q(3, 4)).unwrap(), CfValue::Rational(q(2, 3)));
        assert_eq!(qmark_inverse(&q(2, 5)).unwrap(), CfValue::Quadratic(surd("(-1+sqrt(2))/1")));
        assert_eq!(qmark_inverse(&q(6, 7)).unwrap(), CfValue::Quadratic(surd("(-1+sqrt(3))/1")));
        assert!(matches!(qmark_inverse(&q(3, 2)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn inverse_agrees_with_mediant_oracle() {
        for k in 1..=10u32 {
            for l in (1..(1i64 << k)).step_by(2) {
                let v = Rational::new(l.into(), BigInt::one() << k);
                assert_eq!(qmark_inverse(&v).unwrap(), CfValue::Rational(mediant_inverse(&v)), "{v}");
            }
        }
    }

    #[test]
    fn prefix_shift_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(prefix_shift(&b(&[1])).unwrap().to_rational(), q(1, 1));
        assert_eq!(prefix_shift(&b(&[2])).unwrap().to_rational(), q(1, 2));
        assert_eq!(prefix_shift(&b(&[1, 2])).unwrap().to_rational(), q(3, 4));
        assert!(prefix_shift(&[]).is_err());
        assert!(prefix_shift(&b(&[1, 0])).is_err());
    }

    #[test]
    fn probe_examples() {
        let theta = surd("(-1+sqrt(2))/1");
        let p = dyadic_difference_probe(&theta, &Matrix2::new(1, 1, 0, 1)).unwrap();
        assert_eq!((p.difference.clone(), p.is_dyadic), (q(1, 1), true));
        assert_eq!(p.qmark_image, q(7, 5));
        // basis-change form (a + bθ)/(c + dθ) with (0,1;1,0): the identity
        let p = dyadic_difference_probe(&theta, &Matrix2::new(0, 1, 1, 0).column_swap()).unwrap();
        assert_eq!((p.difference, p.is_dyadic), (q(0, 1), true));
        // basis-change form with (2,1;1,1): θ' = (2+√2)/2, ?(θ') = 9/5
        let p = dyadic_difference_probe(&theta, &Matrix2::new(2, 1, 1, 1).column_swap()).unwrap();
        assert_eq!(p.qmark_image, q(9, 5));
        assert_eq!((p.difference, p.is_dyadic), (q(7, 5), false));
        // the same matrices under the standard action
        let p = dyadic_difference_probe(&theta, &Matrix2::new(0, 1, 1, 0)).unwrap();
        assert_eq!((p.difference, p.is_dyadic), (q(2, 1), true));
        let p = dyadic_difference_probe(&theta, &Matrix2::new(2, 1, 1, 1)).unwrap();
        assert_eq!((p.difference, p.is_dyadic), (q(4, 5), false));
    }

    #[test]
    fn nd_examples() {
        let v = qmark_nd(&JpVector::Rational(vec![q(2, 5)]), 100).unwrap();
        assert_eq!(v[0].value, q(3, 8));
        assert_eq!(v[0].value, qmark_rational(&q(2, 5)).unwrap().value);
        let v = qmark_nd(&JpVector::Rational(vec![q(2, 3), q(1, 3)]), 100).unwrap();
        assert_eq!((v[0].value.clone(), v[1].value.clone()), (q(3, 4), q(3, 4)));
        let v = qmark_nd(&JpVector::Rational(vec![q(0, 1), q(0, 1)]), 100).unwrap();
        assert!(v.iter().all(|c| c.value.is_zero() && c.is_dyadic));
    }

    #[test]
    fn cubic_pair_maps_to_non_dyadic_rationals() {
        let v = qmark_nd(&JpVector::Field(cube_root_two_pair()), 200).unwrap();
        // streams 3,(4) and 3,(3): 2·(1/8)/(1 + 1/16) and 2·(1/8)/(1 + 1/8)
        assert_eq!(v[0].value, q(4, 17));
        assert_eq!(v[1].value, q(2, 9));
        assert!(v.iter().all(|c| !c.is_dyadic && c.source_kind == SourceKind::JpPeriodic));
    }

    #[test]
    fn truncated_brackets_contain_limit() {
        let s = surd("(-1+sqrt(2))/1");
        let exact = qmark_quadratic(&s).unwrap().value;
        let x = JpVector::from_coordinates(&[crate::contfrac::Coordinate::Quadratic(s)]).unwrap();
        // drop periodicity by asking for fewer steps than the preperiod needs
        for steps in 0..1 {
            let v = qmark_nd(&x, steps).unwrap();
            let (lo, hi) = v[0].bracket.clone().unwrap();
            assert!(lo <= exact && exact <= hi);
        }
        let golden = JpVector::Rational(vec![q(89, 144)]);
        let full = qmark_nd(&golden, 100).unwrap()[0].value.clone();
        for steps in 1..10 {
            let v = qmark_nd(&golden, steps).unwrap();
            assert_eq!(v[0].source_kind, SourceKind::Truncated);
            let (lo, hi) = v[0].bracket.clone().unwrap();
            assert!(lo <= full && full <= hi, "steps {steps}");
        }
    }

    #[test]
    fn derivative_examples() {
        let p = derivative_probe(&q(1, 3), &[10]).unwrap();
        assert!(p.ratios[0] < q(1, 1_000_000));
        let p = derivative_probe(&q(1, 2), &[4, 8, 12]).unwrap();
        assert!(p.ratios.windows(2).all(|w| w[1] < w[0]));
        let p = derivative_probe(&q(1, 3), &[2, 20]).unwrap();
        assert!(p.ratios[1] < p.ratios[0]);
        assert!(matches!(derivative_probe(&q(1, 3), &[1]), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn monotone_and_symmetric() {
        let mut all: Vec<Rational> = (1..=60i64)
            .flat_map(|d| (0..=d).map(move |n| q(n, d)))
            .collect();
        all.sort();
        all.dedup();
        let values: Vec<Rational> = all.iter().map(|r| qmark_rational(r).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]));
        for (r, v) in all.iter().zip(&values) {
            let mirrored = qmark_rational(&(Rational::one() - r)).unwrap().value;
            assert_eq!(mirrored, Rational::one() - v);
        }
    }
}

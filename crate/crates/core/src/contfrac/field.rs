//! Arithmetic in a real number field `Q(α)`, with `α` a real root of an
//! irreducible integer polynomial pinned down by a rational isolating interval.
//!
//! Elements are rational vectors in the power basis `1, α, …, α^(d-1)`.
//! Order information (floors, signs) comes from interval evaluation on a
//! bisected isolating interval; no floating point is involved.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::contfrac::surd::QuadraticSurd;
use crate::error::{Error, Result};
use crate::numbers::{parse_int, parse_rational};
use crate::Rational;

/// Default number of bisections a single floor evaluation may spend.
pub const DEFAULT_REFINE_BUDGET: usize = 4096;

/// Dense polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Euclidean division `self = q·divisor + r`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.0.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        let lead = divisor.lead().clone();
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let k = rem.last().unwrap() / &lead;
            for (i, c) in divisor.0.iter().enumerate() {
                rem[shift + i] -= &k * c;
            }
            quot[shift] = k;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Interval enclosure of `{p(x) : lo <= x <= hi}` by interval Horner.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for c in self.0.iter().rev() {
            let products = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = products.iter().min().unwrap().clone();
            let max = products.iter().max().unwrap().clone();
            acc = (min + c, max + c);
        }
        acc
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`,
    /// by Sturm's theorem.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = sturm_sequence(self);
        sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi))
    }
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.is_zero() {
            seq.pop();
            break;
        }
        let prev = &seq[seq.len() - 2];
        let r = prev.rem(last).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Irreducibility over `Q` of a primitive integer polynomial by Kronecker's
/// interpolation method, trying every factor degree up to `deg/2`.
/// Exponential in the degree; meant for small polynomials.
pub fn is_irreducible(coeffs: &[BigInt]) -> bool {
    let poly = Poly::from_ints(coeffs);
    let Some(deg) = poly.degree() else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // Kronecker: a factor of degree k is determined by its values at k + 1
    // integer points, each of which divides the value of the polynomial there.
    let points = sample_points(deg / 2 + 1);
    let values: Vec<BigInt> = points
        .iter()
        .map(|x| poly.eval(&Rational::from_integer(x.clone())).to_integer())
        .collect();
    if values.iter().any(Zero::is_zero) {
        return false;
    }
    let divisor_sets: Vec<Vec<BigInt>> = values.iter().map(signed_divisors).collect();
    for k in 1..=deg / 2 {
        let mut choice = vec![0usize; k + 1];
        loop {
            let targets: Vec<BigInt> = (0..=k).map(|j| divisor_sets[j][choice[j]].clone()).collect();
            if let Some(factor) = interpolate_integer(&points[..=k], &targets) {
                if factor.degree() == Some(k) && poly.rem(&factor).is_zero() {
                    return false;
                }
            }
            // odometer over the divisor choices
            let mut j = 0;
            loop {
                if j > k {
                    break;
                }
                choice[j] += 1;
                if choice[j] < divisor_sets[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
            if j > k {
                break;
            }
        }
    }
    true
}

/// `0, 1, -1, 2, -2, …`
fn sample_points(count: usize) -> Vec<BigInt> {
    (0..count as i64)
        .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -i / 2 })
        .map(BigInt::from)
        .collect()
}

fn signed_divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let root = v.sqrt();
    while d <= root {
        if (&v % &d).is_zero() {
            out.push(d.clone());
            let other = &v / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    let negated: Vec<BigInt> = out.iter().map(|d| -d).collect();
    out.extend(negated);
    out
}

/// Lagrange interpolation; `None` unless every coefficient is an integer.
fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<Poly> {
    let mut total = Poly(Vec::new());
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::new(vec![Rational::from_integer(yi.clone())]);
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = Rational::from_integer(xi - xj);
            let lin = Poly::new(vec![Rational::from_integer(-xj.clone()), Rational::one()]);
            basis = basis.mul(&lin).scale(&(Rational::one() / denom));
        }
        total = total.add(&basis);
    }
    total.coeffs().iter().all(|c| c.is_integer()).then_some(total)
}

/// `Q(α)` for a real root `α` of an irreducible integer polynomial.
#[derive(Debug, Clone)]
pub struct NumberField {
    min_poly: Vec<BigInt>,
    poly: Poly,
    interval: (Rational, Rational),
    refine_budget: usize,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_root(other)
    }
}

impl NumberField {
    /// Validates irreducibility and that `[lo, hi]` isolates exactly one root.
    pub fn new(min_poly: Vec<BigInt>, lo: Rational, hi: Rational) -> Result<Arc<Self>> {
        Self::with_budget(min_poly, lo, hi, DEFAULT_REFINE_BUDGET)
    }

    pub fn with_budget(min_poly: Vec<BigInt>, lo: Rational, hi: Rational, refine_budget: usize) -> Result<Arc<Self>> {
        let poly = Poly::from_ints(&min_poly);
        let deg = poly.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::Invalid("minimal polynomial must have degree >= 1".into()));
        }
        let content = min_poly.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !content.is_one() || !is_irreducible(&min_poly) {
            return Err(Error::Reducible);
        }
        if lo > hi {
            return Err(Error::InvalidInterval("lower end above upper end".into()));
        }
        let mut roots = poly.count_roots(&lo, &hi);
        if poly.eval(&lo).is_zero() {
            roots += 1;
        }
        if roots != 1 {
            return Err(Error::InvalidInterval(format!("contains {roots} roots")));
        }
        let mut min_poly = min_poly;
        min_poly.truncate(deg + 1);
        Ok(Arc::new(NumberField {
            min_poly,
            poly,
            interval: (lo, hi),
            refine_budget,
        }))
    }

    /// `Q(√d)` with `√d` isolated in `[⌊√d⌋, ⌊√d⌋ + 1]`.
    pub fn real_quadratic(d: &BigInt) -> Result<Arc<Self>> {
        let root = d.sqrt();
        Self::new(
            vec![-d.clone(), BigInt::zero(), BigInt::one()],
            Rational::from_integer(root.clone()),
            Rational::from_integer(root + 1),
        )
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn interval(&self) -> &(Rational, Rational) {
        &self.interval
    }

    /// Do both fields describe the same real root of the same polynomial?
    pub fn same_root(&self, other: &NumberField) -> bool {
        if self.min_poly != other.min_poly {
            return false;
        }
        let lo = (&self.interval.0).max(&other.interval.0);
        let hi = (&self.interval.1).min(&other.interval.1);
        if lo > hi {
            return false;
        }
        self.poly.count_roots(lo, hi) + usize::from(self.poly.eval(lo).is_zero()) == 1
    }

    /// Halves the isolating interval, keeping the root inside.
    fn bisect(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mid = (lo + hi) / Rational::from_integer(BigInt::from(2));
        let at_mid = self.poly.eval(&mid);
        if at_mid.is_zero() {
            return (mid.clone(), mid);
        }
        let at_lo = self.poly.eval(lo);
        if at_lo.is_zero() {
            return (lo.clone(), lo.clone());
        }
        if at_lo.is_positive() != at_mid.is_positive() {
            (lo.clone(), mid)
        } else {
            (mid, hi.clone())
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly: Vec<String> = self.min_poly.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "poly: {}; interval: {},{}",
            poly.join(","),
            crate::numbers::fmt_rational(&self.interval.0),
            crate::numbers::fmt_rational(&self.interval.1)
        )
    }
}

/// An element of a [`NumberField`] in the power basis of its generator.
#[derive(Debug, Clone)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for NumberFieldElement {}

impl Hash for NumberFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl NumberFieldElement {
    /// Element with the given power-basis coordinates (padded with zeros).
    pub fn new(field: Arc<NumberField>, mut coords: Vec<Rational>) -> Result<Self> {
        let d = field.degree();
        if coords.len() > d {
            return Err(Error::Invalid(format!(
                "{} coordinates for a degree-{d} field",
                coords.len()
            )));
        }
        coords.resize(d, Rational::zero());
        Ok(NumberFieldElement { field, coords })
    }

    pub fn from_rational(field: Arc<NumberField>, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = r;
        NumberFieldElement { field, coords }
    }

    /// Embeds `r + s·√d` into `Q(√d)`.
    pub fn from_surd(s: &QuadraticSurd) -> Result<Self> {
        let field = NumberField::real_quadratic(s.radicand())?;
        Self::new(field, vec![s.rational_part().clone(), s.irrational_coeff().clone()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Same element rebound to an equal field (for shared-`Arc` vectors).
    pub fn rebind(&self, field: &Arc<NumberField>) -> Result<Self> {
        if !self.field.same_root(field) {
            return Err(Error::IncompatibleFields);
        }
        Ok(NumberFieldElement {
            field: field.clone(),
            coords: self.coords.clone(),
        })
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.same_root(&other.field) {
            Ok(())
        } else {
            Err(Error::IncompatibleFields)
        }
    }

    fn as_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    fn from_poly(&self, p: Poly) -> Self {
        let mut coords = p.rem(&self.field.poly).coeffs().to_vec();
        coords.resize(self.field.degree(), Rational::zero());
        NumberFieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.from_poly(self.as_poly().add(&other.as_poly())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.from_poly(self.as_poly().sub(&other.as_poly())))
    }

    pub fn sub_integer(&self, m: &BigInt) -> Self {
        let mut coords = self.coords.clone();
        coords[0] -= Rational::from_integer(m.clone());
        NumberFieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.from_poly(self.as_poly().mul(&other.as_poly())))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // Invariant: r_i ≡ s_i · a  (mod m)
        let (mut r0, mut r1) = (self.field.poly.clone(), self.as_poly());
        let (mut s0, mut s1) = (Poly(Vec::new()), Poly::new(vec![Rational::one()]));
        while r1.degree().is_some_and(|d| d > 0) {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1.coeffs().first().cloned().unwrap_or_else(Rational::zero);
        if c.is_zero() {
            // gcd with the minimal polynomial is nontrivial: impossible when irreducible
            return Err(Error::Reducible);
        }
        Ok(self.from_poly(s1.scale(&(Rational::one() / c))))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// Rational enclosure `[lo, hi]` of the element's real value whose width
    /// is below `width`, or `PrecisionExhausted`.
    pub fn enclose(&self, width: &Rational) -> Result<(Rational, Rational)> {
        if let Some(r) = self.as_rational() {
            return Ok((r.clone(), r.clone()));
        }
        let p = self.as_poly();
        let (mut lo, mut hi) = self.field.interval.clone();
        for _ in 0..=self.field.refine_budget {
            let (a, b) = p.eval_interval(&lo, &hi);
            if &(&b - &a) < width {
                return Ok((a, b));
            }
            (lo, hi) = self.field.bisect(&lo, &hi);
        }
        Err(Error::PrecisionExhausted)
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> Result<BigInt> {
        if let Some(r) = self.as_rational() {
            return Ok(r.floor().to_integer());
        }
        let p = self.as_poly();
        let (mut lo, mut hi) = self.field.interval.clone();
        for _ in 0..=self.field.refine_budget {
            let (a, b) = p.eval_interval(&lo, &hi);
            let fa = a.floor();
            // An irrational value never equals an integer, so refinement
            // eventually separates it from both neighbours.
            if b < &fa + Rational::one() {
                return Ok(fa.to_integer());
            }
            (lo, hi) = self.field.bisect(&lo, &hi);
        }
        Err(Error::PrecisionExhausted)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let width = Rational::new(BigInt::one(), BigInt::one() << 60);
        match self.enclose(&width) {
            Ok((a, b)) => ((a + b) / Rational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly: Vec<String> = self.field.min_poly.iter().map(|c| c.to_string()).collect();
        let coords: Vec<String> = self.coords.iter().map(crate::numbers::fmt_rational).collect();
        write!(
            f,
            "poly: {}; coords: {}; interval: {},{}",
            poly.join(","),
            coords.join(","),
            crate::numbers::fmt_rational(&self.field.interval.0),
            crate::numbers::fmt_rational(&self.field.interval.1)
        )
    }
}

impl std::str::FromStr for NumberFieldElement {
    type Err = Error;

    /// Parses `poly: c0,…,cd; coords: r0,…,r_{d-1}; interval: lo,hi`.
    fn from_str(text: &str) -> Result<Self> {
        let mut poly = None;
        let mut coords = None;
        let mut interval = None;
        for part in text.split(';') {
            let (key, value) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected key: value, got {part:?}")))?;
            let items: Vec<&str> = value.split(',').map(str::trim).collect();
            match key.trim() {
                "poly" => poly = Some(items.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>>>()?),
                "coords" => coords = Some(items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?),
                "interval" => {
                    let ends = items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                    let [lo, hi]: [Rational; 2] = ends
                        .try_into()
                        .map_err(|_| Error::Parse("interval needs two endpoints".into()))?;
                    interval = Some((lo, hi));
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let missing = |what: &str| Error::Parse(format!("missing {what}"));
        let (lo, hi) = interval.ok_or_else(|| missing("interval"))?;
        let field = NumberField::new(poly.ok_or_else(|| missing("poly"))?, lo, hi)?;
        NumberFieldElement::new(field, coords.ok_or_else(|| missing("coords"))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn cbrt2() -> Arc<NumberField> {
        NumberField::new(ints(&[-2, 0, 0, 1]), q(1, 1), q(2, 1)).unwrap()
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&ints(&[-2, 0, 0, 1])));
        assert!(is_irreducible(&ints(&[-2, 0, 1])));
        assert!(is_irreducible(&ints(&[1, 1, 1, 1, 1])));
        assert!(!is_irreducible(&ints(&[-1, 0, 1])));
        // (x² + 1)(x² + 2) has no rational roots but splits over Q
        assert!(!is_irreducible(&ints(&[2, 0, 3, 0, 1])));
        // (x² − 2)(x³ − 3)
        assert!(!is_irreducible(&ints(&[6, 0, -3, -2, 0, 1])));
        assert!(is_irreducible(&ints(&[-1, -1, 0, 1])));
    }

    #[test]
    fn sturm_counts() {
        let p = Poly::from_ints(&ints(&[-2, 0, 0, 1]));
        assert_eq!(p.count_roots(&q(-10, 1), &q(10, 1)), 1);
        let p = Poly::from_ints(&ints(&[-1, -3, 0, 1])); // three real roots
        assert_eq!(p.count_roots(&q(-10, 1), &q(10, 1)), 3);
        assert_eq!(p.count_roots(&q(1, 1), &q(2, 1)), 1);
    }

    #[test]
    fn field_validation() {
        assert!(matches!(
            NumberField::new(ints(&[-1, -3, 0, 1]), q(-10, 1), q(10, 1)),
            Err(Error::InvalidInterval(_))
        ));
        assert_eq!(
            NumberField::new(ints(&[-4, 0, 1]), q(1, 1), q(3, 1)).unwrap_err(),
            Error::Reducible
        );
        assert!(cbrt2().same_root(&NumberField::new(ints(&[-2, 0, 0, 1]), q(5, 4), q(3, 2)).unwrap()));
    }

    #[test]
    fn arithmetic_in_cubic_field() {
        let f = cbrt2();
        let alpha = NumberFieldElement::new(f.clone(), vec![q(0, 1), q(1, 1)]).unwrap();
        let cube = alpha.mul(&alpha).unwrap().mul(&alpha).unwrap();
        assert_eq!(cube.as_rational(), Some(&q(2, 1)));
        let x = NumberFieldElement::new(f.clone(), vec![q(-1, 1), q(1, 1), q(3, 7)]).unwrap();
        let one = x.mul(&x.inverse().unwrap()).unwrap();
        assert_eq!(one.as_rational(), Some(&q(1, 1)));
        assert_eq!(alpha.floor().unwrap(), BigInt::from(1));
        let four_alpha_sq = NumberFieldElement::new(f, vec![q(0, 1), q(0, 1), q(4, 1)]).unwrap();
        assert_eq!(four_alpha_sq.floor().unwrap(), BigInt::from(6)); // 4·1.587…
        let neg = x.sub_integer(&BigInt::from(5));
        assert_eq!(neg.floor().unwrap(), BigInt::from((neg.to_f64()).floor() as i64));
    }

    #[test]
    fn precision_budget_is_reported() {
        let f = NumberField::with_budget(ints(&[-2, 0, 0, 1]), q(1, 1), q(2, 1), 3).unwrap();
        // 10^6 (α − 1.259921) is within 10^-1 of an integer; 3 bisections cannot decide it.
        let x = NumberFieldElement::new(f, vec![q(-1259921, 1), q(1000000, 1)]).unwrap();
        assert_eq!(x.floor(), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn parse_and_display() {
        let text = "poly: -2,0,0,1; coords: -1,1,0; interval: 1,2";
        let x: NumberFieldElement = text.parse().unwrap();
        let shown = x.to_string();
        assert_eq!(shown, "poly: -2,0,0,1; coords: -1/1,1/1,0/1; interval: 1/1,2/1");
        assert_eq!(shown.parse::<NumberFieldElement>().unwrap(), x);
        assert!((x.to_f64() - (2f64.cbrt() - 1.0)).abs() < 1e-12);
        assert!("poly: -2,0,0,1; coords: 1".parse::<NumberFieldElement>().is_err());
    }

    #[test]
    fn surd_embedding() {
        let s: QuadraticSurd = "(-1+sqrt(8))/3".parse().unwrap();
        let x = NumberFieldElement::from_surd(&s).unwrap();
        assert_eq!(x.floor().unwrap(), s.floor());
        assert!((x.to_f64() - s.to_f64()).abs() < 1e-12);
    }
}

//! Case II: non-dyadic rationals in `(0, 1)`, the `?`-images of quadratic
//! irrationals, bounded by denominator.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::Rational;

/// Largest denominator bound accepted.
pub const CASE2_GUARD: u64 = 10_000;

/// Euler's totient for `0..=limit` by a linear-time sieve.
pub fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// The Case II population up to a denominator bound, counted two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Population {
    n: usize,
    t: u64,
    /// Non-dyadic denominators `q ≤ T` with their numerator counts `φ(q)`.
    denominators: Vec<(u64, u64)>,
}

impl Case2Population {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> u64 {
        self.t
    }

    /// Number of points `(p1/q1, …, pn/qn)`.
    pub fn pair_count(&self) -> u64 {
        let one: u64 = self.denominators.iter().map(|(_, phi)| phi).sum();
        one.pow(self.n as u32)
    }

    /// Number of denominator vectors `(q1, …, qn)`.
    pub fn denominator_count(&self) -> u64 {
        (self.denominators.len() as u64).pow(self.n as u32)
    }

    /// Distinct admissible denominators in increasing order.
    pub fn denominators(&self) -> impl Iterator<Item = u64> + '_ {
        self.denominators.iter().map(|(q, _)| *q)
    }

    /// The one-dimensional points in increasing denominator, then numerator.
    pub fn points_1d(&self) -> impl Iterator<Item = Rational> + '_ {
        self.denominators.iter().flat_map(|&(q, _)| {
            (1..q)
                .filter(move |p| p.gcd(&q) == 1)
                .map(move |p| Rational::new(p.into(), q.into()))
        })
    }

    /// All points, lazily, in lexicographic order of the 1-D listing.
    pub fn points(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        let base: Vec<Rational> = self.points_1d().collect();
        let n = self.n;
        let total = base.len().pow(n as u32);
        (0..total).map(move |mut index| {
            let mut v = vec![Rational::default(); n];
            for slot in v.iter_mut().rev() {
                *slot = base[index % base.len()].clone();
                index /= base.len();
            }
            v
        })
    }
}

pub fn enumerate_case2(n: usize, t: u64) -> Result<Case2Population> {
    if !(1..=2).contains(&n) {
        return Err(Error::OutOfRange(format!("dimension {n} outside 1..=2")));
    }
    if t == 0 {
        return Err(Error::Invalid("T must be positive".into()));
    }
    if t > CASE2_GUARD {
        return Err(Error::OverGuard(format!("T = {t} exceeds {CASE2_GUARD}")));
    }
    let phi = totients(t as usize);
    let denominators = (3..=t).filter(|q| !q.is_power_of_two()).map(|q| (q, phi[q as usize])).collect();
    Ok(Case2Population { n, t, denominators })
}

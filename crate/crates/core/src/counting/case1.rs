//! Case I: rational vectors whose `?ⁿ` image is dyadic with every exponent
//! at most `T`.
//!
//! A rational vector has a terminating Jacobi–Perron expansion, and the
//! exponent of `?` on a digit stream of sum `s ≥ 1` is `s − 1`. The population
//! is therefore the set of vectors whose streams all sum to at most `T + 1`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Rational;

/// Largest `T` accepted for each dimension.
pub fn case1_guard(n: usize) -> Option<u32> {
    match n {
        1 => Some(24),
        2 => Some(10),
        3 => Some(6),
        _ => None,
    }
}

/// A Case I point with the dyadic exponents `k_i` of its `?ⁿ` image.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Case1Point {
    pub coords: Vec<Rational>,
    pub exponents: Vec<u32>,
}

impl Case1Point {
    pub fn max_exponent(&self) -> u32 {
        self.exponents.iter().copied().max().unwrap_or(0)
    }

    /// `log2` of the `?`-height `Π 2^{k_i}`.
    pub fn height_exponent(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

pub fn enumerate_case1(n: usize, t: u32) -> Result<Vec<Case1Point>> {
    let guard = case1_guard(n).ok_or_else(|| Error::OutOfRange(format!("dimension {n} outside 1..=3")))?;
    if t == 0 {
        return Err(Error::Invalid("T must be positive".into()));
    }
    if t > guard {
        return Err(Error::OverGuard(format!("T = {t} exceeds {guard} for n = {n}")));
    }
    if n == 1 {
        let mut raw = stern_brocot::<u64>(t - 1);
        raw.par_sort_unstable_by(|a, b| (u128::from(a.0) * u128::from(b.1)).cmp(&(u128::from(b.0) * u128::from(a.1))));
        return Ok(raw
            .into_par_iter()
            .map(|(p, q, depth)| Case1Point {
                coords: vec![Rational::new(p.into(), q.into())],
                exponents: vec![depth + 1],
            })
            .collect());
    }
    let mut points: Vec<Case1Point> = {
        backward_jp::<i64>(n, t + 1)
            .into_iter()
            .map(|(coords, sums)| Case1Point {
                coords: coords
                    .into_iter()
                    .map(|c| Rational::new(c.numer().to_owned().into(), c.denom().to_owned().into()))
                    .collect(),
                exponents: sums.into_iter().map(|s| s.saturating_sub(1)).collect(),
            })
            .collect()
    };
    points.sort();
    Ok(points)
}

/// Every rational of the Stern–Brocot subtree under `1/2` down to
/// `max_depth`, as `(p, q, depth)`. Depth `d` holds the rationals whose
/// continued fraction digits sum to `d + 2`.
pub fn stern_brocot<I>(max_depth: u32) -> Vec<(I, I, u32)>
where
    I: Integer + Clone + Send + Sync,
{
    const SHARD_DEPTH: u32 = 6;
    type Frame<I> = (I, I, I, I, u32);
    let root: Frame<I> = (I::zero(), I::one(), I::one(), I::one(), 0);
    let mut shards = vec![root];
    let mut out = Vec::new();
    // breadth-first down to the shard depth, then independent subtrees
    while shards.first().is_some_and(|f| f.4 < SHARD_DEPTH.min(max_depth)) {
        let mut next = Vec::with_capacity(shards.len() * 2);
        for (a, b, c, d, depth) in shards {
            let (p, q) = (a.clone() + c.clone(), b.clone() + d.clone());
            out.push((p.clone(), q.clone(), depth));
            next.push((a, b, p.clone(), q.clone(), depth + 1));
            next.push((p, q, c, d, depth + 1));
        }
        shards = next;
    }
    let rest: Vec<Vec<(I, I, u32)>> = shards
        .into_par_iter()
        .map(|frame| {
            let mut local = Vec::new();
            let mut stack = vec![frame];
            while let Some((a, b, c, d, depth)) = stack.pop() {
                if depth > max_depth {
                    continue;
                }
                let (p, q) = (a.clone() + c.clone(), b.clone() + d.clone());
                local.push((p.clone(), q.clone(), depth));
                stack.push((p.clone(), q.clone(), c, d, depth + 1));
                stack.push((a, b, p, q, depth + 1));
            }
            local
        })
        .collect();
    out.extend(rest.into_iter().flatten());
    out
}

type Node<I> = (Vec<Ratio<I>>, Vec<u32>);

/// All vectors in `(0,1)^n` with a terminating Jacobi–Perron expansion whose
/// streams each sum to at most `budget`, built by inverting steps from the
/// zero vector. Returned with their stream sums.
pub fn backward_jp<I>(n: usize, budget: u32) -> Vec<Node<I>>
where
    I: Integer + Clone + Send + Sync + From<u32>,
{
    let start: Node<I> = (vec![Ratio::zero(); n], vec![0; n]);
    let first = predecessors(&start, budget);
    let found: Vec<Vec<Node<I>>> = first
        .into_par_iter()
        .map(|node| {
            let mut local = Vec::new();
            let mut stack = vec![node];
            while let Some(node) = stack.pop() {
                stack.extend(predecessors(&node, budget));
                if node.0.iter().all(|c| !c.is_zero()) {
                    local.push(node);
                }
            }
            local
        })
        .collect();
    found.into_iter().flatten().collect()
}

/// States `x` whose forward step (including any rotation) lands on `y`.
fn predecessors<I>((y, sums): &Node<I>, budget: u32) -> Vec<Node<I>>
where
    I: Integer + Clone + From<u32>,
{
    let n = y.len();
    let last = n - 1;
    let mut out = Vec::new();
    // stream i receives a_i + 1 (i < n − 1) or a_n (the last position)
    let room: Vec<u32> = sums.iter().map(|s| budget.saturating_sub(*s)).collect();
    if room.iter().any(|r| *r == 0) {
        return out;
    }
    let mut digits = vec![0u32; n];
    loop {
        // digits[last] ranges over 1..=room[last]; the rest over 0..room[i]
        if digits[last] >= 1 {
            let denom = y[last].clone() + Ratio::from_integer(I::from(digits[last]));
            let admissible = denom > Ratio::one() && (0..last).all(|i| y[i].clone() + Ratio::from_integer(I::from(digits[i])) < denom);
            if admissible {
                let mut s = Vec::with_capacity(n);
                s.push(denom.recip());
                for i in 0..last {
                    s.push((y[i].clone() + Ratio::from_integer(I::from(digits[i]))) / denom.clone());
                }
                let mut next_sums = sums.clone();
                for i in 0..n {
                    next_sums[i] += if i == last { digits[i] } else { digits[i] + 1 };
                }
                out.push((s.clone(), next_sums.clone()));
                // rotations: x with r leading zeros rotates left onto s
                let mut rotated = s;
                for _ in 1..n {
                    if !rotated[last].is_zero() {
                        break;
                    }
                    rotated.rotate_right(1);
                    out.push((rotated.clone(), next_sums.clone()));
                }
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            let top = if i == last { room[i] } else { room[i] - 1 };
            if digits[i] < top {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::jp_expand;
    use crate::minkowski::qmark_nd;
    use crate::contfrac::JpVector;
    use crate::numbers::to_dyadic;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn one_dimensional_examples() {
        let coords = |t| -> Vec<Rational> {
            enumerate_case1(1, t).unwrap().into_iter().map(|p| p.coords[0].clone()).collect()
        };
        assert_eq!(coords(1), vec![q(1, 2)]);
        assert_eq!(coords(2), vec![q(1, 3), q(1, 2), q(2, 3)]);
        assert_eq!(coords(4).len(), 15);
    }

    #[test]
    fn census_identity() {
        for t in 1..=12u32 {
            assert_eq!(enumerate_case1(1, t).unwrap().len(), (1usize << t) - 1);
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(enumerate_case1(1, 25), Err(Error::OverGuard(_))));
        assert!(matches!(enumerate_case1(4, 2), Err(Error::OutOfRange(_))));
        assert!(enumerate_case1(2, 0).is_err());
    }

    /// Farey brute force: all p/q in (0,1) with q ≤ 2^{T+1}, filtered by digit sum.
    #[test]
    fn stern_brocot_matches_brute_force() {
        for t in 1..=8u32 {
            let mut brute: Vec<Rational> = Vec::new();
            for den in 2..=(1i64 << (t + 1)) {
                for num in 1..den {
                    let r = q(num, den);
                    if r.denom() != &BigInt::from(den) {
                        continue;
                    }
                    let (_, digits) = crate::contfrac::expand_ratio(&num_rational::Ratio::new(num, den));
                    if digits.iter().sum::<i64>() <= i64::from(t) + 1 {
                        brute.push(r);
                    }
                }
            }
            brute.sort();
            let got: Vec<Rational> = enumerate_case1(1, t).unwrap().into_iter().map(|p| p.coords[0].clone()).collect();
            assert_eq!(got, brute, "T = {t}");
        }
    }

    #[test]
    fn backward_search_in_one_dimension_is_stern_brocot() {
        for t in 1..=7u32 {
            let mut a: Vec<(i64, i64)> = backward_jp::<i64>(1, t + 1)
                .into_iter()
                .map(|(c, _)| (*c[0].numer(), *c[0].denom()))
                .collect();
            let mut b: Vec<(i64, i64)> = stern_brocot::<i64>(t - 1).into_iter().map(|(p, q, _)| (p, q)).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    /// Brute force over common denominators: inverting a step multiplies the
    /// common denominator by at most `a_n + 1`, so `2^{T+1}` bounds it.
    #[test]
    fn two_dimensional_matches_brute_force() {
        for t in 1..=3u32 {
            let bound = 1i64 << (t + 1);
            let mut brute = std::collections::BTreeSet::new();
            for den in 2..=bound {
                for a in 1..den {
                    for b in 1..den {
                        let x = vec![q(a, den), q(b, den)];
                        let e = jp_expand(&x, 64).unwrap();
                        assert!(e.terminated());
                        if (0..2).all(|i| e.stream(i).iter().sum::<BigInt>() <= BigInt::from(t + 1)) {
                            brute.insert(x);
                        }
                    }
                }
            }
            let got: Vec<Vec<Rational>> = enumerate_case1(2, t).unwrap().into_iter().map(|p| p.coords).collect();
            let unique: std::collections::BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(unique.len(), got.len(), "duplicates at T = {t}");
            assert_eq!(unique, brute, "T = {t}");
        }
    }

    #[test]
    fn exponents_match_qmark_images() {
        for (n, t) in [(1usize, 6u32), (2, 4), (3, 3)] {
            for p in enumerate_case1(n, t).unwrap() {
                let image = qmark_nd(&JpVector::Rational(p.coords.clone()), 100).unwrap();
                let exps: Vec<u32> = image.iter().map(|v| to_dyadic(&v.value).unwrap().exponent() as u32).collect();
                assert_eq!(exps, p.exponents, "{:?}", p.coords);
                assert!(p.max_exponent() <= t);
            }
        }
    }
}

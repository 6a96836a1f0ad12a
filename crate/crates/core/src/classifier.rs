//! The regime trichotomy: comparing the rank of the ordered group with
//! `n + 1`, bounding that rank below by odd Betti numbers, and the
//! specialization to curves of genus `g`.

use std::fmt;

use num_traits::Float;

use crate::counting::FitLabel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegimeCase {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Asymptotic {
    /// `log2 N ~ Tⁿ`
    PowerT,
    /// `log2 N ~ n·log2 T`
    LogT,
    Const,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegimeLabel {
    pub case: RegimeCase,
    pub asymptotic: Asymptotic,
    pub n: u32,
}

impl RegimeCase {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeCase::I => "I",
            RegimeCase::II => "II",
            RegimeCase::III => "III",
        }
    }
}

impl RegimeLabel {
    fn of(case: RegimeCase, n: u32) -> Self {
        let asymptotic = match case {
            RegimeCase::I => Asymptotic::PowerT,
            RegimeCase::II => Asymptotic::LogT,
            RegimeCase::III => Asymptotic::Const,
        };
        RegimeLabel { case, asymptotic, n }
    }

    /// `T^n`, `n·log2T` or `Const`, with `n = 1` written as `T` and `log2T`.
    pub fn asymptotic_str(&self) -> String {
        match (self.asymptotic, self.n) {
            (Asymptotic::PowerT, 1) => "T".into(),
            (Asymptotic::PowerT, n) => format!("T^{n}"),
            (Asymptotic::LogT, 1) => "log2T".into(),
            (Asymptotic::LogT, n) => format!("{n}*log2T"),
            (Asymptotic::Const, _) => "Const".into(),
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case {}: {}", self.case.as_str(), self.asymptotic_str())
    }
}

pub fn regime_from_rank(n: u32, rank: u64) -> RegimeLabel {
    let case = match rank.cmp(&(u64::from(n) + 1)) {
        std::cmp::Ordering::Less => RegimeCase::I,
        std::cmp::Ordering::Equal => RegimeCase::II,
        std::cmp::Ordering::Greater => RegimeCase::III,
    };
    RegimeLabel::of(case, n)
}

/// Odd Betti numbers `β1, β3, …, β_{2n−1}` of an `n`-dimensional variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiProfile {
    n: u32,
    odd_betti: Vec<u64>,
}

impl BettiProfile {
    pub fn new(n: u32, odd_betti: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if odd_betti.len() != n as usize {
            return Err(Error::Invalid(format!("expected {n} odd Betti numbers, got {}", odd_betti.len())));
        }
        Ok(BettiProfile { n, odd_betti })
    }

    /// A curve of genus `g`: `n = 1`, `β1 = 2g`.
    pub fn curve(g: u64) -> Self {
        BettiProfile {
            n: 1,
            odd_betti: vec![2 * g],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn odd_betti(&self) -> &[u64] {
        &self.odd_betti
    }
}

pub fn rank_lower_bound_from_betti(b: &BettiProfile) -> u64 {
    b.odd_betti.iter().sum()
}

/// Finiteness verdict with the bound and regime it rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FinitenessVerdict {
    pub finite: bool,
    pub rank_bound: u64,
    pub regime: RegimeLabel,
}

pub fn is_finite_by_betti(b: &BettiProfile) -> FinitenessVerdict {
    let rank_bound = rank_lower_bound_from_betti(b);
    let regime = regime_from_rank(b.n, rank_bound);
    let finite = rank_bound > u64::from(b.n) + 1;
    debug_assert_eq!(finite, regime.case == RegimeCase::III);
    FinitenessVerdict {
        finite,
        rank_bound,
        regime,
    }
}

pub fn curve_regime(g: u64) -> RegimeLabel {
    let case = match g {
        0 => RegimeCase::I,
        1 => RegimeCase::II,
        _ => RegimeCase::III,
    };
    RegimeLabel::of(case, 1)
}

/// Whether rank `r` can belong to a genus-`g` curve: `2g ≤ r`, with `r` on
/// the same side of 2 as the genus case (`g = 0` needs `r < 2`, `g = 1`
/// needs `r = 2`, `g ≥ 2` needs `r > 2`).
pub fn curve_rank_admissible(g: u64, r: u64) -> bool {
    let side = match g {
        0 => r < 2,
        1 => r == 2,
        _ => r > 2,
    };
    r >= 1 && 2 * g <= r && side
}

/// The growth shape a fit reports, read as a regime case.
pub fn case_of_fit<F: Float>(label: &FitLabel<F>) -> RegimeCase {
    match label {
        FitLabel::ExponentialPoly { .. } => RegimeCase::I,
        FitLabel::LogLinear { .. } => RegimeCase::II,
        FitLabel::Bounded => RegimeCase::III,
    }
}

/// The curve counting functions `N = T`, `N = log2 T`, `N = Const`, read on
/// the `log2` scale where the general shapes `Tⁿ`, `n·log2 T`, `Const` with
/// `n = 1` live: both sequences name the same asymptotic for each case.
pub fn curve_shapes_agree(g: u64) -> bool {
    let curve = curve_regime(g);
    let general = regime_from_rank(1, match g {
        0 => 1,
        1 => 2,
        _ => 2 * g,
    });
    curve == general
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(regime_from_rank(1, 1).case, RegimeCase::I);
        assert_eq!(regime_from_rank(1, 1).asymptotic_str(), "T");
        assert_eq!(regime_from_rank(1, 2).asymptotic_str(), "log2T");
        let r = regime_from_rank(2, 5);
        assert_eq!((r.case, r.asymptotic), (RegimeCase::III, Asymptotic::Const));
        assert_eq!(regime_from_rank(2, 2).asymptotic_str(), "T^2");
        assert_eq!(regime_from_rank(2, 3).asymptotic_str(), "2*log2T");
    }

    #[test]
    fn betti_examples() {
        assert_eq!(rank_lower_bound_from_betti(&BettiProfile::curve(2)), 4);
        assert_eq!(rank_lower_bound_from_betti(&BettiProfile::new(2, vec![0, 0]).unwrap()), 0);
        assert_eq!(rank_lower_bound_from_betti(&BettiProfile::new(2, vec![4, 4]).unwrap()), 8);
        assert!(is_finite_by_betti(&BettiProfile::curve(2)).finite);
        assert!(!is_finite_by_betti(&BettiProfile::curve(1)).finite);
        assert!(is_finite_by_betti(&BettiProfile::new(2, vec![4, 4]).unwrap()).finite);
        assert!(BettiProfile::new(2, vec![1]).is_err());
    }

    #[test]
    fn curve_examples() {
        assert_eq!(curve_regime(0).asymptotic_str(), "T");
        assert_eq!(curve_regime(1).asymptotic_str(), "log2T");
        assert_eq!(curve_regime(7).asymptotic_str(), "Const");
    }

    #[test]
    fn curves_agree_with_rank_regimes() {
        for g in 0..=10 {
            for r in 1..=10 {
                if curve_rank_admissible(g, r) {
                    assert_eq!(curve_regime(g), regime_from_rank(1, r), "g = {g}, r = {r}");
                }
            }
            assert!((1..=10).any(|r| curve_rank_admissible(g, r)) || 2 * g > 10);
            assert!(curve_shapes_agree(g));
        }
    }

    #[test]
    fn finiteness_is_case_three() {
        for n in 1..=4u32 {
            for total in 0..=12u64 {
                let mut betti = vec![0; n as usize];
                betti[0] = total;
                let v = is_finite_by_betti(&BettiProfile::new(n, betti).unwrap());
                assert_eq!(v.finite, v.regime.case == RegimeCase::III);
                assert_eq!(v.finite, total > u64::from(n) + 1);
            }
        }
    }

    #[test]
    fn fit_labels_map_to_cases() {
        assert_eq!(case_of_fit::<f64>(&FitLabel::ExponentialPoly { degree: 1 }), RegimeCase::I);
        assert_eq!(case_of_fit(&FitLabel::LogLinear { slope: 1.0f64 }), RegimeCase::II);
        assert_eq!(case_of_fit::<f64>(&FitLabel::Bounded), RegimeCase::III);
    }
}

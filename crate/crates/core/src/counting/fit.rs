//! Least-squares comparison of `log2 N` against three growth shapes:
//! `a + b·Tⁿ`, `a + b·log2 T` and the constant `a`.
//!
//! Points are weighted by `N`. The variance of `log N` under counting noise
//! scales like `1/N`, so small early counts do not dominate the fit.

use std::fmt;

use num_traits::Float;

use crate::counting::CountSample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitLabel<F> {
    ExponentialPoly { degree: u32 },
    LogLinear { slope: F },
    Bounded,
}

impl<F: Float + fmt::Display> fmt::Display for FitLabel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitLabel::ExponentialPoly { degree } => write!(f, "ExponentialPoly({degree})"),
            FitLabel::LogLinear { slope } => write!(f, "LogLinear({slope:.6})"),
            FitLabel::Bounded => f.write_str("Bounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Bounded,
    LogLinear,
    ExponentialPoly,
}

/// One fitted candidate `log2 N ≈ intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<F> {
    pub shape: Shape,
    pub intercept: F,
    pub slope: F,
    pub residual: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeFit<F> {
    pub label: FitLabel<F>,
    /// `2^intercept`, the multiplicative constant in front of the shape.
    pub amplitude: F,
    pub exponent_or_slope: F,
    /// Weighted mean squared error on the `log2 N` axis.
    pub residual: F,
    pub candidates: [Candidate<F>; 3],
}

impl<F: Float> RegimeFit<F> {
    /// Fitted `log2 N` at `t`.
    pub fn predict(&self, t: F) -> F {
        let intercept = self.amplitude.log2();
        match self.label {
            FitLabel::Bounded => intercept,
            FitLabel::LogLinear { slope } => intercept + slope * t.log2(),
            FitLabel::ExponentialPoly { degree } => {
                intercept + self.exponent_or_slope * t.powf(F::from(degree).expect("small integer"))
            }
        }
    }
}

fn weighted_line<F: Float>(xs: &[F], ys: &[F], ws: &[F]) -> (F, F, F) {
    let total = ws.iter().fold(F::zero(), |a, &w| a + w);
    let mean = |v: &[F]| v.iter().zip(ws).fold(F::zero(), |a, (&x, &w)| a + w * x) / total;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxx, mut sxy) = (F::zero(), F::zero());
    for ((&x, &y), &w) in xs.iter().zip(ys).zip(ws) {
        sxx = sxx + w * (x - mx) * (x - mx);
        sxy = sxy + w * (x - mx) * (y - my);
    }
    let slope = if sxx > F::zero() { sxy / sxx } else { F::zero() };
    let intercept = my - slope * mx;
    let sse = xs
        .iter()
        .zip(ys)
        .zip(ws)
        .fold(F::zero(), |a, ((&x, &y), &w)| {
            let r = y - intercept - slope * x;
            a + w * r * r
        });
    (intercept, slope, sse / total)
}

pub fn fit_regime<F: Float>(samples: &[CountSample], n: u32) -> Result<RegimeFit<F>> {
    if samples.len() < 4 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    if samples.iter().any(|s| s.n == 0 || s.t == 0) {
        return Err(Error::Invalid("fit needs T >= 1 and N >= 1 for every sample".into()));
    }
    if samples.windows(2).any(|w| w[0].t >= w[1].t) {
        return Err(Error::Invalid("T must be strictly increasing".into()));
    }
    let cast = |v: u64| F::from(v).expect("u64 fits a float");
    let ys: Vec<F> = samples.iter().map(|s| cast(s.n).log2()).collect();
    let ws: Vec<F> = samples.iter().map(|s| cast(s.n)).collect();
    let degree = F::from(n).expect("small integer");
    let powers: Vec<F> = samples.iter().map(|s| cast(s.t).powf(degree)).collect();
    let logs: Vec<F> = samples.iter().map(|s| cast(s.t).log2()).collect();
    let zeros = vec![F::zero(); samples.len()];

    let candidate = |shape, xs: &[F]| {
        let (intercept, slope, residual) = weighted_line(xs, &ys, &ws);
        Candidate {
            shape,
            intercept,
            slope,
            residual,
        }
    };
    let candidates = [
        candidate(Shape::Bounded, &zeros),
        candidate(Shape::LogLinear, &logs),
        candidate(Shape::ExponentialPoly, &powers),
    ];
    // the simplest shape within rounding of the best residual wins
    let spread = candidates[0].residual;
    let tolerance = F::epsilon() * F::from(1024).unwrap() * (F::one() + spread);
    let best = candidates.iter().fold(F::infinity(), |m, c| m.min(c.residual));
    let chosen = *candidates
        .iter()
        .find(|c| c.residual <= best + tolerance)
        .expect("some candidate attains the minimum");
    let label = match chosen.shape {
        Shape::Bounded => FitLabel::Bounded,
        Shape::LogLinear => FitLabel::LogLinear { slope: chosen.slope },
        Shape::ExponentialPoly => FitLabel::ExponentialPoly { degree: n },
    };
    Ok(RegimeFit {
        label,
        amplitude: F::from(2).unwrap().powf(chosen.intercept),
        exponent_or_slope: chosen.slope,
        residual: chosen.residual,
        candidates,
    })
}

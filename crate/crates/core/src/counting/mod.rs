//! Point populations, their counting functions `N(T)`, and growth fits.

pub mod case1;
pub mod case2;
pub mod fit;

use std::fmt;

pub use case1::{case1_guard, enumerate_case1, stern_brocot, Case1Point};
pub use case2::{enumerate_case2, totients, Case2Population, CASE2_GUARD};
pub use fit::{fit_regime, Candidate, FitLabel, RegimeFit, Shape};

use crate::error::{Error, Result};

/// `N(T)` at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountSample {
    pub t: u64,
    pub n: u64,
}

impl CountSample {
    /// `log2 N`, or `None` when `N = 0`.
    pub fn log2n(&self) -> Option<f64> {
        (self.n > 0).then(|| (self.n as f64).log2())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case2Count {
    Pairs,
    Denominators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Population {
    Empty,
    Case1 { n: usize },
    Case2 { n: usize, count: Case2Count },
}

/// How `T` bounds a point: through the population's own parameter (exponents
/// in Case I, denominators in Case II) or through its `?`-height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HeightMode {
    #[default]
    Parameter,
    Raw,
}

impl fmt::Display for HeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeightMode::Parameter => "parameter",
            HeightMode::Raw => "raw",
        })
    }
}

pub fn counting_function(population: &Population, grid: &[u64], mode: HeightMode) -> Result<Vec<CountSample>> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("T grid must be strictly increasing".into()));
    }
    if grid.first() == Some(&0) {
        return Err(Error::Invalid("T must be positive".into()));
    }
    let Some(&top) = grid.last() else {
        return Ok(Vec::new());
    };
    let counts: Vec<u64> = match (*population, mode) {
        (Population::Empty, _) => vec![0; grid.len()],
        (Population::Case1 { n: 1 }, HeightMode::Parameter) => {
            let top = u32::try_from(top).map_err(|_| Error::OverGuard(format!("T = {top}")))?;
            if top > case1_guard(1).unwrap_or(0) {
                return Err(Error::OverGuard(format!("T = {top} exceeds the n = 1 guard")));
            }
            let mut per_depth = vec![0u64; top as usize];
            for (_, _, depth) in stern_brocot::<u64>(top - 1) {
                per_depth[depth as usize] += 1;
            }
            grid.iter()
                .map(|&t| per_depth.iter().take(t as usize).sum())
                .collect()
        }
        (Population::Case1 { n }, HeightMode::Parameter) => {
            let top = u32::try_from(top).map_err(|_| Error::OverGuard(format!("T = {top}")))?;
            let points = enumerate_case1(n, top)?;
            grid.iter()
                .map(|&t| points.iter().filter(|p| u64::from(p.max_exponent()) <= t).count() as u64)
                .collect()
        }
        (Population::Case1 { n }, HeightMode::Raw) => {
            // ℋ = 2^{k1+…+kn} ≤ T bounds every k_i by ⌊log2 T⌋
            let bits = top.ilog2();
            let points = if bits == 0 { Vec::new() } else { enumerate_case1(n, bits)? };
            grid.iter()
                .map(|&t| points.iter().filter(|p| u64::from(p.height_exponent()) <= u64::from(t.ilog2())).count() as u64)
                .collect()
        }
        (Population::Case2 { n, count }, HeightMode::Parameter) => grid
            .iter()
            .map(|&t| {
                let pop = enumerate_case2(n, t)?;
                Ok(match count {
                    Case2Count::Pairs => pop.pair_count(),
                    Case2Count::Denominators => pop.denominator_count(),
                })
            })
            .collect::<Result<_>>()?,
        (Population::Case2 { n, count }, HeightMode::Raw) => {
            let pop = enumerate_case2(1, top)?;
            let phi = totients(top as usize);
            let mut weight = vec![0u64; top as usize + 1];
            for q in pop.denominators() {
                weight[q as usize] = match count {
                    Case2Count::Pairs => phi[q as usize],
                    Case2Count::Denominators => 1,
                };
            }
            let prefix: Vec<u64> = weight
                .iter()
                .scan(0u64, |acc, w| {
                    *acc += w;
                    Some(*acc)
                })
                .collect();
            grid.iter()
                .map(|&t| match n {
                    1 => Ok(prefix[t as usize]),
                    2 => Ok((1..=t).map(|q1| weight[q1 as usize] * prefix[(t / q1) as usize]).sum()),
                    _ => Err(Error::OutOfRange(format!("dimension {n} outside 1..=2"))),
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(grid.iter().zip(counts).map(|(&t, n)| CountSample { t, n }).collect())
}

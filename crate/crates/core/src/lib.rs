//! Exact arithmetic for the Minkowski question-mark function, continued
//! fractions and Jacobi–Perron expansions, heights of rational points built
//! from them, point-counting experiments and a regime classifier.

pub mod classifier;
pub mod contfrac;
pub mod counting;
pub mod error;
pub mod fixtures;
pub mod heights;
pub mod minkowski;
pub mod numbers;

pub use classifier::{
    curve_regime, is_finite_by_betti, rank_lower_bound_from_betti, regime_from_rank, BettiProfile, RegimeCase,
    RegimeLabel,
};
pub use contfrac::{
    cf_eval, cf_expand_quadratic, cf_expand_rational, jp_expand, moebius_apply, CfValue, ContinuedFraction, Coordinate,
    JpExpansion, JpVector, Matrix2, NumberField, NumberFieldElement, QuadraticSurd,
};
pub use counting::{
    counting_function, enumerate_case1, enumerate_case2, fit_regime, CountSample, FitLabel, HeightMode, Population,
    RegimeFit,
};
pub use error::{Error, Result};
pub use heights::{height_projective, height_rational_tuple, script_height, HeightValue, K0ModuleData};
pub use minkowski::{dyadic_difference_probe, qmark_inverse, qmark_nd, qmark_quadratic, qmark_rational, QMarkValue};
pub use numbers::{DyadicRational, ProjectivePoint};

/// Arbitrary-precision integer used throughout.
pub type Integer = num_bigint::BigInt;
/// Exact rational used throughout.
pub type Rational = num_rational::BigRational;
/// Regime fit in double precision.
pub type RegimeFit64 = counting::RegimeFit<f64>;
/// Regime fit in single precision.
pub type RegimeFit32 = counting::RegimeFit<f32>;

//! Regular continued fractions, the Möbius action on quadratic surds, and
//! the Jacobi–Perron expansion over exact number-field arithmetic.

pub mod cf;
pub mod field;
pub mod jacobi_perron;
pub mod moebius;
pub mod surd;

pub use cf::{cf_eval, cf_expand_quadratic, cf_expand_rational, expand_ratio, CfValue, ContinuedFraction};
pub use field::{NumberField, NumberFieldElement};
pub use jacobi_perron::{jp_expand, Coordinate, JpExpansion, JpScalar, JpVector, ShiftMarker};
pub use moebius::{moebius_apply, Matrix2};
pub use surd::QuadraticSurd;

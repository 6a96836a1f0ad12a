//! Fixed inputs shared by tests, the acceptance suite and the CLI.

use num_bigint::BigInt;

use crate::contfrac::{NumberFieldElement, QuadraticSurd};

pub use crate::contfrac::jacobi_perron::cube_root_two_pair;

/// Twenty quadratic irrationals in `(0, 1)`: fractional parts of
/// `(P + √D)/Q` over a spread of radicands and denominators.
pub fn surd_fixture() -> Vec<QuadraticSurd> {
    const TRIPLES: [(i64, i64, i64); 20] = [
        (0, 2, 1),
        (0, 3, 1),
        (-1, 5, 2),
        (0, 6, 1),
        (0, 7, 1),
        (0, 10, 1),
        (0, 13, 1),
        (1, 5, 3),
        (0, 19, 1),
        (2, 7, 5),
        (0, 23, 1),
        (-3, 29, 4),
        (0, 31, 1),
        (1, 41, 7),
        (0, 43, 1),
        (5, 61, 9),
        (0, 94, 1),
        (-2, 103, 11),
        (0, 139, 1),
        (3, 313, 17),
    ];
    TRIPLES
        .iter()
        .map(|&(p, d, q)| {
            QuadraticSurd::new(BigInt::from(p), BigInt::from(d), BigInt::from(q))
                .expect("fixture radicands are not squares")
                .fract()
        })
        .collect()
}

/// The first ten fixture surds.
pub fn probe_surds() -> Vec<QuadraticSurd> {
    surd_fixture().into_iter().take(10).collect()
}

/// The cubic pair as a plain vector, for callers that only need the elements.
pub fn cubic_pair() -> Vec<NumberFieldElement> {
    cube_root_two_pair()
}

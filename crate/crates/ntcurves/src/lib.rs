//! Elliptic-curve arithmetic over the rationals and real quadratic fields,
//! at the scale needed to verify concrete reduction and torsion statements:
//! Weierstrass invariants, valuation-based reduction types at odd primes,
//! exact point counts over small finite fields, supersingularity by trace,
//! formal-group multiplication with Newton polygons, torsion bounds through
//! reduction at split primes, and one explicit matrix-group computation in
//! `GL_2(F_3)`.
//!
//! Coordinates of quadratic-field elements are exact rationals; every count
//! and every valuation is integer arithmetic, so all checks are exact.

pub mod formal;
pub mod quadfield;
pub mod sylow;
pub mod weierstrass;
pub mod x015;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("the discriminant vanishes: the model is singular")]
    SingularCurve,
    #[error("a coefficient has negative valuation at the chosen place")]
    NonIntegralModel,
    #[error("the reduced model is singular over the residue field")]
    SingularReduction,
    #[error("the curve does not have good reduction at the chosen place")]
    BadReduction,
    #[error("listed prime {p} is not a good-reduction prime")]
    BadReductionPrime { p: u64 },
    #[error("prime {p} does not split in the quadratic field of discriminant datum {d}")]
    PrimeNotSplit { p: u64, d: i64 },
    #[error("series precision {n} is below the required p^2 = {need}")]
    PrecisionTooLow { n: usize, need: usize },
    #[error("required external assumption `{key}` is missing")]
    MissingAssumption { key: String },
    #[error("no primes supplied: a torsion bound needs at least one")]
    EmptyPrimeList,
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("{0} is not a valid squarefree quadratic-field datum")]
    InvalidFieldDatum(i64),
    #[error("could not parse curve or place input: {0}")]
    ParseError(String),
}

//! Exact Hilbert series for the Minors and Support-Minors modelings of the
//! (generalized) MinRank problem, the Gröbner-basis cost estimates derived
//! from them, and a finite-field Macaulay-rank verifier.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! file system, the clock or threads lives in the `smhs` companion crate.
//!
//! Layout:
//!
//! * [`series`], [`poly`], [`det`]: truncated integer power series, exact
//!   integer polynomials, binomial coefficients and determinants.
//! * [`combinatorics`]: shapes, standard tableaux, tableau counting and the
//!   two binomial identities used by the determinant transformations.
//! * [`hilbert`]: the four Hilbert-series engines, the generic-instance
//!   series, module ranks, dimensions and the validity classifier.
//! * [`estimator`]: Macaulay sizes, densities, dense vs Wiedemann costs and
//!   the hybrid column-guessing search.
//! * [`ff`]: random instances over a prime field, Support-Minors equations,
//!   Plücker expansion, Macaulay matrices and their ranks.
#![no_std]

extern crate alloc;

pub mod combinatorics;
pub mod det;
pub mod error;
pub mod estimator;
pub mod ff;
pub mod hilbert;
pub mod poly;
pub mod series;

pub use error::Error;
pub use hilbert::{GmrParams, HilbertResult, Validity};
pub use series::{binom_ext, twisted_binom, TruncatedSeries};

pub use num_bigint::BigInt;

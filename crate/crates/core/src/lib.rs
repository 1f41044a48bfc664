//! Exact computation of Poincaré functions `P(z) = Σ h_k z^k` that count
//! scalar differential invariants of pseudogroup actions on jet spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: rationals, polynomials, normalized rational functions,
//!   truncated power series, an exact rank kernel and an expression parser.
//! * [`hilbert`]: eventually-polynomial Hilbert functions and the exact
//!   conversion to and from closed-form generating functions.
//! * [`counting`]: symbol / differential-group dimension combinatorics and
//!   the `CountingPlan` that re-derives `h_k` from stabilizer data.
//! * [`catalog`]: the roster of geometric structures with their counts and
//!   claimed Poincaré functions, plus verification.
//! * [`analysis`]: pole analysis: functional dimension, rank, `s_k`.
//! * [`jetflow`]: prolongation of parameterized vector fields and exact
//!   orbit-rank computation on coordinate strata of jet spaces.
//!
//! Everything is exact; there is no floating point anywhere in the crate.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod counting;
pub mod error;
pub mod hilbert;
pub mod jetflow;

pub use algebra::{binomial, Polynomial, PowerSeries, Rational, RationalFunction};
pub use analysis::PoleReport;
pub use catalog::{Catalog, CatalogEntry, Params, VerificationReport, VerificationStatus};
pub use counting::CountingPlan;
pub use error::{Error, Result};
pub use hilbert::{HilbertSpec, MatchReport};

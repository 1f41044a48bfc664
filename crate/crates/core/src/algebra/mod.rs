//! Exact arithmetic substrate: rationals, univariate polynomials, normalized
//! rational functions and truncated power series.

mod cyclotomic;
pub mod expr;
pub mod linalg;
mod poly;
mod ratfun;
mod rational;
mod series;

pub use cyclotomic::{cyclotomic, euler_phi};
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use rational::{binomial, binomial_i64, int, rat, rational_to_integer, Rational};
pub use series::PowerSeries;

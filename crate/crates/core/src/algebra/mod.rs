//! Exact arithmetic substrate shared by the representation modules.

mod cyclotomic;
mod laurent;
pub mod linalg;
mod matrix;
mod monomial;
pub mod poly;
mod rational;
mod series;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicField, CyclotomicNumber};
pub use laurent::LaurentPoly;
pub use matrix::{cyclotomic_char_poly_series, CycMatrix};
pub use monomial::Monomial;
pub use rational::{binomial, parse_rational, rational, Rational};
pub use series::{rational_fn_expand, series_mul, DenomFactor, GradedSeries};

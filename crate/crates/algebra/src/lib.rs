//! Exact commutative algebra over the rationals and related fields.
//!
//! Polynomials carry their ring; arithmetic between rings is an error.
//! Gröbner computations are capped by [`GroebnerLimits`] and report
//! [`AlgebraError::ResourceLimit`] rather than a partial answer.

pub mod det;
pub mod error;
pub mod factor;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod ideal;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod tpoly;
pub mod uni;

pub use det::{determinant, minor, RingElement};
pub use error::{AlgebraError, Result};
pub use factor::{coarse_factors, univariate_rational_factors, FactorKind, UnivariateFactor, UnivariateFactorization};
pub use field::{CoefficientField, FieldElement, Irreducibility, SimpleExtension};
pub use gcd::{content_in, gcd, gcd_free_basis, split_content};
pub use groebner::{groebner_basis, reduce, GroebnerLimits};
pub use ideal::{Ideal, QuotientDimension};
pub use poly::{Exponents, Polynomial};
pub use ring::{MonomialOrder, PolyRing};
pub use tpoly::{next_combination, t_valuation_of_minors, MinorValuation, TPoly, TPolynomialMatrix};
pub use uni::UniPoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// content_factor(p, var): p = content · primitive.
pub fn content_factor(p: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
    split_content(p, var)
}

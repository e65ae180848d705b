//! Exact A-polynomials `A_{2n}(L, M)` of the two-bridge knots `C(2n, 4)`.
//!
//! The pipeline: Riley-Mednykh polynomials `P_{2n}(x, M)` ([`riley`]), the
//! longitude substitution into the quadratic extension `z^2 = D` ([`quad`]),
//! and the Galois norm `p(u) p(-u)` ([`apoly`]).

pub mod apoly;
pub mod cache;
pub mod golden;
pub mod json;
pub mod poly;
pub mod quad;
pub mod render;
pub mod rep;
pub mod riley;
pub mod verify;

pub use apoly::{a_polynomial, APolyRecord, ApolyError, Route};
pub use poly::{Monomial, Poly, PolyError, Var};
pub use quad::{DenExponents, FactoredFraction, PrefactoredFraction, QuadElem};

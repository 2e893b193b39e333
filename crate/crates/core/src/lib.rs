//! Multiplicative relations among Frobenius eigenvalues of abelian varieties
//! over finite fields, and the exotic Tate class verdicts built on them.
//!
//! The arithmetic core is generic over the scalar type (`Poly<T>`,
//! `Matrix<T>`); the aliases below fix the concrete scalars used in the
//! pipeline.

pub mod arith;
pub mod ball;
pub mod cone;
pub mod corpus;
pub mod eigensystem;
pub mod glbounds;
pub mod isolate;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod relations;
pub mod tate;
pub mod weil_poly;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use poly::Poly;

/// Integer polynomials (Weil polynomials and their factors).
pub type IntPoly = Poly<BigInt>;
/// Rational polynomials (gcd, Yun, Sturm).
pub type RatPoly = Poly<BigRational>;
/// Floating-point polynomials (root-finding starting guesses).
pub type FloatPoly = Poly<f64>;
/// Rational matrices (oracle ranks).
pub type RatMatrix = linalg::Matrix<BigRational>;

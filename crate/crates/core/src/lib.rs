//! Exact modular-symbol arithmetic for the CM elliptic curve
//! `E: y^2 + y = x^3 + 2` of conductor 243, and the 2-adic study of its
//! Mazur–Tate elements along the cyclotomic Z_2-extension of Q.
//!
//! The crate is organised bottom-up:
//!
//! - [`numth`]: Fourier coefficients by point counting, Kronecker symbols,
//!   class numbers, discrete logarithms to base 5 modulo powers of two.
//! - [`modsym`]: the Manin-symbol engine producing the half-integers
//!   `S(k/t)` with no floating point anywhere.
//! - [`grpring`]: the group algebras `Q[G_n]` with mu/lambda invariants and
//!   the projection/norm maps between levels.
//! - [`mazur_tate`]: characters, cyclotomic numbers, specialization and
//!   the exact 2-adic valuation.
//! - [`analysis`]: L-value parity of quadratic twists, valuation reports
//!   and the prime-pair search.

pub mod analysis;
pub mod error;
pub mod grpring;
pub mod mazur_tate;
pub mod modsym;
pub mod numth;

pub use error::{Error, Result};
pub use grpring::GroupRingElement;
pub use mazur_tate::{Character, CyclotomicNumber, Val2};
pub use modsym::SymbolEngine;

/// Exact rational numbers used for every modular-symbol quantity.
pub type Rational = num_rational::BigRational;

//! Parabolic Verma modules of basic classical Lie superalgebras over ℚ.
//!
//! The crate builds root data and realizations ([`catalog`]), truncated
//! characters ([`character`]), brute-force Gram matrices of the contravariant
//! form ([`verma`]), the factored determinant ([`formula`]) and the
//! irreducibility criteria ([`irreducibility`]).

pub mod catalog;
pub mod character;
pub mod error;
pub mod formula;
pub mod irreducibility;
pub mod linalg;
pub mod verma;

pub use error::{Error, Result};

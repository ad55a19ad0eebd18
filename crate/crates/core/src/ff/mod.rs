//! Residue-field machinery: F_p polynomials, F_{p^m} arithmetic and
//! matrices over F_p.

mod field;
mod matrix;
mod poly;

pub use field::Fq;
pub use matrix::FpMatrix;
pub use poly::{cmp_poly, FpPoly, DEFAULT_SEED};

pub(crate) use poly::{factor_biguint, prime_factors};

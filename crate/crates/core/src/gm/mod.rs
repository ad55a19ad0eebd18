//! Unit polynomials, resultant orthogonality, splitting idempotents,
//! Teichmüller factorization and shift sums on the formal multiplicative
//! group.

mod hensel;
mod laurent;
mod principal;
mod resultant;

pub use hensel::{
    hensel_lift, orbit_label, teich_factor, OrbitLabel, TeichFactor, TeichFactorization,
};
pub use laurent::{haar_volume, ideal_lattice, profinite_volume, LaurentPoly, UnitPolynomial};
pub use principal::{principal_exponent, principal_exponent_poly, PrincipalExponent};
pub use resultant::{
    bezout_idempotents, orthogonality_test, poly_resultant, resultant, sylvester, IdempotentAudit,
    Idempotents, Orthogonality, Resultant,
};

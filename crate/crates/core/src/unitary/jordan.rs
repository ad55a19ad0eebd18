use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::order::{prime_to_p, residual_order};
use crate::error::Result;
use crate::linalg::PadicMatrix;

/// U = U_s·U_n with U_s of prime-to-p order and U_n of p-power order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub semisimple: PadicMatrix,
    pub unipotent: PadicMatrix,
    /// α with U_s = U^α.
    pub exponent: BigUint,
}

/// α ≡ 1 mod m and α ≡ 0 mod p^A.
pub fn jordan_exponent(m: &BigUint, p: u64, a_exp: u32) -> BigUint {
    let pa = BigUint::from(p).pow(a_exp);
    if m.is_one() {
        return pa;
    }
    let mi = BigInt::from(m.clone());
    let g = BigInt::from(pa.clone()).extended_gcd(&mi);
    // g.x·p^A ≡ 1 mod m
    let inv = g.x.mod_floor(&mi).to_biguint().expect("non-negative");
    (inv * &pa) % (m * &pa)
}

/// U_s = U^α with α from the residual order: m is its prime-to-p part,
/// A = K − 1 + a where a is least with p^a ≥ n.
pub fn jordan_decompose(u: &PadicMatrix) -> Result<JordanDecomposition> {
    let m = prime_to_p(&residual_order(u)?, u.prime());
    let p = u.prime();
    let n = u.n() as u64;
    let mut a = 0u32;
    while p.pow(a) < n {
        a += 1;
    }
    let alpha = jordan_exponent(&m, p, u.precision() - 1 + a);
    let semisimple = u.pow(&alpha);
    let unipotent = u.mul(&semisimple.inverse()?);
    Ok(JordanDecomposition {
        semisimple,
        unipotent,
        exponent: alpha,
    })
}

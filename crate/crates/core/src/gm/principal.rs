use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::laurent::UnitPolynomial;
use crate::error::Result;
use crate::linalg::PadicMatrix;
use crate::unitary::residual_order;

/// n = p^l·N with t^n − 1 in the ideal (p^j, f).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalExponent {
    pub n: BigUint,
    pub residual_order: BigUint,
    pub l: u32,
    pub precision: u32,
}

/// N is the residual order, so U^N ≡ I mod p; then (I + pB)^{p^{j−1}} ≡ I
/// mod p^j for p ≥ 3 and the least l is found by descending from j − 1.
pub fn principal_exponent(u: &PadicMatrix, j: u32) -> Result<PrincipalExponent> {
    let uj = u.reduce_to(j)?;
    let n_res = residual_order(&uj)?;
    let p = BigUint::from(u.prime());
    let base = uj.pow(&n_res);
    let mut l = j - 1;
    while l > 0 && base.pow(&p.pow(l - 1)).is_identity() {
        l -= 1;
    }
    Ok(PrincipalExponent {
        n: &n_res * p.pow(l),
        residual_order: n_res,
        l,
        precision: j,
    })
}

/// The same for the ideal (p^j, f), through the companion matrix of the
/// monic part of f; t and the leading unit do not change the ideal.
pub fn principal_exponent_poly(f: &UnitPolynomial, j: u32) -> Result<PrincipalExponent> {
    let (_, monic) = f.reduce_to(j)?.monic_part();
    if monic.degree() == Some(0) {
        return Ok(PrincipalExponent {
            n: BigUint::from(1u32),
            residual_order: BigUint::from(1u32),
            l: 0,
            precision: j,
        });
    }
    principal_exponent(&monic.companion()?, j)
}

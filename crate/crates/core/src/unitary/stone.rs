use num_bigint::BigUint;
use num_traits::Zero;

use super::order::is_continuous;
use crate::error::{PadicError, Result};
use crate::linalg::PadicMatrix;
use crate::padic::PadicScalar;

/// U^t = Σ_k C(t,k)·(U − I)^k for t ∈ ℤ_p and U of continuous type.
///
/// t is known modulo p^K only, so the result is well defined exactly when
/// U^{p^K} = I; otherwise `ParameterPrecision` is returned.
pub fn power_zp(u: &PadicMatrix, t: &PadicScalar) -> Result<PadicMatrix> {
    if !is_continuous(u) {
        return Err(PadicError::NotContinuous);
    }
    if t.ring() != u.ring() {
        return Err(PadicError::RingMismatch("parameter and matrix".into()));
    }
    let modulus = u.ring().modulus().clone();
    if !u.pow(&modulus).is_identity() {
        return Err(PadicError::ParameterPrecision(format!(
            "U^(p^K) is not the identity at precision {}",
            u.precision()
        )));
    }
    let ring = u.ring();
    let x = u.sub(&u.identity());
    let tv = t.residue();
    let mut binom = BigUint::from(1u32);
    let mut term = u.identity();
    let mut acc = u.zero();
    let mut k = 0u64;
    while !term.is_zero() && !binom.is_zero() {
        acc = acc.add(&term.scale(&ring.from_biguint(&binom)));
        k += 1;
        // C(t,k) = C(t,k−1)·(t−k+1)/k, exact over the integers
        if tv < BigUint::from(k) {
            break;
        }
        binom = binom * (&tv - (k - 1)) / k;
        term = term.mul(&x);
    }
    Ok(acc)
}

/// φ_α: U ↦ U^α for a unit α.
pub fn zp_unit_action(u: &PadicMatrix, alpha: &PadicScalar) -> Result<PadicMatrix> {
    if !alpha.is_unit() {
        return Err(PadicError::NotAUnit);
    }
    power_zp(u, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Zp;

    #[test]
    fn examples() {
        let r = Zp::new(3, 4).unwrap();
        let u = PadicMatrix::from_i64(&r, 2, &[1, 1, 0, 1]).unwrap();
        assert!(power_zp(&u, &r.zero()).unwrap().is_identity());
        assert_eq!(power_zp(&u, &r.one()).unwrap(), u);
        let h = r.from_u64(2).inverse().unwrap();
        let half = power_zp(&u, &h).unwrap();
        assert_eq!(
            half,
            PadicMatrix::from_i64(&r, 2, &[1, h.to_u64().unwrap() as i64, 0, 1]).unwrap()
        );
        assert_eq!(half.mul(&half), u);
    }

    #[test]
    fn minus_one_is_inverse() {
        let r = Zp::new(5, 3).unwrap();
        let u = PadicMatrix::from_i64(&r, 2, &[6, 5, 10, 1]).unwrap();
        let minus = zp_unit_action(&u, &r.from_i64(-1)).unwrap();
        assert_eq!(minus, u.inverse().unwrap());
        assert_eq!(
            zp_unit_action(&u, &r.from_u64(5)),
            Err(PadicError::NotAUnit)
        );
    }

    #[test]
    fn rejects_non_continuous() {
        let r = Zp::new(3, 2).unwrap();
        let u = PadicMatrix::from_i64(&r, 2, &[0, -1, 1, 0]).unwrap();
        assert_eq!(power_zp(&u, &r.one()), Err(PadicError::NotContinuous));
    }

    #[test]
    fn large_unipotent_block_needs_more_precision() {
        // n = 4 > p = 3: the Jordan block has order 9 mod 3, so U^{3^K} ≠ I
        let r = Zp::new(3, 1).unwrap();
        let mut e = vec![0i64; 16];
        for i in 0..4 {
            e[i * 4 + i] = 1;
            if i + 1 < 4 {
                e[i * 4 + i + 1] = 1;
            }
        }
        let u = PadicMatrix::from_i64(&r, 4, &e).unwrap();
        assert!(matches!(
            power_zp(&u, &r.one()),
            Err(PadicError::ParameterPrecision(_))
        ));
    }
}

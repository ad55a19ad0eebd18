use crate::error::{PadicError, Result};
use crate::linalg::{Matrix, PadicMatrix};
use crate::padic::{residue_modulus, PadicScalar, Zp};

/// ξ with UV = ξVU.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCertificate {
    pub xi: PadicScalar,
    /// U^n V^m = ξ^{nm} V^m U^n for all n, m ≤ bound.
    pub power_relation: bool,
    /// Least (n, m), ordered by nm then n, with |ξ^{nm} − 1| < 1/p.
    pub near_commutative: Option<(u32, u32)>,
    pub bound: u32,
}

pub fn torus_check(u: &PadicMatrix, v: &PadicMatrix, bound: u32) -> Result<TorusCertificate> {
    if u.ring() != v.ring() || u.n() != v.n() {
        return Err(PadicError::RingMismatch("torus pair".into()));
    }
    if !u.is_unitary() || !v.is_unitary() {
        return Err(PadicError::NotUnitary);
    }
    let c = u.mul(v).mul(&u.inverse()?).mul(&v.inverse()?);
    let xi = c.as_scalar().ok_or(PadicError::NotATorusPair)?;
    let mut power_relation = true;
    let mut pairs = Vec::new();
    for n in 1..=bound {
        for m in 1..=bound {
            let (un, vm) = (u.pow_u64(n as u64), v.pow_u64(m as u64));
            let q = xi.pow_u64((n * m) as u64);
            power_relation &= un.mul(&vm) == vm.mul(&un).scale(&q);
            if q.sub_ref(&u.ring().one()).valuation() >= 2 {
                pairs.push((n * m, n, m));
            }
        }
    }
    pairs.sort();
    Ok(TorusCertificate {
        xi,
        power_relation,
        near_commutative: pairs.first().map(|&(_, n, m)| (n, m)),
        bound,
    })
}

/// Clock diag(1, ζ, …, ζ^{d−1}) and cyclic shift for a Teichmüller
/// primitive d-th root of unity ζ; requires d | p − 1.
pub fn clock_and_shift(ring: &Zp, d: usize) -> Result<(PadicMatrix, PadicMatrix, PadicScalar)> {
    let p = ring.p();
    if d == 0 || !(p - 1).is_multiple_of(d as u64) {
        return Err(PadicError::DimensionMismatch(format!(
            "{d} does not divide p - 1"
        )));
    }
    let g = (p - residue_modulus(p, 1)?.poly.coeff(0)) % p;
    let mut r = 1u64;
    for _ in 0..(p - 1) / d as u64 {
        r = r * g % p;
    }
    let zeta = ring.teichmuller(r)?;
    let clock = Matrix::diagonal(&(0..d).map(|i| zeta.pow_u64(i as u64)).collect::<Vec<_>>());
    let shift = PadicMatrix::from_fn(d, |i, j| {
        if i == (j + 1) % d {
            ring.one()
        } else {
            ring.zero()
        }
    });
    Ok((clock, shift, zeta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commuting_pair() {
        let r = Zp::new(5, 3).unwrap();
        let u = PadicMatrix::from_i64(&r, 2, &[2, 0, 0, 3]).unwrap();
        let c = torus_check(&u, &u.pow_u64(3), 4).unwrap();
        assert!(c.xi.is_one());
        assert!(c.power_relation);
        assert_eq!(c.near_commutative, Some((1, 1)));
    }

    #[test]
    fn clock_and_shift_pairs() {
        for (p, d) in [(5u64, 4usize), (7, 3), (7, 6), (3, 2)] {
            let r = Zp::new(p, 3).unwrap();
            let (u, v, zeta) = clock_and_shift(&r, d).unwrap();
            let c = torus_check(&u, &v, 4).unwrap();
            assert_eq!(c.xi, zeta);
            assert!(c.power_relation);
            assert_eq!(zeta.pow_u64(d as u64), r.one());
            assert!((1..d as u64).all(|i| !zeta.pow_u64(i).is_one()));
            // ξ^{nm} = 1 first when d | nm
            let (n, m) = c.near_commutative.unwrap_or((0, 0));
            if d <= 4 {
                assert_eq!((n * m) as usize % d, 0);
            }
        }
    }

    #[test]
    fn non_scalar_commutator() {
        let r = Zp::new(3, 2).unwrap();
        let u = PadicMatrix::from_i64(&r, 2, &[1, 1, 0, 1]).unwrap();
        let v = PadicMatrix::from_i64(&r, 2, &[1, 0, 1, 1]).unwrap();
        assert_eq!(torus_check(&u, &v, 4), Err(PadicError::NotATorusPair));
    }
}

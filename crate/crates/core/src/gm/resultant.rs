use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, UnitPolynomial};
use crate::error::{PadicError, Result};
use crate::linalg::PadicMatrix;
use crate::padic::PadicScalar;
use crate::poly::ZpPoly;

/// res(f, g) of the polynomial parts, with the factored-out powers of t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resultant {
    pub value: PadicScalar,
    /// f = t^{shifts.0}·P_f and g = t^{shifts.1}·P_g.
    pub shifts: (i64, i64),
}

/// Standard Sylvester matrix: deg g shifted rows of f, then deg f shifted
/// rows of g, coefficients from the top degree down.
pub fn sylvester(f: &ZpPoly, g: &ZpPoly) -> Result<Option<PadicMatrix>> {
    let m = f.degree().ok_or(PadicError::ZeroPolynomial)?;
    let n = g.degree().ok_or(PadicError::ZeroPolynomial)?;
    let size = m + n;
    if size == 0 {
        return Ok(None);
    }
    let zero = f.ring().zero();
    let entry = |i: usize, j: usize| -> PadicScalar {
        if i < n {
            // row i holds f shifted right by i
            j.checked_sub(i)
                .filter(|&k| k <= m)
                .map(|k| f.coeff(m - k))
                .unwrap_or_else(|| zero.clone())
        } else {
            let i = i - n;
            j.checked_sub(i)
                .filter(|&k| k <= n)
                .map(|k| g.coeff(n - k))
                .unwrap_or_else(|| zero.clone())
        }
    };
    Ok(Some(PadicMatrix::from_fn(size, entry)))
}

pub fn poly_resultant(f: &ZpPoly, g: &ZpPoly) -> Result<PadicScalar> {
    Ok(match sylvester(f, g)? {
        Some(s) => s.det(),
        None => f.ring().one(),
    })
}

pub fn resultant(f: &LaurentPoly, g: &LaurentPoly) -> Result<Resultant> {
    if f.is_zero() || g.is_zero() {
        return Err(PadicError::ZeroPolynomial);
    }
    let (sf, pf) = f.normalize();
    let (sg, pg) = g.normalize();
    Ok(Resultant {
        value: poly_resultant(&pf, &pg)?,
        shifts: (sf, sg),
    })
}

/// Matrix of (k, l) ↦ k·f + l·g on deg k < deg g, deg l < deg f, with
/// columns t^i·f then t^i·g and rows indexed by degree.
fn bezout_map(f: &ZpPoly, g: &ZpPoly) -> Option<PadicMatrix> {
    let m = f.degree()?;
    let n = g.degree()?;
    let size = m + n;
    if size == 0 {
        return None;
    }
    let zero = f.ring().zero();
    Some(PadicMatrix::from_fn(size, |row, col| {
        let (poly, shift) = if col < n { (f, col) } else { (g, col - n) };
        row.checked_sub(shift)
            .map(|k| poly.coeff(k))
            .unwrap_or_else(|| zero.clone())
    }))
}

fn split(x: &[PadicScalar], n: usize, f: &ZpPoly) -> (ZpPoly, ZpPoly) {
    (
        ZpPoly::new(f.ring(), x[..n].to_vec()),
        ZpPoly::new(f.ring(), x[n..].to_vec()),
    )
}

/// Orthogonality verdict with the certificate k·f + l·g = res over ℤ/p^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orthogonality {
    pub orthogonal: bool,
    pub resultant: PadicScalar,
    pub k: ZpPoly,
    pub l: ZpPoly,
}

/// res(f, g) is a unit at precision j. The certificate comes from the first
/// column of the adjugate of the Bezout map, which needs no division.
pub fn orthogonality_test(f: &UnitPolynomial, g: &UnitPolynomial, j: u32) -> Result<Orthogonality> {
    let fj = f.poly().reduce_to(j)?;
    let gj = g.poly().reduce_to(j)?;
    let ring = fj.ring().clone();
    let (res, k, l) = match bezout_map(&fj, &gj) {
        None => (
            ring.one(),
            ZpPoly::constant(&fj.coeff(0).inverse()?),
            ZpPoly::zero(&ring),
        ),
        Some(map) => {
            // the map is the transposed Sylvester matrix with both blocks and
            // the degree order reversed, so res = (−1)^{mn}·det
            let (m, n) = (fj.degree().unwrap_or(0), gj.degree().unwrap_or(0));
            let (det, adj) = map.det_adjugate();
            let col: Vec<PadicScalar> = (0..map.n()).map(|i| adj.get(i, 0).clone()).collect();
            let (res, col) = if m * n % 2 == 0 {
                (det, col)
            } else {
                (det.neg_ref(), col.iter().map(|x| x.neg_ref()).collect())
            };
            let (k, l) = split(&col, n, &fj);
            (res, k, l)
        }
    };
    debug_assert_eq!(k.mul(&fj).add(&l.mul(&gj)), ZpPoly::constant(&res));
    Ok(Orthogonality {
        orthogonal: res.is_unit(),
        resultant: res,
        k,
        l,
    })
}

/// Splitting idempotents of 𝒪_p[t]/(p^j, fg).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotents {
    pub p1: ZpPoly,
    pub p2: ZpPoly,
    pub k: ZpPoly,
    pub l: ZpPoly,
    /// f·g, the modulus of the quotient ring.
    pub modulus: ZpPoly,
}

/// Every identity from the splitting, checked separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentAudit {
    pub p1_idempotent: bool,
    pub p2_idempotent: bool,
    pub sum_is_one: bool,
    pub product_is_zero: bool,
    pub p1_kills_g: bool,
    pub p2_kills_f: bool,
    pub p1_fixes_f: bool,
    pub p2_fixes_g: bool,
    /// h ≡ P2·(h mod f) + P1·(h mod g) for every basis monomial h.
    pub crt_splitting: bool,
}

impl IdempotentAudit {
    pub fn all(&self) -> bool {
        self.p1_idempotent
            && self.p2_idempotent
            && self.sum_is_one
            && self.product_is_zero
            && self.p1_kills_g
            && self.p2_kills_f
            && self.p1_fixes_f
            && self.p2_fixes_g
            && self.crt_splitting
    }
}

/// Solves k·f + l·g = 1 with unit pivots and returns P1 = k·f, P2 = l·g.
pub fn bezout_idempotents(f: &UnitPolynomial, g: &UnitPolynomial, j: u32) -> Result<Idempotents> {
    let fj = f.poly().reduce_to(j)?;
    let gj = g.poly().reduce_to(j)?;
    let ring = fj.ring().clone();
    let modulus = fj.mul(&gj);
    let Some(map) = bezout_map(&fj, &gj) else {
        // both constant units: the quotient ring is zero
        let zero = ZpPoly::zero(&ring);
        return Ok(Idempotents {
            p1: zero.clone(),
            p2: zero.clone(),
            k: zero.clone(),
            l: zero,
            modulus,
        });
    };
    let inv = match map.inverse() {
        Ok(inv) => inv,
        Err(PadicError::NotInvertible(v)) => return Err(PadicError::NotOrthogonal(v)),
        Err(e) => return Err(e),
    };
    let x: Vec<PadicScalar> = (0..map.n()).map(|i| inv.get(i, 0).clone()).collect();
    let (k, l) = split(&x, gj.degree().unwrap_or(0), &fj);
    let p1 = k.mul(&fj).rem(&modulus)?;
    let p2 = l.mul(&gj).rem(&modulus)?;
    Ok(Idempotents {
        p1,
        p2,
        k,
        l,
        modulus,
    })
}

impl Idempotents {
    pub fn audit(&self, f: &UnitPolynomial, g: &UnitPolynomial) -> Result<IdempotentAudit> {
        let ring = self.modulus.ring().clone();
        let j = ring.precision();
        let fj = f.poly().reduce_to(j)?;
        let gj = g.poly().reduce_to(j)?;
        let md = &self.modulus;
        let red = |x: &ZpPoly| x.rem(md);
        let p1 = &self.p1;
        let p2 = &self.p2;
        let one = red(&ZpPoly::one(&ring))?;
        let deg = md.degree().unwrap_or(0);
        let mut crt = true;
        for i in 0..deg {
            let h = ZpPoly::monomial(&ring, i);
            let back = red(&p2.mul(&h.rem(&fj)?).add(&p1.mul(&h.rem(&gj)?)))?;
            crt &= back == h;
        }
        Ok(IdempotentAudit {
            p1_idempotent: red(&p1.mul(p1))? == *p1,
            p2_idempotent: red(&p2.mul(p2))? == *p2,
            sum_is_one: red(&p1.add(p2))? == one,
            product_is_zero: red(&p1.mul(p2))?.is_zero(),
            p1_kills_g: red(&p1.mul(&gj))?.is_zero(),
            p2_kills_f: red(&p2.mul(&fj))?.is_zero(),
            p1_fixes_f: red(&p1.mul(&fj))? == red(&fj)?,
            p2_fixes_g: red(&p2.mul(&gj))? == red(&gj)?,
            crt_splitting: crt,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Zp;

    fn up(r: &Zp, c: &[i64]) -> UnitPolynomial {
        UnitPolynomial::from_i64(r, c).unwrap()
    }

    #[test]
    fn certificate_resultant_matches_sylvester() {
        let r = Zp::new(3, 3).unwrap();
        let shapes: Vec<Vec<i64>> = vec![
            vec![2],
            vec![1, 1],
            vec![2, 4, 1],
            vec![1, 0, 5, 2],
            vec![4, 7, 0, 1, 1],
            vec![8, 1, 1],
        ];
        for a in &shapes {
            for b in &shapes {
                let (f, g) = (up(&r, a), up(&r, b));
                let o = orthogonality_test(&f, &g, 3).unwrap();
                assert_eq!(
                    o.resultant,
                    poly_resultant(f.poly(), g.poly()).unwrap(),
                    "{a:?} {b:?}"
                );
                assert_eq!(
                    o.k.mul(f.poly()).add(&o.l.mul(g.poly())),
                    ZpPoly::constant(&o.resultant)
                );
            }
        }
    }

    #[test]
    fn resultant_examples() {
        let r = Zp::new(5, 3).unwrap();
        let lin = |a: i64| LaurentPoly::from_dense(&r, 0, &[-a, 1]);
        assert_eq!(resultant(&lin(1), &lin(2)).unwrap().value, r.from_i64(-1));
        let v = resultant(&lin(1), &lin(6)).unwrap().value;
        assert_eq!(v, r.from_i64(-5));
        assert_eq!(v.valuation(), 1);
        let f = LaurentPoly::from_dense(&r, 0, &[3, 1, 1]);
        assert!(resultant(&f, &f).unwrap().value.is_zero());
    }

    #[test]
    fn laurent_shift_is_factored_out() {
        let r = Zp::new(5, 3).unwrap();
        let f = LaurentPoly::from_dense(&r, -3, &[-1, 1]);
        let g = LaurentPoly::from_dense(&r, 2, &[-2, 1]);
        let res = resultant(&f, &g).unwrap();
        assert_eq!(res.shifts, (-3, 2));
        assert_eq!(res.value, r.from_i64(-1));
    }

    #[test]
    fn orthogonality_examples() {
        let r = Zp::new(5, 2).unwrap();
        let f = up(&r, &[-1, 1]);
        assert!(
            orthogonality_test(&f, &up(&r, &[-2, 1]), 2)
                .unwrap()
                .orthogonal
        );
        assert!(
            !orthogonality_test(&f, &up(&r, &[-6, 1]), 2)
                .unwrap()
                .orthogonal
        );
        assert!(!orthogonality_test(&f, &f, 2).unwrap().orthogonal);
    }

    #[test]
    fn certificate_identity() {
        let r = Zp::new(3, 4).unwrap();
        let f = up(&r, &[2, 1, 1]);
        let g = up(&r, &[1, 0, 0, 1]);
        let o = orthogonality_test(&f, &g, 4).unwrap();
        let lhs = o.k.mul(f.poly()).add(&o.l.mul(g.poly()));
        assert_eq!(lhs, ZpPoly::constant(&o.resultant));
    }

    #[test]
    fn idempotent_examples() {
        let r = Zp::new(5, 2).unwrap();
        let f = up(&r, &[-1, 1]);
        let g = up(&r, &[-2, 1]);
        let e = bezout_idempotents(&f, &g, 2).unwrap();
        assert_eq!(e.p1, ZpPoly::from_i64(e.p1.ring(), &[-1, 1]));
        assert_eq!(e.p2, ZpPoly::from_i64(e.p1.ring(), &[2, -1]));
        assert!(e.audit(&f, &g).unwrap().all());
        let swapped = bezout_idempotents(&g, &f, 2).unwrap();
        assert_eq!((swapped.p1, swapped.p2), (e.p2, e.p1));

        let r3 = Zp::new(3, 1).unwrap();
        let f = up(&r3, &[-1, 1]);
        let g = up(&r3, &[1, 1]);
        let e = bezout_idempotents(&f, &g, 1).unwrap();
        assert_eq!(e.p1, ZpPoly::from_i64(e.p1.ring(), &[2, 1]));
        assert!(e.audit(&f, &g).unwrap().all());
    }

    #[test]
    fn non_orthogonal_pair_is_rejected() {
        let r = Zp::new(5, 2).unwrap();
        let f = up(&r, &[-1, 1]);
        let g = up(&r, &[-6, 1]);
        assert_eq!(
            bezout_idempotents(&f, &g, 2),
            Err(PadicError::NotOrthogonal(1))
        );
    }
}

//! Polynomials over ℤ/p^K.

use std::fmt;

use crate::error::{PadicError, Result};
use crate::ff::FpPoly;
use crate::linalg::PadicMatrix;
use crate::padic::{PadicScalar, Zp};

/// Polynomial with ℤ/p^K coefficients, low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct ZpPoly {
    ring: Zp,
    coeffs: Vec<PadicScalar>,
}

impl ZpPoly {
    pub fn new(ring: &Zp, coeffs: Vec<PadicScalar>) -> ZpPoly {
        let mut out = ZpPoly {
            ring: ring.clone(),
            coeffs,
        };
        out.trim();
        out
    }

    pub fn from_i64(ring: &Zp, coeffs: &[i64]) -> ZpPoly {
        ZpPoly::new(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    /// Lift of a residue polynomial by coefficients in [0, p).
    pub fn from_fp(ring: &Zp, f: &FpPoly) -> ZpPoly {
        ZpPoly::new(ring, f.coeffs().iter().map(|&c| ring.from_u64(c)).collect())
    }

    pub fn zero(ring: &Zp) -> ZpPoly {
        ZpPoly::new(ring, vec![])
    }

    pub fn one(ring: &Zp) -> ZpPoly {
        ZpPoly::constant(&ring.one())
    }

    pub fn constant(c: &PadicScalar) -> ZpPoly {
        ZpPoly::new(c.ring(), vec![c.clone()])
    }

    /// t^k.
    pub fn monomial(ring: &Zp, k: usize) -> ZpPoly {
        let mut c = vec![ring.zero(); k + 1];
        c[k] = ring.one();
        ZpPoly::new(ring, c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PadicScalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> PadicScalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn to_fp(&self) -> FpPoly {
        FpPoly::new(
            self.ring.p(),
            self.coeffs.iter().map(|c| c.residue_mod_p()).collect(),
        )
    }

    pub fn add(&self, rhs: &ZpPoly) -> ZpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZpPoly::new(
            &self.ring,
            (0..n)
                .map(|i| self.coeff(i).add_ref(&rhs.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &ZpPoly) -> ZpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZpPoly::new(
            &self.ring,
            (0..n)
                .map(|i| self.coeff(i).sub_ref(&rhs.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> ZpPoly {
        ZpPoly::new(
            &self.ring,
            self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        )
    }

    pub fn scale(&self, c: &PadicScalar) -> ZpPoly {
        ZpPoly::new(
            &self.ring,
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        )
    }

    pub fn mul(&self, rhs: &ZpPoly) -> ZpPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZpPoly::zero(&self.ring);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        ZpPoly::new(&self.ring, out)
    }

    pub fn pow(&self, e: u32) -> ZpPoly {
        (0..e).fold(ZpPoly::one(&self.ring), |acc, _| acc.mul(self))
    }

    /// Division by a polynomial with unit leading coefficient.
    pub fn div_rem(&self, d: &ZpPoly) -> Result<(ZpPoly, ZpPoly)> {
        let dd = d.degree().ok_or(PadicError::ZeroPolynomial)?;
        let inv = d.leading().inverse()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((ZpPoly::zero(&self.ring), self.clone()));
        }
        let mut q = vec![self.ring.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul_ref(&inv);
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].sub_ref(&c.mul_ref(di));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((ZpPoly::new(&self.ring, q), ZpPoly::new(&self.ring, r)))
    }

    pub fn rem(&self, d: &ZpPoly) -> Result<ZpPoly> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn derivative(&self) -> ZpPoly {
        ZpPoly::new(
            &self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&self.ring.from_u64(i as u64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &PadicScalar) -> PadicScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn eval_matrix(&self, a: &PadicMatrix) -> PadicMatrix {
        a.eval_poly(&self.coeffs_or_zero())
    }

    fn coeffs_or_zero(&self) -> Vec<PadicScalar> {
        if self.coeffs.is_empty() {
            vec![self.ring.zero()]
        } else {
            self.coeffs.clone()
        }
    }

    /// The polynomial with coefficients reduced to precision j.
    pub fn reduce_to(&self, j: u32) -> Result<ZpPoly> {
        let ring = self.ring.with_precision(j)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.lift_to(&ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZpPoly::new(&ring, coeffs))
    }

    /// Companion matrix of a monic polynomial: multiplication by t on the
    /// basis 1, t, …, t^{d−1}.
    pub fn companion(&self) -> Result<PadicMatrix> {
        let d = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or(PadicError::ZeroPolynomial)?;
        if !self.is_monic() {
            return Err(PadicError::NotUnitPolynomial(
                "companion needs a monic polynomial".into(),
            ));
        }
        let zero = self.ring.zero();
        let one = self.ring.one();
        Ok(PadicMatrix::from_fn(d, |i, j| {
            if j == d - 1 {
                self.coeffs[i].neg_ref()
            } else if i == j + 1 {
                one.clone()
            } else {
                zero.clone()
            }
        }))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for ZpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} (mod {}^{})",
            self.to_strings(),
            self.ring.p(),
            self.ring.precision()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let r = Zp::new(5, 3).unwrap();
        let a = ZpPoly::from_i64(&r, &[7, -3, 0, 11, 2]);
        let d = ZpPoly::from_i64(&r, &[1, 4, 3]);
        let (q, rem) = a.div_rem(&d).unwrap();
        assert_eq!(q.mul(&d).add(&rem), a);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn companion_satisfies_polynomial() {
        let r = Zp::new(3, 4).unwrap();
        let f = ZpPoly::from_i64(&r, &[-1, -1, 1]);
        let c = f.companion().unwrap();
        assert!(f.eval_matrix(&c).is_zero());
        let cp: Vec<_> = c.char_poly();
        assert_eq!(ZpPoly::new(&r, cp), f);
    }
}

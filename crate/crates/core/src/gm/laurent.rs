use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{PadicError, Result};
use crate::padic::{PadicScalar, Zp};
use crate::poly::ZpPoly;

/// Finitely supported Laurent polynomial Σ a_n t^n over ℤ/p^K.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: Zp,
    terms: BTreeMap<i64, PadicScalar>,
}

impl LaurentPoly {
    pub fn new(ring: &Zp, terms: impl IntoIterator<Item = (i64, PadicScalar)>) -> LaurentPoly {
        let mut map: BTreeMap<i64, PadicScalar> = BTreeMap::new();
        for (k, c) in terms {
            let entry = map.entry(k).or_insert_with(|| ring.zero());
            *entry = entry.add_ref(&c);
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn from_i64_terms(ring: &Zp, terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::new(ring, terms.iter().map(|&(k, c)| (k, ring.from_i64(c))))
    }

    /// Σ coeffs[i]·t^{low+i}.
    pub fn from_dense(ring: &Zp, low: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::new(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, ring.from_i64(c))),
        )
    }

    pub fn from_poly(p: &ZpPoly) -> LaurentPoly {
        LaurentPoly::new(
            p.ring(),
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &PadicScalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> PadicScalar {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// max − min exponent; 0 for monomials and for zero.
    pub fn width(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        }
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(
            &self.ring,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(&k, c)| (k, c.clone())),
        )
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add(&rhs.scale(&self.ring.from_i64(-1)))
    }

    pub fn scale(&self, c: &PadicScalar) -> LaurentPoly {
        LaurentPoly::new(
            &self.ring,
            self.terms.iter().map(|(&k, a)| (k, a.mul_ref(c))),
        )
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(
            &self.ring,
            self.terms
                .iter()
                .flat_map(|(&a, x)| rhs.terms.iter().map(move |(&b, y)| (a + b, x.mul_ref(y)))),
        )
    }

    /// t^d·f.
    pub fn shift(&self, d: i64) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k + d, c.clone()))
                .collect(),
        }
    }

    /// f = t^s·P(t) with P an ordinary polynomial not divisible by t.
    pub fn normalize(&self) -> (i64, ZpPoly) {
        let s = self.min_exp().unwrap_or(0);
        let top = self.max_exp().unwrap_or(0);
        let coeffs = (s..=top).map(|k| self.coeff(k)).collect();
        (s, ZpPoly::new(&self.ring, coeffs))
    }

    /// S_{c+dℤ}(f) = Σ_n a_{c+dn}.
    pub fn shift_sum(&self, c: i64, d: i64) -> Result<PadicScalar> {
        if d == 0 {
            return Err(PadicError::ZeroStep);
        }
        let d = d.abs();
        Ok(self
            .terms
            .iter()
            .filter(|(&k, _)| (k - c).mod_floor(&d) == 0)
            .fold(self.ring.zero(), |acc, (_, a)| acc.add_ref(a)))
    }

    /// Image in 𝒪_p[t]/(t^d − 1) ≅ 𝒪_p^d; component c is S_{c+dℤ}.
    pub fn project_mod(&self, d: i64) -> Result<Vec<PadicScalar>> {
        if d < 1 {
            return Err(PadicError::ZeroStep);
        }
        let mut out = vec![self.ring.zero(); d as usize];
        for (&k, a) in &self.terms {
            let c = k.mod_floor(&d) as usize;
            out[c] = out[c].add_ref(a);
        }
        Ok(out)
    }

    /// S_{c+dℤ} = Σ_{c*=1}^{d*} S_{c+c*·d+d·d*ℤ}.
    pub fn additivity_check(&self, c: i64, d: i64, d_star: i64) -> Result<bool> {
        if d < 1 || d_star < 1 {
            return Err(PadicError::ZeroStep);
        }
        let whole = self.shift_sum(c, d)?;
        let mut parts = self.ring.zero();
        for cs in 1..=d_star {
            parts = parts.add_ref(&self.shift_sum(c + cs * d, d * d_star)?);
        }
        Ok(whole == parts)
    }

    /// Decides f = 0 from shift sums alone: with d > width every residue
    /// class holds at most one exponent.
    pub fn vanishes_by_shift_sums(&self) -> bool {
        let d = self.width() as i64 + 1;
        (0..d).all(|c| self.shift_sum(c, d).map(|s| s.is_zero()).unwrap_or(false))
    }

    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms
            .iter()
            .map(|(&k, c)| (k, c.to_string()))
            .collect()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_pairs())
    }
}

/// t^low·P(t) with P(0) and the leading coefficient of P both units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPolynomial {
    low: i64,
    poly: ZpPoly,
}

impl UnitPolynomial {
    pub fn new(f: &LaurentPoly) -> Result<UnitPolynomial> {
        if f.is_zero() {
            return Err(PadicError::ZeroPolynomial);
        }
        let (low, poly) = f.normalize();
        UnitPolynomial::from_parts(low, poly)
    }

    pub fn from_poly(poly: &ZpPoly) -> Result<UnitPolynomial> {
        UnitPolynomial::new(&LaurentPoly::from_poly(poly))
    }

    pub fn from_i64(ring: &Zp, coeffs: &[i64]) -> Result<UnitPolynomial> {
        UnitPolynomial::from_poly(&ZpPoly::from_i64(ring, coeffs))
    }

    fn from_parts(low: i64, poly: ZpPoly) -> Result<UnitPolynomial> {
        if poly.is_zero() {
            return Err(PadicError::ZeroPolynomial);
        }
        if !poly.coeff(0).is_unit() || !poly.leading().is_unit() {
            return Err(PadicError::NotUnitPolynomial(format!(
                "extreme coefficients {} and {} must be units",
                poly.coeff(0),
                poly.leading()
            )));
        }
        Ok(UnitPolynomial { low, poly })
    }

    pub fn ring(&self) -> &Zp {
        self.poly.ring()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.poly.degree().unwrap_or(0) as i64
    }

    /// The ordinary polynomial part P.
    pub fn poly(&self) -> &ZpPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_poly(&self.poly).shift(self.low)
    }

    /// P divided by its leading coefficient, together with that coefficient.
    pub fn monic_part(&self) -> (PadicScalar, ZpPoly) {
        let lc = self.poly.leading();
        let inv = lc.inverse().expect("leading coefficient is a unit");
        (lc, self.poly.scale(&inv))
    }

    pub fn reduce_to(&self, j: u32) -> Result<UnitPolynomial> {
        UnitPolynomial::from_parts(self.low, self.poly.reduce_to(j)?)
    }
}

/// Indices of I_{ε,n₁} + I_{ε,n₂} and I_{ε,n₁} ∩ I_{ε,n₂}: (gcd, lcm).
pub fn ideal_lattice(n1: u64, n2: u64) -> Result<(u64, u64)> {
    if n1 == 0 || n2 == 0 {
        return Err(PadicError::ZeroStep);
    }
    Ok((n1.gcd(&n2), n1.lcm(&n2)))
}

/// Haar measure of c + dℤ in the profinite completion of ℤ: 1/|d|.
pub fn haar_volume(_c: i64, d: i64) -> Result<BigRational> {
    if d == 0 {
        return Err(PadicError::ZeroStep);
    }
    Ok(BigRational::new(
        BigInt::from(1),
        BigInt::from(d.unsigned_abs()),
    ))
}

/// Haar measure of an open subgroup N of a profinite group: 1/|G/N|.
pub fn profinite_volume(quotient_order: u64) -> Result<BigRational> {
    if quotient_order == 0 {
        return Err(PadicError::ZeroStep);
    }
    Ok(BigRational::new(
        BigInt::from(1),
        BigInt::from(quotient_order),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Zp {
        Zp::new(5, 3).unwrap()
    }

    #[test]
    fn shift_sum_examples() {
        let r = ring();
        let f = LaurentPoly::from_dense(&r, 0, &[1, 1, 1]);
        assert_eq!(f.shift_sum(0, 1).unwrap(), r.from_u64(3));
        assert_eq!(f.shift_sum(0, 2).unwrap(), r.from_u64(2));
        assert_eq!(f.shift_sum(1, 2).unwrap(), r.from_u64(1));
        assert_eq!(
            f.shift(2).shift_sum(0, 2).unwrap(),
            f.shift_sum(0, 2).unwrap()
        );
        assert_eq!(f.shift_sum(0, 0), Err(PadicError::ZeroStep));
    }

    #[test]
    fn project_mod_examples() {
        let r = ring();
        let f = LaurentPoly::from_dense(&r, 0, &[1, 1, 1]);
        assert_eq!(f.project_mod(3).unwrap(), vec![r.one(), r.one(), r.one()]);
        assert_eq!(f.project_mod(1).unwrap(), vec![r.from_u64(3)]);
        let multiple = f.sub(&f.shift(4));
        assert!(multiple.project_mod(4).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn additivity_example() {
        let r = ring();
        let f = LaurentPoly::from_dense(&r, 0, &[1, 1, 1, 1]);
        assert!(f.additivity_check(0, 1, 2).unwrap());
        assert_eq!(f.shift_sum(1, 2).unwrap(), r.from_u64(2));
        assert_eq!(f.shift_sum(2, 2).unwrap(), r.from_u64(2));
        assert!(f.additivity_check(3, 2, 1).unwrap());
    }

    #[test]
    fn vanishing_detection() {
        let r = ring();
        assert!(LaurentPoly::from_i64_terms(&r, &[]).vanishes_by_shift_sums());
        let f = LaurentPoly::from_i64_terms(&r, &[(-3, 1), (4, -1)]);
        assert!(!f.vanishes_by_shift_sums());
        // cancelling shift sums at d = 7 are not enough once d exceeds the width
        assert!(f.shift_sum(4, 7).unwrap().is_zero());
    }

    #[test]
    fn unit_polynomial_validation() {
        let r = ring();
        assert!(UnitPolynomial::from_i64(&r, &[5, 1]).is_err());
        assert!(UnitPolynomial::from_i64(&r, &[1, 5]).is_err());
        let f = UnitPolynomial::new(&LaurentPoly::from_i64_terms(&r, &[(-2, 3), (1, 1)])).unwrap();
        assert_eq!((f.low(), f.high(), f.degree()), (-2, 1, 3));
    }

    #[test]
    fn lattice_and_volumes() {
        assert_eq!(ideal_lattice(4, 6).unwrap(), (2, 12));
        assert_eq!(ideal_lattice(7, 7).unwrap(), (7, 7));
        assert_eq!(ideal_lattice(3, 5).unwrap(), (1, 15));
        assert_eq!(haar_volume(1, 6).unwrap().to_string(), "1/6");
        assert_eq!(haar_volume(4, 1).unwrap().to_string(), "1");
        assert_eq!(profinite_volume(48).unwrap().to_string(), "1/48");
        assert!(haar_volume(0, 0).is_err());
    }
}

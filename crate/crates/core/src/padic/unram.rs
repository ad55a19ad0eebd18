use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;

use super::moduli::{residue_modulus, ResidueModulus};
use super::zp::{PadicScalar, Zp};
use super::Scalar;
use crate::error::{PadicError, Result};
use crate::ff::{FpPoly, Fq};

/// The degree-m unramified extension ℤ_p[θ]/(F(θ)) at precision K, where F
/// is the integer lift of a primitive residue modulus.
#[derive(Clone)]
pub struct Zq(Arc<ZqInner>);

struct ZqInner {
    base: Zp,
    modulus: ResidueModulus,
    lift: Vec<PadicScalar>,
    // Coefficient vectors of φ(θ)^i for i < m, φ the Frobenius automorphism.
    frobenius_images: Vec<Vec<PadicScalar>>,
}

impl Zq {
    /// Extension of degree m using the modulus table.
    pub fn new(p: u64, prec: u32, m: usize) -> Result<Zq> {
        let base = Zp::new(p, prec)?;
        Zq::with_modulus(base, residue_modulus(p, m)?)
    }

    pub fn with_modulus(base: Zp, modulus: ResidueModulus) -> Result<Zq> {
        if modulus.poly.p() != base.p() {
            return Err(PadicError::RingMismatch(format!(
                "modulus over F_{} for {:?}",
                modulus.poly.p(),
                base
            )));
        }
        let lift: Vec<PadicScalar> = modulus
            .poly
            .coeffs()
            .iter()
            .map(|&c| base.from_u64(c))
            .collect();
        let m = lift.len() - 1;
        let provisional = Zq(Arc::new(ZqInner {
            base: base.clone(),
            modulus: modulus.clone(),
            lift: lift.clone(),
            frobenius_images: Vec::new(),
        }));
        let phi = provisional.frobenius_of_theta();
        let mut images = Vec::with_capacity(m);
        let mut acc = provisional.one();
        for _ in 0..m {
            images.push(acc.coeffs.clone());
            acc = acc.mul_ref(&phi);
        }
        Ok(Zq(Arc::new(ZqInner {
            base,
            modulus,
            lift,
            frobenius_images: images,
        })))
    }

    /// Newton root of F near θ^p; this is the image of θ under Frobenius.
    fn frobenius_of_theta(&self) -> UnramScalar {
        let theta = self.theta();
        let mut y = theta.pow(&BigUint::from(self.p()));
        let f = &self.0.lift;
        let df: Vec<PadicScalar> = (1..f.len())
            .map(|i| f[i].mul_ref(&self.0.base.from_u64(i as u64)))
            .collect();
        loop {
            let fy = self.eval_zp_poly(f, &y);
            if fy.is_zero() {
                return y;
            }
            let dfy = self.eval_zp_poly(&df, &y);
            let step = fy.mul_ref(&dfy.inverse().expect("separable modulus"));
            y = y.sub_ref(&step);
        }
    }

    fn eval_zp_poly(&self, coeffs: &[PadicScalar], at: &UnramScalar) -> UnramScalar {
        coeffs.iter().rev().fold(self.zero(), |acc, c| {
            acc.mul_ref(at).add_ref(&self.from_zp(c))
        })
    }

    pub fn base(&self) -> &Zp {
        &self.0.base
    }

    pub fn p(&self) -> u64 {
        self.0.base.p()
    }

    pub fn precision(&self) -> u32 {
        self.0.base.precision()
    }

    pub fn degree(&self) -> usize {
        self.0.lift.len() - 1
    }

    pub fn modulus_id(&self) -> &str {
        &self.0.modulus.id
    }

    pub fn residue_modulus(&self) -> &ResidueModulus {
        &self.0.modulus
    }

    /// Residue field F_{p^m} with the same primitive modulus.
    pub fn residue_field(&self) -> Fq {
        Fq::new(self.0.modulus.poly.clone())
    }

    /// Monic integer lift of the modulus, low degree first.
    pub fn modulus_lift(&self) -> &[PadicScalar] {
        &self.0.lift
    }

    pub fn with_precision(&self, j: u32) -> Result<Zq> {
        Zq::with_modulus(self.0.base.with_precision(j)?, self.0.modulus.clone())
    }

    pub fn zero(&self) -> UnramScalar {
        UnramScalar {
            ring: self.clone(),
            coeffs: vec![self.0.base.zero(); self.degree()],
        }
    }

    pub fn one(&self) -> UnramScalar {
        self.from_zp(&self.0.base.one())
    }

    pub fn from_zp(&self, x: &PadicScalar) -> UnramScalar {
        let mut out = self.zero();
        out.coeffs[0] = x.clone();
        out
    }

    pub fn from_i64(&self, v: i64) -> UnramScalar {
        self.from_zp(&self.0.base.from_i64(v))
    }

    /// Element Σ c_i θ^i; longer vectors are reduced modulo F.
    pub fn from_coeffs(&self, coeffs: Vec<PadicScalar>) -> UnramScalar {
        self.reduce(coeffs)
    }

    pub fn from_i64_coeffs(&self, coeffs: &[i64]) -> UnramScalar {
        self.reduce(coeffs.iter().map(|&c| self.0.base.from_i64(c)).collect())
    }

    pub fn parse(&self, parts: &[String]) -> Result<UnramScalar> {
        let coeffs = parts
            .iter()
            .map(|s| self.0.base.parse(s))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() > self.degree() {
            return Err(PadicError::Parse(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.degree()
            )));
        }
        Ok(self.reduce(coeffs))
    }

    /// The class of the polynomial variable.
    pub fn theta(&self) -> UnramScalar {
        let b = &self.0.base;
        self.reduce(vec![b.zero(), b.one()])
    }

    /// Lift of a residue-field element by coefficients in [0, p).
    pub fn lift_residue(&self, r: &FpPoly) -> UnramScalar {
        let r = r.rem(&self.0.modulus.poly);
        let coeffs = (0..self.degree())
            .map(|i| self.0.base.from_u64(r.coeff(i)))
            .collect();
        UnramScalar {
            ring: self.clone(),
            coeffs,
        }
    }

    /// Teichmüller lift of a nonzero residue: iterate x ↦ x^{p^m} to its
    /// fixed point.
    pub fn teichmuller(&self, r: &FpPoly) -> Result<UnramScalar> {
        let mut x = self.lift_residue(r);
        if x.residue().is_zero() {
            return Err(PadicError::NotAUnit);
        }
        let q = BigUint::from(self.p()).pow(self.degree() as u32);
        loop {
            let next = x.pow(&q);
            if next == x {
                return Ok(x);
            }
            x = next;
        }
    }

    fn reduce(&self, mut c: Vec<PadicScalar>) -> UnramScalar {
        let m = self.degree();
        let f = &self.0.lift;
        while c.len() > m {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - m;
            for i in 0..m {
                c[shift + i] = c[shift + i].sub_ref(&top.mul_ref(&f[i]));
            }
        }
        while c.len() < m {
            c.push(self.0.base.zero());
        }
        UnramScalar {
            ring: self.clone(),
            coeffs: c,
        }
    }

    pub(crate) fn same(&self, other: &Zq) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base.same(&other.0.base) && self.0.modulus == other.0.modulus)
    }
}

impl PartialEq for Zq {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Zq {}

impl fmt::Debug for Zq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z/{}^{}[θ] ({})",
            self.p(),
            self.precision(),
            self.modulus_id()
        )
    }
}

/// Element of the unramified extension, stored as m coefficients in the
/// power basis of θ.
#[derive(Clone)]
pub struct UnramScalar {
    ring: Zq,
    coeffs: Vec<PadicScalar>,
}

impl UnramScalar {
    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    /// Reduction to F_{p^m}.
    pub fn residue(&self) -> FpPoly {
        FpPoly::new(
            self.ring.p(),
            self.coeffs.iter().map(|c| c.residue_mod_p()).collect(),
        )
    }

    /// The element as a ℤ_p scalar when all higher coefficients vanish.
    pub fn as_zp(&self) -> Option<PadicScalar> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Minimum coefficient valuation, which is the valuation because the
    /// extension is unramified.
    pub fn valuation(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| c.valuation())
            .min()
            .unwrap_or(self.ring.precision())
    }

    pub fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    fn check(&self, rhs: &UnramScalar) {
        assert!(
            self.ring.same(&rhs.ring),
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            rhs.ring
        );
    }

    pub fn add_ref(&self, rhs: &UnramScalar) -> UnramScalar {
        self.check(rhs);
        UnramScalar {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub_ref(&self, rhs: &UnramScalar) -> UnramScalar {
        self.check(rhs);
        UnramScalar {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn neg_ref(&self) -> UnramScalar {
        UnramScalar {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a.neg_ref()).collect(),
        }
    }

    pub fn mul_ref(&self, rhs: &UnramScalar) -> UnramScalar {
        self.check(rhs);
        let m = self.coeffs.len();
        if m == 1 {
            return UnramScalar {
                ring: self.ring.clone(),
                coeffs: vec![self.coeffs[0].mul_ref(&rhs.coeffs[0])],
            };
        }
        let zero = self.ring.base().zero();
        let mut prod = vec![zero; 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].add_ref(&a.mul_ref(b));
            }
        }
        self.ring.reduce(prod)
    }

    pub fn scale(&self, c: &PadicScalar) -> UnramScalar {
        UnramScalar {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Inverse of a unit: residue-field inverse refined by Newton iteration.
    pub fn inverse(&self) -> Result<UnramScalar> {
        let r = self.residue();
        if r.is_zero() {
            return Err(PadicError::NotAUnit);
        }
        let (g, s, _) = r.ext_gcd(&self.ring.0.modulus.poly);
        debug_assert!(g.is_one());
        let mut y = self.ring.lift_residue(&s);
        let two = self.ring.from_i64(2);
        let one = self.ring.one();
        loop {
            let xy = self.mul_ref(&y);
            if xy == one {
                return Ok(y);
            }
            y = y.mul_ref(&two.sub_ref(&xy));
        }
    }

    /// The Frobenius automorphism: ℤ_p-linear with θ ↦ φ(θ).
    pub fn frobenius(&self) -> UnramScalar {
        let images = &self.ring.0.frobenius_images;
        let m = self.coeffs.len();
        let mut out = vec![self.ring.base().zero(); m];
        for (a, img) in self.coeffs.iter().zip(images) {
            if a.is_zero() {
                continue;
            }
            for j in 0..m {
                out[j] = out[j].add_ref(&a.mul_ref(&img[j]));
            }
        }
        UnramScalar {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    pub fn frobenius_pow(&self, k: u64) -> UnramScalar {
        let k = k % self.coeffs.len() as u64;
        (0..k).fold(self.clone(), |x, _| x.frobenius())
    }

    /// x^{p^m} = x.
    pub fn is_teichmuller(&self) -> bool {
        self.is_unit()
            && self.pow(&BigUint::from(self.ring.p()).pow(self.coeffs.len() as u32)) == *self
    }

    pub fn reduce_precision(&self, j: u32) -> Result<UnramScalar> {
        let ring = self.ring.with_precision(j)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.reduce_precision(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(UnramScalar { ring, coeffs })
    }

    /// Coefficients as decimal strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl PartialEq for UnramScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for UnramScalar {}

impl Hash for UnramScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for UnramScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl fmt::Debug for UnramScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.ring)
    }
}

impl Scalar for UnramScalar {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }
    fn one_like(&self) -> Self {
        self.ring.one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.ring.from_i64(v)
    }
    fn from_zp(&self, x: &PadicScalar) -> Self {
        self.ring.from_zp(x)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub_ref(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn is_zero(&self) -> bool {
        UnramScalar::is_zero(self)
    }
    fn valuation(&self) -> u32 {
        UnramScalar::valuation(self)
    }
    fn inverse(&self) -> Result<Self> {
        UnramScalar::inverse(self)
    }
    fn prime(&self) -> u64 {
        self.ring.p()
    }
    fn precision(&self) -> u32 {
        self.ring.precision()
    }
    fn degree(&self) -> usize {
        self.coeffs.len()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.ring.same(&other.ring)
    }
    fn reduce_to(&self, j: u32) -> Result<Self> {
        self.reduce_precision(j)
    }
    fn is_unit(&self) -> bool {
        UnramScalar::is_unit(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_is_multiplicative_and_additive() {
        let r = Zq::new(5, 3, 3).unwrap();
        let a = r.from_i64_coeffs(&[3, 17, 101]);
        let b = r.from_i64_coeffs(&[44, 2, 9]);
        assert_eq!(
            a.mul_ref(&b).frobenius(),
            a.frobenius().mul_ref(&b.frobenius())
        );
        assert_eq!(
            a.add_ref(&b).frobenius(),
            a.frobenius().add_ref(&b.frobenius())
        );
        assert_eq!(a.frobenius_pow(3), a);
        assert_eq!(r.from_i64(77).frobenius(), r.from_i64(77));
    }

    #[test]
    fn frobenius_reduces_to_pth_power() {
        let r = Zq::new(3, 4, 2).unwrap();
        let a = r.from_i64_coeffs(&[5, 13]);
        let fr = a.frobenius().residue();
        let pw = a.pow(&BigUint::from(3u32)).residue();
        assert_eq!(fr, pw);
    }

    #[test]
    fn teichmuller_generator_of_f9() {
        let r = Zq::new(3, 4, 2).unwrap();
        let t = FpPoly::x(3);
        let lift = r.teichmuller(&t).unwrap();
        let cubed = t.pow_mod(&BigUint::from(3u32), &r.residue_modulus().poly);
        assert_eq!(lift.frobenius(), r.teichmuller(&cubed).unwrap());
        assert_eq!(lift.frobenius().frobenius(), lift);
        assert!(lift.is_teichmuller());
    }

    #[test]
    fn inverse_roundtrip() {
        let r = Zq::new(7, 3, 2).unwrap();
        let a = r.from_i64_coeffs(&[10, 3]);
        assert_eq!(a.mul_ref(&a.inverse().unwrap()), r.one());
        assert!(r.from_i64_coeffs(&[7, 14]).inverse().is_err());
    }

    #[test]
    fn degree_one_extension_matches_zp() {
        let r = Zq::new(5, 2, 1).unwrap();
        let x = r.teichmuller(&FpPoly::constant(5, 2)).unwrap();
        assert_eq!(x.as_zp().unwrap().to_u64(), Some(7));
    }
}

use num_bigint::BigUint;

use super::poly::FpPoly;

/// The finite field F_p[x]/(modulus) with a primitive modulus, so that the
/// class of x generates the multiplicative group.
#[derive(Clone, Debug)]
pub struct Fq {
    modulus: FpPoly,
}

impl Fq {
    /// `modulus` must be monic, irreducible and primitive.
    pub fn new(modulus: FpPoly) -> Fq {
        debug_assert!(modulus.is_irreducible());
        Fq { modulus }
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Size of the multiplicative group.
    pub fn unit_order(&self) -> BigUint {
        BigUint::from(self.p()).pow(self.degree() as u32) - 1u32
    }

    pub fn element(&self, coeffs: &[u64]) -> FpPoly {
        FpPoly::new(self.p(), coeffs.to_vec()).rem(&self.modulus)
    }

    pub fn generator(&self) -> FpPoly {
        FpPoly::x(self.p()).rem(&self.modulus)
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn pow(&self, a: &FpPoly, e: &BigUint) -> FpPoly {
        a.pow_mod(e, &self.modulus)
    }

    /// Coefficient vector padded to the field degree.
    pub fn coords(&self, a: &FpPoly) -> Vec<u64> {
        (0..self.degree()).map(|i| a.coeff(i)).collect()
    }

    /// Evaluates a polynomial with F_p coefficients at a field element.
    pub fn eval(&self, f: &FpPoly, at: &FpPoly) -> FpPoly {
        let p = self.p();
        f.coeffs().iter().rev().fold(FpPoly::zero(p), |acc, &c| {
            self.mul(&acc, at).add(&FpPoly::constant(p, c))
        })
    }

    /// Nonzero elements of the subfield of size p^d, generated from the
    /// primitive element. Requires d | degree.
    pub fn subfield_units(&self, d: usize) -> Vec<FpPoly> {
        assert!(d >= 1 && self.degree().is_multiple_of(d), "not a subfield degree");
        let sub_order = BigUint::from(self.p()).pow(d as u32) - 1u32;
        let zeta = self.pow(&self.generator(), &(self.unit_order() / &sub_order));
        let count: u64 = sub_order
            .try_into()
            .expect("subfield too large to enumerate");
        let mut out = Vec::with_capacity(count as usize);
        let mut acc = FpPoly::one(self.p()).rem(&self.modulus);
        for _ in 0..count {
            out.push(acc.clone());
            acc = self.mul(&acc, &zeta);
        }
        out
    }

    /// Roots of an irreducible F_p-polynomial whose degree divides the field
    /// degree, listed as a Frobenius orbit r, r^p, r^{p^2}, … starting at the
    /// root with the lexicographically least coefficient vector.
    pub fn frobenius_orbit_roots(&self, g: &FpPoly) -> Vec<FpPoly> {
        let d = g.degree().expect("zero polynomial has no roots");
        let roots: Vec<FpPoly> = self
            .subfield_units(d)
            .into_iter()
            .filter(|y| self.eval(g, y).is_zero())
            .collect();
        let first = roots
            .iter()
            .min_by(|a, b| self.coords(a).cmp(&self.coords(b)))
            .cloned()
            .expect("irreducible factor has no root in the extension");
        let pb = BigUint::from(self.p());
        let mut orbit = vec![first];
        for _ in 1..d {
            let next = self.pow(orbit.last().unwrap(), &pb);
            orbit.push(next);
        }
        orbit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_of_irreducible_quadratic() {
        // F_9 = F_3[x]/(x^2+2x+2)
        let f9 = Fq::new(FpPoly::new(3, vec![2, 2, 1]));
        let g = FpPoly::from_i64(3, &[-1, -1, 1]);
        let orbit = f9.frobenius_orbit_roots(&g);
        assert_eq!(orbit.len(), 2);
        for r in &orbit {
            assert!(f9.eval(&g, r).is_zero());
        }
        assert_ne!(orbit[0], orbit[1]);
        assert!(f9.coords(&orbit[0]) < f9.coords(&orbit[1]));
    }

    #[test]
    fn subfield_sizes() {
        let f81 = Fq::new(FpPoly::new(3, vec![2, 0, 0, 2, 1]));
        assert_eq!(f81.subfield_units(1).len(), 2);
        assert_eq!(f81.subfield_units(2).len(), 8);
        assert_eq!(f81.subfield_units(4).len(), 80);
    }
}

use num_bigint::BigUint;
use num_integer::Integer;

use super::order::is_teichmuller;
use crate::error::{PadicError, Result};
use crate::ff::FpPoly;
use crate::linalg::{Matrix, PadicMatrix, UnramMatrix};
use crate::padic::{UnramScalar, Zq};
use crate::poly::ZpPoly;

/// One Frobenius orbit of eigenvalues: the roots of one irreducible factor
/// of the residual characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusOrbit {
    pub residue_factor: FpPoly,
    /// Indices into the eigenvalue list, in the order λ, σλ, σ²λ, ….
    pub members: Vec<usize>,
}

/// Teichmüller eigenvalues λ with spectral projectors π_λ, all over a
/// common unramified extension E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralDatum {
    pub field: Zq,
    pub eigenvalues: Vec<UnramScalar>,
    pub projectors: Vec<UnramMatrix>,
    pub orbits: Vec<FrobeniusOrbit>,
    pub operator: PadicMatrix,
}

/// Results of the reconstruction identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralAudit {
    pub sum_is_identity: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub reconstructs: bool,
    pub frobenius_equivariant: bool,
}

impl SpectralAudit {
    pub fn all(&self) -> bool {
        self.sum_is_identity
            && self.idempotent
            && self.orthogonal
            && self.reconstructs
            && self.frobenius_equivariant
    }
}

fn lcm_all(ds: impl Iterator<Item = usize>) -> usize {
    ds.fold(1, |acc, d| acc.lcm(&d))
}

/// Spectral decomposition of an operator of Teichmüller type.
pub fn teichmuller_spectral(us: &PadicMatrix, seed: u64) -> Result<SpectralDatum> {
    if !is_teichmuller(us) {
        return Err(PadicError::NotTeichmuller);
    }
    let chi = ZpPoly::new(us.ring(), us.char_poly()).to_fp();
    let factors: Vec<FpPoly> = chi.factor(seed).into_iter().map(|(g, _)| g).collect();
    let degree = lcm_all(factors.iter().map(|g| g.degree().unwrap_or(1)));
    let field = Zq::new(us.prime(), us.precision(), degree)?;
    let residue_field = field.residue_field();
    let mut eigenvalues = Vec::new();
    let mut orbits = Vec::new();
    for g in &factors {
        let mut members = Vec::new();
        for r in residue_field.frobenius_orbit_roots(g) {
            members.push(eigenvalues.len());
            eigenvalues.push(field.teichmuller(&r)?);
        }
        orbits.push(FrobeniusOrbit {
            residue_factor: g.clone(),
            members,
        });
    }
    let u = us.to_unram(&field);
    let n = us.n();
    let projectors = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, lam)| {
            let mut acc = Matrix::identity_like(lam, n);
            for (k, mu) in eigenvalues.iter().enumerate() {
                if k == i {
                    continue;
                }
                let shifted = u.sub(&Matrix::scalar_like(mu, n));
                let inv = lam.sub_ref(mu).inverse()?;
                acc = acc.mul(&shifted).scale(&inv);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralDatum {
        field,
        eigenvalues,
        projectors,
        orbits,
        operator: us.clone(),
    })
}

impl SpectralDatum {
    /// Index of σ(λ_i).
    pub fn frobenius_successor(&self, i: usize) -> usize {
        for o in &self.orbits {
            if let Some(pos) = o.members.iter().position(|&k| k == i) {
                return o.members[(pos + 1) % o.members.len()];
            }
        }
        i
    }

    pub fn audit(&self) -> SpectralAudit {
        let n = self.operator.n();
        let one = self.field.one();
        let id = Matrix::identity_like(&one, n);
        let zero = Matrix::zero_like(&one, n);
        let sum = self
            .projectors
            .iter()
            .fold(zero.clone(), |acc, p| acc.add(p));
        let weighted = self
            .projectors
            .iter()
            .zip(&self.eigenvalues)
            .fold(zero.clone(), |acc, (p, l)| acc.add(&p.scale(l)));
        let mut idempotent = true;
        let mut orthogonal = true;
        for (i, a) in self.projectors.iter().enumerate() {
            for (k, b) in self.projectors.iter().enumerate() {
                let prod = a.mul(b);
                if i == k {
                    idempotent &= prod == *a;
                } else {
                    orthogonal &= prod.is_zero();
                }
            }
        }
        let frobenius_equivariant = (0..self.projectors.len()).all(|i| {
            self.projectors[i].frobenius() == self.projectors[self.frobenius_successor(i)]
        });
        SpectralAudit {
            sum_is_identity: sum == id,
            idempotent,
            orthogonal,
            reconstructs: weighted == self.operator.to_unram(&self.field),
            frobenius_equivariant,
        }
    }

    /// Σ σ^k(λ)·π_λ, which lies over ℤ_p and equals U_s^{p^k}.
    pub fn galois_act(&self, k: u64) -> Result<PadicMatrix> {
        let n = self.operator.n();
        let zero = Matrix::zero_like(&self.field.zero(), n);
        let acc = self
            .projectors
            .iter()
            .zip(&self.eigenvalues)
            .fold(zero, |acc, (p, l)| acc.add(&p.scale(&l.frobenius_pow(k))));
        acc.as_padic()
            .ok_or_else(|| PadicError::LiftAudit("Galois image left ℤ_p".into()))
    }

    /// Σ g(λ)·π_λ for an arbitrary map on eigenvalues.
    pub fn functional_calculus(&self, g: impl Fn(&UnramScalar) -> UnramScalar) -> UnramMatrix {
        let n = self.operator.n();
        let zero = Matrix::zero_like(&self.field.zero(), n);
        self.projectors
            .iter()
            .zip(&self.eigenvalues)
            .fold(zero, |acc, (p, l)| acc.add(&p.scale(&g(l))))
    }

    /// U_s^{p^k}, the independent route to galois_act.
    pub fn frobenius_power(&self, k: u64) -> PadicMatrix {
        self.operator
            .pow(&BigUint::from(self.operator.prime()).pow(k as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::DEFAULT_SEED;
    use crate::padic::Zp;
    use crate::unitary::jordan_decompose;

    fn m(p: u64, k: u32, e: &[i64]) -> PadicMatrix {
        PadicMatrix::from_i64(&Zp::new(p, k).unwrap(), 2, e).unwrap()
    }

    #[test]
    fn diagonal_example() {
        let u = m(5, 3, &[1, 0, 0, -1]);
        let s = teichmuller_spectral(&u, DEFAULT_SEED).unwrap();
        assert!(s.audit().all());
        let r = s.field.clone();
        let one = r.one();
        let e1 = Matrix::diagonal(&[one.clone(), r.zero()]);
        let e2 = Matrix::diagonal(&[r.zero(), one]);
        let i1 = s
            .eigenvalues
            .iter()
            .position(|l| l.as_zp().unwrap().is_one())
            .unwrap();
        assert_eq!(s.projectors[i1], e1);
        assert_eq!(s.projectors[1 - i1], e2);
        assert_eq!(s.galois_act(1).unwrap(), u);
    }

    #[test]
    fn rotation_has_teichmuller_square_roots_of_minus_one() {
        let u = m(5, 2, &[0, -1, 1, 0]);
        let s = teichmuller_spectral(&u, DEFAULT_SEED).unwrap();
        assert!(s.audit().all());
        let mut vals: Vec<u64> = s
            .eigenvalues
            .iter()
            .map(|l| l.as_zp().unwrap().to_u64().unwrap())
            .collect();
        vals.sort();
        assert_eq!(vals, vec![7, 18]);
        for (l, pi) in s.eigenvalues.iter().zip(&s.projectors) {
            let expected = u
                .to_unram(&s.field)
                .add(&Matrix::scalar_like(l, 2))
                .scale(&l.add_ref(l).inverse().unwrap());
            assert_eq!(*pi, expected);
        }
    }

    #[test]
    fn quadratic_orbit_is_swapped_by_frobenius() {
        let u = m(3, 3, &[1, 1, 1, 0]);
        let us = jordan_decompose(&u).unwrap().semisimple;
        let s = teichmuller_spectral(&us, DEFAULT_SEED).unwrap();
        assert_eq!(s.orbits.len(), 1);
        assert_eq!(s.orbits[0].members.len(), 2);
        assert_eq!(s.field.degree(), 2);
        assert!(s.audit().all());
        assert_eq!(s.projectors[0].frobenius(), s.projectors[1]);
        assert_eq!(s.galois_act(0).unwrap(), us);
        assert_eq!(s.galois_act(2).unwrap(), us);
        assert_eq!(s.galois_act(1).unwrap(), s.frobenius_power(1));
    }

    #[test]
    fn rejects_non_teichmuller() {
        assert_eq!(
            teichmuller_spectral(&m(3, 3, &[1, 1, 1, 0]), DEFAULT_SEED),
            Err(PadicError::NotTeichmuller)
        );
    }
}

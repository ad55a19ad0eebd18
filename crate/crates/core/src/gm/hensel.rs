use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, UnitPolynomial};
use crate::error::{PadicError, Result};
use crate::ff::{FpPoly, Fq};
use crate::padic::{residue_modulus, PadicScalar};
use crate::poly::ZpPoly;

/// Canonical label of a Teichmüller root cluster: the Frobenius orbit of
/// roots of one irreducible residue factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub degree: usize,
    /// Monic irreducible factor over F_p, low degree first.
    pub residue_factor: Vec<u64>,
    pub multiplicity: u32,
    /// Least root in F_{p^degree}, as coordinates in the table basis.
    pub canonical_root: Vec<u64>,
    pub modulus_id: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeichFactor {
    pub label: OrbitLabel,
    /// Monic lift of residue_factor^multiplicity.
    pub factor: ZpPoly,
}

/// f = unit·t^shift·∏ factors over ℤ/p^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeichFactorization {
    pub precision: u32,
    pub unit: PadicScalar,
    pub shift: i64,
    pub factors: Vec<TeichFactor>,
}

impl TeichFactorization {
    pub fn product(&self) -> LaurentPoly {
        let p = self
            .factors
            .iter()
            .fold(ZpPoly::constant(&self.unit), |acc, f| acc.mul(&f.factor));
        LaurentPoly::from_poly(&p).shift(self.shift)
    }
}

pub fn orbit_label(g: &FpPoly, multiplicity: u32) -> Result<OrbitLabel> {
    let d = g.degree().ok_or(PadicError::ZeroPolynomial)?;
    let modulus = residue_modulus(g.p(), d)?;
    let field = Fq::new(modulus.poly.clone());
    let root = field.frobenius_orbit_roots(g)[0].clone();
    Ok(OrbitLabel {
        degree: d,
        residue_factor: g.coeffs().to_vec(),
        multiplicity,
        canonical_root: field.coords(&root),
        modulus_id: modulus.id,
    })
}

/// One quadratic Hensel step: from f ≡ gh and sg + th ≡ 1 modulo m to the
/// same congruences modulo m², h monic.
fn hensel_step(
    f: &ZpPoly,
    g: &ZpPoly,
    h: &ZpPoly,
    s: &ZpPoly,
    t: &ZpPoly,
) -> Result<(ZpPoly, ZpPoly, ZpPoly, ZpPoly)> {
    let e = f.sub(&g.mul(h));
    let (q, r) = s.mul(&e).div_rem(h)?;
    let g2 = g.add(&t.mul(&e)).add(&q.mul(g));
    let h2 = h.add(&r);
    let one = ZpPoly::one(f.ring());
    let b = s.mul(&g2).add(&t.mul(&h2)).sub(&one);
    let (c, d) = s.mul(&b).div_rem(&h2)?;
    let s2 = s.sub(&d);
    let t2 = t.sub(&t.mul(&b)).sub(&c.mul(&g2));
    Ok((g2, h2, s2, t2))
}

/// Lifts f ≡ g·h (mod p) with coprime monic residues to an exact
/// factorization over ℤ/p^K.
fn lift_pair(f: &ZpPoly, g0: &FpPoly, h0: &FpPoly) -> Result<(ZpPoly, ZpPoly)> {
    let ring = f.ring();
    let (gcd, s0, t0) = g0.ext_gcd(h0);
    if !gcd.is_one() {
        return Err(PadicError::LiftAudit(
            "residue factors are not coprime".into(),
        ));
    }
    let mut g = ZpPoly::from_fp(ring, g0);
    let mut h = ZpPoly::from_fp(ring, h0);
    let mut s = ZpPoly::from_fp(ring, &s0);
    let mut t = ZpPoly::from_fp(ring, &t0);
    for _ in 0..64 {
        if g.mul(&h) == *f {
            return Ok((g, h));
        }
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t)?;
    }
    Err(PadicError::LiftAudit(
        "Hensel iteration did not settle".into(),
    ))
}

/// Lifts a monic f over ℤ/p^K along pairwise coprime monic residue factors
/// whose product is f mod p.
pub fn hensel_lift(f: &ZpPoly, residues: &[FpPoly]) -> Result<Vec<ZpPoly>> {
    match residues {
        [] => Err(PadicError::LiftAudit("no residue factors".into())),
        [_] => Ok(vec![f.clone()]),
        [first, rest @ ..] => {
            let p = first.p();
            let h0 = rest.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
            let (g, h) = lift_pair(f, first, &h0)?;
            let mut out = vec![g];
            out.extend(hensel_lift(&h, rest)?);
            Ok(out)
        }
    }
}

/// Factorization of a unit polynomial over ℤ/p^j into pieces f_λ, one per
/// Frobenius orbit of residue roots.
pub fn teich_factor(f: &UnitPolynomial, j: u32, seed: u64) -> Result<TeichFactorization> {
    let fj = f.reduce_to(j)?;
    let (unit, monic) = fj.monic_part();
    let residue = monic.to_fp();
    let groups = residue.factor(seed);
    let grouped: Vec<FpPoly> = groups
        .iter()
        .map(|(g, e)| (0..*e).fold(FpPoly::one(g.p()), |acc, _| acc.mul(g)))
        .collect();
    let lifted = if grouped.is_empty() {
        vec![]
    } else {
        hensel_lift(&monic, &grouped)?
    };
    let factors = groups
        .iter()
        .zip(lifted)
        .map(|((g, e), factor)| {
            Ok(TeichFactor {
                label: orbit_label(g, *e)?,
                factor,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TeichFactorization {
        precision: j,
        unit,
        shift: fj.low(),
        factors,
    })
}

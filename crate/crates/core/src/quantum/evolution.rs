use num_bigint::BigUint;
use num_traits::One;

use super::wave::WaveFunction;
use crate::error::{PadicError, Result};
use crate::linalg::PadicMatrix;
use crate::padic::{PadicScalar, Zp};

/// Admissible time parameters for e^{Ht}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExpDomain {
    /// t ∈ pℤ_p.
    #[default]
    Strict,
    /// |t| ≤ 1/(p|H|), i.e. v(t) + v(H) ≥ 1.
    Widened,
}

fn legendre(j: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = j / p;
    while q > 0 {
        v += q as u32;
        q /= p;
    }
    v
}

/// Least J such that every term j ≥ J has valuation ≥ K, from
/// v(H^j t^j / j!) ≥ j·s − (j − 1)/(p − 1) with s = v(H) + v(t) ≥ 1.
pub fn exp_truncation(p: u64, s: u32, k: u32) -> u64 {
    let (s, k, p1) = (s as u64, k as u64, p - 1);
    let mut j = 0u64;
    while j * s * p1 < k * p1 + j.saturating_sub(1) {
        j += 1;
    }
    j
}

/// e^{Ht} = Σ_{j<J} H^j t^j / j!.
pub fn exp_matrix(h: &PadicMatrix, t: &PadicScalar, domain: ExpDomain) -> Result<PadicMatrix> {
    let ring = h.ring().clone();
    if *t.ring() != ring {
        return Err(PadicError::RingMismatch(
            "time parameter and operator".into(),
        ));
    }
    let k = ring.precision();
    let p = ring.p();
    let vt = t.valuation();
    let vh = h.min_valuation();
    let ok = match domain {
        ExpDomain::Strict => vt >= 1,
        ExpDomain::Widened => vt + vh >= 1,
    };
    if !ok {
        return Err(PadicError::RadiusViolation(format!(
            "v(t) = {vt}, v(H) = {vh}"
        )));
    }
    if t.is_zero() || h.is_zero() {
        return Ok(h.identity());
    }
    let s = vt.min(k) + vh.min(k);
    let jmax = exp_truncation(p, s.max(1), k);
    // the division by j! costs v(j!) digits, so work that much higher
    let extra = legendre(jmax, p);
    let wide = Zp::new(p, k + extra)?;
    let hw = h.lift_to(&wide)?;
    let tw = t.lift_to(&wide)?;
    let step = hw.scale(&tw);
    let mut power = hw.identity();
    let mut acc = hw.identity();
    let mut fact = BigUint::one();
    for j in 1..jmax {
        power = power.mul(&step);
        fact *= j;
        let v = legendre(j, p);
        let unit = &fact / BigUint::from(p).pow(v);
        let inv = wide.from_biguint(&unit).inverse()?;
        let term = power.map(|x| x.shift_down(v)).scale(&inv);
        acc = acc.add(&term);
    }
    acc.reduce_to(k)
}

/// (H, U) with HU = UH and U unitary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionPair {
    h: PadicMatrix,
    u: PadicMatrix,
}

impl EvolutionPair {
    pub fn new(h: PadicMatrix, u: PadicMatrix) -> Result<EvolutionPair> {
        if h.ring() != u.ring() || h.n() != u.n() {
            return Err(PadicError::RingMismatch("H and U".into()));
        }
        if !u.is_unitary() {
            return Err(PadicError::NotUnitary);
        }
        if !h.commutes_with(&u) {
            return Err(PadicError::NonCommuting);
        }
        Ok(EvolutionPair { h, u })
    }

    pub fn h(&self) -> &PadicMatrix {
        &self.h
    }

    pub fn u(&self) -> &PadicMatrix {
        &self.u
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evolved {
    pub state: WaveFunction,
    /// |ψ_k(t)| = |ψ_0|.
    pub norm_preserved: bool,
}

/// ψ_k(t) = U^k·e^{Ht}·ψ_0; negative k steps backwards.
pub fn evolve(
    pair: &EvolutionPair,
    psi0: &WaveFunction,
    k: i64,
    t: &PadicScalar,
    domain: ExpDomain,
) -> Result<Evolved> {
    let e = exp_matrix(&pair.h, t, domain)?;
    let base = if k < 0 {
        pair.u.inverse()?
    } else {
        pair.u.clone()
    };
    let op = base.pow_u64(k.unsigned_abs()).mul(&e);
    let state = psi0.apply(&op)?;
    Ok(Evolved {
        norm_preserved: state.norm() == psi0.norm(),
        state,
    })
}

/// ψ_0, ψ_1, …, ψ_steps at a fixed t, each obtained from the previous by U.
pub fn trajectory(
    pair: &EvolutionPair,
    psi0: &WaveFunction,
    t: &PadicScalar,
    steps: usize,
    domain: ExpDomain,
) -> Result<Vec<WaveFunction>> {
    let mut cur = psi0.apply(&exp_matrix(&pair.h, t, domain)?)?;
    let mut out = vec![cur.clone()];
    for _ in 0..steps {
        cur = cur.apply(&pair.u)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: &Zp, e: &[i64]) -> PadicMatrix {
        PadicMatrix::from_i64(r, 2, e).unwrap()
    }

    #[test]
    fn nilpotent_series_terminates() {
        let r = Zp::new(3, 4).unwrap();
        let h = m(&r, &[0, 1, 0, 0]);
        let e = exp_matrix(&h, &r.from_u64(3), ExpDomain::Strict).unwrap();
        assert_eq!(e, m(&r, &[1, 3, 0, 1]));
        assert!(exp_matrix(&h, &r.zero(), ExpDomain::Strict)
            .unwrap()
            .is_identity());
        assert!(matches!(
            exp_matrix(&h, &r.one(), ExpDomain::Strict),
            Err(PadicError::RadiusViolation(_))
        ));
    }

    #[test]
    fn scalar_exponential_matches_series_oracle() {
        // exp(3) mod 3^4 by summing 3^j/j! over the rationals
        let r = Zp::new(3, 4).unwrap();
        let h = m(&r, &[1, 0, 0, 1]);
        let e = exp_matrix(&h, &r.from_u64(3), ExpDomain::Strict).unwrap();
        let mut num = num_rational::BigRational::from_integer(0.into());
        let mut term = num_rational::BigRational::from_integer(1.into());
        for j in 0..40 {
            if j > 0 {
                term *= num_rational::BigRational::new(3.into(), j.into());
            }
            num += term.clone();
        }
        let q = r
            .from_bigint(num.numer())
            .mul_ref(&r.from_bigint(num.denom()).inverse().unwrap());
        assert_eq!(*e.get(0, 0), q);
    }

    #[test]
    fn group_law() {
        let r = Zp::new(5, 3).unwrap();
        let h = m(&r, &[2, 7, 1, 3]);
        let (t, s) = (r.from_u64(10), r.from_u64(35));
        let lhs = exp_matrix(&h, &t, ExpDomain::Strict)
            .unwrap()
            .mul(&exp_matrix(&h, &s, ExpDomain::Strict).unwrap());
        assert_eq!(
            lhs,
            exp_matrix(&h, &t.add_ref(&s), ExpDomain::Strict).unwrap()
        );
    }

    #[test]
    fn widened_domain() {
        let r = Zp::new(3, 3).unwrap();
        let h = m(&r, &[3, 0, 0, 6]);
        assert!(exp_matrix(&h, &r.one(), ExpDomain::Strict).is_err());
        let e = exp_matrix(&h, &r.one(), ExpDomain::Widened).unwrap();
        let e2 = exp_matrix(&h, &r.from_u64(2), ExpDomain::Widened).unwrap();
        assert_eq!(
            e.mul(&e2),
            exp_matrix(&h, &r.from_u64(3), ExpDomain::Widened).unwrap()
        );
        assert!(e.is_unitary());
    }

    #[test]
    fn evolution_examples() {
        let r = Zp::new(3, 3).unwrap();
        let psi = WaveFunction::from_i64(&r, &[1, 1]).unwrap();
        let id = m(&r, &[1, 0, 0, 1]);
        let pair = EvolutionPair::new(id.zero(), id.clone()).unwrap();
        for k in [-2, 0, 3] {
            let out = evolve(&pair, &psi, k, &r.from_u64(6), ExpDomain::Strict).unwrap();
            assert_eq!(out.state, psi);
        }
        let pair = EvolutionPair::new(m(&r, &[0, 1, 0, 0]), id.clone()).unwrap();
        let out = evolve(&pair, &psi, 0, &r.from_u64(3), ExpDomain::Strict).unwrap();
        assert_eq!(out.state, WaveFunction::from_i64(&r, &[4, 1]).unwrap());
        assert!(out.norm_preserved);

        let rot = m(&r, &[0, -1, 1, 0]);
        let pair = EvolutionPair::new(rot.zero(), rot.clone()).unwrap();
        let traj = trajectory(&pair, &psi, &r.zero(), 8, ExpDomain::Strict).unwrap();
        assert!(traj.iter().all(|w| w.norm() == psi.norm()));
        assert_eq!(
            EvolutionPair::new(m(&r, &[0, 1, 0, 0]), rot),
            Err(PadicError::NonCommuting)
        );
    }
}

//! Property suites run by the `audit` command and the benches.
//!
//! Each suite is deterministic for a given seed and returns counts of the
//! cases it checked and the ones that failed.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::glnp::audit_fp;
use crate::gm::{
    bezout_idempotents, orthogonality_test, principal_exponent, LaurentPoly, UnitPolynomial,
};
use crate::linalg::{spectral_seminorm, Matrix, PadicMatrix};
use crate::padic::{PadicScalar, Zp};
use crate::par::Execution;
use crate::poly::ZpPoly;
use crate::quantum::{exp_matrix, trajectory, EvolutionPair, ExpDomain, WaveFunction};
use crate::unitary::{
    classify, jordan_decompose, power_zp, prime_to_p, residual_order, teichmuller_spectral,
    zp_unit_action, UnitaryClass,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
}

impl SuiteReport {
    fn new(name: &str, outcomes: &[bool], detail: String) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            cases: outcomes.len(),
            failures: outcomes.iter().filter(|&&ok| !ok).count(),
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }
}

/// Seeded generators for the random suites.
pub mod gen {
    use super::*;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn scalar(rng: &mut ChaCha8Rng, ring: &Zp) -> PadicScalar {
        let q = ring.p().pow(ring.precision());
        ring.from_u64(rng.gen_range(0..q))
    }

    pub fn unit(rng: &mut ChaCha8Rng, ring: &Zp) -> PadicScalar {
        loop {
            let x = scalar(rng, ring);
            if x.is_unit() {
                return x;
            }
        }
    }

    pub fn matrix(rng: &mut ChaCha8Rng, ring: &Zp, n: usize) -> PadicMatrix {
        Matrix::from_fn(n, |_, _| scalar(rng, ring))
    }

    pub fn unitary(rng: &mut ChaCha8Rng, ring: &Zp, n: usize) -> PadicMatrix {
        loop {
            let m = matrix(rng, ring, n);
            if m.is_unitary() {
                return m;
            }
        }
    }

    /// P·N·P^{-1} with N ≡ upper unitriangular mod p.
    pub fn continuous(rng: &mut ChaCha8Rng, ring: &Zp, n: usize) -> PadicMatrix {
        let p = ring.from_u64(ring.p());
        let mut m = matrix(rng, ring, n).scale(&p);
        for i in 0..n {
            m.set(i, i, m.get(i, i).add_ref(&ring.one()));
            for j in i + 1..n {
                m.set(i, j, scalar(rng, ring));
            }
        }
        let c = unitary(rng, ring, n);
        c.mul(&m).mul(&c.inverse().expect("unitary"))
    }

    /// Conjugate of either a Teichmüller diagonal or the Teichmüller part
    /// of a companion lift.
    pub fn teichmuller(rng: &mut ChaCha8Rng, ring: &Zp, n: usize) -> PadicMatrix {
        let p = ring.p();
        let core = if rng.gen_bool(0.5) {
            let d: Vec<PadicScalar> = (0..n)
                .map(|_| ring.teichmuller(rng.gen_range(1..p)).expect("nonzero"))
                .collect();
            Matrix::diagonal(&d)
        } else {
            let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p) as i64).collect();
            c[0] = rng.gen_range(1..p) as i64;
            c.push(1);
            let comp = ZpPoly::from_i64(ring, &c).companion().expect("monic");
            jordan_decompose(&comp).expect("unitary").semisimple
        };
        let c = unitary(rng, ring, n);
        c.mul(&core).mul(&c.inverse().expect("unitary"))
    }

    /// Sparse Laurent polynomial with exponents in [-span, span].
    pub fn laurent(rng: &mut ChaCha8Rng, ring: &Zp, terms: usize, span: i64) -> LaurentPoly {
        let t: Vec<(i64, PadicScalar)> = (0..terms)
            .map(|_| (rng.gen_range(-span..=span), scalar(rng, ring)))
            .collect();
        LaurentPoly::new(ring, t)
    }
}

/// Every element of GL_n(F_p) decomposes uniquely as Φ·B.
pub fn suite_decomposition(exec: Execution) -> Result<SuiteReport> {
    let a = audit_fp(2, 3, exec)?;
    Ok(SuiteReport::new(
        "glnp.decomposition",
        &[a.unique(), a.distinct_t == 16, a.distinct_n == 3],
        format!(
            "{}/{} unique; {} T values; {} N values",
            a.decomposed, a.group_order, a.distinct_t, a.distinct_n
        ),
    ))
}

fn jordan_ok(u: &PadicMatrix) -> Result<bool> {
    let d = jordan_decompose(u)?;
    let (s, nn) = (&d.semisimple, &d.unipotent);
    let p = u.prime();
    let m = prime_to_p(&residual_order(u)?, p);
    let teich = (1..=u.n() as u32).any(|k| s.pow(&BigUint::from(p).pow(k)) == *s);
    let unip_res = nn
        .sub(&nn.identity())
        .to_fp()
        .pow_u64(u.n() as u64)
        .data()
        .iter()
        .all(|&x| x == 0);
    Ok(s.mul(nn) == *u
        && nn.mul(s) == *u
        && s.pow(&m).is_identity()
        && teich
        && unip_res
        && classify(nn)?.class == UnitaryClass::Continuous)
}

/// Jordan decomposition over every unit matrix mod 9 plus random samples.
pub fn suite_jordan(exec: Execution, seed: u64) -> Result<SuiteReport> {
    let r9 = Zp::new(3, 2)?;
    let all: Vec<PadicMatrix> = (0..9u64.pow(4))
        .map(|mut idx| {
            Matrix::from_fn(2, |_, _| {
                let v = idx % 9;
                idx /= 9;
                r9.from_u64(v)
            })
        })
        .filter(|m: &PadicMatrix| m.is_unitary())
        .collect();
    let mut rng = gen::rng(seed);
    let mut samples = Vec::new();
    for (n, p, k) in [(2usize, 3u64, 4u32), (3, 5, 3)] {
        let ring = Zp::new(p, k)?;
        samples.extend((0..50).map(|_| gen::unitary(&mut rng, &ring, n)));
    }
    let outcomes: Vec<bool> = exec
        .map_collect(&all, jordan_ok)
        .into_iter()
        .chain(exec.map_collect(&samples, jordan_ok))
        .collect::<Result<_>>()?;
    Ok(SuiteReport::new(
        "unitary.jordan",
        &outcomes,
        format!(
            "{} unit matrices mod 9, {} random",
            all.len(),
            samples.len()
        ),
    ))
}

/// Reconstruction identities for seeded Teichmüller-type matrices.
pub fn suite_spectral(exec: Execution, seed: u64) -> Result<SuiteReport> {
    let mut rng = gen::rng(seed);
    let mut cases = Vec::new();
    for (n, p, k) in [(2usize, 3u64, 3u32), (2, 5, 2), (3, 3, 2), (3, 7, 2)] {
        let ring = Zp::new(p, k)?;
        cases.extend((0..25).map(|_| gen::teichmuller(&mut rng, &ring, n)));
    }
    let outcomes = exec
        .map_collect(&cases, |u| {
            let s = teichmuller_spectral(u, crate::ff::DEFAULT_SEED)?;
            Ok(s.audit().all() && s.galois_act(0)? == *u)
        })
        .into_iter()
        .collect::<Result<Vec<bool>>>()?;
    Ok(SuiteReport::new(
        "unitary.spectral",
        &outcomes,
        format!("{} operators", cases.len()),
    ))
}

/// Monic polynomials of degree ≤ 2 with unit constant term over ℤ/p^K.
pub fn monic_unit_polys(ring: &Zp) -> Vec<UnitPolynomial> {
    let q = ring.p().pow(ring.precision()) as i64;
    let mut out = vec![UnitPolynomial::from_i64(ring, &[1]).expect("unit")];
    for a in 0..q {
        if let Ok(f) = UnitPolynomial::from_i64(ring, &[a, 1]) {
            out.push(f);
        }
    }
    for b in 0..q {
        for c in 0..q {
            if let Ok(f) = UnitPolynomial::from_i64(ring, &[c, b, 1]) {
                out.push(f);
            }
        }
    }
    out
}

/// The three computable forms of orthogonality agree on (f, g).
pub fn six_condition_agree(f: &UnitPolynomial, g: &UnitPolynomial) -> Result<bool> {
    let j = f.ring().precision();
    let unit_res = orthogonality_test(f, g, j)?.orthogonal;
    let split = match bezout_idempotents(f, g, j) {
        Ok(idem) => idem.audit(f, g)?.all(),
        Err(_) => false,
    };
    let coprime: bool = f.poly().to_fp().gcd(&g.poly().to_fp()).degree() == Some(0);
    Ok(unit_res == split && split == coprime)
}

/// Unordered pairs over ℤ/9 and ℤ/25.
pub fn suite_six_conditions(exec: Execution) -> Result<SuiteReport> {
    let mut outcomes = Vec::new();
    let mut detail = Vec::new();
    for (p, k) in [(3u64, 2u32), (5, 2)] {
        let ring = Zp::new(p, k)?;
        let polys = monic_unit_polys(&ring);
        let idx: Vec<usize> = (0..polys.len()).collect();
        let rows = exec.map_collect(&idx, |&i| {
            polys[i..]
                .iter()
                .map(|g| six_condition_agree(&polys[i], g))
                .collect::<Result<Vec<bool>>>()
        });
        let before = outcomes.len();
        for row in rows {
            outcomes.extend(row?);
        }
        detail.push(format!(
            "{} pairs mod {}",
            outcomes.len() - before,
            p.pow(k)
        ));
    }
    Ok(SuiteReport::new(
        "gm.six_conditions",
        &outcomes,
        detail.join(", "),
    ))
}

fn stone_ok(u: &PadicMatrix, rng_seed: u64) -> Result<bool> {
    let ring = u.ring();
    let mut rng = gen::rng(rng_seed);
    let mut ok = power_zp(u, &ring.one())? == *u && power_zp(u, &ring.zero())?.is_identity();
    for _ in 0..4 {
        let (t, s) = (gen::scalar(&mut rng, ring), gen::scalar(&mut rng, ring));
        ok &= power_zp(u, &t.add_ref(&s))? == power_zp(u, &t)?.mul(&power_zp(u, &s)?);
    }
    for _ in 0..20 {
        let a = gen::unit(&mut rng, ring);
        ok &= zp_unit_action(&zp_unit_action(u, &a)?, &a.inverse()?)? == *u;
    }
    Ok(ok)
}

/// One-parameter group laws for seeded continuous matrices.
pub fn suite_stone(exec: Execution, seed: u64) -> Result<SuiteReport> {
    let mut rng = gen::rng(seed);
    let ring = Zp::new(5, 3)?;
    let cases: Vec<(PadicMatrix, u64)> = (0..50)
        .map(|i| (gen::continuous(&mut rng, &ring, 2), seed ^ i))
        .collect();
    let outcomes = exec
        .map_collect(&cases, |(u, s)| stone_ok(u, *s))
        .into_iter()
        .collect::<Result<Vec<bool>>>()?;
    Ok(SuiteReport::new(
        "unitary.stone",
        &outcomes,
        "50 operators at p = 5, K = 3".into(),
    ))
}

/// Shift invariance, additivity and projection for sparse Laurent data.
pub fn suite_shift_sums(seed: u64) -> Result<SuiteReport> {
    let mut rng = gen::rng(seed);
    let ring = Zp::new(7, 3)?;
    let mut outcomes = Vec::new();
    for _ in 0..100 {
        let f = gen::laurent(&mut rng, &ring, 6, 12);
        for d in 1..=6i64 {
            let proj = f.project_mod(d)?;
            for c in 0..d {
                let s = f.shift_sum(c, d)?;
                outcomes.push(s == f.shift(d).shift_sum(c, d)? && s == proj[c as usize]);
                for ds in 1..=4 {
                    outcomes.push(f.additivity_check(c, d, ds)?);
                }
            }
        }
    }
    Ok(SuiteReport::new(
        "gm.shift_sums",
        &outcomes,
        "100 polynomials, d ≤ 6, d* ≤ 4".into(),
    ))
}

/// Norm invariance of e^{Ht} and of the discrete clock.
pub fn suite_evolution(seed: u64) -> Result<SuiteReport> {
    let mut rng = gen::rng(seed);
    let ring = Zp::new(3, 4)?;
    let mut outcomes = Vec::new();
    for _ in 0..50 {
        let u = gen::unitary(&mut rng, &ring, 2);
        // a polynomial in U commutes with it
        let (a, b) = (gen::scalar(&mut rng, &ring), gen::scalar(&mut rng, &ring));
        let h = u.scale(&a).add(&u.identity().scale(&b));
        let pair = EvolutionPair::new(h.clone(), u)?;
        let psi = loop {
            let v = vec![gen::scalar(&mut rng, &ring), gen::scalar(&mut rng, &ring)];
            let w = WaveFunction::new(v)?;
            if w.is_state() {
                break w;
            }
        };
        let p = ring.from_u64(3);
        for _ in 0..20 {
            let t = gen::scalar(&mut rng, &ring).mul_ref(&p);
            outcomes.push(psi.apply(&exp_matrix(&h, &t, ExpDomain::Strict)?)?.norm() == psi.norm());
        }
        let t = gen::scalar(&mut rng, &ring).mul_ref(&p);
        let traj = trajectory(&pair, &psi, &t, 10, ExpDomain::Strict)?;
        outcomes.push(traj.iter().all(|w| w.norm() == psi.norm()));
    }
    Ok(SuiteReport::new(
        "quantum.evolution",
        &outcomes,
        "50 pairs, 20 times each, 10 steps".into(),
    ))
}

/// Teichmüller lifts of every residue for p ∈ {3,5,7}, K ≤ 6.
pub fn suite_teichmuller() -> Result<SuiteReport> {
    let mut outcomes = Vec::new();
    for p in [3u64, 5, 7] {
        for k in 1..=6 {
            let ring = Zp::new(p, k)?;
            for r in 1..p {
                let x = ring.teichmuller(r)?;
                outcomes
                    .push(x.pow_u64(p) == x && x.pow_u64(p - 1).is_one() && x.residue_mod_p() == r);
            }
        }
    }
    let worked = Zp::new(5, 2)?.teichmuller(2)?.to_u64() == Some(7)
        && Zp::new(7, 2)?.teichmuller(3)?.to_u64() == Some(31);
    outcomes.push(worked);
    Ok(SuiteReport::new(
        "padic.teichmuller",
        &outcomes,
        "p in {3,5,7}, K <= 6".into(),
    ))
}

/// A = U − I for the unipotent example has seminorm 0.
pub fn suite_seminorm() -> Result<SuiteReport> {
    let ring = Zp::new(3, 4)?;
    let u = PadicMatrix::from_i64(&ring, 2, &[1, 1, 0, 1])?;
    let s = spectral_seminorm(&u.sub(&u.identity()), 8);
    let id = spectral_seminorm(&u.identity(), 8);
    Ok(SuiteReport::new(
        "linalg.seminorm",
        &[s.is_zero(), id.to_string() == "1"],
        format!("U - I: {s}"),
    ))
}

/// U^n ≡ I mod p^j with n = p^l·N.
pub fn suite_principal(seed: u64) -> Result<SuiteReport> {
    let mut rng = gen::rng(seed);
    let ring = Zp::new(3, 3)?;
    let mut outcomes = Vec::new();
    for _ in 0..50 {
        let u = gen::unitary(&mut rng, &ring, 2);
        let big_n = residual_order(&u)?;
        for j in 1..=3 {
            let e = principal_exponent(&u, j)?;
            let shaped = e.n == BigUint::from(3u32).pow(e.l) * &big_n && e.residual_order == big_n;
            outcomes.push(shaped && u.pow(&e.n).reduce_to(j)?.is_identity());
        }
    }
    Ok(SuiteReport::new(
        "gm.principal_exponent",
        &outcomes,
        "50 operators at (2,3,3)".into(),
    ))
}

pub const SUITES: [&str; 10] = [
    "glnp.decomposition",
    "unitary.jordan",
    "unitary.spectral",
    "gm.six_conditions",
    "unitary.stone",
    "gm.shift_sums",
    "quantum.evolution",
    "padic.teichmuller",
    "linalg.seminorm",
    "gm.principal_exponent",
];

/// Runs the named suites (all of them when `names` is empty), in the
/// canonical order.
pub fn run_suites(names: &[String], exec: Execution, seed: u64) -> Result<Vec<SuiteReport>> {
    let wanted: BTreeSet<&str> = names.iter().map(String::as_str).collect();
    let unknown: Vec<&str> = wanted
        .iter()
        .copied()
        .filter(|n| !SUITES.contains(n))
        .collect();
    if !unknown.is_empty() {
        return Err(crate::PadicError::Parse(format!(
            "unknown suite(s): {}",
            unknown.join(", ")
        )));
    }
    let mut out = Vec::new();
    for name in SUITES {
        if !wanted.is_empty() && !wanted.contains(name) {
            continue;
        }
        out.push(match name {
            "glnp.decomposition" => suite_decomposition(exec)?,
            "unitary.jordan" => suite_jordan(exec, seed)?,
            "unitary.spectral" => suite_spectral(exec, seed)?,
            "gm.six_conditions" => suite_six_conditions(exec)?,
            "unitary.stone" => suite_stone(exec, seed)?,
            "gm.shift_sums" => suite_shift_sums(seed)?,
            "quantum.evolution" => suite_evolution(seed)?,
            "padic.teichmuller" => suite_teichmuller()?,
            "linalg.seminorm" => suite_seminorm()?,
            _ => suite_principal(seed)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::DEFAULT_SEED;

    #[test]
    fn light_suites_pass() {
        for r in [
            suite_decomposition(Execution::Sequential).unwrap(),
            suite_teichmuller().unwrap(),
            suite_seminorm().unwrap(),
            suite_principal(DEFAULT_SEED).unwrap(),
            suite_shift_sums(DEFAULT_SEED).unwrap(),
        ] {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suites(&["nope".into()], Execution::Sequential, 1).is_err());
    }
}

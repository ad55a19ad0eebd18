//! The Φ·B decomposition of GL_n(F_p) and its lift U = TN over ℤ_p.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{PadicError, Result};
use crate::ff::{prime_factors, FpMatrix};
use crate::linalg::PadicMatrix;
use crate::padic::{residue_modulus, Zp};
use crate::par::Execution;
use crate::unitary::{fp_order, is_teichmuller, jordan_decompose};

/// Exponents (m_1, …, m_n) of T_n^{m_n}···T_1^{m_1}, with 1 ≤ m_k ≤ p^k − 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhiWord(pub Vec<u64>);

impl PhiWord {
    pub fn identity(n: usize, p: u64) -> PhiWord {
        PhiWord((1..=n as u32).map(|k| p.pow(k) - 1).collect())
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn is_identity(&self, p: u64) -> bool {
        *self == PhiWord::identity(self.0.len(), p)
    }

    /// Every word, m_1 varying fastest.
    pub fn all(n: usize, p: u64) -> Vec<PhiWord> {
        let mut out = vec![PhiWord(Vec::new())];
        for k in 1..=n as u32 {
            let top = p.pow(k) - 1;
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..=top).map(move |m| {
                        let mut e = w.0.clone();
                        e.push(m);
                        PhiWord(e)
                    })
                })
                .collect();
        }
        out
    }
}

/// T_k = ι_k(t_k) with t_k the companion matrix of the degree-k primitive
/// modulus, acting as multiplication by a generator of F_{p^k}^×.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub p: u64,
    pub n: usize,
    /// t_k as a k×k matrix, index k − 1.
    pub local: Vec<FpMatrix>,
    /// T_k embedded in the top-left corner of I_n.
    pub embedded: Vec<FpMatrix>,
    pub modulus_ids: Vec<String>,
}

fn companion_fp(coeffs: &[u64], p: u64) -> FpMatrix {
    let k = coeffs.len() - 1;
    let mut c = FpMatrix::identity(k, p);
    for i in 0..k {
        for j in 0..k {
            c.set(i, j, 0);
        }
    }
    for i in 0..k {
        if i + 1 < k {
            c.set(i + 1, i, 1);
        }
        c.set(i, k - 1, (p - coeffs[i] % p) % p);
    }
    c
}

/// Exact order check: g^e = I and g^{e/q} ≠ I for every prime q | e.
fn has_order(g: &FpMatrix, e: u64) -> bool {
    g.pow_u64(e).is_identity()
        && prime_factors(e)
            .into_iter()
            .all(|q| !g.pow_u64(e / q).is_identity())
}

pub fn build_generators(n: usize, p: u64) -> Result<GeneratorSet> {
    Zp::new(p, 1)?;
    if n == 0 {
        return Err(PadicError::DimensionMismatch("n must be at least 1".into()));
    }
    let mut local = Vec::with_capacity(n);
    let mut modulus_ids = Vec::with_capacity(n);
    for k in 1..=n {
        let m = residue_modulus(p, k)?;
        let t = companion_fp(m.poly.coeffs(), p);
        if !has_order(&t, p.pow(k as u32) - 1) {
            return Err(PadicError::ModulusTable(format!(
                "degree {k} modulus is not primitive"
            )));
        }
        local.push(t);
        modulus_ids.push(m.id);
    }
    let embedded = local.iter().map(|t| t.embed(n)).collect();
    Ok(GeneratorSet {
        p,
        n,
        local,
        embedded,
        modulus_ids,
    })
}

impl GeneratorSet {
    /// The word evaluated in GL_size(F_p), using the first `size` generators.
    fn eval_in(&self, exps: &[u64], size: usize) -> FpMatrix {
        exps.iter()
            .enumerate()
            .rev()
            .fold(FpMatrix::identity(size, self.p), |acc, (i, &m)| {
                acc.mul(&self.local[i].embed(size).pow_u64(m))
            })
    }

    pub fn eval(&self, w: &PhiWord) -> FpMatrix {
        self.eval_in(&w.0, self.n)
    }

    /// T_k lifted entrywise to ℤ/p^K, then its Teichmüller (semisimple) part.
    pub fn teichmuller_generator(&self, ring: &Zp, k: usize) -> Result<PadicMatrix> {
        let raw = PadicMatrix::from_fp(ring, &self.embedded[k - 1]);
        Ok(jordan_decompose(&raw)?.semisimple)
    }

    /// The element of Υ over the word w.
    ///
    /// When the residual matrix has prime-to-p order, the semisimple part of
    /// the integer evaluation is of Teichmüller type and reduces to it. When
    /// it does not, that part would reduce elsewhere, so the product of the
    /// Teichmüller generators is used instead.
    pub fn upsilon(&self, ring: &Zp, w: &PhiWord) -> Result<PadicMatrix> {
        let tbar = self.eval(w);
        let order = fp_order(&tbar)?;
        if &order % BigUint::from(self.p) != BigUint::from(0u32) {
            let raw =
                w.0.iter().enumerate().rev().fold(
                    PadicMatrix::identity_in(ring, self.n),
                    |acc, (i, &m)| {
                        acc.mul(&PadicMatrix::from_fp(ring, &self.embedded[i]).pow_u64(m))
                    },
                );
            return Ok(jordan_decompose(&raw)?.semisimple);
        }
        let mut acc = PadicMatrix::identity_in(ring, self.n);
        for (i, &m) in w.0.iter().enumerate().rev() {
            acc = acc.mul(&self.teichmuller_generator(ring, i + 1)?.pow_u64(m));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpDecomposition {
    pub word: PhiWord,
    pub t: FpMatrix,
    pub n: FpMatrix,
}

fn decompose_block(gens: &GeneratorSet, a: &FpMatrix) -> Result<(Vec<u64>, FpMatrix)> {
    let k = a.n();
    let p = gens.p;
    let tinv = gens.local[k - 1]
        .inverse()
        .expect("generators are invertible");
    let mut last = vec![0u64; k];
    last[k - 1] = 1;
    // row vector e_k^T·t^{-m}, advanced one step at a time
    let mut row = last.clone();
    let top = p.pow(k as u32) - 1;
    let mut found = None;
    for m in 1..=top {
        row = (0..k)
            .map(|j| (0..k).fold(0, |s, i| (s + row[i] * tinv.get(i, j)) % p))
            .collect();
        let image: Vec<u64> = (0..k)
            .map(|j| (0..k).fold(0, |s, i| (s + row[i] * a.get(i, j)) % p))
            .collect();
        if image == last {
            found = Some(m);
            break;
        }
    }
    let m =
        found.ok_or_else(|| PadicError::LiftAudit(format!("no affine exponent at level {k}")))?;
    let b = tinv.pow_u64(m).mul(a);
    if k == 1 {
        return Ok((vec![m], b));
    }
    let (mut exps, _) = decompose_block(gens, &b.block(k - 1))?;
    let tprime = gens.eval_in(&exps, k);
    let n = tprime.inverse().expect("invertible").mul(&b);
    exps.push(m);
    Ok((exps, n))
}

/// Ū = T·N with T in Φ and N upper unitriangular.
pub fn decompose_fp(gens: &GeneratorSet, u: &FpMatrix) -> Result<FpDecomposition> {
    if u.n() != gens.n || u.p() != gens.p {
        return Err(PadicError::DimensionMismatch(
            "matrix and generator set".into(),
        ));
    }
    if !u.is_invertible() {
        return Err(PadicError::NotInvertible(1));
    }
    let (exps, n) = decompose_block(gens, u)?;
    let word = PhiWord(exps);
    let t = gens.eval(&word);
    if !n.is_upper_unitriangular() || t.mul(&n) != *u {
        return Err(PadicError::LiftAudit(
            "residual decomposition audit failed".into(),
        ));
    }
    Ok(FpDecomposition { word, t, n })
}

/// Diagonal ≡ 1 and strictly lower entries ≡ 0 mod p.
pub fn b_membership(n: &PadicMatrix) -> bool {
    let f = n.to_fp();
    (0..f.n()).all(|i| f.get(i, i) == 1 && (0..i).all(|j| f.get(i, j) == 0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpDecomposition {
    pub word: PhiWord,
    pub t: PadicMatrix,
    pub n: PadicMatrix,
    pub t_is_teichmuller: bool,
}

/// U = T·N with T ∈ Υ and N ∈ 𝓑.
pub fn decompose_zp(u: &PadicMatrix) -> Result<ZpDecomposition> {
    if !u.is_unitary() {
        return Err(PadicError::NotUnitary);
    }
    let gens = build_generators(u.n(), u.prime())?;
    let res = decompose_fp(&gens, &u.to_fp())?;
    let t = gens.upsilon(u.ring(), &res.word)?;
    let n = t.inverse()?.mul(u);
    if t.to_fp() != res.t || !b_membership(&n) {
        return Err(PadicError::LiftAudit("lifted decomposition left 𝓑".into()));
    }
    Ok(ZpDecomposition {
        t_is_teichmuller: is_teichmuller(&t),
        word: res.word,
        t,
        n,
    })
}

/// Exhaustive check of GL_n(F_p) = Φ·B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpAudit {
    pub group_order: usize,
    pub phi_size: usize,
    pub b_size: usize,
    /// Distinct products T·N over all pairs.
    pub distinct_products: usize,
    /// Elements whose computed decomposition multiplies back and matches the
    /// pair found by enumeration.
    pub decomposed: usize,
    pub distinct_t: usize,
    pub distinct_n: usize,
}

impl FpAudit {
    pub fn unique(&self) -> bool {
        self.distinct_products == self.phi_size * self.b_size
            && self.distinct_products == self.group_order
            && self.decomposed == self.group_order
    }
}

/// All upper unitriangular n×n matrices over F_p.
pub fn unitriangular(n: usize, p: u64) -> Vec<FpMatrix> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = p.pow(slots.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut m = FpMatrix::identity(n, p);
            for &(i, j) in &slots {
                m.set(i, j, idx % p);
                idx /= p;
            }
            m
        })
        .collect()
}

pub fn audit_fp(n: usize, p: u64, exec: Execution) -> Result<FpAudit> {
    let gens = build_generators(n, p)?;
    let words = PhiWord::all(n, p);
    let bs = unitriangular(n, p);
    let ts: Vec<FpMatrix> = exec.map_collect(&words, |w| gens.eval(w));
    let mut products = HashSet::new();
    for t in &ts {
        for b in &bs {
            products.insert(t.mul(b));
        }
    }
    let group = FpMatrix::enumerate_gl(n, p);
    let results = exec.map_collect(&group, |g| decompose_fp(&gens, g));
    let mut decomposed = 0;
    let mut t_seen = HashSet::new();
    let mut n_seen = HashSet::new();
    for (g, r) in group.iter().zip(results) {
        let d = r?;
        if d.t.mul(&d.n) == *g && ts.contains(&d.t) && bs.contains(&d.n) {
            decomposed += 1;
        }
        t_seen.insert(d.t);
        n_seen.insert(d.n);
    }
    Ok(FpAudit {
        group_order: group.len(),
        phi_size: words.len(),
        b_size: bs.len(),
        distinct_products: products.len(),
        decomposed,
        distinct_t: t_seen.len(),
        distinct_n: n_seen.len(),
    })
}

/// Elements of 𝓑 modulo p^K.
pub fn b_elements(ring: &Zp, n: usize) -> Vec<PadicMatrix> {
    let p = ring.p();
    let q = p.pow(ring.precision());
    let lifts = q / p;
    let mut out = vec![Vec::<i64>::new()];
    for i in 0..n {
        for j in 0..n {
            let choices: Vec<i64> = if i == j {
                (0..lifts).map(|a| (1 + a * p) as i64).collect()
            } else if i > j {
                (0..lifts).map(|a| (a * p) as i64).collect()
            } else {
                (0..q).map(|a| a as i64).collect()
            };
            out = out
                .into_iter()
                .flat_map(|e| {
                    choices.iter().map(move |&c| {
                        let mut e = e.clone();
                        e.push(c);
                        e
                    })
                })
                .collect();
        }
    }
    out.into_iter()
        .map(|e| PadicMatrix::from_i64(ring, n, &e).expect("square"))
        .collect()
}

/// Number of pairs (T', N') ∈ Υ × 𝓑 with T'N' = U, by brute force.
pub fn lift_preimages(u: &PadicMatrix, bs: &[PadicMatrix]) -> Result<usize> {
    let gens = build_generators(u.n(), u.prime())?;
    let mut count = 0;
    for w in PhiWord::all(u.n(), u.prime()) {
        let t = gens.upsilon(u.ring(), &w)?;
        count += bs.iter().filter(|b| t.mul(b) == *u).count();
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_orders() {
        let g = build_generators(1, 3).unwrap();
        assert_eq!(g.local[0], FpMatrix::from_i64(1, 3, &[2]));
        for p in [3u64, 5] {
            let g = build_generators(3, p).unwrap();
            for k in 1..=3u32 {
                let t = &g.embedded[k as usize - 1];
                let brute = (1u64..).find(|&e| t.pow_u64(e).is_identity()).unwrap();
                assert_eq!(brute, p.pow(k) - 1);
                // T_k fixes the trailing basis vectors
                for i in k as usize..3 {
                    for j in 0..3 {
                        assert_eq!(t.get(i, j), u64::from(i == j));
                        assert_eq!(t.get(j, i), u64::from(i == j));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_decompositions() {
        let g = build_generators(3, 3).unwrap();
        let d = decompose_fp(&g, &FpMatrix::identity(3, 3)).unwrap();
        assert_eq!(d.word, PhiWord(vec![2, 8, 26]));
        assert!(d.n.is_identity());
        let b = FpMatrix::from_i64(3, 3, &[1, 2, 1, 0, 1, 2, 0, 0, 1]);
        let d = decompose_fp(&g, &b).unwrap();
        assert!(d.word.is_identity(3));
        assert_eq!(d.n, b);
        assert_eq!(
            decompose_fp(&g, &FpMatrix::from_i64(3, 3, &[1, 1, 0, 1, 1, 0, 0, 0, 1])),
            Err(PadicError::NotInvertible(1))
        );
    }

    #[test]
    fn gl2_f3_exhaustive() {
        let a = audit_fp(2, 3, Execution::Sequential).unwrap();
        assert_eq!(a.group_order, 48);
        assert_eq!((a.phi_size, a.b_size), (16, 3));
        assert_eq!((a.distinct_t, a.distinct_n), (16, 3));
        assert!(a.unique());
    }

    #[test]
    fn b_membership_examples() {
        let r = Zp::new(3, 2).unwrap();
        let m = |e: &[i64]| PadicMatrix::from_i64(&r, 2, e).unwrap();
        assert!(b_membership(&m(&[1, 0, 0, 1])));
        assert!(b_membership(&m(&[1, 5, 3, 1])));
        assert!(!b_membership(&m(&[2, 0, 0, 1])));
    }

    #[test]
    fn zp_examples() {
        let r = Zp::new(3, 2).unwrap();
        let id = PadicMatrix::identity_in(&r, 2);
        let d = decompose_zp(&id).unwrap();
        assert!(d.t.is_identity() && d.n.is_identity());

        let u = PadicMatrix::from_i64(&r, 2, &[1, 1, 1, 0]).unwrap();
        let d = decompose_zp(&u).unwrap();
        assert!(d.t_is_teichmuller);
        assert_eq!(d.t.pow_u64(9), d.t);
        assert!(b_membership(&d.n));
        assert_eq!(d.t.mul(&d.n), u);
        let gens = build_generators(2, 3).unwrap();
        assert_eq!(decompose_fp(&gens, &u.to_fp()).unwrap().t, d.t.to_fp());

        // a Teichmüller lift of a Φ element decomposes with N = I
        let t = gens.upsilon(&r, &PhiWord(vec![1, 3])).unwrap();
        let d = decompose_zp(&t).unwrap();
        assert_eq!(d.t, t);
        assert!(d.n.is_identity());
    }

    #[test]
    fn lift_level_uniqueness() {
        let r = Zp::new(3, 2).unwrap();
        let bs = b_elements(&r, 2);
        assert_eq!(bs.len(), 243);
        for e in [[1, 1, 1, 0], [2, 1, 4, 1], [1, 3, 0, 1], [4, 7, 2, 6]] {
            let u = PadicMatrix::from_i64(&r, 2, &e).unwrap();
            assert_eq!(lift_preimages(&u, &bs).unwrap(), 1);
        }
    }
}

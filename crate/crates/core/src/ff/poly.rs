//! Dense univariate polynomials over F_p and their factorization.
//!
//! Factorization runs the classical pipeline: square-free decomposition,
//! distinct-degree splitting, then Cantor–Zassenhaus equal-degree splitting
//! driven by a seeded ChaCha stream so that every run is reproducible.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x7061_6469_6373_7065;

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(base: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Coefficients are listed from the constant term upwards and reduced mod p.
    pub fn new(p: u64, coeffs: Vec<u64>) -> FpPoly {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> FpPoly {
        let pi = p as i64;
        FpPoly::new(p, coeffs.iter().map(|c| c.rem_euclid(pi) as u64).collect())
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> FpPoly {
        FpPoly::new(p, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inv(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p as u128;
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| ((a as u128 * c as u128) % p) as u64)
                .collect(),
        )
    }

    pub fn add(&self, rhs: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + rhs.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + self.p - rhs.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &FpPoly) -> FpPoly {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, rhs: &FpPoly) -> (FpPoly, FpPoly) {
        let d = rhs.degree().expect("division by the zero polynomial");
        let p = self.p as u128;
        let inv = mod_inv(rhs.leading(), self.p) as u128;
        let mut rem: Vec<u64> = self.coeffs.clone();
        if rem.len() <= d {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = (rem[i] as u128 * inv % p) as u64;
            quot[i - d] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let k = i - d + j;
                let sub = (c as u128 * b as u128 % p) as u64;
                rem[k] = (rem[k] + self.p - sub) % self.p;
            }
        }
        rem.truncate(d);
        (FpPoly::new(self.p, quot), FpPoly::new(self.p, rem))
    }

    pub fn rem(&self, rhs: &FpPoly) -> FpPoly {
        self.div_rem(rhs).1
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| ((i as u64 % p) as u128 * c as u128 % p as u128) as u64)
                .collect(),
        )
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, rhs: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·rhs = g, g monic.
    pub fn ext_gcd(&self, rhs: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inv(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mul_mod(&self, rhs: &FpPoly, modulus: &FpPoly) -> FpPoly {
        self.mul(rhs).rem(modulus)
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p) as u64
    }

    /// Rabin irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let f = self.monic();
        let x = FpPoly::x(self.p);
        let q = BigUint::from(self.p);
        let frob_power = |k: usize| -> FpPoly {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.pow_mod(&q, &f);
            }
            h
        };
        if !frob_power(n).sub(&x).rem(&f).is_zero() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let h = frob_power(n / r as usize).sub(&x);
            f.gcd(&h).is_one()
        })
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by
    /// (degree, coefficient vector). The leading coefficient is dropped.
    pub fn factor(&self, seed: u64) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(FpPoly, u32)> = Vec::new();
        for (sqf, mult) in self.monic().squarefree() {
            for (block, d) in sqf.distinct_degree() {
                for g in block.equal_degree(d, &mut rng) {
                    out.push((g, mult));
                }
            }
        }
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        // merge repeated irreducibles coming from different square-free layers
        let mut merged: Vec<(FpPoly, u32)> = Vec::new();
        for (g, m) in out {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        merged
    }

    fn squarefree(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let mut result = Vec::new();
        let mut c = f.gcd(&f.derivative());
        let mut w = f.div_rem(&c).0;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if !fac.is_one() {
                result.push((fac, i));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power: take the p-th root coefficientwise
            let root: Vec<u64> = c.coeffs.iter().step_by(p as usize).copied().collect();
            for (g, m) in FpPoly::new(p, root).squarefree() {
                result.push((g, m * p as u32));
            }
        }
        result
    }

    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let q = BigUint::from(p);
        let x = FpPoly::x(p);
        let mut f = self.clone();
        let mut h = x.clone();
        let mut d = 0usize;
        let mut out = Vec::new();
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&q, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if let Some(deg) = f.degree() {
            if deg > 0 {
                out.push((f, deg));
            }
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.clone()];
        }
        let p = self.p;
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = a.pow_mod(&e, self).sub(&FpPoly::one(p));
            let g = self.gcd(&b);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let h = self.div_rem(&g).0;
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }
}

/// Orders polynomials by degree and then by coefficients from the constant
/// term upwards.
pub fn cmp_poly(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factorization of an arbitrary-precision integer by trial division
/// over the supplied small factors.
pub(crate) fn factor_biguint(n: &BigUint, hints: &[u64]) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut candidates: Vec<u64> = hints.iter().flat_map(|&h| prime_factors(h)).collect();
    candidates.sort_unstable();
    candidates.dedup();
    for q in candidates {
        let qb = BigUint::from(q);
        let mut e = 0;
        while (&n % &qb).is_zero() {
            n /= &qb;
            e += 1;
        }
        if e > 0 {
            out.push((qb, e));
        }
    }
    if !n.is_one() {
        let rest = n
            .to_u64()
            .expect("unfactored cofactor exceeds a machine word");
        for q in prime_factors(rest) {
            let qb = BigUint::from(q);
            let mut e = 0;
            while (&n % &qb).is_zero() {
                n /= &qb;
                e += 1;
            }
            out.push((qb, e));
        }
    }
    out.sort();
    out
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn factor_recovers_product() {
        let p = 5;
        // (x-1)^2 (x-2) (x^2+2) (x^3+3x+3)
        let parts = [
            FpPoly::from_i64(p, &[-1, 1]),
            FpPoly::from_i64(p, &[-1, 1]),
            FpPoly::from_i64(p, &[-2, 1]),
            FpPoly::from_i64(p, &[2, 0, 1]),
            FpPoly::from_i64(p, &[3, 3, 0, 1]),
        ];
        let f = parts.iter().fold(FpPoly::one(p), |a, g| a.mul(g)).scale(3);
        let fac = f.factor(DEFAULT_SEED);
        assert_eq!(product(&fac, p), f.monic());
        assert!(fac.iter().all(|(g, _)| g.is_irreducible()));
        assert_eq!(fac.len(), 4);
        assert_eq!(fac[0], (FpPoly::from_i64(p, &[-2, 1]), 1));
        assert_eq!(fac[1], (FpPoly::from_i64(p, &[-1, 1]), 2));
    }

    #[test]
    fn factor_handles_pth_powers() {
        let p = 3;
        let g = FpPoly::from_i64(p, &[1, 1]);
        let f = (0..3)
            .fold(FpPoly::one(p), |a, _| a.mul(&g))
            .mul(&FpPoly::from_i64(p, &[1, 0, 1]));
        let fac = f.factor(7);
        assert_eq!(product(&fac, p), f);
        assert!(fac.contains(&(g, 3)));
    }

    #[test]
    fn factorization_is_seed_independent() {
        let p = 7;
        let f = FpPoly::from_i64(p, &[-1, 0, 0, 0, 0, 0, 1]); // x^6 - 1 splits completely
        let a = f.factor(1);
        let b = f.factor(99);
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn irreducibility() {
        assert!(FpPoly::from_i64(3, &[-1, -1, 1]).is_irreducible()); // t^2 - t - 1 mod 3
        assert!(!FpPoly::from_i64(5, &[-1, -1, 1]).is_irreducible()); // root 3 mod 5
        assert!(FpPoly::from_i64(3, &[1, 0, 1]).is_irreducible());
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 7;
        let a = FpPoly::from_i64(p, &[1, 2, 3, 1]);
        let b = FpPoly::from_i64(p, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{PadicError, Result};

/// Moduli up to this bound are handled in machine words; products fit in `u128`.
const WORD_LIMIT: u64 = 1 << 62;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ring ℤ/p^K, the finite-precision model of ℤ_p.
#[derive(Clone)]
pub struct Zp(Arc<ZpInner>);

struct ZpInner {
    p: u64,
    prec: u32,
    modulus: BigUint,
    word: Option<u64>,
}

impl Zp {
    pub fn new(p: u64, prec: u32) -> Result<Zp> {
        if p < 3 || !is_prime(p) {
            return Err(PadicError::InvalidPrime(p));
        }
        if prec == 0 {
            return Err(PadicError::InvalidPrecision(prec));
        }
        let modulus = BigUint::from(p).pow(prec);
        let word = modulus.to_u64().filter(|&m| m <= WORD_LIMIT);
        Ok(Zp(Arc::new(ZpInner {
            p,
            prec,
            modulus,
            word,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn precision(&self) -> u32 {
        self.0.prec
    }

    /// p^K.
    pub fn modulus(&self) -> &BigUint {
        &self.0.modulus
    }

    /// The same prime at precision `j`.
    pub fn with_precision(&self, j: u32) -> Result<Zp> {
        if j == self.precision() {
            return Ok(self.clone());
        }
        Zp::new(self.p(), j)
    }

    pub fn zero(&self) -> PadicScalar {
        self.make(Residue::zero(self.0.word.is_some()))
    }

    pub fn one(&self) -> PadicScalar {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> PadicScalar {
        match self.0.word {
            Some(m) => self.make(Residue::Word(v % m)),
            None => self.make(Residue::Big(BigUint::from(v) % &self.0.modulus)),
        }
    }

    pub fn from_i64(&self, v: i64) -> PadicScalar {
        if v >= 0 {
            self.from_u64(v as u64)
        } else {
            self.from_u64(v.unsigned_abs()).neg_ref()
        }
    }

    pub fn from_biguint(&self, v: &BigUint) -> PadicScalar {
        let r = v % &self.0.modulus;
        match self.0.word {
            Some(_) => self.make(Residue::Word(r.to_u64().unwrap_or(0))),
            None => self.make(Residue::Big(r)),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> PadicScalar {
        let m = BigInt::from_biguint(Sign::Plus, self.0.modulus.clone());
        let r = v.mod_floor(&m);
        self.from_biguint(r.magnitude())
    }

    /// Parses a decimal string, possibly negative, reducing it mod p^K.
    pub fn parse(&self, s: &str) -> Result<PadicScalar> {
        let v: BigInt = s
            .trim()
            .parse()
            .map_err(|_| PadicError::Parse(format!("not a decimal integer: {s:?}")))?;
        Ok(self.from_bigint(&v))
    }

    /// All p^K elements in increasing residue order.
    pub fn elements(&self) -> impl Iterator<Item = PadicScalar> + '_ {
        let count = self
            .0
            .word
            .expect("enumeration requires a word-sized modulus");
        (0..count).map(move |v| self.from_u64(v))
    }

    /// Teichmüller lift of a nonzero residue r ∈ F_p: the fixed point of
    /// x ↦ x^p reached from x = r.
    pub fn teichmuller(&self, r: u64) -> Result<PadicScalar> {
        let r = r % self.p();
        if r == 0 {
            return Err(PadicError::NotAUnit);
        }
        let p = BigUint::from(self.p());
        let mut x = self.from_u64(r);
        loop {
            let next = x.pow(&p);
            if next == x {
                return Ok(x);
            }
            x = next;
        }
    }

    fn make(&self, residue: Residue) -> PadicScalar {
        PadicScalar {
            ring: self.clone(),
            residue,
        }
    }

    pub(crate) fn same(&self, other: &Zp) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.prec == other.0.prec)
    }
}

impl PartialEq for Zp {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Zp {}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.0.p, self.0.prec)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Residue {
    Word(u64),
    Big(BigUint),
}

impl Residue {
    fn zero(word: bool) -> Residue {
        if word {
            Residue::Word(0)
        } else {
            Residue::Big(BigUint::zero())
        }
    }

    fn to_biguint(&self) -> BigUint {
        match self {
            Residue::Word(v) => BigUint::from(*v),
            Residue::Big(v) => v.clone(),
        }
    }
}

/// An element of ℤ_p known exactly modulo p^K.
#[derive(Clone)]
pub struct PadicScalar {
    ring: Zp,
    residue: Residue,
}

impl PadicScalar {
    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    /// The canonical representative in [0, p^K).
    pub fn residue(&self) -> BigUint {
        self.residue.to_biguint()
    }

    pub fn to_u64(&self) -> Option<u64> {
        match &self.residue {
            Residue::Word(v) => Some(*v),
            Residue::Big(v) => v.to_u64(),
        }
    }

    /// Representative in (-p^K/2, p^K/2].
    pub fn to_signed(&self) -> BigInt {
        let r = BigInt::from(self.residue());
        let m = BigInt::from(self.ring.modulus().clone());
        if &r * 2 > m {
            r - m
        } else {
            r
        }
    }

    /// Image in F_p.
    pub fn residue_mod_p(&self) -> u64 {
        match &self.residue {
            Residue::Word(v) => v % self.ring.p(),
            Residue::Big(v) => (v % self.ring.p()).to_u64().unwrap_or(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.residue {
            Residue::Word(v) => *v == 0,
            Residue::Big(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.residue {
            Residue::Word(v) => *v == 1,
            Residue::Big(v) => v.is_one(),
        }
    }

    /// Largest v ≤ K with p^v dividing the residue; zero reports K.
    pub fn valuation(&self) -> u32 {
        let p = self.ring.p();
        let prec = self.ring.precision();
        match &self.residue {
            Residue::Word(v) => {
                if *v == 0 {
                    return prec;
                }
                let mut v = *v;
                let mut n = 0;
                while v % p == 0 {
                    v /= p;
                    n += 1;
                }
                n
            }
            Residue::Big(v) => {
                if v.is_zero() {
                    return prec;
                }
                let pb = BigUint::from(p);
                let mut v = v.clone();
                let mut n = 0;
                loop {
                    let (q, r) = v.div_rem(&pb);
                    if !r.is_zero() {
                        return n;
                    }
                    v = q;
                    n += 1;
                }
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.residue_mod_p() != 0
    }

    pub fn inverse(&self) -> Result<PadicScalar> {
        if !self.is_unit() {
            return Err(PadicError::NotAUnit);
        }
        let residue = match &self.residue {
            Residue::Word(v) => {
                let m = self.ring.0.word.unwrap_or(0) as i128;
                let g = (*v as i128).extended_gcd(&m);
                Residue::Word(g.x.rem_euclid(m) as u64)
            }
            Residue::Big(v) => {
                Residue::Big(v.modinv(self.ring.modulus()).ok_or(PadicError::NotAUnit)?)
            }
        };
        Ok(self.ring.make(residue))
    }

    pub fn pow(&self, e: &BigUint) -> PadicScalar {
        match &self.residue {
            Residue::Word(v) => {
                let m = self.ring.0.word.unwrap_or(1);
                let r = BigUint::from(*v).modpow(e, &BigUint::from(m));
                self.ring.make(Residue::Word(r.to_u64().unwrap_or(0)))
            }
            Residue::Big(v) => self
                .ring
                .make(Residue::Big(v.modpow(e, self.ring.modulus()))),
        }
    }

    pub fn pow_u64(&self, e: u64) -> PadicScalar {
        match &self.residue {
            Residue::Word(v) => {
                let m = self.ring.0.word.unwrap_or(1) as u128;
                let mut base = *v as u128 % m;
                let mut acc = 1u128 % m;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                self.ring.make(Residue::Word(acc as u64))
            }
            Residue::Big(_) => self.pow(&BigUint::from(e)),
        }
    }

    /// x / p^v for x of valuation ≥ v, taking the representative quotient.
    pub fn shift_down(&self, v: u32) -> PadicScalar {
        debug_assert!(self.valuation() >= v);
        match &self.residue {
            Residue::Word(a) => self.ring.make(Residue::Word(a / self.ring.p().pow(v))),
            Residue::Big(a) => self
                .ring
                .make(Residue::Big(a / BigUint::from(self.ring.p()).pow(v))),
        }
    }

    /// Reduction to precision j ≤ K.
    pub fn reduce_precision(&self, j: u32) -> Result<PadicScalar> {
        if j == 0 || j > self.ring.precision() {
            return Err(PadicError::PrecisionOutOfRange {
                target: j,
                precision: self.ring.precision(),
            });
        }
        let target = self.ring.with_precision(j)?;
        Ok(target.from_biguint(&self.residue()))
    }

    /// Embeds into a ring of the same prime at precision ≥ K by choosing the
    /// canonical representative.
    pub fn lift_to(&self, ring: &Zp) -> Result<PadicScalar> {
        if ring.p() != self.ring.p() {
            return Err(PadicError::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, ring
            )));
        }
        Ok(ring.from_biguint(&self.residue()))
    }

    fn check(&self, rhs: &PadicScalar) {
        assert!(
            self.ring.same(&rhs.ring),
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            rhs.ring
        );
    }

    pub fn add_ref(&self, rhs: &PadicScalar) -> PadicScalar {
        self.check(rhs);
        let residue = match (&self.residue, &rhs.residue) {
            (Residue::Word(a), Residue::Word(b)) => {
                let m = self.ring.0.word.unwrap_or(1);
                let s = a + b;
                Residue::Word(if s >= m { s - m } else { s })
            }
            (a, b) => {
                let s = a.to_biguint() + b.to_biguint();
                let m = self.ring.modulus();
                Residue::Big(if &s >= m { s - m } else { s })
            }
        };
        self.ring.make(residue)
    }

    pub fn sub_ref(&self, rhs: &PadicScalar) -> PadicScalar {
        self.check(rhs);
        let residue = match (&self.residue, &rhs.residue) {
            (Residue::Word(a), Residue::Word(b)) => {
                let m = self.ring.0.word.unwrap_or(1);
                Residue::Word(if a >= b { a - b } else { a + m - b })
            }
            (a, b) => {
                let (a, b) = (a.to_biguint(), b.to_biguint());
                let m = self.ring.modulus();
                Residue::Big(if a >= b { a - b } else { a + m - b })
            }
        };
        self.ring.make(residue)
    }

    pub fn mul_ref(&self, rhs: &PadicScalar) -> PadicScalar {
        self.check(rhs);
        let residue = match (&self.residue, &rhs.residue) {
            (Residue::Word(a), Residue::Word(b)) => {
                let m = self.ring.0.word.unwrap_or(1) as u128;
                Residue::Word(((*a as u128) * (*b as u128) % m) as u64)
            }
            (a, b) => Residue::Big(a.to_biguint() * b.to_biguint() % self.ring.modulus()),
        };
        self.ring.make(residue)
    }

    pub fn neg_ref(&self) -> PadicScalar {
        if self.is_zero() {
            return self.clone();
        }
        let residue = match &self.residue {
            Residue::Word(a) => Residue::Word(self.ring.0.word.unwrap_or(0) - a),
            Residue::Big(a) => Residue::Big(self.ring.modulus() - a),
        };
        self.ring.make(residue)
    }
}

impl PartialEq for PadicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.residue == other.residue
    }
}

impl Eq for PadicScalar {}

impl Hash for PadicScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.p().hash(state);
        self.ring.precision().hash(state);
        self.residue.hash(state);
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.residue {
            Residue::Word(v) => write!(f, "{v}"),
            Residue::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (mod {}^{})",
            self,
            self.ring.p(),
            self.ring.precision()
        )
    }
}

impl Add for &PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: &PadicScalar) -> PadicScalar {
        self.add_ref(rhs)
    }
}

impl Sub for &PadicScalar {
    type Output = PadicScalar;
    fn sub(self, rhs: &PadicScalar) -> PadicScalar {
        self.sub_ref(rhs)
    }
}

impl Mul for &PadicScalar {
    type Output = PadicScalar;
    fn mul(self, rhs: &PadicScalar) -> PadicScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert_eq!(Zp::new(2, 3).err(), Some(PadicError::InvalidPrime(2)));
        assert_eq!(Zp::new(9, 3).err(), Some(PadicError::InvalidPrime(9)));
        assert!(Zp::new(3, 0).is_err());
    }

    #[test]
    fn valuation_examples() {
        let z = Zp::new(3, 4).unwrap();
        assert_eq!(z.from_u64(18).valuation(), 2);
        assert_eq!(z.zero().valuation(), 4);
        assert_eq!(Zp::new(5, 3).unwrap().one().valuation(), 0);
    }

    #[test]
    fn inverse_examples() {
        let z = Zp::new(5, 2).unwrap();
        assert_eq!(z.from_u64(7).inverse().unwrap(), z.from_u64(18));
        assert_eq!(z.one().inverse().unwrap(), z.one());
        assert_eq!(z.from_u64(5).inverse(), Err(PadicError::NotAUnit));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(
            Zp::new(5, 2).unwrap().teichmuller(2).unwrap().to_u64(),
            Some(7)
        );
        assert_eq!(
            Zp::new(7, 2).unwrap().teichmuller(3).unwrap().to_u64(),
            Some(31)
        );
        assert!(Zp::new(7, 2).unwrap().teichmuller(0).is_err());
        for p in [3, 5, 7] {
            assert!(Zp::new(p, 5).unwrap().teichmuller(1).unwrap().is_one());
        }
    }

    #[test]
    fn reduce_precision_examples() {
        let z = Zp::new(3, 4).unwrap();
        let x = z.from_u64(18);
        let r = x.reduce_precision(2).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.ring().precision(), 2);
        assert_eq!(x.reduce_precision(4).unwrap(), x);
        assert!(x.reduce_precision(5).is_err());
        assert!(x.reduce_precision(0).is_err());
    }

    #[test]
    fn big_modulus_path_matches_word_path() {
        // 3^45 exceeds the word limit.
        let big = Zp::new(3, 45).unwrap();
        let a = big.parse("123456789012345678901234").unwrap();
        let b = big.parse("-98765432109876543210").unwrap();
        let prod = &a * &b;
        let expected =
            BigInt::from(123456789012345678901234u128) * BigInt::from(-98765432109876543210i128);
        assert_eq!(prod, big.from_bigint(&expected));
        assert_eq!(&(&a + &b) - &b, a);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(big.from_u64(18).valuation(), 2);
    }

    #[test]
    fn signed_representative() {
        let z = Zp::new(5, 2).unwrap();
        assert_eq!(z.from_i64(-1).to_signed(), BigInt::from(-1));
        assert_eq!(z.from_i64(-1).to_u64(), Some(24));
    }
}

//! Scalars: ℤ/p^K and its unramified extensions.

mod limits;
pub mod moduli;
mod unram;
mod zp;

use std::fmt;

use num_bigint::BigUint;

use crate::error::Result;

pub use limits::{
    factor_unit, frobenius_limit, profinite_limit, FrobeniusLimit, Powering, ProfiniteLimit,
    UnitFactorization, UnitType,
};
pub use moduli::{residue_modulus, ModulusTable, ResidueModulus};
pub use unram::{UnramScalar, Zq};
pub use zp::{PadicScalar, Zp};

/// Common interface of the two scalar rings, used by the generic matrix code.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn from_zp(&self, x: &PadicScalar) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn valuation(&self) -> u32;
    fn inverse(&self) -> Result<Self>;
    fn prime(&self) -> u64;
    fn precision(&self) -> u32;
    /// Extension degree over ℤ_p.
    fn degree(&self) -> usize;
    fn same_ring(&self, other: &Self) -> bool;
    /// Same ring at precision j ≤ K.
    fn reduce_to(&self, j: u32) -> Result<Self>;

    fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.times(&acc);
            if e.bit(i) {
                acc = acc.times(self);
            }
        }
        acc
    }
}

impl Scalar for PadicScalar {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.ring().from_i64(v)
    }
    fn from_zp(&self, x: &PadicScalar) -> Self {
        x.clone()
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
        PadicScalar::is_zero(self)
    }
    fn valuation(&self) -> u32 {
        PadicScalar::valuation(self)
    }
    fn inverse(&self) -> Result<Self> {
        PadicScalar::inverse(self)
    }
    fn prime(&self) -> u64 {
        self.ring().p()
    }
    fn precision(&self) -> u32 {
        self.ring().precision()
    }
    fn degree(&self) -> usize {
        1
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.ring() == other.ring()
    }
    fn reduce_to(&self, j: u32) -> Result<Self> {
        self.reduce_precision(j)
    }
    fn is_unit(&self) -> bool {
        PadicScalar::is_unit(self)
    }
    fn is_one(&self) -> bool {
        PadicScalar::is_one(self)
    }
    fn pow(&self, e: &BigUint) -> Self {
        PadicScalar::pow(self, e)
    }
}

/// An element ε of 𝔪_p^+: either p^j or the formal symbol 1⁻, which reduces
/// to the residue field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Power(u32),
    OneMinus,
}

impl Epsilon {
    /// The precision j with ε = p^j; 1⁻ reads as j = 1.
    pub fn precision(self) -> u32 {
        match self {
            Epsilon::Power(j) => j,
            Epsilon::OneMinus => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Epsilon> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("ONE_MINUS") || t == "1-" || t == "1⁻" {
            return Ok(Epsilon::OneMinus);
        }
        match t.parse::<u32>() {
            Ok(j) if j >= 1 => Ok(Epsilon::Power(j)),
            _ => Err(crate::error::PadicError::Parse(format!(
                "bad epsilon {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::Power(j) => write!(f, "{j}"),
            Epsilon::OneMinus => write!(f, "ONE_MINUS"),
        }
    }
}

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{PadicError, Result};
use crate::ff::{factor_biguint, FpMatrix};
use crate::linalg::{Matrix, PadicMatrix};
use crate::padic::{frobenius_limit, profinite_limit, Scalar};

/// |GL_n(F_p)| = p^{n(n−1)/2}·∏_{i=1}^{n}(p^i − 1).
pub fn gl_order(n: usize, p: u64) -> BigUint {
    let pb = BigUint::from(p);
    (1..=n as u32).fold(pb.pow((n * (n - 1) / 2) as u32), |acc, i| {
        acc * (pb.pow(i) - 1u32)
    })
}

/// Exact multiplicative order of an element of GL_n(F_p), found by
/// descending through the divisors of the group order.
pub fn fp_order(m: &FpMatrix) -> Result<BigUint> {
    if !m.is_invertible() {
        return Err(PadicError::NotInvertible(1));
    }
    let (n, p) = (m.n(), m.p());
    let mut hints = vec![p];
    hints.extend((1..=n as u32).map(|i| p.pow(i) - 1));
    let mut order = gl_order(n, p);
    for (q, _) in factor_biguint(&order.clone(), &hints) {
        while (&order % &q) == BigUint::from(0u32) && m.pow(&(&order / &q)).is_identity() {
            order /= &q;
        }
    }
    Ok(order)
}

/// Order of U mod p.
pub fn residual_order(u: &PadicMatrix) -> Result<BigUint> {
    if !u.is_unitary() {
        return Err(PadicError::NotUnitary);
    }
    fp_order(&u.to_fp())
}

/// Prime-to-p part of n.
pub fn prime_to_p(n: &BigUint, p: u64) -> BigUint {
    let mut n = n.clone();
    let pb = BigUint::from(p);
    while (&n % &pb) == BigUint::from(0u32) {
        n /= &pb;
    }
    n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum UnitaryClass {
    Teichmuller,
    Continuous,
    ProfiniteMixed,
}

impl UnitaryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            UnitaryClass::Teichmuller => "TEICHMULLER",
            UnitaryClass::Continuous => "CONTINUOUS",
            UnitaryClass::ProfiniteMixed => "PROFINITE_MIXED",
        }
    }
}

/// Class of U with the stabilised limit of U^{p^{n!}} as witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification<S: Scalar> {
    pub class: UnitaryClass,
    pub limit: Matrix<S>,
    /// The n at which the iteration was certified stable.
    pub steps: u32,
    pub is_teichmuller: bool,
    pub is_continuous: bool,
}

/// The identity is both Teichmüller and continuous; it is reported as
/// CONTINUOUS with both predicates set.
pub fn classify<S: Scalar>(u: &Matrix<S>) -> Result<Classification<S>> {
    if !u.is_unitary() {
        return Err(PadicError::NotUnitary);
    }
    let lim = frobenius_limit(u, u.prime());
    let is_continuous = lim.limit.is_identity();
    let is_teichmuller = lim.limit == *u;
    let class = if is_continuous {
        UnitaryClass::Continuous
    } else if is_teichmuller {
        UnitaryClass::Teichmuller
    } else {
        UnitaryClass::ProfiniteMixed
    };
    Ok(Classification {
        class,
        limit: lim.limit,
        steps: lim.steps,
        is_teichmuller,
        is_continuous,
    })
}

pub fn is_teichmuller<S: Scalar>(u: &Matrix<S>) -> bool {
    classify(u).map(|c| c.is_teichmuller).unwrap_or(false)
}

pub fn is_continuous<S: Scalar>(u: &Matrix<S>) -> bool {
    classify(u).map(|c| c.is_continuous).unwrap_or(false)
}

/// The least n with U^{n!} = I at working precision; every unitary matrix
/// reaches it because GL_n(ℤ/p^K) is finite.
pub fn profinite_audit(u: &PadicMatrix) -> Result<u32> {
    if !u.is_unitary() {
        return Err(PadicError::NotUnitary);
    }
    let n = u.n() as u64;
    let p = u.prime();
    let bound = (p * (u.precision() as u64 + n) + p.saturating_pow(n as u32)).min(100_000) as u32;
    profinite_limit(u, bound)
        .map(|c| c.steps)
        .ok_or_else(|| PadicError::LiftAudit("U^{n!} did not reach the identity".into()))
}

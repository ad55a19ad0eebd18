//! Stabilised limits of σ^{n!}(x) = x^{p^{n!}} and of x^{n!}.

use num_bigint::BigUint;

use super::Scalar;
use crate::error::Result;

/// Anything in a finite group that can be raised to large powers.
pub trait Powering: Clone + PartialEq {
    fn power(&self, e: &BigUint) -> Self;
    fn is_identity(&self) -> bool;
}

impl<S: Scalar> Powering for S {
    fn power(&self, e: &BigUint) -> Self {
        self.pow(e)
    }

    fn is_identity(&self) -> bool {
        self.is_one()
    }
}

/// Certificate that x^{p^{n!}} has stopped moving at working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusLimit<T> {
    pub limit: T,
    /// The n at which V_n^{p^{n!}} = V_n was observed.
    pub steps: u32,
}

/// Iterates V_n = x^{p^{n!}} until V_n^{p^{n!}} = V_n, after which every
/// later term equals V_n. Terminates for every element of a finite group.
pub fn frobenius_limit<T: Powering>(x: &T, p: u64) -> FrobeniusLimit<T> {
    let pb = BigUint::from(p);
    let mut v = x.power(&pb);
    let mut n: u32 = 1;
    let mut fact: u32 = 1;
    loop {
        let e = pb.pow(fact);
        if v.power(&e) == v {
            return FrobeniusLimit { limit: v, steps: n };
        }
        v = v.power(&pb.pow(n * fact));
        n += 1;
        fact *= n;
    }
}

/// Certificate that x^{n!} reached the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfiniteLimit {
    pub steps: u32,
}

/// Finds the least n with x^{n!} = 1, or `None` if it is not reached by
/// `max_steps`.
pub fn profinite_limit<T: Powering>(x: &T, max_steps: u32) -> Option<ProfiniteLimit> {
    let mut w = x.clone();
    for n in 1..=max_steps {
        if n > 1 {
            w = w.power(&BigUint::from(n));
        }
        if w.is_identity() {
            return Some(ProfiniteLimit { steps: n });
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitType {
    /// The limit is x itself.
    Teichmuller,
    /// The limit is 1. Takes precedence for x = 1.
    Continuous,
    Mixed,
}

/// x = ω·u with ω Teichmüller and u ≡ 1 mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFactorization<S> {
    pub kind: UnitType,
    pub teichmuller: S,
    pub principal: S,
}

pub fn factor_unit<S: Scalar>(x: &S) -> Result<UnitFactorization<S>> {
    let inv = x.inverse()?;
    let lim = frobenius_limit(x, x.prime()).limit;
    let kind = if lim.is_one() {
        UnitType::Continuous
    } else if lim == *x {
        UnitType::Teichmuller
    } else {
        UnitType::Mixed
    };
    let principal = x.times(&lim.inverse()?);
    debug_assert!(principal.times(&lim).times(&inv).is_one());
    Ok(UnitFactorization {
        kind,
        teichmuller: lim,
        principal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Zp;

    #[test]
    fn trichotomy_small_cases() {
        let r = Zp::new(5, 3).unwrap();
        assert_eq!(
            factor_unit(&r.from_u64(1)).unwrap().kind,
            UnitType::Continuous
        );
        assert_eq!(
            factor_unit(&r.from_u64(6)).unwrap().kind,
            UnitType::Continuous
        );
        assert_eq!(factor_unit(&r.from_u64(2)).unwrap().kind, UnitType::Mixed);
        let t = r.teichmuller(2).unwrap();
        assert_eq!(factor_unit(&t).unwrap().kind, UnitType::Teichmuller);
        assert!(factor_unit(&r.from_u64(5)).is_err());
    }

    #[test]
    fn profinite_stabilises() {
        let r = Zp::new(3, 4).unwrap();
        for x in r.elements().filter(|x| x.is_unit()) {
            assert!(profinite_limit(&x, 20).is_some());
        }
    }
}

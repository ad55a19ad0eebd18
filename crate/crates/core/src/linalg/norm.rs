use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use crate::padic::Scalar;

/// The norm p^{-v}. When v reaches the working precision only the upper
/// bound p^{-K} is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Norm {
    pub prime: u64,
    pub valuation: u32,
    pub precision: u32,
}

impl Norm {
    pub fn new(prime: u64, valuation: u32, precision: u32) -> Norm {
        Norm {
            prime,
            valuation: valuation.min(precision),
            precision,
        }
    }

    pub fn of<S: Scalar>(x: &S) -> Norm {
        Norm::new(x.prime(), x.valuation(), x.precision())
    }

    /// Max entry norm of a vector.
    pub fn of_vec<S: Scalar>(v: &[S]) -> Norm {
        let s = &v[0];
        let val = v
            .iter()
            .map(|x| x.valuation())
            .min()
            .unwrap_or(s.precision());
        Norm::new(s.prime(), val, s.precision())
    }

    /// True when the value is only bounded by the precision floor.
    pub fn is_floor(&self) -> bool {
        self.valuation >= self.precision
    }

    pub fn is_one(&self) -> bool {
        self.valuation == 0
    }

    /// p^{-v}, or the bound p^{-K} at the floor.
    pub fn value(&self) -> BigRational {
        Ratio::new(
            BigInt::from(1),
            BigInt::from(BigUint::from(self.prime).pow(self.valuation)),
        )
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.valuation.cmp(&self.valuation)
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        let prefix = if self.is_floor() { "<=" } else { "" };
        if v.denom() == &BigInt::from(1) {
            write!(f, "{prefix}1")
        } else {
            write!(f, "{prefix}1/{}", v.denom())
        }
    }
}

/// Result of the Fekete limit of |A^k|^{1/k}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralSeminorm {
    /// A^k vanished at working precision.
    Zero { nilpotent_power: u32 },
    /// p^{-exponent}, attained at A^k with k = `attained_at`.
    Value {
        prime: u64,
        exponent: (u64, u64),
        attained_at: u32,
    },
}

impl SpectralSeminorm {
    pub fn is_zero(&self) -> bool {
        matches!(self, SpectralSeminorm::Zero { .. })
    }

    pub fn exponent(&self) -> Option<Ratio<u64>> {
        match self {
            SpectralSeminorm::Zero { .. } => None,
            SpectralSeminorm::Value { exponent, .. } => Some(Ratio::new(exponent.0, exponent.1)),
        }
    }
}

impl fmt::Display for SpectralSeminorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralSeminorm::Zero { .. } => write!(f, "0"),
            SpectralSeminorm::Value {
                prime, exponent, ..
            } => {
                if exponent.0 == 0 {
                    write!(f, "1")
                } else if exponent.1 == 1 {
                    write!(f, "{prime}^-{}", exponent.0)
                } else {
                    write!(f, "{prime}^-({}/{})", exponent.0, exponent.1)
                }
            }
        }
    }
}

/// min over 1 ≤ k ≤ k_max of |A^k|^{1/k}, with an exact zero as soon as a
/// power vanishes.
pub fn spectral_seminorm<S: Scalar>(a: &Matrix<S>, k_max: u32) -> SpectralSeminorm {
    let mut power = a.clone();
    let mut best = Ratio::new(0u64, 1u64);
    let mut best_k = 1;
    for k in 1..=k_max.max(1) {
        if k > 1 {
            power = power.mul(a);
        }
        if power.is_zero() {
            return SpectralSeminorm::Zero { nilpotent_power: k };
        }
        let r = Ratio::new(power.min_valuation() as u64, k as u64);
        if r > best {
            best = r;
            best_k = k;
        }
    }
    SpectralSeminorm::Value {
        prime: a.prime(),
        exponent: (*best.numer(), *best.denom()),
        attained_at: best_k,
    }
}

use crate::error::{PadicError, Result};
use crate::linalg::PadicMatrix;
use crate::padic::Zp;
use crate::unitary::{classify, UnitaryClass};

/// Shift U f(x) = f(x+1) and position X f(x) = x f(x) on the Mahler basis
/// C(x,0), …, C(x,N−1), with the ladder operators built from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftModel {
    pub x: PadicMatrix,
    pub u: PadicMatrix,
    pub a_plus: PadicMatrix,
    pub a_minus: PadicMatrix,
    pub h: PadicMatrix,
    pub audit: ShiftAudit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftAudit {
    /// UX − XU = U on the first N−1 basis vectors.
    pub shift_relation: bool,
    /// a⁻a⁺ − a⁺a⁻ = I on the first N−1 basis vectors.
    pub commutator: bool,
    pub u_unitary: bool,
    pub u_continuous: bool,
    /// a⁻ kills the constant function.
    pub annihilates_constant: bool,
}

impl ShiftAudit {
    pub fn all(&self) -> bool {
        self.shift_relation
            && self.commutator
            && self.u_unitary
            && self.u_continuous
            && self.annihilates_constant
    }
}

/// Column-wise comparison on the first `cols` basis vectors.
fn agree_on(a: &PadicMatrix, b: &PadicMatrix, cols: usize) -> bool {
    (0..a.n()).all(|i| (0..cols).all(|j| a.get(i, j) == b.get(i, j)))
}

pub fn spectrum_shift_model(size: usize, p: u64, k: u32) -> Result<ShiftModel> {
    if size < 2 {
        return Err(PadicError::DimensionMismatch(
            "truncation size must be at least 2".into(),
        ));
    }
    let ring = Zp::new(p, k)?;
    // C(x+1,k) = C(x,k) + C(x,k−1)
    let u = PadicMatrix::from_fn(size, |i, j| {
        if i == j || i + 1 == j {
            ring.one()
        } else {
            ring.zero()
        }
    });
    // x·C(x,k) = k·C(x,k) + (k+1)·C(x,k+1)
    let x = PadicMatrix::from_fn(size, |i, j| {
        if i == j {
            ring.from_u64(j as u64)
        } else if i == j + 1 {
            ring.from_u64(i as u64)
        } else {
            ring.zero()
        }
    });
    let id = u.identity();
    let a_plus = x.mul(&u.inverse()?);
    let a_minus = u.sub(&id);
    let h = a_plus.mul(&a_minus);
    let prefix = size - 1;
    let lhs = u.mul(&x).sub(&x.mul(&u));
    let comm = a_minus.mul(&a_plus).sub(&a_plus.mul(&a_minus));
    let audit = ShiftAudit {
        shift_relation: agree_on(&lhs, &u, prefix),
        commutator: agree_on(&comm, &id, prefix),
        u_unitary: u.is_unitary(),
        u_continuous: classify(&u)?.class == UnitaryClass::Continuous,
        annihilates_constant: (0..size).all(|i| a_minus.get(i, 0).is_zero()),
    };
    Ok(ShiftModel {
        x,
        u,
        a_plus,
        a_minus,
        h,
        audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = spectrum_shift_model(2, 3, 3).unwrap();
        assert_eq!(
            m.u,
            PadicMatrix::from_i64(m.u.ring(), 2, &[1, 1, 0, 1]).unwrap()
        );
        assert!(m.audit.all());
    }

    #[test]
    fn audits_hold_across_sizes() {
        for (n, p, k) in [(3, 3, 2), (5, 5, 3), (8, 7, 2), (6, 3, 4)] {
            assert!(
                spectrum_shift_model(n, p, k).unwrap().audit.all(),
                "{n} {p} {k}"
            );
        }
    }

    #[test]
    fn top_vector_is_polluted() {
        // the last column of UX − XU differs from U because X leaves the space
        let m = spectrum_shift_model(4, 5, 2).unwrap();
        let lhs = m.u.mul(&m.x).sub(&m.x.mul(&m.u));
        assert!(!agree_on(&lhs, &m.u, 4));
    }

    #[test]
    fn mahler_oracle() {
        // U and X against f(x+1) and x·f(x) evaluated at integer points
        let binom = |x: i64, k: usize| -> i64 {
            (0..k as i64).fold(1i64, |acc, i| acc * (x - i) / (i + 1))
        };
        let n = 5;
        let m = spectrum_shift_model(n, 7, 3).unwrap();
        let r = m.u.ring().clone();
        for col in 0..n - 1 {
            for x in 0..6i64 {
                let shifted: i64 = (0..n)
                    .map(|i| m.u.get(i, col).to_signed().try_into().unwrap_or(0i64) * binom(x, i))
                    .sum();
                assert_eq!(shifted, binom(x + 1, col));
                let times: i64 = (0..n)
                    .map(|i| m.x.get(i, col).to_signed().try_into().unwrap_or(0i64) * binom(x, i))
                    .sum();
                assert_eq!(r.from_i64(times), r.from_i64(x * binom(x, col)));
            }
        }
    }
}

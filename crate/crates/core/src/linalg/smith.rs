use serde::{Deserialize, Serialize};

use super::matrix::PadicMatrix;
use crate::error::Result;
use crate::padic::{PadicScalar, Scalar};

/// L·A·R = diag(p^{d_1}, …, p^{d_n}) over ℤ/p^j, with d_i ascending and
/// d_i = j standing for a zero diagonal entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithProfile {
    pub precision: u32,
    pub divisors: Vec<u32>,
    pub left: PadicMatrix,
    pub right: PadicMatrix,
}

/// Kernel and cokernel of an endomorphism of (ℤ/p^j)^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCokernel {
    pub precision: u32,
    /// Elementary divisor exponents; the cokernel is ⊕ ℤ/p^{d_i}.
    pub divisors: Vec<u32>,
    /// Number of free summands ℤ/p^j in kernel and cokernel alike.
    pub free_rank: usize,
    /// log_p of the kernel's size.
    pub kernel_log_size: u32,
}

impl SmithProfile {
    pub fn diagonal(&self) -> PadicMatrix {
        let ring = self.left.ring();
        let p = ring.p();
        let entries: Vec<PadicScalar> = self
            .divisors
            .iter()
            .map(|&d| ring.from_biguint(&num_bigint::BigUint::from(p).pow(d)))
            .collect();
        PadicMatrix::diagonal(&entries)
    }

    pub fn free_rank(&self) -> usize {
        self.divisors
            .iter()
            .filter(|&&d| d == self.precision)
            .count()
    }

    /// Generators R·p^{j−d_i}·e_i of the kernel, skipping the zero ones.
    pub fn kernel_generators(&self) -> Vec<Vec<PadicScalar>> {
        let ring = self.left.ring();
        let p = ring.p();
        let n = self.divisors.len();
        self.divisors
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| {
                let c = ring.from_biguint(&num_bigint::BigUint::from(p).pow(self.precision - d));
                (0..n).map(|r| self.right.get(r, i).times(&c)).collect()
            })
            .collect()
    }

    pub fn summary(&self) -> KernelCokernel {
        KernelCokernel {
            precision: self.precision,
            divisors: self.divisors.clone(),
            free_rank: self.free_rank(),
            kernel_log_size: self.divisors.iter().sum(),
        }
    }
}

/// Smith form over ℤ/p^j by minimal-valuation pivoting.
pub fn smith_form(a: &PadicMatrix, j: u32) -> Result<SmithProfile> {
    let m0 = a.reduce_to(j)?;
    let n = m0.n();
    let mut m = m0.clone();
    let mut left = m0.identity();
    let mut right = m0.identity();
    let mut divisors = Vec::with_capacity(n);
    for t in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for r in t..n {
            for c in t..n {
                let v = m.get(r, c).valuation();
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                }
            }
        }
        let (v, r, c) = best.expect("nonempty block");
        if v >= j {
            divisors.extend(std::iter::repeat_n(j, n - t));
            break;
        }
        m.swap_rows(t, r);
        left.swap_rows(t, r);
        m.swap_cols(t, c);
        right.swap_cols(t, c);
        let unit = m.get(t, t).shift_down(v);
        let u_inv = unit.inverse()?;
        m.scale_row(t, &u_inv);
        left.scale_row(t, &u_inv);
        for r in t + 1..n {
            if !m.get(r, t).is_zero() {
                let f = m.get(r, t).shift_down(v).negated();
                m.add_row_multiple(r, t, &f);
                left.add_row_multiple(r, t, &f);
            }
        }
        for c in t + 1..n {
            if !m.get(t, c).is_zero() {
                let f = m.get(t, c).shift_down(v).negated();
                m.add_col_multiple(c, t, &f);
                right.add_col_multiple(c, t, &f);
            }
        }
        divisors.push(v);
    }
    Ok(SmithProfile {
        precision: j,
        divisors,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Zp;

    fn m(p: u64, k: u32, n: usize, e: &[i64]) -> PadicMatrix {
        PadicMatrix::from_i64(&Zp::new(p, k).unwrap(), n, e).unwrap()
    }

    fn check(a: &PadicMatrix, j: u32) -> SmithProfile {
        let s = smith_form(a, j).unwrap();
        let aj = a.reduce_to(j).unwrap();
        assert_eq!(s.left.mul(&aj).mul(&s.right), s.diagonal());
        assert!(s.left.is_unitary() && s.right.is_unitary());
        assert!(s.divisors.windows(2).all(|w| w[0] <= w[1]));
        s
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check(&m(3, 3, 2, &[1, 0, 0, 1]), 3).divisors, vec![0, 0]);
        assert_eq!(check(&m(3, 3, 2, &[3, 0, 0, 1]), 2).divisors, vec![0, 1]);
        assert_eq!(check(&m(3, 3, 2, &[0, 1, 0, 0]), 2).divisors, vec![0, 2]);
    }

    #[test]
    fn kernel_generators_are_killed() {
        let a = m(5, 3, 3, &[5, 10, 0, 0, 25, 0, 1, 2, 0]);
        let s = check(&a, 3);
        let aj = a.reduce_to(3).unwrap();
        for g in s.kernel_generators() {
            assert!(aj.mul_vec(&g).iter().all(|x| x.is_zero()));
        }
    }
}

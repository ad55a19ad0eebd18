use std::fmt;

use num_bigint::BigUint;

use super::poly::mod_inv;

/// Dense square matrix over F_p, used for residual computations in GL_n(F_p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    n: usize,
    p: u64,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(n: usize, p: u64, data: Vec<u64>) -> FpMatrix {
        assert_eq!(data.len(), n * n, "expected {} entries", n * n);
        FpMatrix {
            n,
            p,
            data: data.into_iter().map(|v| v % p).collect(),
        }
    }

    pub fn from_i64(n: usize, p: u64, data: &[i64]) -> FpMatrix {
        FpMatrix::new(
            n,
            p,
            data.iter().map(|v| v.rem_euclid(p as i64) as u64).collect(),
        )
    }

    pub fn identity(n: usize, p: u64) -> FpMatrix {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        FpMatrix { n, p, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v % self.p;
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let p = self.p as u128;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k] as u128;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = ((out[idx] as u128 + a * rhs.data[k * n + j] as u128) % p) as u64;
                }
            }
        }
        FpMatrix {
            n,
            p: self.p,
            data: out,
        }
    }

    pub fn pow(&self, e: &BigUint) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.n, self.p);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> FpMatrix {
        self.pow(&BigUint::from(e))
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        let n = self.n;
        let p = self.p;
        let mut a = self.clone();
        let mut inv = FpMatrix::identity(n, p);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = mod_inv(a.get(col, col), p);
            a.scale_row(col, s);
            inv.scale_row(col, s);
            for r in 0..n {
                if r != col {
                    let f = a.get(r, col);
                    if f != 0 {
                        a.add_row_multiple(r, col, p - f);
                        inv.add_row_multiple(r, col, p - f);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.data.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        let p = self.p as u128;
        for j in 0..self.n {
            let idx = r * self.n + j;
            self.data[idx] = (self.data[idx] as u128 * s as u128 % p) as u64;
        }
    }

    fn add_row_multiple(&mut self, target: usize, src: usize, f: u64) {
        let p = self.p as u128;
        for j in 0..self.n {
            let v = (self.data[target * self.n + j] as u128
                + f as u128 * self.data[src * self.n + j] as u128)
                % p;
            self.data[target * self.n + j] = v as u64;
        }
    }

    /// Top-left k×k block.
    pub fn block(&self, k: usize) -> FpMatrix {
        let mut data = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                data.push(self.get(i, j));
            }
        }
        FpMatrix {
            n: k,
            p: self.p,
            data,
        }
    }

    /// Places `self` in the top-left corner of an n×n identity.
    pub fn embed(&self, n: usize) -> FpMatrix {
        let mut out = FpMatrix::identity(n, self.p);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 1 && (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Every element of GL_n(F_p), in lexicographic order of entries.
    pub fn enumerate_gl(n: usize, p: u64) -> Vec<FpMatrix> {
        let total = p.pow((n * n) as u32);
        (0..total)
            .filter_map(|mut idx| {
                let mut data = vec![0u64; n * n];
                for slot in data.iter_mut().rev() {
                    *slot = idx % p;
                    idx /= p;
                }
                let m = FpMatrix { n, p, data };
                m.is_invertible().then_some(m)
            })
            .collect()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u64]> = self.data.chunks(self.n).collect();
        write!(f, "{rows:?} (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_f3_has_48_elements() {
        assert_eq!(FpMatrix::enumerate_gl(2, 3).len(), 48);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FpMatrix::from_i64(3, 5, &[1, 2, 3, 0, 1, 4, 2, 0, 1]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(FpMatrix::from_i64(2, 3, &[1, 2, 2, 1]).inverse().is_none());
    }
}

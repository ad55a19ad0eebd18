use std::fmt;

use num_bigint::BigUint;

use crate::error::{PadicError, Result};
use crate::ff::FpMatrix;
use crate::padic::{PadicScalar, Powering, Scalar, UnramScalar, Zp, Zq};

use super::norm::Norm;

/// Dense square matrix over a scalar ring, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

pub type PadicMatrix = Matrix<PadicScalar>;
pub type UnramMatrix = Matrix<UnramScalar>;

impl<S: Scalar> Matrix<S> {
    pub fn new(n: usize, data: Vec<S>) -> Result<Matrix<S>> {
        if n == 0 || data.len() != n * n {
            return Err(PadicError::DimensionMismatch(format!(
                "{} entries for dimension {n}",
                data.len()
            )));
        }
        if data.iter().any(|x| !x.same_ring(&data[0])) {
            return Err(PadicError::RingMismatch("matrix entries".into()));
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Matrix<S>> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PadicError::DimensionMismatch("matrix is not square".into()));
        }
        Matrix::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> S) -> Matrix<S> {
        let mut f = f;
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { n, data }
    }

    /// c·I with c taken from `proto`'s ring.
    pub fn scalar_like(c: &S, n: usize) -> Matrix<S> {
        let zero = c.zero_like();
        Matrix::from_fn(n, |i, j| if i == j { c.clone() } else { zero.clone() })
    }

    pub fn identity_like(proto: &S, n: usize) -> Matrix<S> {
        Matrix::scalar_like(&proto.one_like(), n)
    }

    pub fn zero_like(proto: &S, n: usize) -> Matrix<S> {
        Matrix::scalar_like(&proto.zero_like(), n)
    }

    pub fn diagonal(entries: &[S]) -> Matrix<S> {
        let n = entries.len();
        let zero = entries[0].zero_like();
        Matrix::from_fn(n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// An entry, used to reach the scalar ring.
    pub fn proto(&self) -> &S {
        &self.data[0]
    }

    pub fn prime(&self) -> u64 {
        self.proto().prime()
    }

    pub fn precision(&self) -> u32 {
        self.proto().precision()
    }

    pub fn identity(&self) -> Matrix<S> {
        Matrix::identity_like(self.proto(), self.n)
    }

    pub fn zero(&self) -> Matrix<S> {
        Matrix::zero_like(self.proto(), self.n)
    }

    fn check(&self, rhs: &Matrix<S>) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        assert!(self.proto().same_ring(rhs.proto()), "ring mismatch");
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T>(&self, f: impl FnMut(&S) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<Vec<T>>>()?,
        })
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.check(rhs);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.check(rhs);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix<S> {
        self.map(|a| a.negated())
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        self.map(|a| c.times(a))
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.check(rhs);
        let n = self.n;
        let mut data = vec![self.proto().zero_like(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] = data[i * n + j].plus(&a.times(b));
                    }
                }
            }
        }
        Matrix { n, data }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.proto().zero_like(), |acc, j| {
                    acc.plus(&self.get(i, j).times(&v[j]))
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// c·I for some scalar c.
    pub fn as_scalar(&self) -> Option<S> {
        let c = self.get(0, 0).clone();
        (*self == Matrix::scalar_like(&c, self.n)).then_some(c)
    }

    pub fn commutes_with(&self, rhs: &Matrix<S>) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }

    pub fn pow(&self, e: &BigUint) -> Matrix<S> {
        let mut acc = self.identity();
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> Matrix<S> {
        self.pow(&BigUint::from(e))
    }

    /// Characteristic polynomial det(tI − A), low degree first, computed by
    /// the division-free Berkowitz recursion.
    pub fn char_poly(&self) -> Vec<S> {
        let zero = self.proto().zero_like();
        let one = self.proto().one_like();
        // c holds det(tI − A_r) from the leading coefficient down.
        let mut c = vec![one.clone(), self.get(0, 0).negated()];
        for r in 1..self.n {
            // A_{r+1} = [[A_r, s], [row, a]].
            let s: Vec<S> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<S> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut q = Vec::with_capacity(r + 2);
            q.push(one.clone());
            q.push(self.get(r, r).negated());
            let mut v = s;
            for _ in 0..r {
                let rv = row
                    .iter()
                    .zip(&v)
                    .fold(zero.clone(), |acc, (a, b)| acc.plus(&a.times(b)));
                q.push(rv.negated());
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(zero.clone(), |acc, k| {
                            acc.plus(&self.get(i, k).times(&v[k]))
                        })
                    })
                    .collect();
            }
            let next: Vec<S> = (0..r + 2)
                .map(|i| {
                    (0..c.len())
                        .filter(|&j| j <= i)
                        .fold(zero.clone(), |acc, j| acc.plus(&q[i - j].times(&c[j])))
                })
                .collect();
            c = next;
        }
        c.reverse();
        c
    }

    pub fn det(&self) -> S {
        self.det_from(&self.char_poly())
    }

    fn det_from(&self, c: &[S]) -> S {
        if self.n.is_multiple_of(2) {
            c[0].clone()
        } else {
            c[0].negated()
        }
    }

    /// adj(A) = (−1)^{n−1} Σ_{k=1}^{n} c_k A^{k−1}, from Cayley–Hamilton.
    pub fn adjugate(&self) -> Matrix<S> {
        self.det_adjugate().1
    }

    /// det(A) and adj(A) from a single characteristic polynomial.
    pub fn det_adjugate(&self) -> (S, Matrix<S>) {
        let c = self.char_poly();
        let mut acc = self.zero();
        for k in (1..=self.n).rev() {
            acc = acc.mul(self).add(&Matrix::scalar_like(&c[k], self.n));
        }
        let adj = if self.n.is_multiple_of(2) { acc.neg() } else { acc };
        (self.det_from(&c), adj)
    }

    /// Evaluates a polynomial (low degree first) at the matrix.
    pub fn eval_poly(&self, coeffs: &[S]) -> Matrix<S> {
        coeffs.iter().rev().fold(self.zero(), |acc, c| {
            acc.mul(self).add(&Matrix::scalar_like(c, self.n))
        })
    }

    /// Gauss–Jordan with unit pivots.
    pub fn inverse(&self) -> Result<Matrix<S>> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = self.identity();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| a.get(r, col).is_unit()) {
                Some(r) => r,
                None => return Err(PadicError::NotInvertible(self.det().valuation())),
            };
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = a.get(col, col).inverse()?;
            a.scale_row(col, &s);
            inv.scale_row(col, &s);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).negated();
                    a.add_row_multiple(r, col, &f);
                    inv.add_row_multiple(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.data.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.n {
                self.data.swap(i * self.n + a, i * self.n + b);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: &S) {
        for j in 0..self.n {
            let idx = r * self.n + j;
            self.data[idx] = self.data[idx].times(s);
        }
    }

    /// row[target] += f·row[src]
    pub(crate) fn add_row_multiple(&mut self, target: usize, src: usize, f: &S) {
        for j in 0..self.n {
            let v = self.data[src * self.n + j].times(f);
            let idx = target * self.n + j;
            self.data[idx] = self.data[idx].plus(&v);
        }
    }

    /// col[target] += f·col[src]
    pub(crate) fn add_col_multiple(&mut self, target: usize, src: usize, f: &S) {
        for i in 0..self.n {
            let v = self.data[i * self.n + src].times(f);
            let idx = i * self.n + target;
            self.data[idx] = self.data[idx].plus(&v);
        }
    }

    /// Least entry valuation; K for the zero matrix.
    pub fn min_valuation(&self) -> u32 {
        self.data
            .iter()
            .map(|x| x.valuation())
            .min()
            .unwrap_or(self.precision())
    }

    pub fn sup_norm(&self) -> Norm {
        Norm::new(self.prime(), self.min_valuation(), self.precision())
    }

    /// Integral entries (automatic here) and a unit determinant, which is
    /// |A| = |A⁻¹| = 1.
    pub fn is_unitary(&self) -> bool {
        self.det().is_unit()
    }

    pub fn reduce_to(&self, j: u32) -> Result<Matrix<S>> {
        self.try_map(|x| x.reduce_to(j))
    }
}

impl<S: Scalar> Powering for Matrix<S> {
    fn power(&self, e: &BigUint) -> Self {
        self.pow(e)
    }

    fn is_identity(&self) -> bool {
        Matrix::is_identity(self)
    }
}

impl PadicMatrix {
    pub fn from_i64(ring: &Zp, n: usize, entries: &[i64]) -> Result<PadicMatrix> {
        if n == 0 || entries.len() != n * n {
            return Err(PadicError::DimensionMismatch(format!(
                "{} entries for dimension {n}",
                entries.len()
            )));
        }
        Ok(Matrix {
            n,
            data: entries.iter().map(|&v| ring.from_i64(v)).collect(),
        })
    }

    pub fn identity_in(ring: &Zp, n: usize) -> PadicMatrix {
        Matrix::identity_like(&ring.one(), n)
    }

    pub fn ring(&self) -> &Zp {
        self.proto().ring()
    }

    /// Reduction to GL_n(F_p).
    pub fn to_fp(&self) -> FpMatrix {
        FpMatrix::new(
            self.n,
            self.prime(),
            self.data.iter().map(|x| x.residue_mod_p()).collect(),
        )
    }

    /// Lift of a residue matrix by entries in [0, p).
    pub fn from_fp(ring: &Zp, m: &FpMatrix) -> PadicMatrix {
        Matrix {
            n: m.n(),
            data: m.data().iter().map(|&v| ring.from_u64(v)).collect(),
        }
    }

    pub fn to_unram(&self, ring: &Zq) -> UnramMatrix {
        self.map(|x| ring.from_zp(x))
    }

    pub fn lift_to(&self, ring: &Zp) -> Result<PadicMatrix> {
        self.try_map(|x| x.lift_to(ring))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.data
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl UnramMatrix {
    pub fn frobenius(&self) -> UnramMatrix {
        self.map(|x| x.frobenius())
    }

    /// Entries in ℤ_p, if all of them are.
    pub fn as_padic(&self) -> Option<PadicMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.as_zp())
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: self.n, data })
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

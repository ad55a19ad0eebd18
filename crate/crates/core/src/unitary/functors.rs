use serde::{Deserialize, Serialize};

use super::order::residual_order;
use crate::error::{PadicError, Result};
use crate::gm::{teich_factor, UnitPolynomial};
use crate::linalg::{smith_form, KernelCokernel, PadicMatrix};
use crate::padic::PadicScalar;

/// Π_I(M) = ker f(U) and π_I(M) = coker f(U) on (ℤ/p^j)^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionFunctors {
    pub kernel_basis: Vec<Vec<PadicScalar>>,
    pub structure: KernelCokernel,
}

pub fn projection_functors(
    u: &PadicMatrix,
    j: u32,
    f: &UnitPolynomial,
) -> Result<ProjectionFunctors> {
    if j == 0 || j > u.precision() {
        return Err(PadicError::PrecisionOutOfRange {
            target: j,
            precision: u.precision(),
        });
    }
    if f.ring() != u.ring() {
        return Err(PadicError::RingMismatch("polynomial and matrix".into()));
    }
    // t^low is invertible on the module, so only the polynomial part matters
    let fu = f.poly().eval_matrix(u);
    let s = smith_form(&fu, j)?;
    Ok(ProjectionFunctors {
        kernel_basis: s.kernel_generators(),
        structure: s.summary(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub precision: u32,
    /// Irreducible residual factor of the class, low degree first.
    pub residue_factor: Vec<u64>,
    pub orbit_degree: usize,
    pub dimension: usize,
    pub cokernel_divisors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
    /// Per precision: the components are nonzero and fill the module, so
    /// M_{ε,tor} and M̂_ε are both the whole module.
    pub complete: Vec<(u32, bool)>,
}

/// The λ-components of M = (ℤ/p^j)^n under U for every j in the list.
pub fn spectrum_table(u: &PadicMatrix, js: &[u32], seed: u64) -> Result<SpectrumTable> {
    residual_order(u)?;
    let chi = UnitPolynomial::from_poly(&crate::poly::ZpPoly::new(u.ring(), u.char_poly()))?;
    let mut rows = Vec::new();
    let mut complete = Vec::new();
    for &j in js {
        let tf = teich_factor(&chi, j, seed)?;
        let uj = u.reduce_to(j)?;
        let mut total = 0;
        let mut nonzero = true;
        for piece in &tf.factors {
            let fu = piece.factor.eval_matrix(&uj);
            let s = smith_form(&fu, j)?;
            let dimension = s.free_rank();
            nonzero &= dimension > 0;
            total += dimension;
            rows.push(SpectrumRow {
                precision: j,
                residue_factor: piece.label.residue_factor.clone(),
                orbit_degree: piece.label.degree,
                dimension,
                cokernel_divisors: s.divisors.clone(),
            });
        }
        complete.push((j, nonzero && total == u.n()));
    }
    Ok(SpectrumTable { rows, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::DEFAULT_SEED;
    use crate::padic::Zp;

    fn m(p: u64, k: u32, e: &[i64]) -> PadicMatrix {
        PadicMatrix::from_i64(&Zp::new(p, k).unwrap(), 2, e).unwrap()
    }

    #[test]
    fn functor_examples() {
        let u = m(5, 2, &[1, 0, 0, 1]);
        let f = UnitPolynomial::from_i64(u.ring(), &[-1, 1]).unwrap();
        let pf = projection_functors(&u, 2, &f).unwrap();
        assert_eq!(pf.structure.free_rank, 2);
        assert_eq!(pf.structure.divisors, vec![2, 2]);

        let u = m(5, 2, &[1, 0, 0, -1]);
        let pf = projection_functors(&u, 1, &f).unwrap();
        assert_eq!(pf.structure.divisors, vec![0, 1]);
        assert_eq!(pf.structure.free_rank, 1);
        assert_eq!(pf.kernel_basis.len(), 1);

        // res(t − 2, t² − 1) = 3 is a unit mod 5
        let g = UnitPolynomial::from_i64(u.ring(), &[-2, 1]).unwrap();
        let pf = projection_functors(&u, 2, &g).unwrap();
        assert_eq!(pf.structure.divisors, vec![0, 0]);
        assert_eq!(pf.structure.kernel_log_size, 0);
    }

    #[test]
    fn table_examples() {
        let t = spectrum_table(&m(3, 3, &[1, 0, 0, 1]), &[1, 2, 3], DEFAULT_SEED).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.rows.iter().all(|r| r.dimension == 2));
        assert!(t.complete.iter().all(|c| c.1));

        let t = spectrum_table(&m(5, 2, &[1, 0, 0, -1]), &[1, 2], DEFAULT_SEED).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.rows.iter().all(|r| r.dimension == 1));

        let t = spectrum_table(&m(3, 2, &[1, 1, 1, 0]), &[2], DEFAULT_SEED).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!((t.rows[0].orbit_degree, t.rows[0].dimension), (2, 2));
        assert!(t.complete[0].1);
    }
}

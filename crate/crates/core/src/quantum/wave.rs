use crate::error::{PadicError, Result};
use crate::linalg::{Matrix, Norm};
use crate::padic::{PadicScalar, Scalar, Zp};

/// ψ with its cached sup norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveFunction<S: Scalar = PadicScalar> {
    entries: Vec<S>,
    norm: Norm,
}

impl<S: Scalar> WaveFunction<S> {
    pub fn new(entries: Vec<S>) -> Result<WaveFunction<S>> {
        let first = entries
            .first()
            .ok_or_else(|| PadicError::DimensionMismatch("empty wave function".into()))?;
        if entries.iter().any(|x| !x.same_ring(first)) {
            return Err(PadicError::RingMismatch("wave function entries".into()));
        }
        let norm = Norm::of_vec(&entries);
        Ok(WaveFunction { entries, norm })
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    /// A state in the axiomatic sense: |ψ| = 1.
    pub fn is_state(&self) -> bool {
        self.norm.is_one()
    }

    pub fn apply(&self, m: &Matrix<S>) -> Result<WaveFunction<S>> {
        if m.n() != self.dim() {
            return Err(PadicError::DimensionMismatch(format!(
                "{}x{} operator on a vector of length {}",
                m.n(),
                m.n(),
                self.dim()
            )));
        }
        WaveFunction::new(m.mul_vec(&self.entries))
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> WaveFunction<T> {
        WaveFunction::new(self.entries.iter().map(f).collect()).expect("non-empty")
    }
}

impl WaveFunction<PadicScalar> {
    pub fn from_i64(ring: &Zp, v: &[i64]) -> Result<WaveFunction> {
        WaveFunction::new(v.iter().map(|&x| ring.from_i64(x)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probability {
    /// |π_i(ψ)| per projector.
    pub parts: Vec<Norm>,
    /// |π(ψ)| for π = Σπ_i, equal to the largest part.
    pub total: Norm,
}

fn check_family<S: Scalar>(ps: &[Matrix<S>]) -> Result<()> {
    for (i, a) in ps.iter().enumerate() {
        if a.mul(a) != *a {
            return Err(PadicError::InvalidProjectors(format!(
                "projector {i} is not idempotent"
            )));
        }
        for (k, b) in ps.iter().enumerate().skip(i + 1) {
            if !a.mul(b).is_zero() || !b.mul(a).is_zero() {
                return Err(PadicError::InvalidProjectors(format!(
                    "projectors {i} and {k} are not orthogonal"
                )));
            }
        }
    }
    Ok(())
}

/// The probability of π = Σπ_i on ψ is the supremum of |π_i(ψ)|.
pub fn probability<S: Scalar>(
    projectors: &[Matrix<S>],
    psi: &WaveFunction<S>,
) -> Result<Probability> {
    if projectors.is_empty() {
        return Err(PadicError::InvalidProjectors("empty family".into()));
    }
    check_family(projectors)?;
    let parts = projectors
        .iter()
        .map(|p| psi.apply(p).map(|w| w.norm()))
        .collect::<Result<Vec<_>>>()?;
    let total_op = projectors[1..]
        .iter()
        .fold(projectors[0].clone(), |acc, p| acc.add(p));
    let total = psi.apply(&total_op)?.norm();
    let sup = *parts.iter().max().expect("non-empty");
    if sup.valuation != total.valuation {
        return Err(PadicError::LiftAudit("sup rule failed".into()));
    }
    Ok(Probability { parts, total })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measurement<S: Scalar = PadicScalar> {
    /// π(ψ), not renormalised.
    pub state: WaveFunction<S>,
    pub norm: Norm,
}

pub fn measure<S: Scalar>(psi: &WaveFunction<S>, pi: &Matrix<S>) -> Result<Measurement<S>> {
    check_family(std::slice::from_ref(pi))?;
    let state = psi.apply(pi)?;
    Ok(Measurement {
        norm: state.norm(),
        state,
    })
}

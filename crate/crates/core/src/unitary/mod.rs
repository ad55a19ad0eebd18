//! Classification, Jordan and spectral decompositions of unitary matrices,
//! one-parameter groups and projection functors.

mod functors;
mod jordan;
mod order;
mod spectral;
mod stone;

pub use functors::{
    projection_functors, spectrum_table, ProjectionFunctors, SpectrumRow, SpectrumTable,
};
pub use jordan::{jordan_decompose, jordan_exponent, JordanDecomposition};
pub use order::{
    classify, fp_order, gl_order, is_continuous, is_teichmuller, prime_to_p, profinite_audit,
    residual_order, Classification, UnitaryClass,
};
pub use spectral::{teichmuller_spectral, FrobeniusOrbit, SpectralAudit, SpectralDatum};
pub use stone::{power_zp, zp_unit_action};

//! Dense matrices over the scalar rings.

mod matrix;
mod norm;
mod smith;

pub use matrix::{Matrix, PadicMatrix, UnramMatrix};
pub use norm::{spectral_seminorm, Norm, SpectralSeminorm};
pub use smith::{smith_form, KernelCokernel, SmithProfile};

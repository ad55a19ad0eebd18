//! Wave functions, measurement, two-clock evolution, the Mahler shift model
//! and non-commutative torus pairs.

mod evolution;
mod shift;
mod torus;
mod wave;

pub use evolution::{
    evolve, exp_matrix, exp_truncation, trajectory, EvolutionPair, Evolved, ExpDomain,
};
pub use shift::{spectrum_shift_model, ShiftAudit, ShiftModel};
pub use torus::{clock_and_shift, torus_check, TorusCertificate};
pub use wave::{measure, probability, Measurement, Probability, WaveFunction};

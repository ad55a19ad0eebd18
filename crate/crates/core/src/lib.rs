pub mod audit;
pub mod error;
pub mod ff;
pub mod glnp;
pub mod gm;
pub mod linalg;
pub mod padic;
pub mod par;
pub mod poly;
pub mod quantum;
pub mod unitary;

pub use error::{PadicError, Result};

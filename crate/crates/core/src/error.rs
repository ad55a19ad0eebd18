use thiserror::Error;

/// Errors raised by the scalar, matrix and spectral layers.
///
/// The variants split into two families: malformed input (bad prime,
/// mismatched precision, non-invertible data) and violated operation
/// preconditions (asking for a spectral decomposition of an operator that
/// is not of Teichmüller type, for example). [`PadicError::is_precondition`]
/// tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("p = {0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("precision must be positive, got {0}")]
    InvalidPrecision(u32),
    #[error("reduction target {target} is outside 1..={precision}")]
    PrecisionOutOfRange { target: u32, precision: u32 },
    #[error("operands live in different rings: {0}")]
    RingMismatch(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix is not invertible (determinant has valuation {0})")]
    NotInvertible(u32),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("not a unit polynomial: {0}")]
    NotUnitPolynomial(String),
    #[error("modulus step d must be nonzero")]
    ZeroStep,
    #[error("no unramified modulus of degree {degree} available for p = {prime}")]
    UnsupportedExtension { prime: u64, degree: usize },
    #[error("modulus table: {0}")]
    ModulusTable(String),
    #[error("invalid residue: {0}")]
    InvalidResidue(String),
    #[error("operator is not of Teichmüller type")]
    NotTeichmuller,
    #[error("operator is not of continuous type")]
    NotContinuous,
    #[error("polynomials are not orthogonal (resultant valuation {0})")]
    NotOrthogonal(u32),
    #[error("time parameter outside the convergence domain: {0}")]
    RadiusViolation(String),
    #[error("H and U do not commute")]
    NonCommuting,
    #[error("commutator is not a scalar matrix")]
    NotATorusPair,
    #[error("parameter precision is too low for this one-parameter group: {0}")]
    ParameterPrecision(String),
    #[error("projector family is invalid: {0}")]
    InvalidProjectors(String),
    #[error("lift audit failed: {0}")]
    LiftAudit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl PadicError {
    /// True for errors that report a violated operation precondition rather
    /// than malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            PadicError::NotTeichmuller
                | PadicError::NotContinuous
                | PadicError::NotOrthogonal(_)
                | PadicError::RadiusViolation(_)
                | PadicError::NonCommuting
                | PadicError::NotATorusPair
                | PadicError::ParameterPrecision(_)
                | PadicError::InvalidProjectors(_)
                | PadicError::LiftAudit(_)
                | PadicError::UnsupportedExtension { .. }
        )
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            PadicError::InvalidPrime(_) => "invalid_prime",
            PadicError::InvalidPrecision(_) => "invalid_precision",
            PadicError::PrecisionOutOfRange { .. } => "precision_out_of_range",
            PadicError::RingMismatch(_) => "ring_mismatch",
            PadicError::NotAUnit => "not_a_unit",
            PadicError::NotInvertible(_) => "not_invertible",
            PadicError::NotUnitary => "not_unitary",
            PadicError::DimensionMismatch(_) => "dimension_mismatch",
            PadicError::ZeroPolynomial => "zero_polynomial",
            PadicError::NotUnitPolynomial(_) => "not_unit_polynomial",
            PadicError::ZeroStep => "zero_step",
            PadicError::UnsupportedExtension { .. } => "unsupported_extension",
            PadicError::ModulusTable(_) => "modulus_table",
            PadicError::InvalidResidue(_) => "invalid_residue",
            PadicError::NotTeichmuller => "not_teichmuller",
            PadicError::NotContinuous => "not_continuous",
            PadicError::NotOrthogonal(_) => "not_orthogonal",
            PadicError::RadiusViolation(_) => "radius_violation",
            PadicError::NonCommuting => "non_commuting",
            PadicError::NotATorusPair => "not_a_torus_pair",
            PadicError::ParameterPrecision(_) => "parameter_precision",
            PadicError::InvalidProjectors(_) => "invalid_projectors",
            PadicError::LiftAudit(_) => "lift_audit",
            PadicError::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, PadicError>;

use thiserror::Error;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum QtfaError {
    /// The modulus must be an odd integer >= 3.
    #[error("invalid modulus {0}: N must be odd and >= 3")]
    InvalidModulus(usize),

    /// A buffer does not match the expected grid shape.
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// A window with zero norm cannot be used for analysis.
    #[error("invalid window: {0}")]
    InvalidWindow(&'static str),

    /// A lattice step must divide N.
    #[error("invalid lattice step {step} for modulus {n}: step must divide N")]
    InvalidLattice { step: usize, n: usize },

    /// Mixed-norm exponents must lie in [1, inf].
    #[error("invalid exponent {0}: exponents must lie in [1, inf]")]
    InvalidExponent(f64),

    /// Amalgam block sizes must divide N.
    #[error("invalid block {block} for modulus {n}: block must divide N")]
    InvalidBlock { block: usize, n: usize },

    /// The Gabor system does not span; the frame operator is singular.
    #[error("not a frame: smallest frame-operator eigenvalue {min_eigenvalue:.3e}")]
    NotAFrame { min_eigenvalue: f64 },

    /// A numerical routine failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

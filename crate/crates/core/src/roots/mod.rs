//! Certified complex root enclosures.
//!
//! Ball arithmetic is done in-house on exact dyadic centers with
//! upward-rounded radii. Roots are approximated by Aberth–Ehrlich iteration
//! and each is certified by the disc of radius `n·|f(z)/f'(z)|` around the
//! approximation; pairwise disjoint discs each hold exactly one root.

mod ball;
mod isolate;

pub use ball::{ComplexBall, Dyadic, Mag};
pub use isolate::{
    isolate_roots, isolate_roots_with_ceiling, precision_ceiling, RootEnclosures,
    DEFAULT_PRECISION_CEILING, START_PRECISION,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    Constant,
    #[error("precision ceiling of {0} bits exceeded")]
    PrecisionCeiling(u32),
    #[error("self-reciprocal pairing still ambiguous at the precision ceiling")]
    PairingAmbiguous,
    #[error("internal error: {0}")]
    Internal(String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Newton iteration for a Legendre root hit the iteration cap.
    #[error(
        "Newton iteration for root {root} of P_{degree} did not converge in {iterations} steps"
    )]
    RootNotConverged {
        degree: usize,
        root: usize,
        iterations: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Nodes and points are not strictly interlaced; `position` indexes the
    /// merged sequence -1, mu_1, mu_{3/2}, ..., 1.
    #[error("mesh is not interlaced at merged position {position}")]
    NotInterlaced { position: usize },

    #[error("mesh carries no quadrature weights")]
    MissingWeights,

    #[error("points are not cumulative sums of the weights (cell {cell})")]
    NonCumulativePoints { cell: usize },

    #[error("diffusivity `{0}` does not vanish at both endpoints")]
    EndpointDiffusivity(String),

    #[error("first surrogate diffusivity value must be 0, got {0}")]
    NonzeroLeftAlpha(f64),

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
}

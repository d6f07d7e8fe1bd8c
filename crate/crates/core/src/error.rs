use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("k must be at least -1, got {0}")]
    InvalidK(i32),

    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<i32>, reason: &'static str },

    #[error("invalid marks {marks:?} for partition {parts:?}")]
    InvalidMarks { parts: Vec<i32>, marks: Vec<i32> },

    #[error("partition {0} is not regular")]
    NotRegular(String),

    #[error("partition {partition} has a part below k = {k}")]
    BelowK { partition: String, k: i32 },

    #[error("order is only defined within one degree ({0} vs {1})")]
    DegreeMismatch(i32, i32),

    #[error("index {index} is below the ambient minimum {min}")]
    IndexBelowMinimum { index: i32, min: i32 },

    #[error("cochain is not homogeneous")]
    NotHomogeneous,

    #[error("monomial {0} is not in the basis of the requested slice")]
    NotInSlice(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cochain is not a cocycle")]
    NotCocycle,

    #[error("classes live in different slices: {0}")]
    IncompatibleClasses(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("partition {0} is not dense")]
    NotDense(String),

    #[error("marked partition {0} is not regular")]
    SingularMarked(String),

    #[error("e-monomial of {0} vanishes")]
    VanishingMonomial(String),
}

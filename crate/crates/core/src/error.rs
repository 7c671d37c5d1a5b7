use alloc::string::String;

use crate::graded::Parity;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a graded space needs at least one generator")]
    EmptySpace,
    #[error("multi-index has {got} exponents, space has {expected} generators")]
    IndexLength { expected: usize, got: usize },
    #[error("odd generator w{generator} has exponent {exponent}, must be 0 or 1")]
    OddExponent { generator: usize, exponent: u32 },
    #[error("multi-index of weight 0 is not a monomial of the reduced coalgebra")]
    ZeroWeight,
    #[error("generator index {0} out of range")]
    Generator(usize),
    #[error("word has {word} letters but permutation has {perm} entries")]
    SizeMismatch { word: usize, perm: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("mixed degrees {0} and {1} in a homogeneous cochain")]
    MixedDegree(usize, usize),
    #[error("mixed parities {0} and {1} in a homogeneous cochain")]
    MixedParity(Parity, Parity),
    #[error("cochains live on different graded spaces")]
    SpaceMismatch,
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("expected an {expected} cochain")]
    WrongParity { expected: Parity },
    #[error("component of degree {degree} exceeds truncation {truncation}")]
    BeyondTruncation { degree: usize, truncation: usize },
    #[error("linear map is singular")]
    Singular,
    #[error("automorphism shape does not match the graded space")]
    AutomorphismShape,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("structure is not square-zero; [d,d] has a nonzero component in degree {degree}")]
    NotSquareZero { degree: usize },
    #[error("structure is zero; a leading term is required")]
    ZeroStructure,
    #[error("structure is not homogeneous")]
    NotHomogeneous,
    #[error("operation is only defined on the 1|2-dimensional space")]
    UnsupportedSpace,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("extension problem is inconsistent at degree {degree}")]
    InconsistentExtension { degree: usize },
    #[error("truncation {truncation} is too small to decide (need at least {needed})")]
    TruncationTooSmall { truncation: usize, needed: usize },
}

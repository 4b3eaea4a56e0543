use std::fmt;

/// Errors produced by the library.
///
/// Every fallible operation reports the precise precondition it rejected, so
/// callers (in particular the CLI) can surface the failing invariant verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bitstring text had the wrong number of binary digits.
    BitstringLength { expected: usize, found: usize },
    /// Bitstring text contained a character other than '0', '1', or an internal space.
    BitstringChar { ch: char },
    /// Ambient dimension outside the supported range 1..=64.
    AmbientDim { n: usize },
    /// Two values with different ambient dimensions were combined.
    AmbientDimMismatch { expected: usize, found: usize },
    /// A point set exceeded the 64-element capacity of a subset word.
    TooManyPoints { count: usize },
    /// The point at this index duplicates an earlier point.
    DuplicatePoint { index: usize },
    /// An affine map sent two distinct points of a set to the same image.
    NonInjectiveImage,
    /// A subset mask was built over a different universe size than expected.
    MaskUniverseMismatch { expected: usize, found: usize },
    /// A mask that must select only dependent elements touched a basis element.
    MaskTouchesBasis { index: usize },
    /// A rank-limited operation was asked to enumerate past its guard.
    RankGuard { rank: usize, limit: usize },
    /// The family passed as a Venn basis is linearly dependent under symmetric difference.
    DependentBasis,
    /// Matrix inversion was attempted on a singular matrix.
    Singular,
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// Matrix or rank orders disagree (e.g. witness order vs. diagram rank).
    OrderMismatch { left: usize, right: usize },
    /// The supplied matrix is not a valid witness between the two sets.
    InvalidWitness,
    /// An internal step that cannot fail for validated inputs did fail; indicates a bug.
    Internal(&'static str),
    /// Ambient dimension too large for exhaustive enumeration.
    AmbientTooLarge { n: usize, limit: usize },
    /// The set does not have size - dimension = 3.
    NotDiffThree { size: usize, dimension: i32 },
    /// Triple not given in ascending order a <= b <= c.
    UnorderedTriple { a: u32, b: u32, c: u32 },
    /// Triple fails the cap-class conditions.
    InvalidTriple { a: u32, b: u32, c: u32 },
    /// Requested cap size cannot be realized (a+b+c > k or k out of range).
    CapSize { k: u32 },
    /// Template expression referenced a basis index outside 1..=8.
    TemplateIndex { index: usize },
    /// Ambient dimension too small for the requested construction.
    AmbientTooSmall { n: usize, needed: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BitstringLength { expected, found } => {
                write!(f, "bitstring has {found} digits, expected {expected}")
            }
            Error::BitstringChar { ch } => {
                write!(f, "invalid bitstring character {ch:?}")
            }
            Error::AmbientDim { n } => {
                write!(f, "ambient dimension {n} outside supported range 1..=64")
            }
            Error::AmbientDimMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            Error::TooManyPoints { count } => {
                write!(f, "point set has {count} elements, more than the 64 supported")
            }
            Error::DuplicatePoint { index } => {
                write!(f, "duplicate point at index {index}")
            }
            Error::NonInjectiveImage => {
                write!(f, "map is not injective on the set: two points share an image")
            }
            Error::MaskUniverseMismatch { expected, found } => {
                write!(f, "subset mask universe {found} does not match {expected}")
            }
            Error::MaskTouchesBasis { index } => {
                write!(f, "mask selects basis element {index}; only dependent elements allowed")
            }
            Error::RankGuard { rank, limit } => {
                write!(f, "rank {rank} exceeds enumeration guard {limit}")
            }
            Error::DependentBasis => {
                write!(f, "family is linearly dependent under symmetric difference")
            }
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "order mismatch: {left} vs {right}")
            }
            Error::InvalidWitness => {
                write!(f, "matrix is not a cardinality-preserving witness for the two sets")
            }
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
            Error::AmbientTooLarge { n, limit } => {
                write!(f, "ambient dimension {n} exceeds exhaustive-search limit {limit}")
            }
            Error::NotDiffThree { size, dimension } => {
                write!(f, "set has size {size} and dimension {dimension}, not size-dimension difference 3")
            }
            Error::UnorderedTriple { a, b, c } => {
                write!(f, "triple ({a},{b},{c}) is not ascending")
            }
            Error::InvalidTriple { a, b, c } => {
                write!(f, "triple ({a},{b},{c}) is not a cap class")
            }
            Error::CapSize { k } => write!(f, "cap size {k} cannot be realized"),
            Error::TemplateIndex { index } => {
                write!(f, "template expression references basis index {index}, outside 1..=8")
            }
            Error::AmbientTooSmall { n, needed } => {
                write!(f, "ambient dimension {n} too small, need at least {needed}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

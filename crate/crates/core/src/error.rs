use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by lattice construction and the operations built on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// Gram matrix is not square or not symmetric; carries the first offending entry.
    NotSymmetric { row: usize, col: usize },
    /// Gram matrix has determinant zero.
    DegenerateLattice,
    /// Basis labels are not pairwise distinct or do not match the rank.
    BadLabels(String),
    /// A vector has the wrong length for its ambient lattice.
    DimensionMismatch { expected: usize, found: usize },
    /// Quadratic discriminant form requested on an odd lattice.
    ParityError,
    /// Divisibility of the zero vector.
    ZeroVector,
    /// Rescaling produced a non-integral entry.
    NotIntegral { row: usize, col: usize, numer: i128, denom: i128 },
    /// Input vectors are linearly dependent.
    DependentSpan,
    /// Enumeration requested on an indefinite form.
    IndefiniteLattice,
    /// A rational vector is not in the dual lattice.
    NotInDual,
    /// The norm-2 vectors do not span the lattice rationally.
    NotRootGenerated { root_rank: usize, rank: usize },
    /// A finite group is too large to enumerate.
    TooLarge { order: u128 },
    /// A glue subgroup is not isotropic; carries the offending element.
    NotIsotropic { element: Vec<i64> },
    /// Sublattices do not split the ambient lattice orthogonally.
    BadSplitting(String),
    /// The lattice is not even 2-elementary; carries the offending invariant factors.
    Not2Elementary { factors: Vec<i64> },
    /// Lattice is odd where an even lattice is required.
    NotEven,
    /// Complement signature would be negative.
    DoesNotFit,
    /// Unrecognised catalog name or family parameter.
    UnknownLattice(String),
    /// Discriminant outside the admissible set d > 6, d = 0, 2 mod 6.
    NotAHassettDiscriminant(i64),
    /// A decision procedure received an argument outside its domain.
    InvalidArgument(String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSymmetric { row, col } => {
                write!(f, "gram matrix is not symmetric at entry ({row}, {col})")
            }
            Self::DegenerateLattice => f.write_str("gram matrix is degenerate"),
            Self::BadLabels(msg) => write!(f, "bad basis labels: {msg}"),
            Self::DimensionMismatch { expected, found } => {
                write!(f, "vector has length {found}, expected {expected}")
            }
            Self::ParityError => f.write_str("odd lattices carry only a bilinear discriminant form"),
            Self::ZeroVector => f.write_str("divisibility of the zero vector is undefined"),
            Self::NotIntegral { row, col, numer, denom } => {
                write!(f, "rescaled entry ({row}, {col}) = {numer}/{denom} is not integral")
            }
            Self::DependentSpan => f.write_str("vectors are linearly dependent"),
            Self::IndefiniteLattice => f.write_str("lattice is indefinite"),
            Self::NotInDual => f.write_str("vector is not in the dual lattice"),
            Self::NotRootGenerated { root_rank, rank } => {
                write!(f, "roots span rank {root_rank}, lattice has rank {rank}")
            }
            Self::TooLarge { order } => write!(f, "group of order {order} is too large to enumerate"),
            Self::NotIsotropic { element } => write!(f, "element {element:?} is not isotropic"),
            Self::BadSplitting(msg) => write!(f, "bad splitting: {msg}"),
            Self::Not2Elementary { factors } => {
                write!(f, "discriminant group is not 2-elementary: factors {factors:?}")
            }
            Self::NotEven => f.write_str("lattice is odd"),
            Self::DoesNotFit => f.write_str("signature does not fit into the ambient signature"),
            Self::UnknownLattice(name) => write!(f, "unknown lattice `{name}`"),
            Self::NotAHassettDiscriminant(d) => {
                write!(f, "{d} is not an admissible discriminant (need d > 6, d = 0, 2 mod 6)")
            }
            Self::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for LatticeError {}

pub type Result<T, E = LatticeError> = core::result::Result<T, E>;

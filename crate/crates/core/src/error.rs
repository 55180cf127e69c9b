use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_error<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type `{0}` (expected A1.., B2.., C2.., D4.., E6-8, F4 or G2)")]
    InvalidCartanType(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("affine roots have nonzero gradient")]
    ZeroGradient,
    #[error("{0} is not an affine root of this system")]
    NotARoot(String),
    #[error("corrupted alcove: {0} vanishes at the interior point")]
    CorruptedAlcove(String),
    #[error("element is not in the affine Weyl group (it has a nontrivial length-0 part)")]
    NotInAffineWeyl,
    #[error("element is not fixed by the Galois action")]
    NotSigmaFixed,
    #[error("word is not reduced: the prefix of length {prefix} already fails length additivity")]
    NonReducedWord { prefix: usize },
    #[error("parabolic subset {0} generates an infinite group")]
    InfiniteParabolic(String),
    #[error("unknown wall `{0}`")]
    UnknownWall(String),
    #[error("lattice does not contain the coroot lattice")]
    LatticeTooSmall,
    #[error("lattice is not contained in the coweight lattice")]
    LatticeTooLarge,
    #[error("lattice is not stable under the Galois action")]
    LatticeNotStable,
    #[error("translation part {0} does not lie in the chosen lattice")]
    NotInLattice(String),
    #[error("Kottwitz class {0} has no transversal element in this group")]
    NoTransversal(String),
    #[error("not a diagram automorphism: {0}")]
    NotDiagramAutomorphism(String),
    #[error("restriction of {0} to the fixed apartment is constant")]
    ConstantRestriction(String),
    #[error("Galois action does not preserve integral levels (ramified descent is not supported)")]
    RamifiedLevels,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

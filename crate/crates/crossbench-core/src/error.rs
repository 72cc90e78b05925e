use alloc::string::String;

use crate::crossed::Flavor;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("row {row} of the multiplication table has {len} entries, expected {order}")]
    RaggedTable {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry {value} at row {row}, column {col} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    #[error("weight is not positive at element {0}")]
    NonPositiveWeight(usize),
    #[error("weight is not submultiplicative at ({0}, {1})")]
    NotSubmultiplicative(usize, usize),
    #[error("character vanishes at element {0}")]
    ZeroCharacter(usize),
    #[error("character is not multiplicative at ({0}, {1})")]
    NotMultiplicative(usize, usize),

    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    StructureNotAssociative(usize, usize, usize),
    #[error("norm is not submultiplicative on a sampled pair (excess {0:e})")]
    NormNotSubmultiplicative(f64),
    #[error("operator norm tag needs dimension n*n, found {0}")]
    NotSquareDimension(usize),
    #[error("declared identity fails its defining equation")]
    BadIdentity,

    #[error("action is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("action of element {0} is not multiplicative")]
    ActionNotMultiplicative(usize),
    #[error("action of element {0} is not invertible")]
    NotInvertible(usize),

    #[error("pi is not {flavor}-compatible at basis pair ({i}, {j})")]
    PiFlavor { flavor: Flavor, i: usize, j: usize },
    #[error("U is not {flavor}-compatible at group pair ({r}, {s})")]
    UFlavor { flavor: Flavor, r: usize, s: usize },
    #[error("U is not invertible at group element {0}")]
    UNotInvertible(usize),
    #[error("covariance law for {flavor} fails at basis element {a}, group element {r}")]
    CovarianceViolated { flavor: Flavor, a: usize, r: usize },
    #[error("pi and U do not commute at basis element {a}, group element {r}")]
    NotCommutingPair { a: usize, r: usize },
    #[error("table line {line} fails its own law: {source}")]
    LineViolated {
        line: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
    #[error("table line {line} is out of range 1..={max}")]
    LineOutOfRange { line: usize, max: usize },
    #[error("integrated form is not defined for flavor {0}; retype the pair first")]
    FlavorMismatch(Flavor),
    #[error("pair of flavor {flavor} cannot be retyped to {target}")]
    RetypeMismatch {
        flavor: Flavor,
        target: &'static str,
    },

    #[error("representation class is empty")]
    EmptyClass,
    #[error("direct sums need pairs normed by the same coordinate p-norm")]
    UnsupportedNorm,
    #[error("seminorm kernel is not a two-sided ideal (defect {0:e})")]
    KernelNotIdeal(f64),
    #[error("pair does not vanish on the seminorm kernel (defect {0:e})")]
    KernelNotRespected(f64),

    #[error("representation is not non-degenerate")]
    NotNonDegenerate,
    #[error("algebra lacks the required identity: {0}")]
    NoApproximateIdentity(&'static str),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("map is not {kind} at basis pair ({i}, {j})")]
    RepNotMultiplicative {
        kind: &'static str,
        i: usize,
        j: usize,
    },
    #[error("operator is not a left centralizer")]
    NotCentralizer,
    #[error("maps do not commute: {0}")]
    NotCommuting(String),
}

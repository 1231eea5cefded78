//! Finite monoids, posets and lattices.

mod babai_pultr;
mod lattice;
mod monoid;
mod poset;

pub use babai_pultr::{babai_pultr_monoid, BabaiPultrMonoid, BpKind, BpTransformation};
pub use lattice::{IdealLattice, JoinIrreducibles, Lattice, LinearExtension};
pub use monoid::{Monoid, MonoidPredicates};
pub use poset::Poset;

/// Default bound on monoid and ideal-lattice sizes.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("identity law fails at element {0}")]
    BadIdentity(usize),
    #[error("monoid is not commutative and idempotent")]
    NotCommutativeIdempotent,
    #[error("elements {0} and {1} have no join")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("not a linear extension: {0}")]
    NotLinearExtension(String),
    #[error("{what} has size {size}, above the cap {cap}")]
    SizeOverflow { what: &'static str, size: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("minimal generating set search too large for a monoid of size {0}")]
    GeneratorSearchTooLarge(usize),
}

//! Integral, twisted and mod-2 cohomology of the configuration spaces
//! F(Pᵐ,2) and B(Pᵐ,2), together with the machinery used to check the
//! closed forms independently: Smith normal form, presented 𝔽₂-algebras
//! with Sq¹, Bockstein rank counts and Cartan–Leray chart bookkeeping.

pub mod abelian;
pub mod bockstein;
pub mod clss;
pub mod configcoh;
pub mod f2;
pub mod f2algebra;
pub mod groupcoh;
pub mod report;
pub mod stiefel;

use num_bigint::BigInt;

pub use abelian::{AbGroup2, GradedGroups, Matrix};
pub use configcoh::{Space, SpaceId};
pub use groupcoh::{CoeffId, GroupId};
pub use report::{CheckStatus, VerificationReport};

/// Presentation matrices over arbitrary-precision integers.
pub type IntMatrix = Matrix<BigInt>;
/// Machine-word matrices, handy for small tests and oracles.
pub type SmallIntMatrix = Matrix<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invariant factor {0} has an odd prime divisor")]
    NonTwoPrimary(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("Sq1 does not preserve the ideal: Sq1 of relation {0} is not in the ideal")]
    IllDefinedDerivation(usize),
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("H^{q}(V_{{{n},2}}) is trivial, no action sign")]
    UnsupportedDegree { n: u32, q: u32 },
    #[error("rank recursion went negative at degree {0}")]
    InconsistentRecursion(usize),
    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("argument out of range: {0}")]
    RangeError(String),
    #[error("inconsistent orders: {0}")]
    InconsistentOrders(String),
}

pub type Result<T> = std::result::Result<T, Error>;

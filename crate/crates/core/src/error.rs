use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subgroup lattice of a group of order {order} exceeds the enumeration bound {bound}")]
    LatticeBound { order: u64, bound: u64 },

    #[error("{what} exceeds the oracle bound {bound}")]
    OracleBound { what: String, bound: u64 },

    #[error("permutation closure exceeded {bound} elements")]
    ClosureOverflow { bound: usize },

    #[error("invalid element {element:?} for moduli {moduli:?}")]
    InvalidElement { element: Vec<u64>, moduli: Vec<u64> },

    #[error("subgroup belongs to a different parent group")]
    MismatchedParent,

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("function `{0}` is not invertible: its value on the trivial group is 0")]
    NotInvertible(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no finite abelian group has element-order profile {0}")]
    NoMatchingType(String),

    #[error("operation needs a group of order at least 3, got order {0}")]
    UnsupportedOrder(u64),

    #[error("permutation is not an isometry modulo the subgroup")]
    NotIsometry,

    #[error("{h} does not divide {g}")]
    NotDivisible { g: u64, h: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by an explicit size or resource bound.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::LatticeBound { .. } | Error::OracleBound { .. } | Error::ClosureOverflow { .. }
        )
    }
}

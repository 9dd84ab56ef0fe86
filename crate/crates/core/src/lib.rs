//! Exact arithmetic on finite abelian groups.
//!
//! The crate is organised around a few layers:
//!
//! * [`group`]: isomorphism types of finite abelian groups in invariant-factor form.
//! * [`lattice`]: explicit models `Z_{m_1} x ... x Z_{m_k}`, their subgroup lattices and
//!   Smith normal form based structure computations.
//! * [`functions`]: the convolution algebra of functions defined on isomorphism types,
//!   with inversion, a builtin library (Möbius, Euler, generating-set counts) and
//!   restriction to arithmetic functions.
//! * [`counting`]: homomorphism, monomorphism and subgroup counts, order profiles.
//! * [`symgen`]: generation of the full symmetric group of `G` from the translations of `G`
//!   and a set of transpositions, and isometries modulo a subgroup.
//! * [`oracle`]: slow brute-force reference counts used for cross-validation.
//!
//! All values are exact: integers are arbitrary precision and scalars are rationals.

pub mod counting;
pub mod error;
pub mod functions;
pub mod group;
pub mod lattice;
pub mod oracle;
pub mod output;
pub mod primes;
pub mod symgen;
pub mod verify;

pub use error::{Error, Result};
pub use functions::{AbelianFunction, Algebra, ArithmeticFunction, ExactValue};
pub use group::{GroupType, PrimaryDecomposition};
pub use lattice::{ConcreteGroup, IntMatrix, Subgroup};

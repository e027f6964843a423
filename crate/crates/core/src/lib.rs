//! Valuated matroids and the cells of their Dressians.
//!
//! Everything here works with exact rationals. Subsets of the ground set
//! `{0, .., n-1}` are `u64` bit masks, and basis families are kept sorted in
//! colexicographic order, which for masks is plain numeric order.
//!
//! The main entry points:
//!
//! * [`Matroid`] with the exchange-axiom check, minors, duality and the
//!   Johnson-graph structure of its non-bases,
//! * [`Valuation`] with two independent validity checks, combinatorial types,
//!   shifts, residue matroids and contraction,
//! * [`cells`] for the linear hulls `L(Z)` and cell dimensions,
//! * [`tree`] for the rank-2 correspondence with metric trees,
//! * [`subdivision`] for the matroid subdivision induced by a valuation,
//! * [`bounds`] for closed-form bounds, lower-bound certificates and censuses.

pub mod bounds;
pub mod cells;
mod error;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod rational;
pub mod sample;
pub mod smooth;
pub mod subdivision;
pub mod subset;
pub mod symbol;
pub mod tree;
pub mod valuation;

pub use error::{Error, Result};
pub use matroid::{is_matroid, modular_stable_matroid, JohnsonComponentReport, Matroid, Minor};
pub use rational::ExtRational;
pub use subset::Set;
pub use symbol::{symbol_sets, CombinatorialType, Symbol, SymbolSets};
pub use valuation::Valuation;

pub use num::BigInt;
pub use num::BigRational;

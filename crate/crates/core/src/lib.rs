//! Exact search engine for sets of distinct nonzero integers whose pairwise
//! (or triple-wise) sums are perfect squares.
//!
//! - [`arith`]: square detection, factorization, sums of two squares, divisors.
//! - [`sets`]: the [`SquareSet`] model, pair/triple verifiers and the z-transform.
//! - [`search`]: constructive searches for n = 3, 4, 5, divisor-based extension
//!   and near-solution scans.
//! - [`quartic`]: square values of antisymmetric binary quartics, the
//!   four-square identity and the published record sets.
//! - [`prob`]: the positive-triple rarity estimate, closed form and Monte Carlo.

pub mod arith;
mod error;
pub mod prob;
pub mod quartic;
pub mod search;
pub mod sets;

pub use arith::Integer;
pub use error::{Error, Result};
pub use sets::{PairReport, SquareSet, TripleReport};

//! Exact integer kernels: square detection, integer square roots,
//! factorization, sums of two squares and divisor pairs.
//!
//! The public surface works on [`Integer`] (arbitrary precision). The `_u64` /
//! `_u128` / `_i128` variants are the machine-word fast paths used by the
//! search loops.

mod factor;
mod sqrt;
mod two_squares;

pub use factor::{
    divisor_pairs, divisors_from_u64_factors, factorize, factorize_u64, is_prime_u64, Factorization,
};
pub use sqrt::{
    is_square, isqrt, isqrt_u128, isqrt_u64, square_root, square_root_i128, square_root_u128,
};
pub use two_squares::{two_square_count, two_square_reps, TwoSquareRep};

/// Arbitrary-precision signed integer used for every exact value.
pub type Integer = num_bigint::BigInt;

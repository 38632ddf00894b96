use num_traits::{Signed, ToPrimitive, Zero};

use super::Integer;
use crate::error::{Error, Result};

const fn residue_table<const M: usize>() -> [bool; M] {
    let mut table = [false; M];
    let mut i = 0;
    while i < M {
        table[(i * i) % M] = true;
        i += 1;
    }
    table
}

static SQUARES_MOD_64: [bool; 64] = residue_table::<64>();
static SQUARES_MOD_63: [bool; 63] = residue_table::<63>();
static SQUARES_MOD_65: [bool; 65] = residue_table::<65>();
static SQUARES_MOD_11: [bool; 11] = residue_table::<11>();

/// 63 * 65 * 11
const ODD_MODULUS: u32 = 45045;

/// Quadratic-residue filter: false means `n` is certainly not a square.
/// Rejects all but about 0.5% of non-squares.
#[inline]
fn may_be_square(low_bits: u64, odd_residue: u32) -> bool {
    SQUARES_MOD_64[(low_bits & 63) as usize]
        && SQUARES_MOD_63[(odd_residue % 63) as usize]
        && SQUARES_MOD_65[(odd_residue % 65) as usize]
        && SQUARES_MOD_11[(odd_residue % 11) as usize]
}

/// Largest `m` with `m * m <= n`.
#[inline]
pub fn isqrt_u64(n: u64) -> u64 {
    isqrt_u128(n as u128) as u64
}

/// Largest `m` with `m * m <= n`.
#[inline]
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut root = (n as f64).sqrt() as u128;
    if n >= 1 << 104 {
        // f64 estimate is only good to ~2^-53 relative; one Newton step
        // lands at or just above the floor root.
        root = root.max(1);
        root = (root + n / root) / 2;
    }
    while root.checked_mul(root).is_none_or(|sq| sq > n) {
        root -= 1;
    }
    while (root + 1).checked_mul(root + 1).is_some_and(|sq| sq <= n) {
        root += 1;
    }
    root
}

/// Square root of `n` if `n` is a perfect square.
#[inline]
pub fn square_root_u128(n: u128) -> Option<u128> {
    if !may_be_square(n as u64, (n % ODD_MODULUS as u128) as u32) {
        return None;
    }
    let root = isqrt_u128(n);
    (root * root == n).then_some(root)
}

/// Square root of `n` if `n` is a perfect square; negatives are never squares.
#[inline]
pub fn square_root_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    square_root_u128(n as u128).map(|r| r as i128)
}

/// Largest `m` with `m² ≤ n`.
pub fn isqrt(n: &Integer) -> Result<Integer> {
    if n.is_negative() {
        return Err(Error::domain("isqrt", n, "n >= 0"));
    }
    Ok(match n.to_u128() {
        Some(small) => Integer::from(isqrt_u128(small)),
        None => n.sqrt(),
    })
}

/// Square root witness of `n`, or `None` when `n` is negative or not a square.
/// Zero is a square with root zero.
pub fn square_root(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some(Integer::zero());
    }
    if let Some(small) = n.to_u128() {
        return square_root_u128(small).map(Integer::from);
    }
    let magnitude = n.magnitude();
    let low_bits = magnitude.iter_u64_digits().next().unwrap_or(0);
    let odd_residue = (magnitude % ODD_MODULUS).to_u32().unwrap_or(0);
    if !may_be_square(low_bits, odd_residue) {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// True iff `n ≥ 0` and `n` is a perfect square.
pub fn is_square(n: &Integer) -> bool {
    square_root(n).is_some()
}

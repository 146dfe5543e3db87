//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// log2 of a positive big integer, for decimal annotations only.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        let v: u64 = x.iter_u64_digits().next().unwrap_or(0);
        return (v as f64).log2();
    }
    // top 64 bits as a float, plus the discarded exponent
    let shift = bits - 53;
    let top = x >> shift;
    let v: u64 = top.iter_u64_digits().next().unwrap_or(0);
    (v as f64).log2() + shift as f64
}

/// If `x` is an exact power of two, its exponent.
pub fn exact_power_of_two(x: &BigUint) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    if (x & (x - BigUint::one())).is_zero() {
        Some(x.bits() - 1)
    } else {
        None
    }
}

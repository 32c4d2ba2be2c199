//! Floating-point views of exact counts.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Natural logarithm of an exact count, computed from its top 64 bits so that
/// counts far beyond `f64` range keep full relative precision.
///
/// Returns `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `x^(1/n)` for an exact count, via [`ln_biguint`].
pub fn nth_root(x: &BigUint, n: usize) -> f64 {
    assert!(n > 0, "nth_root of order zero");
    (ln_biguint(x) / n as f64).exp()
}

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Path weights and per-length accumulators. `u128` is the fast path; its
/// operations report overflow so the caller can redo the run in `BigUint`.
pub(crate) trait Weight: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn scaled(&self, m: u32) -> Option<Self>;
    /// `self += other`; `false` on overflow.
    fn accumulate(&mut self, other: &Self) -> bool;
    fn into_big(self) -> BigUint;
}

impl Weight for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    #[inline]
    fn scaled(&self, m: u32) -> Option<Self> {
        if m == 1 {
            Some(*self)
        } else {
            self.checked_mul(m as u128)
        }
    }
    #[inline]
    fn accumulate(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(s) => {
                *self = s;
                true
            }
            None => false,
        }
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Weight for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn scaled(&self, m: u32) -> Option<Self> {
        Some(self * m)
    }
    fn accumulate(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn into_big(self) -> BigUint {
        self
    }
}

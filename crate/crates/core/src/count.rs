//! Exact counting scalars.
//!
//! Every counting routine in the crate is generic over [`Count`], a natural
//! number type supporting addition, subtraction of a smaller value and
//! multiplication. [`BigUint`] is the default; fixed-width integers are
//! accepted for speed and panic instead of wrapping when a value does not fit.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Zero};

pub trait Count:
    Clone
    + Debug
    + Display
    + Ord
    + Send
    + Sync
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + 'static
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count does not fit the scalar type")
    }

    fn add_exact(&self, other: &Self) -> Self {
        self.checked_add(other).expect("count overflow in addition")
    }

    /// `self - other`; callers guarantee `other <= self`.
    fn sub_exact(&self, other: &Self) -> Self {
        self.checked_sub(other)
            .expect("count underflow: subtrahend exceeds minuend")
    }

    fn mul_exact(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("count overflow in multiplication")
    }
}

impl Count for u32 {}
impl Count for u64 {}
impl Count for u128 {}
impl Count for BigUint {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ops_on_bigint() {
        let a = BigUint::from_count(u64::MAX);
        let b = a.mul_exact(&a);
        assert_eq!(b.sub_exact(&a), &a * (&a - 1u32));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn fixed_width_overflow_panics() {
        let _ = u32::MAX.add_exact(&1);
    }
}

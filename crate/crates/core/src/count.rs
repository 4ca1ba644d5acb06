// SPDX-License-Identifier: Apache-2.0

//! Exact scalar types used for path counts and probabilities.
//!
//! Every counting routine is generic over [`Count`], an unsigned exact
//! integer. `BigUint` is the default (see [`crate::BigCount`]); `u64` and
//! `u128` are available for hot loops where the caller knows the counts fit.
//! Multiplications that feed comparisons go through [`mul_exact`], which
//! panics instead of wrapping if a fixed-width type overflows.

use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_bigint::{BigUint, ToBigUint};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, ToPrimitive, Unsigned};

/// An exact unsigned integer type usable as a path count.
pub trait Count:
    Clone
    + Ord
    + Debug
    + Display
    + Send
    + Sync
    + Unsigned
    + Integer
    + AddAssign
    + CheckedAdd
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + ToBigUint
    + 'static
{
    /// Lossless conversion from a machine count.
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits every Count type")
    }

    fn to_big(&self) -> BigUint {
        self.to_biguint().expect("unsigned count converts to BigUint")
    }
}

impl<T> Count for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Send
        + Sync
        + Unsigned
        + Integer
        + AddAssign
        + CheckedAdd
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + ToBigUint
        + 'static
{
}

/// `a * b`, panicking on fixed-width overflow rather than wrapping.
pub fn mul_exact<C: Count>(a: &C, b: &C) -> C {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("count overflow computing {a} * {b}; use BigUint counts"))
}

/// `a + b`, panicking on fixed-width overflow.
pub fn add_exact<C: Count>(a: &C, b: &C) -> C {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("count overflow computing {a} + {b}; use BigUint counts"))
}

/// Binomial coefficient C(n, 2) as an exact count.
pub fn choose2<C: Count>(n: u64) -> C {
    let n = C::from_u64(n).expect("u64 fits every Count type");
    if n < C::one() + C::one() {
        return C::zero();
    }
    let m = n.clone() - C::one();
    mul_exact(&n, &m) / (C::one() + C::one())
}

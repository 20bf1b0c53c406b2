//! Integer scalars used for coordinates and component counts.
//!
//! Everything in this crate is exact: arithmetic goes through the checked
//! helpers on [`Exact`], so an overflow surfaces as an [`Overflow`] error
//! instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{FromPrimitive, PrimInt, Signed, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A signed machine integer usable as a coordinate entry or count.
///
/// Implemented for `i32`, `i64` and `i128`; the crate-root aliases fix it to
/// `i64`.
pub trait Scalar:
    PrimInt
    + Signed
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Display
    + Debug
    + Hash
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: PrimInt
        + Signed
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Display
        + Debug
        + Hash
        + Default
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow")]
pub struct Overflow;

/// Checked arithmetic on [`Scalar`] values.
pub trait Exact: Copy {
    fn plus(self, rhs: Self) -> Result<Self, Overflow>;
    fn minus(self, rhs: Self) -> Result<Self, Overflow>;
    fn times(self, rhs: Self) -> Result<Self, Overflow>;
    fn magnitude(self) -> Result<Self, Overflow>;
    /// `self / 2` when `self` is even.
    fn halved(self) -> Option<Self>;
    fn doubled(self) -> Result<Self, Overflow>;
    fn is_even(self) -> bool;
}

impl<S: Scalar> Exact for S {
    fn plus(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_add(&rhs).ok_or(Overflow)
    }

    fn minus(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_sub(&rhs).ok_or(Overflow)
    }

    fn times(self, rhs: Self) -> Result<Self, Overflow> {
        self.checked_mul(&rhs).ok_or(Overflow)
    }

    fn magnitude(self) -> Result<Self, Overflow> {
        if self < S::zero() {
            S::zero().minus(self)
        } else {
            Ok(self)
        }
    }

    fn halved(self) -> Option<Self> {
        self.is_even().then(|| self / two())
    }

    fn doubled(self) -> Result<Self, Overflow> {
        self.plus(self)
    }

    fn is_even(self) -> bool {
        (self % two()).is_zero()
    }
}

pub(crate) fn two<S: Scalar>() -> S {
    S::one() + S::one()
}

/// Sum of a sequence of scalars, checked.
pub(crate) fn sum<S: Scalar>(terms: impl IntoIterator<Item = S>) -> Result<S, Overflow> {
    terms.into_iter().try_fold(S::zero(), |acc, x| acc.plus(x))
}

//! Exact scalars: rationals, sparse multivariate polynomials, rational
//! functions, and prime fields.
//!
//! Everything that the linear algebra and the algebra code is generic over
//! goes through the [`Field`] trait.

pub(crate) mod fp;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use fp::Fp;
pub use poly::{Monomial, Poly, Var};
pub use ratfunc::RationalFunction;
pub use rational::Rational;

/// Exact field arithmetic.
///
/// Implementations must be exact: `is_zero` is decidable and `inv` succeeds
/// on every nonzero element.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.clone() * inv)
    }
}

/// Fields containing the rationals.
pub trait FromRational: Field {
    fn from_rational(q: &Rational) -> Self;
}

impl FromRational for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl FromRational for RationalFunction {
    fn from_rational(q: &Rational) -> Self {
        RationalFunction::constant(q.clone())
    }
}

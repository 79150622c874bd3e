use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::GaussianRational;

/// The scalar interface shared by `Q(i)` and `Q(i)(ξ)`.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_gaussian(c: &GaussianRational) -> Self;

    /// Multiplication by a constant; implementors may do better than
    /// promoting `c` into the field.
    fn scale(&self, c: &GaussianRational) -> Self {
        self.clone() * Self::from_gaussian(c)
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn from_gaussian(c: &GaussianRational) -> Self {
        c.clone()
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        self * c
    }
}

//! Scalar abstractions shared by the polynomial and linear-algebra code.
//!
//! Symbolic routes always instantiate these with [`crate::Rational`]; the
//! floating point instantiations exist for quick numeric evaluation only.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, Signed};

/// A commutative ring with unit that polynomial coefficients live in.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> {}

/// An ordered field. Division is exact for the rational instantiation.
pub trait Field: Scalar + Signed + PartialOrd {}

impl<T> Field for T where T: Scalar + Signed + PartialOrd {}

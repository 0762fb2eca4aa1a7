//! Field abstraction letting the curve machinery run over Q and over
//! Q(zeta_5) with one implementation.

use crate::arith::BigRational;
use crate::cyclo::CycloElement;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait CurveField:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    /// Exact square root when one exists in the field.
    fn try_sqrt(&self) -> Option<Self>;
}

impl CurveField for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from(BigInt::from(n))
    }

    fn try_sqrt(&self) -> Option<Self> {
        crate::cyclo::rational_sqrt_pub(self)
    }
}

impl CurveField for CycloElement {
    fn from_i64(n: i64) -> Self {
        CycloElement::from_rational(BigRational::from(BigInt::from(n)))
    }

    fn try_sqrt(&self) -> Option<Self> {
        self.sqrt()
    }
}

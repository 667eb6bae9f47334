//! Numeric traits the crate is generic over.
//!
//! The combinatorial layer (dominance, Pareto sets, scalarization, hulls) only
//! needs ordered field arithmetic and works with exact rationals. Everything
//! that touches eigenvalues or exponentials needs a floating-point [`Real`].

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field element usable for objective values and weights.
pub trait Scalar:
    Num
    + Signed
    + Copy
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal (tolerances, constants) into this type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("scalar literal out of range")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }

    fn is_finite_value(self) -> bool;

    /// Slack allowed when checking that weights sum to one.
    fn sum_tolerance() -> Self;

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f32 {
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn sum_tolerance() -> Self {
        1e-6
    }
}

impl Scalar for f64 {
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn sum_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for Ratio<i64> {
    fn is_finite_value(self) -> bool {
        true
    }
    fn sum_tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

impl Scalar for Ratio<i128> {
    fn is_finite_value(self) -> bool {
        true
    }
    fn sum_tolerance() -> Self {
        Ratio::from_integer(0)
    }
}

/// Floating-point scalar: f32 or f64.
pub trait Real: Scalar + Float {}

impl Real for f32 {}
impl Real for f64 {}

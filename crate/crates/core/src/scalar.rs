//! The coefficient ring interface shared by the evaluation-point and
//! power-series backends.

use std::fmt::Debug;

use num_traits::Zero;

use crate::error::Result;
use crate::rational::{int, Rational};

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn mul_rational(&self, r: &Rational) -> Self;
    fn vanishes(&self) -> bool;
}

/// Supplies constants and the per-root weights `t (1 + q^beta) / (1 - q^beta)`
/// for one root system.
pub trait Backend: Sync {
    type Scalar: Scalar;

    fn zero(&self) -> Self::Scalar;
    fn one(&self) -> Self::Scalar;
    fn rational(&self, r: &Rational) -> Self::Scalar;
    /// `t^k`.
    fn t_pow(&self, k: i32) -> Result<Self::Scalar>;
    /// The weight of the positive root with index `idx` in
    /// [`crate::RootSystem::positive_roots`].
    fn root_weight(&self, idx: usize) -> &Self::Scalar;
    /// Number of simple roots this backend was prepared for.
    fn rank(&self) -> usize;
}

impl Scalar for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul_int(&self, k: i64) -> Self {
        self * int(k)
    }

    fn mul_rational(&self, r: &Rational) -> Self {
        self * r
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

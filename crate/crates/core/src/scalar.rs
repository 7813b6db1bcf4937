//! Field of values used by group functions: exact cyclotomic or `f64` complex.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclo;

pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self> + Send + Sync
{
    /// Whether arithmetic in this type is exact; exact comparisons ignore tolerances.
    const EXACT: bool;

    fn from_cyclo(c: &Cyclo) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_i64(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;

    /// Equality up to `tol` in absolute value; exact types compare exactly.
    fn is_close(&self, other: &Self, tol: f64) -> bool;

    fn abs_diff(&self, other: &Self) -> f64 {
        (self.to_c64() - other.to_c64()).norm()
    }
}

impl Scalar for Cyclo {
    const EXACT: bool = true;

    fn from_cyclo(c: &Cyclo) -> Self {
        c.clone()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Cyclo::from_ratio(num, den)
    }
    fn conj(&self) -> Self {
        Cyclo::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        Cyclo::to_c64(self)
    }
    fn is_close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn abs_diff(&self, other: &Self) -> f64 {
        if self == other {
            0.0
        } else {
            (self.to_c64() - other.to_c64()).norm().max(f64::MIN_POSITIVE)
        }
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_cyclo(c: &Cyclo) -> Self {
        c.to_c64()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn is_close(&self, other: &Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
}

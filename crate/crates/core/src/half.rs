//! Exact half-integers.
//!
//! Every coordinate in this crate that lives in `Z + 1/2` (particle
//! positions, interlacing times) or in `Z/2` (tile heights) is stored as its
//! double, so comparisons stay exact.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A number of the form `k/2`, stored as `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(pub i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub fn from_doubled(doubled: i64) -> Self {
        Half(doubled)
    }

    /// `k + 1/2`.
    pub fn plus_half(k: i64) -> Self {
        Half(2 * k + 1)
    }

    pub fn from_int(k: i64) -> Self {
        Half(2 * k)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_half_odd(self) -> bool {
        self.0.rem_euclid(2) == 1
    }

    pub fn is_integer(self) -> bool {
        self.0.rem_euclid(2) == 0
    }

    /// Checks membership in `Z + 1/2`.
    pub fn half_odd(self) -> Result<Self> {
        if self.is_half_odd() {
            Ok(self)
        } else {
            Err(Error::NotHalfOdd(self.0))
        }
    }

    /// The exact integer value, if any.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// `x - 1/2` for `x` in `Z + 1/2`; the index of the sector `(x-1/2, x+1/2)`.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Rounds an `f64` that is exactly representable as `k/2`.
    pub fn from_f64(x: f64) -> Option<Self> {
        let d = 2.0 * x;
        (d.fract() == 0.0 && d.is_finite()).then_some(Half(d as i64))
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

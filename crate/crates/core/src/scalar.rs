//! Scalar abstraction shared by every algorithm in the crate.
//!
//! All sign decisions are made with the ordering of the scalar type itself, so
//! they are exact for [`BigRational`] and only as reliable as rounding allows for
//! the float impls.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

/// A field element with a total-enough order to decide signs.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// `num / den` in this scalar type. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Whether arithmetic on this type is exact.
    fn is_exact() -> bool;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// Strictly greater than zero. `Signed::is_positive` counts `+0.0` as
    /// positive for floats, so the crate uses this instead.
    fn is_pos(&self) -> bool {
        *self > Self::zero()
    }

    fn is_neg(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }

    fn is_exact() -> bool {
        false
    }
}

/// Sign of a nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn of<T: Scalar>(v: &T) -> Option<Sign> {
        if v.is_pos() {
            Some(Sign::Plus)
        } else if v.is_neg() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^(i-1)` for a 1-based position `i`.
    pub fn alternating(i: usize) -> Sign {
        if i % 2 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_from_ratio_is_reduced() {
        let r = BigRational::from_ratio(6, -4);
        assert_eq!(r, BigRational::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::of(&BigRational::from_int(-2)), Some(Sign::Minus));
        assert_eq!(Sign::of(&0.0f64), None);
        assert_eq!(Sign::of(&-0.0f64), None);
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::alternating(1), Sign::Plus);
        assert_eq!(Sign::alternating(4), Sign::Minus);
    }
}

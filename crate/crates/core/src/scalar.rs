//! Exact scalar fields used for explicit quiver representations.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A field with exact equality, so that zero tests during elimination are
/// decisions rather than tolerances.
///
/// Implemented for every `Ratio<I>` (`Rational64`, `BigRational`, ...).
/// Floating point types deliberately do not implement it.
pub trait ExactField: Num + Neg<Output = Self> + Clone + Debug + PartialEq {
    fn from_i64(v: i64) -> Self;
}

impl<I> ExactField for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + TryFrom<i64>,
{
    fn from_i64(v: i64) -> Self {
        match I::try_from(v) {
            Ok(i) => Ratio::from_integer(i),
            Err(_) => panic!("{v} does not fit the backing integer type"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn embeds_integers() {
        assert_eq!(Rational64::from_i64(-7), Rational64::from_integer(-7));
        assert_eq!(
            BigRational::from_i64(i64::MAX),
            BigRational::from_integer(BigInt::from(i64::MAX))
        );
        assert_eq!(
            BigRational::from_i64(i64::MIN + 1),
            BigRational::from_integer(BigInt::from(i64::MIN + 1))
        );
    }
}

//! Scalar abstraction shared by the recurrences and the oracle.
//!
//! Every algorithm in this crate is written once against [`Scalar`]. The
//! exact instantiation (`BigRational`) is the one the verification suite and
//! the CLI rely on; `f64`/`f32` are provided for quick approximate sweeps.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

/// Field-like number type the moment machinery can run on.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    /// Whether arithmetic on this type is exact (no rounding).
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_big(v: &BigInt) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    fn powi(&self, exp: i64) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * self.clone();
        }
        if exp < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_big(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn powi(&self, exp: i64) -> Self {
        if self.is_zero() && exp < 0 {
            panic!("zero raised to a negative power");
        }
        let exp = i32::try_from(exp).expect("exponent fits in i32");
        num_traits::Pow::pow(self, exp)
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            const EXACT: bool = false;

            fn from_int(v: i64) -> Self {
                v as $f
            }

            fn from_big(v: &BigInt) -> Self {
                v.to_f64().map(|x| x as $f).unwrap_or(<$f>::INFINITY)
            }

            fn powi(&self, exp: i64) -> Self {
                <$f>::powi(*self, exp as i32)
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

/// Exact rational from an integer, shorthand used throughout tests and the CLI.
pub fn rational(num: i64, den: i64) -> BigRational {
    <BigRational as Scalar>::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn powi_negative_exponent() {
        let half = rational(1, 2);
        assert_eq!(half.powi(-3), rational(8, 1));
        assert_eq!(half.powi(0), rational(1, 1));
        assert_eq!(2.0f64.powi(-2), 0.25);
        assert_eq!(<f32 as Scalar>::powi(&3.0, 2), 9.0);
    }

    #[test]
    fn big_conversion_to_float() {
        let big = BigInt::from(1u64 << 40);
        assert_eq!(<f64 as Scalar>::from_big(&big), (1u64 << 40) as f64);
        assert!(<BigRational as Scalar>::from_big(&BigInt::from(1)).is_one());
    }
}

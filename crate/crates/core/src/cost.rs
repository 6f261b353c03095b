//! Exact rational costs. Every comparison made by the solvers is exact;
//! floating point never enters the picture.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Cost = BigRational;

/// Shorthand for building a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Cost {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Cost {
    Cost::zero()
}

pub fn one() -> Cost {
    Cost::one()
}

/// Sum of an iterator of rationals.
pub fn total<'a, I: IntoIterator<Item = &'a Cost>>(costs: I) -> Cost {
    costs.into_iter().fold(Cost::zero(), |acc, c| acc + c)
}

/// Renders `p/q` in the canonical sign form used by the text formats
/// (denominator always positive).
pub fn display(c: &Cost) -> String {
    let c = c.reduced();
    if c.denom().is_negative() {
        format!("{}/{}", -c.numer(), -c.denom())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

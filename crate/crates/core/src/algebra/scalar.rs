//! Exact rational coefficients.
//!
//! Every coefficient in the crate is a [`Scalar`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. Nothing is ever
//! rounded, so divisions by 2, 4 or 8 in the closed formulas either produce an
//! integer or a visible fraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Scalar = BigRational;

pub fn int(n: impl Into<BigInt>) -> Scalar {
    Scalar::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Scalar {
    Scalar::new(num.into(), den.into())
}

/// The integer value of `s`, if its denominator is 1.
pub fn to_integer(s: &Scalar) -> Option<BigInt> {
    s.is_integer().then(|| s.to_integer())
}

/// Formats a scalar as `n` or `n/d`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..k {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let s = ratio(6, -4);
        assert_eq!(*s.numer(), BigInt::from(-3));
        assert_eq!(*s.denom(), BigInt::from(2));
        assert_eq!(format_scalar(&s), "-3/2");
        assert_eq!(to_integer(&s), None);
        assert_eq!(to_integer(&ratio(8, 4)), Some(BigInt::from(2)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(3, 0), int(1));
        assert_eq!(binomial(3, 3), int(1));
    }

    proptest! {
        #[test]
        fn reciprocal_product_is_exactly_one(
            a in (-10_000i64..10_000).prop_filter("nonzero", |v| *v != 0),
            b in (-10_000i64..10_000).prop_filter("nonzero", |v| *v != 0),
        ) {
            let x = ratio(a, b);
            let y = ratio(b, a);
            prop_assert_eq!(x * y, Scalar::one());
        }
    }
}

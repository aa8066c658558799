use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for `numer/denom` as a [`Rational`]. Panics on a zero denominator.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let invalid = || Error::Invalid(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| invalid())?;
            let q: BigInt = q.trim().parse().map_err(|_| invalid())?;
            if q == BigInt::from(0) {
                return Err(invalid());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| invalid())?)),
    }
}

/// Binomial coefficient `C(n, k)` as a `u64`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    proptest! {
        #[test]
        fn reciprocal_product_is_one(p in -1000i64..1000, q in 1i64..1000) {
            prop_assume!(p != 0);
            let a = rational(p, q);
            let b = rational(q, p);
            prop_assert!((&a * &b).is_one());
            // normalisation is idempotent and keeps the denominator positive
            let r = Rational::new(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(&r, &a);
            prop_assert!(r.denom() > &BigInt::zero());
            prop_assert_eq!(parse_rational(&a.to_string()).unwrap(), a);
        }
    }
}

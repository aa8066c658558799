//! Truncated power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_rational, Rational};
use crate::{Error, Result};

/// Power series `c_0 + c_1 t + ... + c_order t^order`; higher terms are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSeries {
    coeffs: Vec<Rational>,
}

impl GradedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from its coefficient list; the order is `len - 1`.
    ///
    /// Panics on an empty list.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_integers<I: Into<BigInt> + Copy>(coeffs: &[I]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Polynomial truncated or zero-padded to `order`.
    pub fn from_poly(poly: &[Rational], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in poly.iter().take(order + 1).enumerate() {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_poly(&self.coeffs, order)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Coefficients as integers, if all of them are integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Index of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{magnitude}*{power}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl Serialize for GradedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for GradedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("empty series"));
        }
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { coeffs })
    }
}

/// Cauchy product truncated to the common order.
pub fn series_mul(a: &GradedSeries, b: &GradedSeries) -> Result<GradedSeries> {
    a.check_order(b)?;
    let order = a.order();
    let mut out = GradedSeries::zero(order);
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=order - i].iter().enumerate() {
            if !y.is_zero() {
                out.coeffs[i + j] += x * y;
            }
        }
    }
    Ok(out)
}

/// The factor `(1 - t^degree)^multiplicity` of a denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenomFactor {
    pub degree: usize,
    pub multiplicity: usize,
}

impl DenomFactor {
    pub fn new(degree: usize, multiplicity: usize) -> Self {
        Self {
            degree,
            multiplicity,
        }
    }
}

/// Expands `numer / prod (1 - t^d)^m` up to `order`.
///
/// Division by `1 - t^d` is a strided running sum, so the result is exact.
pub fn rational_fn_expand(
    numer: &[BigInt],
    denom: &[DenomFactor],
    order: usize,
) -> Result<GradedSeries> {
    if denom.iter().any(|f| f.degree == 0 && f.multiplicity > 0) {
        return Err(Error::ZeroConstantTerm);
    }
    let mut coeffs: Vec<Rational> = (0..=order)
        .map(|k| {
            numer
                .get(k)
                .map(|c| Rational::from_integer(c.clone()))
                .unwrap_or_else(Rational::zero)
        })
        .collect();
    for factor in denom {
        for _ in 0..factor.multiplicity {
            for k in factor.degree..=order {
                let prev = coeffs[k - factor.degree].clone();
                coeffs[k] += prev;
            }
        }
    }
    Ok(GradedSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn display() {
        assert_eq!(GradedSeries::from_integers(&[1, 0, 3, -1, 1]).to_string(), "1 + 3*t^2 - t^3 + t^4 + O(t^5)");
        assert_eq!(GradedSeries::from_integers(&[0, -2]).to_string(), "-2*t + O(t^2)");
        assert_eq!(GradedSeries::zero(2).to_string(), "0 + O(t^3)");
    }

    #[test]
    fn difference_of_squares() {
        let a = GradedSeries::from_integers(&[1, 1, 0, 0]);
        let b = GradedSeries::from_integers(&[1, -1, 0, 0]);
        assert_eq!(a.mul(&b).unwrap(), GradedSeries::from_integers(&[1, 0, -1, 0]));
    }

    #[test]
    fn identity_product() {
        let s = GradedSeries::from_integers(&[3, -1, 4, 1, 5]);
        assert_eq!(s.mul(&GradedSeries::one(4)).unwrap(), s);
    }

    #[test]
    fn geometric_times_one_minus_t() {
        // direct convolution by hand: sum_k t^k times (1 - t)
        let order = 8;
        let geom = GradedSeries::from_integers(&vec![1; order + 1]);
        let one_minus_t = GradedSeries::from_poly(&[Rational::one(), -Rational::one()], order);
        assert_eq!(geom.mul(&one_minus_t).unwrap(), GradedSeries::one(order));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = GradedSeries::one(3);
        let b = GradedSeries::one(4);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn expand_geometric() {
        let s = rational_fn_expand(&ints(&[1]), &[DenomFactor::new(1, 1)], 3).unwrap();
        assert_eq!(s, GradedSeries::from_integers(&[1, 1, 1, 1]));
    }

    #[test]
    fn expand_two_three() {
        // monomials u^a v^b with 2a + 3b = m, counted by hand for m = 0..6
        let counts: Vec<i64> = (0..=6)
            .map(|m| (0..=m / 2).filter(|a| (m - 2 * a) % 3 == 0).count() as i64)
            .collect();
        assert_eq!(counts, vec![1, 0, 1, 1, 1, 1, 2]);
        let s = rational_fn_expand(
            &ints(&[1]),
            &[DenomFactor::new(2, 1), DenomFactor::new(3, 1)],
            6,
        )
        .unwrap();
        assert_eq!(s, GradedSeries::from_integers(&counts));
    }

    #[test]
    fn expand_one_plus_t_over_one_minus_t() {
        // (1 - t^2)/(1 - t)^2 = (1 + t)/(1 - t): convolve 1 + t with the geometric series
        let order = 3;
        let conv = GradedSeries::from_integers(&[1, 1, 0, 0])
            .mul(&GradedSeries::from_integers(&[1, 1, 1, 1]))
            .unwrap();
        let s = rational_fn_expand(&ints(&[1, 0, -1]), &[DenomFactor::new(1, 2)], order).unwrap();
        assert_eq!(s, conv);
        assert_eq!(s, GradedSeries::from_integers(&[1, 2, 2, 2]));
    }

    #[test]
    fn zero_constant_term_rejected() {
        assert_eq!(
            rational_fn_expand(&ints(&[1]), &[DenomFactor::new(0, 1)], 3),
            Err(Error::ZeroConstantTerm)
        );
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = GradedSeries> {
        prop::collection::vec(-20i64..20, order + 1).prop_map(|v| GradedSeries::from_integers(&v))
    }

    proptest! {
        #[test]
        fn mul_commutative_and_associative(
            a in series_strategy(6), b in series_strategy(6), c in series_strategy(6)
        ) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn expansion_times_denominator_recovers_numerator(
            numer in prop::collection::vec(-5i64..5, 1..5),
            degrees in prop::collection::vec(1usize..4, 1..4),
        ) {
            let order = 10;
            let factors: Vec<_> = degrees.iter().map(|&d| DenomFactor::new(d, 1)).collect();
            let expanded = rational_fn_expand(&ints(&numer), &factors, order).unwrap();
            let mut denom = GradedSeries::one(order);
            for &d in &degrees {
                let mut f = vec![Rational::one()];
                f.resize(d + 1, Rational::zero());
                f[d] = -Rational::one();
                denom = denom.mul(&GradedSeries::from_poly(&f, order)).unwrap();
            }
            let numer_series = GradedSeries::from_poly(
                &numer.iter().map(|&c| Rational::from_integer(c.into())).collect::<Vec<_>>(),
                order,
            );
            prop_assert_eq!(expanded.mul(&denom).unwrap(), numer_series);
        }
    }
}

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::CyclotomicNumber;
use super::linalg;
use super::rational::{parse_rational, Rational};
use super::series::GradedSeries;
use crate::{Error, Result};

/// Square matrix over a single cyclotomic field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    dim: usize,
    conductor: u32,
    entries: Vec<CyclotomicNumber>,
}

impl CycMatrix {
    pub fn from_rows(conductor: u32, rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            for e in row {
                if !conductor.is_multiple_of(e.conductor()) {
                    return Err(Error::ConductorMismatch(conductor, e.conductor()));
                }
                entries.push(if e.conductor() == conductor {
                    e
                } else {
                    e.embed(conductor)
                });
            }
        }
        Ok(Self {
            dim,
            conductor,
            entries,
        })
    }

    pub fn identity(conductor: u32, dim: usize) -> Self {
        Self::diagonal(conductor, vec![CyclotomicNumber::one(conductor); dim])
    }

    pub fn diagonal(conductor: u32, diag: Vec<CyclotomicNumber>) -> Self {
        let dim = diag.len();
        let mut entries = vec![CyclotomicNumber::zero(conductor); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self {
            dim,
            conductor,
            entries,
        }
    }

    /// `diag(zeta^w_1, ..., zeta^w_k)` in `Q(zeta_conductor)`.
    pub fn diagonal_roots(conductor: u32, exponents: &[i64]) -> Self {
        Self::diagonal(
            conductor,
            exponents
                .iter()
                .map(|&e| CyclotomicNumber::zeta_pow(conductor, e))
                .collect(),
        )
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        let dim = self.dim + other.dim;
        let mut entries = vec![CyclotomicNumber::zero(self.conductor); dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i * dim + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                entries[(self.dim + i) * dim + self.dim + j] = other.get(i, j).clone();
            }
        }
        Self {
            dim,
            conductor: self.conductor,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.entries.chunks(self.dim.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.conductor, other.conductor);
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicNumber::zero(self.conductor);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Self {
            dim: n,
            conductor: self.conductor,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Self {
            dim: n,
            conductor: self.conductor,
            entries,
        }
    }

    pub fn conjugate_transpose(&self) -> Self {
        let t = self.transpose();
        Self {
            entries: t.entries.iter().map(CyclotomicNumber::conj).collect(),
            ..t
        }
    }

    pub fn trace(&self) -> CyclotomicNumber {
        (0..self.dim).fold(CyclotomicNumber::zero(self.conductor), |acc, i| {
            &acc + self.get(i, i)
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// `M M^* = 1` for the standard Hermitian form.
    pub fn is_unitary(&self) -> bool {
        self.mul(&self.conjugate_transpose()).is_identity()
    }

    pub fn determinant(&self) -> CyclotomicNumber {
        if self.dim == 0 {
            return CyclotomicNumber::one(self.conductor);
        }
        linalg::determinant(self.rows(), &CyclotomicNumber::one(self.conductor))
    }

    /// Inverse by Gauss-Jordan elimination on `[M | 1]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let zero = CyclotomicNumber::zero(self.conductor);
        let one = CyclotomicNumber::one(self.conductor);
        let rows: Vec<Vec<_>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
                row
            })
            .collect();
        let (reduced, pivots) = linalg::rref(rows);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        let entries = reduced.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(Self {
            dim: n,
            conductor: self.conductor,
            entries,
        })
    }

    /// Smallest `k >= 1` with `M^k = 1`, searching up to `bound`.
    pub fn multiplicative_order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Coefficients of `1 / det(1 - tM)` up to `order`, kept in `Q(zeta_N)`.
    ///
    /// Uses `exp(sum_k tr(M^k) t^k / k)`, evaluated by the Newton recurrence
    /// `k h_k = sum_{i=1..k} tr(M^i) h_{k-i}`.
    pub fn inverse_char_series(&self, order: usize) -> Result<Vec<CyclotomicNumber>> {
        if self.determinant().is_zero() {
            return Err(Error::NotInvertible);
        }
        let mut traces = Vec::with_capacity(order + 1);
        traces.push(CyclotomicNumber::zero(self.conductor));
        let mut power = self.clone();
        for _ in 1..=order {
            traces.push(power.trace());
            power = power.mul(self);
        }
        let mut h = vec![CyclotomicNumber::one(self.conductor)];
        for k in 1..=order {
            let mut acc = CyclotomicNumber::zero(self.conductor);
            for i in 1..=k {
                if !traces[i].is_zero() && !h[k - i].is_zero() {
                    acc = &acc + &(&traces[i] * &h[k - i]);
                }
            }
            h.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
        }
        Ok(h)
    }
}

/// JSON form: `{"conductor": N, "coeffs": [[entry, ...], ...]}` where an entry
/// is a rational string `"p/q"` or the list of its coordinates in the basis
/// `1, zeta_N, zeta_N^2, ...`.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    conductor: u32,
    coeffs: Vec<Vec<EntryRepr>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Rational(String),
    Power(Vec<String>),
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| match x.to_rational() {
                        Some(r) => EntryRepr::Rational(r.to_string()),
                        None => EntryRepr::Power(x.coeffs().iter().map(|c| c.to_string()).collect()),
                    })
                    .collect()
            })
            .collect();
        MatrixRepr {
            conductor: self.conductor,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let parse = |s: &String| parse_rational(s).map_err(D::Error::custom);
        let rows = repr
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| match entry {
                        EntryRepr::Rational(s) => Ok(CyclotomicNumber::from_rational(repr.conductor, parse(s)?)),
                        EntryRepr::Power(v) => Ok(CyclotomicNumber::from_coeffs(
                            repr.conductor,
                            v.iter().map(parse).collect::<std::result::Result<_, _>>()?,
                        )),
                    })
                    .collect::<std::result::Result<Vec<_>, D::Error>>()
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        CycMatrix::from_rows(repr.conductor, rows).map_err(D::Error::custom)
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Expansion of `1/det(1 - tM)` as a rational series.
///
/// Fails with [`Error::NonRational`] when some coefficient lies outside `Q`;
/// averages over a group are rational even when single terms are not.
pub fn cyclotomic_char_poly_series(m: &CycMatrix, order: usize) -> Result<GradedSeries> {
    let h = m.inverse_char_series(order)?;
    let coeffs = h
        .iter()
        .map(|c| c.to_rational().ok_or(Error::NonRational))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(!coeffs[0].is_zero());
    Ok(GradedSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    /// Independent oracle: det(1 - tM) by cofactor expansion over polynomials
    /// in t, then 1/det by long division.
    fn oracle_series(m: &CycMatrix, order: usize) -> Vec<CyclotomicNumber> {
        let n = m.dim();
        let c = m.conductor();
        type Poly = Vec<CyclotomicNumber>;
        let pmul = |a: &Poly, b: &Poly| -> Poly {
            let mut out = vec![CyclotomicNumber::zero(c); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
            out
        };
        let padd = |a: &Poly, b: &Poly, sign: bool| -> Poly {
            let len = a.len().max(b.len());
            (0..len)
                .map(|k| {
                    let x = a.get(k).cloned().unwrap_or_else(|| CyclotomicNumber::zero(c));
                    let y = b.get(k).cloned().unwrap_or_else(|| CyclotomicNumber::zero(c));
                    if sign { &x + &y } else { &x - &y }
                })
                .collect()
        };
        let entry = |i: usize, j: usize| -> Poly {
            let one = if i == j { CyclotomicNumber::one(c) } else { CyclotomicNumber::zero(c) };
            vec![one, -m.get(i, j)]
        };
        fn det(
            rows: &[usize],
            cols: &[usize],
            entry: &dyn Fn(usize, usize) -> Poly,
            pmul: &dyn Fn(&Poly, &Poly) -> Poly,
            padd: &dyn Fn(&Poly, &Poly, bool) -> Poly,
            c: u32,
        ) -> Poly {
            if rows.is_empty() {
                return vec![CyclotomicNumber::one(c)];
            }
            let mut acc = vec![CyclotomicNumber::zero(c)];
            for (k, &col) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != col).collect();
                let minor = det(&rows[1..], &sub_cols, entry, pmul, padd, c);
                let term = pmul(&entry(rows[0], col), &minor);
                acc = padd(&acc, &term, k % 2 == 0);
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        let d = det(&idx, &idx, &entry, &pmul, &padd, c);
        // long division 1 / d, d[0] = 1
        let mut out = vec![CyclotomicNumber::one(c)];
        for k in 1..=order {
            let mut acc = CyclotomicNumber::zero(c);
            for j in 1..d.len().min(k + 1) {
                acc = &acc - &(&d[j] * &out[k - j]);
            }
            out.push(acc);
        }
        out
    }

    #[test]
    fn identity_gives_geometric_series() {
        let s = cyclotomic_char_poly_series(&CycMatrix::identity(1, 1), 5).unwrap();
        assert_eq!(s, GradedSeries::from_integers(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn minus_one_alternates() {
        let m = CycMatrix::diagonal(2, vec![CyclotomicNumber::from_integer(2, -1)]);
        let s = cyclotomic_char_poly_series(&m, 5).unwrap();
        assert_eq!(s, GradedSeries::from_integers(&[1, -1, 1, -1, 1, -1]));
    }

    #[test]
    fn diag_i_minus_i() {
        // 1/((1 - it)(1 + it)) = 1/(1 + t^2), by multiplying the two geometric series
        let m = CycMatrix::diagonal_roots(4, &[1, -1]);
        let s = cyclotomic_char_poly_series(&m, 6).unwrap();
        assert_eq!(s, GradedSeries::from_integers(&[1, 0, -1, 0, 1, 0, -1]));
    }

    #[test]
    fn single_root_of_unity_is_not_rational() {
        let m = CycMatrix::diagonal_roots(4, &[1]);
        assert_eq!(cyclotomic_char_poly_series(&m, 3), Err(Error::NonRational));
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = CycMatrix::diagonal(1, vec![CyclotomicNumber::zero(1)]);
        assert_eq!(m.inverse_char_series(3), Err(Error::NotInvertible));
        assert_eq!(m.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn newton_route_matches_long_division() {
        let c = 12;
        let z = |k| CyclotomicNumber::zeta_pow(c, k);
        let half = CyclotomicNumber::from_rational(c, rational(1, 2));
        let s3 = &(&z(1) + &z(-1)) * &half; // sqrt(3)/2
        let rot = CycMatrix::from_rows(
            c,
            vec![vec![-&half, -&s3], vec![s3.clone(), -&half]],
        )
        .unwrap();
        let refl = CycMatrix::diagonal(c, vec![CyclotomicNumber::one(c), CyclotomicNumber::from_integer(c, -1)]);
        let mats = [
            rot.clone(),
            refl.clone(),
            rot.mul(&refl),
            CycMatrix::diagonal_roots(c, &[1, 5, -2]),
            rot.direct_sum(&CycMatrix::diagonal_roots(c, &[3])),
        ];
        for m in &mats {
            let k = m.multiplicative_order(24).expect("finite order");
            let newton = m.inverse_char_series(2 * k + 3).unwrap();
            assert_eq!(newton, oracle_series(m, 2 * k + 3));
            assert!(m.is_unitary());
        }
    }

    #[test]
    fn inverse_matches_conjugate_transpose_for_unitary() {
        let m = CycMatrix::from_rows(
            4,
            vec![
                vec![CyclotomicNumber::zero(4), CyclotomicNumber::zeta_pow(4, 1)],
                vec![CyclotomicNumber::one(4), CyclotomicNumber::zero(4)],
            ],
        )
        .unwrap();
        assert!(m.is_unitary());
        assert_eq!(m.inverse().unwrap(), m.conjugate_transpose());
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
    }
}

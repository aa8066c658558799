//! Gaussian elimination over exact fields.

use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicNumber;
use super::rational::Rational;

/// Exact field element usable in row reduction.
pub trait FieldElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
}

impl FieldElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| Rational::one() / self)
    }
}

impl FieldElem for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.conductor())
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        CyclotomicNumber::inverse(self)
    }
}

/// Reduced row echelon form of the row space.
///
/// Returns the nonzero rows and their pivot columns. Pivots are taken in
/// column order, so the output is canonical for a given row space.
pub fn rref<F: FieldElem>(mut rows: Vec<Vec<F>>) -> (Vec<Vec<F>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: FieldElem>(rows: Vec<Vec<F>>) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : rows * x = 0}` for vectors with `ncols` entries.
pub fn nullspace<F: FieldElem>(rows: Vec<Vec<F>>, ncols: usize, zero: &F, one: &F) -> Vec<Vec<F>> {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (row, &p) in reduced.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = zero.sub(&row[f]);
                }
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix by elimination.
pub fn determinant<F: FieldElem>(mut m: Vec<Vec<F>>, one: &F) -> F {
    let n = m.len();
    let mut det = one.clone();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return one.zero_like();
        };
        if p != col {
            m.swap(p, col);
            det = one.zero_like().sub(&det);
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inverse().expect("nonzero pivot");
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].mul(&inv);
            let pivot_row = m[col].clone();
            for (x, p) in m[i][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.sub(&factor.mul(p));
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(m.clone()), 2);
        let ns = nullspace(m.clone(), 3, &rational(0, 1), &rational(1, 1));
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert_eq!(dot, rational(0, 1));
        }
    }

    #[test]
    fn determinant_with_row_swap() {
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(m, &rational(1, 1)), rational(-1, 1));
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(m, &rational(1, 1)), rational(18, 1));
    }

    #[test]
    fn rref_is_canonical() {
        let a = q(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = q(&[&[1, 2, 1], &[1, 0, -1]]);
        assert_eq!(rref(a).0, rref(b).0);
    }
}

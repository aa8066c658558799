//! Sparse multivariate polynomials over a cyclotomic field.

use std::collections::BTreeMap;

use super::cyclotomic::CyclotomicNumber;
use super::matrix::CycMatrix;
use super::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    conductor: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, CyclotomicNumber>,
}

impl CycPoly {
    pub fn zero(conductor: u32, nvars: usize) -> Self {
        Self {
            conductor,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(conductor: u32, m: Monomial) -> Self {
        let mut p = Self::zero(conductor, m.nvars());
        p.terms.insert(m, CyclotomicNumber::one(conductor));
        p
    }

    pub fn one(conductor: u32, nvars: usize) -> Self {
        Self::monomial(conductor, Monomial::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CyclotomicNumber {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(self.conductor))
    }

    pub fn add_term(&mut self, m: Monomial, c: &CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.conductor, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    /// Linear form `sum_j coeffs[j] x_j`.
    pub fn linear(conductor: u32, coeffs: &[CyclotomicNumber]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(conductor, nvars);
        for (j, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, j), c);
        }
        p
    }
}

/// Applies `x -> M x` to monomials, caching powers of the image linear forms.
pub struct Substitution {
    /// `powers[i][e]` is `(row_i(M) . x)^e`.
    powers: Vec<Vec<CycPoly>>,
    conductor: u32,
    nvars: usize,
}

impl Substitution {
    pub fn new(m: &CycMatrix) -> Self {
        let conductor = m.conductor();
        let nvars = m.dim();
        let powers = m
            .rows()
            .iter()
            .map(|row| vec![CycPoly::one(conductor, nvars), CycPoly::linear(conductor, row)])
            .collect();
        Self {
            powers,
            conductor,
            nvars,
        }
    }

    fn power(&mut self, i: usize, e: usize) -> &CycPoly {
        while self.powers[i].len() <= e {
            let next = self.powers[i].last().unwrap().mul(&self.powers[i][1]);
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }

    pub fn apply(&mut self, m: &Monomial) -> CycPoly {
        let mut out = CycPoly::one(self.conductor, self.nvars);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let p = self.power(i, e as usize).clone();
                out = out.mul(&p);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_substitution() {
        let c = 1;
        let swap = CycMatrix::from_rows(
            c,
            vec![
                vec![CyclotomicNumber::zero(c), CyclotomicNumber::one(c)],
                vec![CyclotomicNumber::one(c), CyclotomicNumber::zero(c)],
            ],
        )
        .unwrap();
        let mut sub = Substitution::new(&swap);
        let img = sub.apply(&Monomial(vec![2, 1]));
        assert_eq!(img, CycPoly::monomial(c, Monomial(vec![1, 2])));
    }

    #[test]
    fn binomial_expansion() {
        let c = 1;
        let m = CycMatrix::from_rows(
            c,
            vec![vec![CyclotomicNumber::one(c), CyclotomicNumber::one(c)], vec![CyclotomicNumber::zero(c), CyclotomicNumber::one(c)]],
        )
        .unwrap();
        let mut sub = Substitution::new(&m);
        let img = sub.apply(&Monomial(vec![3, 0]));
        assert_eq!(img.coeff(&Monomial(vec![1, 2])), CyclotomicNumber::from_integer(c, 3));
        assert_eq!(img.terms().count(), 4);
    }
}

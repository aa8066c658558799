//! Exact arithmetic in the cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are coefficient vectors in the power basis `1, zeta, ..., zeta^(phi(N)-1)`
//! reduced modulo the `N`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = div_monic(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// `Q(zeta_N)` together with its defining polynomial.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    /// Shared instance for conductor `n`.
    pub fn get(n: u32) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        let mut guard = fields.lock().expect("cyclotomic field cache poisoned");
        guard
            .entry(n)
            .or_insert_with(|| {
                Arc::new(CyclotomicField {
                    conductor: n,
                    modulus: cyclotomic_polynomial(n),
                })
            })
            .clone()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `[Q(zeta_N) : Q] = phi(N)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduces a polynomial in `zeta` of arbitrary length to the power basis.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let n = self.conductor as usize;
        if v.len() > n {
            // zeta^N = 1
            for i in n..v.len() {
                let c = std::mem::replace(&mut v[i], Rational::zero());
                v[i % n] += c;
            }
            v.truncate(n);
        }
        let deg = self.degree();
        for i in (deg..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[i], Rational::zero());
            for (j, m) in self.modulus[..deg].iter().enumerate() {
                if !m.is_zero() {
                    v[i - deg + j] -= &c * Rational::from_integer(m.clone());
                }
            }
        }
        v.resize(deg, Rational::zero());
        v
    }
}

/// Element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(n: u32) -> Self {
        let field = CyclotomicField::get(n);
        let coeffs = vec![Rational::zero(); field.degree()];
        Self { field, coeffs }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(n: u32, i: i64) -> Self {
        Self::from_rational(n, Rational::from_integer(i.into()))
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_coeffs(n, v)
    }

    /// `sum_k coeffs[k] zeta^k`; any length is accepted and reduced.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        let field = CyclotomicField::get(n);
        let coeffs = field.reduce(coeffs);
        Self { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Image under the field automorphism `zeta -> zeta^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor() as i64;
        debug_assert_eq!(k.rem_euclid(n).gcd(&n), 1);
        let mut v = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(j as i64 * k).rem_euclid(n) as usize] += c;
            }
        }
        Self::from_coeffs(self.conductor(), v)
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor() as i64;
        let mut others = Self::one(self.conductor());
        for k in (2..n).filter(|k| k.gcd(&n) == 1) {
            others = &others * &self.galois(k);
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm must be rational");
        Some(others.scale(&(Rational::one() / norm)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Embeds into `Q(zeta_M)` for a multiple `M` of the conductor.
    pub fn embed(&self, target: u32) -> Self {
        let n = self.conductor();
        assert!(target.is_multiple_of(n), "cannot embed Q(zeta_{n}) into Q(zeta_{target})");
        let step = (target / n) as usize;
        let mut v = vec![Rational::zero(); self.coeffs.len() * step];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Self::from_coeffs(target, v)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.conductor(),
            other.conductor(),
            "mixed cyclotomic conductors"
        );
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.conductor();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*zeta{n}"),
                _ => format!("{c}*zeta{n}^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.check_same(rhs);
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.check_same(rhs);
        let deg = self.coeffs.len();
        if deg == 1 {
            return CyclotomicNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut v = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.field.reduce(v),
        }
    }
}

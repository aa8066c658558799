//! Circle actions on `C^n` given by integer weight vectors.
//!
//! `S^1` acts on `V = C^n` by `z_i -> t^{a_i} z_i`. The invariant ring of the
//! complexified action on `V + V*` is the monoid algebra of weight-zero
//! monomials in `z_1..z_n, w_1..w_n` (with weights `a` and `-a`), and the
//! complex symplectic quotient is cut out of it by `sum a_i z_i w_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedSeries, Monomial, Rational};
use crate::finite::{self, cyclic_pair_count_series, GeneratorDegrees, LinearAction, Preset};
use crate::{Error, Result};

/// A normalized weight vector: no zero entries and gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    pub weights: Vec<i64>,
    /// Number of zero weights dropped during normalization.
    pub zeros_removed: usize,
    /// The gcd that was divided out (1 for the empty vector).
    pub scale: u64,
}

pub fn normalize_weights(raw: &[i64]) -> WeightVector {
    let nonzero: Vec<i64> = raw.iter().copied().filter(|&a| a != 0).collect();
    let g = nonzero.iter().fold(0i64, |g, &a| g.gcd(&a));
    let scale = if g == 0 { 1 } else { g.unsigned_abs() };
    WeightVector {
        weights: nonzero.iter().map(|&a| a / scale as i64).collect(),
        zeros_removed: raw.len() - nonzero.len(),
        scale,
    }
}

impl WeightVector {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn positives(&self) -> usize {
        self.weights.iter().filter(|&&a| a > 0).count()
    }

    pub fn negatives(&self) -> usize {
        self.weights.iter().filter(|&&a| a < 0).count()
    }

    /// Weights on the `2n` coordinates `z_1..z_n, w_1..w_n` of `V + V*`.
    pub fn doubled(&self) -> Vec<i64> {
        self.weights
            .iter()
            .copied()
            .chain(self.weights.iter().map(|a| -a))
            .collect()
    }

    /// Sorted weights; two vectors define isomorphic modules iff their keys agree.
    pub fn canonical_key(&self) -> Vec<i64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn is_stable(a: &WeightVector) -> bool {
    a.positives() > 0 && a.negatives() > 0
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Complex codimension of the complement of the principal locus (closed
/// orbits with trivial isotropy).
///
/// Non-closed orbits live on the coordinate subspaces spanned by one sign of
/// weights; points with isotropy containing `Z_p` live on the span of the
/// coordinates whose weight `p` divides.
pub fn principal_codim(a: &WeightVector) -> Result<usize> {
    if !is_stable(a) {
        return Err(Error::Unstable);
    }
    let mut codim = a.positives().min(a.negatives());
    let mut primes: Vec<u64> = a
        .weights
        .iter()
        .flat_map(|w| prime_factors(w.unsigned_abs()))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let off = a.weights.iter().filter(|w| w.unsigned_abs() % p != 0).count();
        codim = codim.min(off);
    }
    Ok(codim)
}

pub fn is_k_principal(a: &WeightVector, k: usize) -> bool {
    principal_codim(a).is_ok_and(|c| c >= k)
}

/// Finite principal isotropy and `n >= k + 1` (the only stratum beyond the
/// principal one with positive-dimensional isotropy is the origin).
pub fn is_k_modular(a: &WeightVector, k: usize) -> bool {
    is_stable(a) && a.len() > k
}

pub fn is_k_large(a: &WeightVector, k: usize) -> bool {
    is_k_principal(a, k) && is_k_modular(a, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleQuotientData {
    pub weights: WeightVector,
    pub real_dim: usize,
    pub null_cone_codim: usize,
    /// `None` when the action is unstable.
    pub principal_codim: Option<usize>,
    pub one_large: bool,
    pub two_large: bool,
}

impl CircleQuotientData {
    pub fn new(a: &WeightVector) -> Self {
        let stable = is_stable(a);
        Self {
            weights: a.clone(),
            real_dim: if stable { 2 * a.len() - 2 } else { 0 },
            null_cone_codim: a.positives().min(a.negatives()),
            principal_codim: principal_codim(a).ok(),
            one_large: is_k_large(a, 1),
            two_large: is_k_large(a, 2),
        }
    }
}

/// `x + iy` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// `J(z) = 1/2 sum a_i |z_i|^2`.
pub fn real_moment_value(a: &WeightVector, z: &[GaussianRational]) -> Result<Rational> {
    if z.len() != a.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: z.len(),
        });
    }
    let sum = a
        .weights
        .iter()
        .zip(z)
        .fold(Rational::zero(), |acc, (&w, zi)| acc + zi.norm_sqr() * BigInt::from(w));
    Ok(sum / BigInt::from(2))
}

/// Terms `a_i z_i w_i` of the complexified moment map on `V + V*`.
pub fn complex_moment_monomials(a: &WeightVector) -> Vec<(i64, Monomial)> {
    let n = a.len();
    a.weights
        .iter()
        .enumerate()
        .map(|(i, &w)| (w, Monomial::var(2 * n, i).mul(&Monomial::var(2 * n, n + i))))
        .collect()
}

/// All exponent vectors of total degree `degree` whose weighted sum vanishes.
pub fn weight_zero_monomials(weights: &[i64], degree: usize) -> Vec<Monomial> {
    struct Search<'a> {
        weights: &'a [i64],
        // extreme weights among coordinates i.. for pruning
        suffix_min: Vec<i64>,
        suffix_max: Vec<i64>,
        current: Vec<u32>,
        out: Vec<Monomial>,
    }

    impl Search<'_> {
        fn run(&mut self, i: usize, left: usize, sum: i64) {
            if i == self.weights.len() {
                if left == 0 && sum == 0 {
                    self.out.push(Monomial(self.current.clone()));
                }
                return;
            }
            let l = left as i64;
            if sum + l * self.suffix_min[i] > 0 || sum + l * self.suffix_max[i] < 0 {
                return;
            }
            for e in (0..=left).rev() {
                self.current[i] = e as u32;
                self.run(i + 1, left - e, sum + e as i64 * self.weights[i]);
            }
            self.current[i] = 0;
        }
    }

    let n = weights.len();
    if n == 0 {
        return if degree == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
    }
    let mut suffix_min = weights.to_vec();
    let mut suffix_max = weights.to_vec();
    for i in (0..n - 1).rev() {
        suffix_min[i] = suffix_min[i + 1].min(weights[i]);
        suffix_max[i] = suffix_max[i + 1].max(weights[i]);
    }
    let mut search = Search {
        weights,
        suffix_min,
        suffix_max,
        current: vec![0; n],
        out: Vec::new(),
    };
    search.run(0, degree, 0);
    search.out
}

/// Irreducible weight-zero monomials on `V + V*` up to a degree cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    pub generators: Vec<Monomial>,
    pub degree_cap: usize,
    /// `true` when no irreducible can have degree above the cap.
    pub complete: bool,
}

impl HilbertBasis {
    pub fn degree_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.generators {
            *counts.entry(g.degree()).or_insert(0) += 1;
        }
        counts
    }
}

/// Upper bound for the degree of an irreducible solution of `sum b_i x_i = 0`:
/// the largest positive weight plus the largest negative one in absolute value.
fn irreducible_degree_bound(doubled: &[i64]) -> usize {
    let max_pos = doubled.iter().copied().filter(|&b| b > 0).max().unwrap_or(0);
    let max_neg = doubled.iter().copied().filter(|&b| b < 0).map(|b| -b).max().unwrap_or(0);
    (max_pos + max_neg) as usize
}

pub fn invariant_hilbert_basis(a: &WeightVector, degree_cap: usize) -> Result<HilbertBasis> {
    if degree_cap < 1 {
        return Err(Error::CapTooSmall { cap: degree_cap, min: 1 });
    }
    let doubled = a.doubled();
    let bound = irreducible_degree_bound(&doubled);
    let mut generators: Vec<Monomial> = Vec::new();
    let mut beyond_cap = false;
    let last = if bound <= degree_cap + 2 { bound.max(degree_cap) } else { degree_cap + 2 };
    for d in 1..=last {
        let fresh: Vec<Monomial> = weight_zero_monomials(&doubled, d)
            .into_iter()
            .filter(|x| !generators.iter().any(|h| h.divides(x)))
            .collect();
        if d > degree_cap {
            beyond_cap |= !fresh.is_empty();
        } else {
            generators.extend(fresh);
        }
    }
    generators.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| y.cmp(x)));
    Ok(HilbertBasis {
        generators,
        degree_cap,
        complete: !beyond_cap && bound <= degree_cap + 2,
    })
}

/// `L(m) = #{(alpha, beta) : |alpha| + |beta| = m, a.alpha = a.beta}` for `m <= order`.
pub fn balanced_pair_counts(a: &WeightVector, order: usize) -> Vec<BigInt> {
    let max_abs = a.weights.iter().map(|w| w.unsigned_abs() as usize).max().unwrap_or(0);
    let offset = order * max_abs;
    let width = 2 * offset + 1;
    // table[d][s + offset] = #{alpha : |alpha| = d, a.alpha = s}
    let mut table = vec![vec![0u128; width]; order + 1];
    table[0][offset] = 1;
    for &w in &a.weights {
        for d in 1..=order {
            for idx in 0..width {
                let src = idx as i64 - w;
                if (0..width as i64).contains(&src) {
                    let add = table[d - 1][src as usize];
                    table[d][idx] += add;
                }
            }
        }
    }
    (0..=order)
        .map(|m| {
            let mut total = BigInt::zero();
            for d in 0..=m {
                for (x, y) in table[d].iter().zip(&table[m - d]) {
                    if *x != 0 && *y != 0 {
                        total += BigInt::from(*x) * BigInt::from(*y);
                    }
                }
            }
            total
        })
        .collect()
}

/// Hilbert series of the complex symplectic quotient, `L(m) - L(m - 2)`.
/// An unstable action has a point as quotient and series `1`.
pub fn quotient_hilbert_series_circle(a: &WeightVector, order: usize) -> GradedSeries {
    if !is_stable(a) {
        return GradedSeries::one(order);
    }
    let l = balanced_pair_counts(a, order);
    let coeffs = (0..=order)
        .map(|m| {
            let v = if m >= 2 { &l[m] - &l[m - 2] } else { l[m].clone() };
            Rational::from_integer(v)
        })
        .collect();
    GradedSeries::from_coeffs(coeffs)
}

/// Minimal generator degrees of the quotient ring: the Hilbert basis with the
/// moment map removed from degree 2.
pub fn quotient_generator_degrees(a: &WeightVector, cap: usize) -> Result<GeneratorDegrees> {
    let basis = invariant_hilbert_basis(a, cap)?;
    let mut counts = basis.degree_counts();
    if is_stable(a) {
        if let Some(c) = counts.get_mut(&2) {
            *c -= 1;
            if *c == 0 {
                counts.remove(&2);
            }
        }
    }
    Ok(GeneratorDegrees {
        counts,
        cap,
        complete: basis.complete,
    })
}

/// Largest truncation order tried while separating candidate cyclic groups.
pub const MAX_SEPARATION_ORDER: usize = 640;

/// The order `m` of the cyclic group with `V // S^1 = C/Z_m` for `n = 2`.
///
/// Candidates `m <= search_bound` are filtered by comparing series; the
/// truncation order is doubled while more than one candidate survives. The
/// survivor is confirmed against the Molien series and the Reynolds-operator
/// generator degrees of `Z_m` acting on `C + C*`.
pub fn cyclic_model_order(a: &WeightVector, search_bound: u32, order: usize) -> Result<u32> {
    if a.len() != 2 || !is_stable(a) {
        return Err(Error::Invalid(format!(
            "a cyclic model needs two weights of opposite sign, got {a}"
        )));
    }
    let mut ord = order.max(4);
    let candidate = loop {
        let q = quotient_hilbert_series_circle(a, ord);
        let matches: Vec<u32> = (1..=search_bound)
            .filter(|&m| cyclic_pair_count_series(m, ord) == q)
            .collect();
        match matches.as_slice() {
            [] => return Err(Error::NoCyclicMatch(search_bound as usize)),
            [m] => break *m,
            _ if ord * 2 <= MAX_SEPARATION_ORDER => ord *= 2,
            _ => {
                return Err(Error::AmbiguousCyclicMatch(
                    matches.iter().map(|&m| m as usize).collect(),
                ))
            }
        }
    };
    let group = Preset::cyclic(candidate).group(finite::DEFAULT_GROUP_CAP)?.doubled();
    let molien = finite::molien_series(&group, order)?;
    if molien != quotient_hilbert_series_circle(a, order) {
        return Err(Error::NoCyclicMatch(search_bound as usize));
    }
    let cap = order.max(2);
    let model = finite::minimal_generator_degrees(&group, cap.min(group.order().max(2)))?;
    let quotient = quotient_generator_degrees(a, cap)?;
    let shared = model.cap.min(quotient.cap);
    let truncate = |g: &GeneratorDegrees| -> BTreeMap<usize, usize> {
        g.counts.range(..=shared).map(|(&d, &c)| (d, c)).collect()
    };
    if truncate(&model) != truncate(&quotient) {
        return Err(Error::NoCyclicMatch(search_bound as usize));
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wv(w: &[i64]) -> WeightVector {
        normalize_weights(w)
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn normalization_examples() {
        let a = normalize_weights(&[2, 4, -6]);
        assert_eq!((a.weights.clone(), a.scale, a.zeros_removed), (vec![1, 2, -3], 2, 0));
        let b = normalize_weights(&[0, 3, -3]);
        assert_eq!((b.weights.clone(), b.scale, b.zeros_removed), (vec![1, -1], 3, 1));
        assert_eq!(normalize_weights(&[5]).weights, vec![1]);
        assert_eq!(normalize_weights(&[5]).scale, 5);
        let empty = normalize_weights(&[0, 0]);
        assert!(empty.is_empty());
        assert_eq!(empty.scale, 1);
    }

    #[test]
    fn stability() {
        assert!(is_stable(&wv(&[1, 2, -3])));
        assert!(!is_stable(&wv(&[1, 2, 3])));
        assert!(!is_stable(&wv(&[])));
    }

    /// Minimum codimension of a coordinate subspace whose generic point is not
    /// principal: the orbit must be closed (both signs present) and the
    /// isotropy `Z_gcd` trivial.
    fn principal_codim_by_support(a: &[i64]) -> usize {
        let n = a.len();
        (0u32..1 << n)
            .filter(|mask| {
                let support: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
                let mixed = support.iter().any(|&x| x > 0) && support.iter().any(|&x| x < 0);
                let g = support.iter().fold(0i64, |g, &x| g.gcd(&x));
                !(mixed && g == 1)
            })
            .map(|mask| n - mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn principal_codim_examples() {
        assert_eq!(principal_codim(&wv(&[1, 1, -1, -1])).unwrap(), 2);
        assert_eq!(principal_codim(&wv(&[1, 1, -1])).unwrap(), 1);
        assert_eq!(principal_codim(&wv(&[2, 2, -1, -1, -1])).unwrap(), 2);
        assert_eq!(principal_codim(&wv(&[1, 2])), Err(Error::Unstable));
        for a in [[1, 1, -1, -1].as_slice(), &[1, 1, -1], &[2, 2, -1, -1, -1], &[2, 3, -6], &[1, -2]] {
            assert_eq!(principal_codim(&wv(a)).unwrap(), principal_codim_by_support(a), "{a:?}");
        }
    }

    #[test]
    fn modularity_examples() {
        assert!(is_k_modular(&wv(&[1, -1]), 1));
        assert!(is_k_modular(&wv(&[1, 2, -3]), 2));
        for k in 0..4 {
            assert!(!is_k_modular(&wv(&[1, 2, 3]), k));
        }
        let data = CircleQuotientData::new(&wv(&[1, 1, -1]));
        assert_eq!((data.real_dim, data.null_cone_codim), (4, 1));
        assert!(data.one_large && !data.two_large);
        let data = CircleQuotientData::new(&wv(&[3, 3]));
        assert_eq!((data.real_dim, data.null_cone_codim, data.principal_codim), (0, 0, None));
    }

    #[test]
    fn moment_maps() {
        let z = |a, b| GaussianRational::from_integers(a, b);
        assert_eq!(real_moment_value(&wv(&[1, -1]), &[z(1, 0), z(1, 0)]).unwrap(), Rational::zero());
        assert_eq!(
            real_moment_value(&wv(&[1, -1]), &[z(1, 0), z(0, 0)]).unwrap(),
            crate::algebra::rational(1, 2)
        );
        assert_eq!(real_moment_value(&wv(&[2, -3]), &[z(0, 0), z(0, 0)]).unwrap(), Rational::zero());
        assert_eq!(real_moment_value(&wv(&[2, -3]), &[z(1, 1), z(0, 1)]).unwrap(), crate::algebra::rational(1, 2));
        assert!(real_moment_value(&wv(&[1, -1]), &[z(1, 0)]).is_err());
        assert_eq!(
            complex_moment_monomials(&wv(&[1, -1])),
            vec![(1, mono(&[1, 0, 1, 0])), (-1, mono(&[0, 1, 0, 1]))]
        );
        assert_eq!(complex_moment_monomials(&wv(&[1])), vec![(1, mono(&[1, 1]))]);
        // [2, -3] is already normalized
        let a = WeightVector { weights: vec![2, -3], zeros_removed: 0, scale: 1 };
        assert_eq!(
            complex_moment_monomials(&a),
            vec![(2, mono(&[1, 0, 1, 0])), (-3, mono(&[0, 1, 0, 1]))]
        );
        // the moment map is invariant
        for (_, m) in complex_moment_monomials(&wv(&[2, 5, -7])) {
            assert_eq!(m.weight(&wv(&[2, 5, -7]).doubled()), 0);
        }
    }

    /// Irreducible weight-zero exponent vectors by exhaustive enumeration of
    /// the box `[0, cap]^{2n}`.
    fn brute_force_basis(a: &WeightVector, cap: usize) -> Vec<Monomial> {
        let doubled = a.doubled();
        let k = doubled.len();
        let mut all = Vec::new();
        let total = (cap + 1).pow(k as u32);
        for code in 0..total {
            let mut e = vec![0u32; k];
            let mut c = code;
            for slot in e.iter_mut() {
                *slot = (c % (cap + 1)) as u32;
                c /= cap + 1;
            }
            let m = Monomial(e);
            if (1..=cap).contains(&m.degree()) && m.weight(&doubled) == 0 {
                all.push(m);
            }
        }
        let mut irreducible: Vec<Monomial> = all
            .iter()
            .filter(|x| !all.iter().any(|y| y != *x && y.divides(x)))
            .cloned()
            .collect();
        irreducible.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| y.cmp(x)));
        irreducible
    }

    #[test]
    fn hilbert_basis_examples() {
        let b = invariant_hilbert_basis(&wv(&[1, -1]), 4).unwrap();
        let mut expected = vec![
            mono(&[1, 1, 0, 0]),
            mono(&[1, 0, 1, 0]),
            mono(&[0, 1, 0, 1]),
            mono(&[0, 0, 1, 1]),
        ];
        expected.sort_by(|x, y| y.cmp(x));
        assert_eq!(b.generators, expected);
        assert!(b.complete);
        let b = invariant_hilbert_basis(&wv(&[1]), 4).unwrap();
        assert_eq!(b.generators, vec![mono(&[1, 1])]);
        let b = invariant_hilbert_basis(&wv(&[1, -2]), 6).unwrap();
        assert!(b.generators.contains(&mono(&[2, 1, 0, 0])));
        assert!(b.generators.contains(&mono(&[0, 0, 2, 1])));
        assert_eq!(b.generators, brute_force_basis(&wv(&[1, -2]), 6));
        assert!(b.complete);
        assert!(matches!(invariant_hilbert_basis(&wv(&[1]), 0), Err(Error::CapTooSmall { .. })));
    }

    #[test]
    fn hilbert_basis_matches_brute_force() {
        for a in [[1, 1, -1].as_slice(), &[2, -3], &[1, 2, -3], &[3, -1, -1]] {
            let a = wv(a);
            assert_eq!(invariant_hilbert_basis(&a, 5).unwrap().generators, brute_force_basis(&a, 5), "{a}");
        }
    }

    #[test]
    fn hilbert_basis_completeness_flag() {
        // [2, -5] has irreducibles z1^5 z2^2 and its dual in degree 7
        let a = WeightVector { weights: vec![2, -5], zeros_removed: 0, scale: 1 };
        let short = invariant_hilbert_basis(&a, 4).unwrap();
        assert!(!short.complete);
        // the degree bound is 10, so cap 7 cannot certify completeness but cap 8 can
        assert!(!invariant_hilbert_basis(&a, 7).unwrap().complete);
        let long = invariant_hilbert_basis(&a, 8).unwrap();
        assert!(long.complete);
        assert_eq!(long.degree_counts(), BTreeMap::from([(2, 2), (7, 2)]));
    }

    /// `L(m)` by enumerating every exponent vector on `V + V*`.
    fn balanced_pairs_by_enumeration(a: &WeightVector, m: usize) -> usize {
        weight_zero_monomials(&a.doubled(), m).len()
    }

    #[test]
    fn lattice_counts_match_enumeration() {
        for a in [[1, -1].as_slice(), &[1, 1, -1], &[2, -3], &[1, 2, -3, -1]] {
            let a = wv(a);
            let l = balanced_pair_counts(&a, 8);
            for (m, lm) in l.iter().enumerate() {
                assert_eq!(*lm, BigInt::from(balanced_pairs_by_enumeration(&a, m)), "{a} m={m}");
            }
        }
    }

    #[test]
    fn quotient_series_examples() {
        let a1 = quotient_hilbert_series_circle(&wv(&[1, -1]), 4);
        assert_eq!(a1, GradedSeries::from_integers(&[1, 0, 3, 0, 5]));
        assert_eq!(a1, cyclic_pair_count_series(2, 4));
        assert_eq!(quotient_hilbert_series_circle(&wv(&[1, 2]), 5), GradedSeries::one(5));
        assert_eq!(balanced_pair_counts(&wv(&[1, 1, -1]), 2), vec![1.into(), 0.into(), BigInt::from(9)]);
        assert_eq!(
            quotient_hilbert_series_circle(&wv(&[1, 1, -1]), 2),
            GradedSeries::from_integers(&[1, 0, 8])
        );
    }

    #[test]
    fn quotient_series_parity_for_unit_weights() {
        for a in [[1, -1].as_slice(), &[1, 1, -1], &[1, -1, -1, 1], &[1, 1, 1, -1]] {
            let s = quotient_hilbert_series_circle(&wv(a), 12);
            assert_eq!(*s.coeff(0), Rational::from_integer(1.into()));
            for k in (1..=12).step_by(2) {
                assert!(s.coeff(k).is_zero());
            }
        }
    }

    #[test]
    fn quotient_generators() {
        let g = quotient_generator_degrees(&wv(&[1, -1]), 6).unwrap();
        assert_eq!(g.counts, BTreeMap::from([(2, 3)]));
        let g = quotient_generator_degrees(&wv(&[1, -2]), 6).unwrap();
        assert_eq!(g.counts, BTreeMap::from([(2, 1), (3, 2)]));
        assert!(g.complete);
    }

    #[test]
    fn cyclic_models() {
        assert_eq!(cyclic_model_order(&wv(&[1, -1]), 50, 20).unwrap(), 2);
        assert_eq!(cyclic_model_order(&wv(&[1, -2]), 50, 20).unwrap(), 3);
        assert_eq!(cyclic_model_order(&wv(&[2, -3]), 50, 20).unwrap(), 5);
        assert_eq!(cyclic_model_order(&wv(&[-2, 2]), 50, 20).unwrap(), 2);
        assert!(cyclic_model_order(&wv(&[1, 1, -1]), 50, 20).is_err());
        assert_eq!(cyclic_model_order(&wv(&[1, -6]), 5, 20), Err(Error::NoCyclicMatch(5)));
    }

    #[test]
    fn cyclic_model_needs_a_longer_series() {
        // m = 25 exceeds the requested order, so the search has to extend it
        let a = WeightVector { weights: vec![12, -13], zeros_removed: 0, scale: 1 };
        assert_eq!(cyclic_model_order(&a, 50, 20).unwrap(), 25);
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent_and_scale_free(
            raw in proptest::collection::vec(-6i64..=6, 0..5),
            c in 1i64..5,
        ) {
            let a = normalize_weights(&raw);
            let again = normalize_weights(&a.weights);
            prop_assert_eq!(&again.weights, &a.weights);
            let scaled: Vec<i64> = raw.iter().map(|x| x * c).collect();
            prop_assert_eq!(&normalize_weights(&scaled).weights, &a.weights);
        }

        #[test]
        fn two_principal_implies_stable(raw in proptest::collection::vec(-4i64..=4, 0..6)) {
            let a = normalize_weights(&raw);
            if is_k_principal(&a, 2) {
                prop_assert!(is_stable(&a));
            }
            if is_stable(&a) {
                prop_assert_eq!(principal_codim(&a).unwrap(), principal_codim_by_support(&a.weights));
            }
        }
    }
}

//! Finite unitary matrix groups and their invariant rings.
//!
//! A group `H` acts on `W = C^k` through cyclotomic matrices. The doubled
//! action on `W + W*` sends `h` to `diag(h, (h^{-1})^T)`; its invariant ring is
//! the complexified ring of regular functions on the orbifold `W/H`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{self, FieldElem};
use crate::algebra::poly::{CycPoly, Substitution};
use crate::algebra::{binomial, rational, CycMatrix, CyclotomicNumber, GradedSeries, Monomial, Rational};
use crate::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 1000;

/// Largest group accepted by [`stratum_codims`].
pub const STRATA_ORDER_LIMIT: usize = 100;

/// A finite group acting linearly on some `C^k`.
pub trait LinearAction {
    fn matrices(&self) -> &[CycMatrix];
    fn dim(&self) -> usize;
    fn conductor(&self) -> u32;

    fn order(&self) -> usize {
        self.matrices().len()
    }
}

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    conductor: u32,
    dim: usize,
    generators: Vec<CycMatrix>,
    elements: Vec<CycMatrix>,
}

impl MatrixGroup {
    pub fn trivial(dim: usize) -> Self {
        let id = CycMatrix::identity(1, dim);
        Self {
            conductor: 1,
            dim,
            generators: vec![id.clone()],
            elements: vec![id],
        }
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn doubled(&self) -> DoubledAction {
        let elements = self
            .elements
            .iter()
            .map(|h| {
                let contragredient = h.inverse().expect("group elements are invertible").transpose();
                h.direct_sum(&contragredient)
            })
            .collect();
        DoubledAction {
            base_dim: self.dim,
            conductor: self.conductor,
            elements,
        }
    }
}

impl LinearAction for MatrixGroup {
    fn matrices(&self) -> &[CycMatrix] {
        &self.elements
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn conductor(&self) -> u32 {
        self.conductor
    }
}

/// `H` acting on `W + W*` by `h -> diag(h, (h^{-1})^T)`.
#[derive(Clone, Debug)]
pub struct DoubledAction {
    base_dim: usize,
    conductor: u32,
    elements: Vec<CycMatrix>,
}

impl DoubledAction {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }
}

impl LinearAction for DoubledAction {
    fn matrices(&self) -> &[CycMatrix] {
        &self.elements
    }
    fn dim(&self) -> usize {
        2 * self.base_dim
    }
    fn conductor(&self) -> u32 {
        self.conductor
    }
}

/// Breadth-first closure of the generated group.
pub fn close_group(generators: Vec<CycMatrix>, cap: usize) -> Result<MatrixGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Invalid("at least one generator is required".into()))?;
    let (dim, conductor) = (first.dim(), first.conductor());
    for g in &generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: g.dim(),
            });
        }
        if g.conductor() != conductor {
            return Err(Error::ConductorMismatch(conductor, g.conductor()));
        }
        if !g.is_unitary() {
            return Err(Error::NotUnitary);
        }
    }
    let identity = CycMatrix::identity(conductor, dim);
    let mut seen: HashSet<CycMatrix> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(MatrixGroup {
        conductor,
        dim,
        generators,
        elements,
    })
}

/// Named groups covering every orbifold model used by the classifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Preset {
    Trivial { dim: usize },
    /// `Z_m` acting on `C^k` by `diag(zeta^w_1, ..., zeta^w_k)`.
    Cyclic { order: u32, weights: Vec<i64> },
    /// `S_3` on `C^2 = R^2 (x) C` through rotation by `2pi/3` and a reflection.
    Symmetric3Standard,
    /// `{+1, -1}` acting by scalars on `C^dim`.
    PlusMinusOne { dim: usize },
    /// `Z_2 x Z_m` on `C^2`: `-1` on the first line, rotation of order `m` on the second.
    SignTimesRotation { order: u32 },
}

impl Preset {
    pub fn cyclic(order: u32) -> Self {
        Preset::Cyclic {
            order,
            weights: vec![1],
        }
    }

    pub fn generators(&self) -> Vec<CycMatrix> {
        match self {
            Preset::Trivial { dim } => vec![CycMatrix::identity(1, *dim)],
            Preset::Cyclic { order, weights } => {
                vec![CycMatrix::diagonal_roots(*order, weights)]
            }
            Preset::Symmetric3Standard => {
                let c = 12;
                let half = CyclotomicNumber::from_rational(c, rational(1, 2));
                let zeta = CyclotomicNumber::zeta_pow(c, 1);
                // 2 cos(pi/6) = sqrt(3)
                let s3 = &(&zeta + &zeta.conj()) * &half;
                let rotation = CycMatrix::from_rows(
                    c,
                    vec![vec![-&half, -&s3], vec![s3.clone(), -&half]],
                )
                .expect("square");
                let reflection = CycMatrix::diagonal(
                    c,
                    vec![CyclotomicNumber::one(c), CyclotomicNumber::from_integer(c, -1)],
                );
                vec![rotation, reflection]
            }
            Preset::PlusMinusOne { dim } => {
                vec![CycMatrix::diagonal(2, vec![CyclotomicNumber::from_integer(2, -1); *dim])]
            }
            Preset::SignTimesRotation { order } => {
                let c = 2u32.lcm(order);
                vec![
                    CycMatrix::diagonal(
                        c,
                        vec![CyclotomicNumber::from_integer(c, -1), CyclotomicNumber::one(c)],
                    ),
                    CycMatrix::diagonal(
                        c,
                        vec![
                            CyclotomicNumber::one(c),
                            CyclotomicNumber::zeta_pow(*order, 1).embed(c),
                        ],
                    ),
                ]
            }
        }
    }

    pub fn group(&self, cap: usize) -> Result<MatrixGroup> {
        if let Preset::Cyclic { order: 0, .. } | Preset::SignTimesRotation { order: 0 } = self {
            return Err(Error::Invalid("cyclic order must be positive".into()));
        }
        close_group(self.generators(), cap)
    }

    /// Conventional name of the quotient `W/H`.
    pub fn model_name(&self) -> String {
        match self {
            Preset::Trivial { dim: 1 } => "C".into(),
            Preset::Trivial { dim } => format!("C^{dim}"),
            Preset::Cyclic { order, weights } if weights.as_slice() == [1] => format!("C/Z_{order}"),
            Preset::Cyclic { order, weights } => format!("C^{}/Z_{order}", weights.len()),
            Preset::Symmetric3Standard => "C^2/S_3".into(),
            Preset::PlusMinusOne { dim: 1 } => "C/{+-1}".into(),
            Preset::PlusMinusOne { dim } => format!("C^{dim}/{{+-1}}"),
            Preset::SignTimesRotation { order } => format!("C^2/(Z_2 x Z_{order})"),
        }
    }
}

/// Text form accepted by the spec parser, e.g. `cyclic(4)` or `cyclic(5,1,2)`.
impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Trivial { dim } => write!(f, "trivial({dim})"),
            Preset::Cyclic { order, weights } if weights.as_slice() == [1] => write!(f, "cyclic({order})"),
            Preset::Cyclic { order, weights } => {
                let w: Vec<String> = weights.iter().map(i64::to_string).collect();
                write!(f, "cyclic({order},{})", w.join(","))
            }
            Preset::Symmetric3Standard => write!(f, "symmetric3_standard()"),
            Preset::PlusMinusOne { dim } => write!(f, "plus_minus_one({dim})"),
            Preset::SignTimesRotation { order } => write!(f, "sign_times_rotation({order})"),
        }
    }
}

/// `(1/|H|) sum_h 1/det(1 - t h)` to the given order.
pub fn molien_series<A: LinearAction + ?Sized>(action: &A, order: usize) -> Result<GradedSeries> {
    let conductor = action.conductor();
    let mut total = vec![CyclotomicNumber::zero(conductor); order + 1];
    for h in action.matrices() {
        for (acc, term) in total.iter_mut().zip(h.inverse_char_series(order)?) {
            *acc = &*acc + &term;
        }
    }
    let size = Rational::from_integer(BigInt::from(action.order()));
    let coeffs = total
        .iter()
        .map(|c| c.to_rational().map(|r| r / &size).ok_or(Error::NonRational))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedSeries::from_coeffs(coeffs))
}

/// Hilbert series of `C[x, y]^{Z_m}` for the weights `(1, -1)`, by counting
/// exponent pairs `a + b = k` with `a = b mod m`.
pub fn cyclic_pair_count_series(m: u32, order: usize) -> GradedSeries {
    let m = m as i64;
    let coeffs: Vec<i64> = (0..=order as i64)
        .map(|k| (0..=k).filter(|a| (a - (k - a)).rem_euclid(m) == 0).count() as i64)
        .collect();
    GradedSeries::from_integers(&coeffs)
}

/// Dimension of the quadratic invariants in `C[W]^H`.
pub fn sym2_invariant_dim<A: LinearAction + ?Sized>(action: &A) -> Result<u64> {
    let conductor = action.conductor();
    let mut acc = CyclotomicNumber::zero(conductor);
    for h in action.matrices() {
        let tr = h.trace();
        let tr2 = h.mul(h).trace();
        acc = &(&acc + &(&tr * &tr)) + &tr2;
    }
    let value = acc
        .to_rational()
        .ok_or(Error::NonRational)?
        / Rational::from_integer(BigInt::from(2 * action.order()));
    if !value.is_integer() || value < Rational::zero() {
        return Err(Error::NonIntegral(value.to_string()));
    }
    Ok(value.to_integer().try_into().expect("small dimension"))
}

/// One isotypic block `mu * W_j` of a real representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RealSummand {
    pub multiplicity: u32,
    pub dim: u32,
    /// `End_H(W_j) = R`.
    pub absolutely_irreducible: bool,
}

/// `W = sum_j mu_j W_j` with the `W_j` pairwise nonisomorphic real irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealDecomposition {
    pub summands: Vec<RealSummand>,
}

impl RealDecomposition {
    pub fn absolutely_irreducible(blocks: &[(u32, u32)]) -> Self {
        Self {
            summands: blocks
                .iter()
                .map(|&(multiplicity, dim)| RealSummand {
                    multiplicity,
                    dim,
                    absolutely_irreducible: true,
                })
                .collect(),
        }
    }

    pub fn real_dimension(&self) -> u32 {
        self.summands.iter().map(|s| s.multiplicity * s.dim).sum()
    }

    /// Necessary condition for `W` to be the realification of a complex
    /// module: a summand of odd multiplicity must be even-dimensional.
    pub fn admits_complex_structure(&self) -> bool {
        self.summands
            .iter()
            .all(|s| s.multiplicity % 2 == 0 || s.dim % 2 == 0)
    }
}

impl fmt::Display for RealDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let w = format!("W{}[dim {}]", j + 1, s.dim);
                if s.multiplicity == 1 { w } else { format!("{}{w}", s.multiplicity) }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Number of independent quadratic invariants, `sum_j C(mu_j + 1, 2)`.
pub fn quadratic_invariant_count(decomp: &RealDecomposition) -> Result<u64> {
    if let Some(s) = decomp.summands.iter().find(|s| !s.absolutely_irreducible) {
        return Err(Error::Unsupported(format!(
            "quadratic count for a summand of dimension {} that is not absolutely irreducible",
            s.dim
        )));
    }
    Ok(decomp
        .summands
        .iter()
        .map(|s| binomial(s.multiplicity as u64 + 1, 2))
        .sum())
}

/// Every multiplicity pattern of absolutely irreducible summands with
/// `sum mu_j dim_j = real_dim` whose quadratic count equals `target`.
pub fn quadratic_patterns(real_dim: u32, target: u64) -> Vec<RealDecomposition> {
    fn rec(
        left: u32,
        max_block: (u32, u32),
        current: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        // blocks (mu, d) in non-increasing order so that each multiset appears once
        for mu in (1..=left.min(max_block.0)).rev() {
            for d in (1..=left / mu).rev() {
                if (mu, d) > max_block {
                    continue;
                }
                current.push((mu, d));
                rec(left - mu * d, (mu, d), current, out);
                current.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(real_dim, (real_dim, real_dim), &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|blocks| RealDecomposition::absolutely_irreducible(&blocks))
        .filter(|d| quadratic_invariant_count(d).ok() == Some(target))
        .collect()
}

/// Minimal generator degrees of an invariant ring, up to a degree cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDegrees {
    /// degree -> number of minimal generators in that degree
    pub counts: BTreeMap<usize, usize>,
    pub cap: usize,
    /// `true` when the cap provably reaches the largest generator degree.
    pub complete: bool,
}

/// Counts minimal generators of `C[V]^H` degree by degree.
///
/// The degree-`m` invariants are the span of Reynolds images of all
/// degree-`m` monomials; generators in degree `m` are what is left after
/// quotienting by products of lower-degree invariants. Completeness is
/// certified by Noether's bound `|H|`.
pub fn minimal_generator_degrees<A: LinearAction + ?Sized>(
    action: &A,
    cap: usize,
) -> Result<GeneratorDegrees> {
    if cap < 1 {
        return Err(Error::CapTooSmall { cap, min: 1 });
    }
    let conductor = action.conductor();
    let nvars = action.dim();
    let mut substitutions: Vec<Substitution> =
        action.matrices().iter().map(Substitution::new).collect();
    let mut bases: Vec<Vec<CycPoly>> = vec![vec![CycPoly::one(conductor, nvars)]];
    let mut counts = BTreeMap::new();
    for m in 1..=cap {
        let monomials = Monomial::all_of_degree(nvars, m);
        let index: HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, mono)| (mono, i)).collect();
        let to_row = |p: &CycPoly| -> Vec<CyclotomicNumber> {
            let mut row = vec![CyclotomicNumber::zero(conductor); monomials.len()];
            for (mono, c) in p.terms() {
                row[index[mono]] = c.clone();
            }
            row
        };
        let mut images = Vec::new();
        let mut seen_rows = HashSet::new();
        for mono in &monomials {
            let mut image = CycPoly::zero(conductor, nvars);
            for sub in substitutions.iter_mut() {
                image.add_assign(&sub.apply(mono));
            }
            if !image.is_zero() {
                let row = to_row(&image);
                if seen_rows.insert(row.clone()) {
                    images.push(row);
                }
            }
        }
        let (basis_rows, _) = linalg::rref(images);
        let dim_invariants = basis_rows.len();

        let mut products = Vec::new();
        for i in 1..=m / 2 {
            for (a, f) in bases[i].iter().enumerate() {
                for (b, g) in bases[m - i].iter().enumerate() {
                    if i == m - i && b < a {
                        continue;
                    }
                    products.push(to_row(&f.mul(g)));
                }
            }
        }
        let decomposable = linalg::rank(products);
        let fresh = dim_invariants - decomposable;
        if fresh > 0 {
            counts.insert(m, fresh);
        }
        let basis = basis_rows
            .iter()
            .map(|row| {
                let mut p = CycPoly::zero(conductor, nvars);
                for (mono, c) in monomials.iter().zip(row) {
                    p.add_term(mono.clone(), c);
                }
                p
            })
            .collect();
        bases.push(basis);
    }
    Ok(GeneratorDegrees {
        counts,
        cap,
        complete: cap >= action.order(),
    })
}

/// Real codimensions of the orbit-type strata of `W/H` other than the
/// principal one, one entry per stratum, sorted.
///
/// Isotropy subspaces are the intersections of fixed spaces `W^h`; two of them
/// give the same stratum exactly when they are `H`-translates.
pub fn stratum_codims(group: &MatrixGroup) -> Result<Vec<usize>> {
    if group.order() > STRATA_ORDER_LIMIT {
        return Err(Error::GroupTooLarge(STRATA_ORDER_LIMIT));
    }
    let c = group.conductor;
    let n = group.dim;
    let zero = CyclotomicNumber::zero(c);
    let one = CyclotomicNumber::one(c);
    let identity = CycMatrix::identity(c, n);
    // a subspace is stored as the canonical row-reduced basis of its annihilator
    let canonical = |rows: Vec<Vec<CyclotomicNumber>>| -> Vec<Vec<CyclotomicNumber>> {
        if rows.is_empty() {
            return rows;
        }
        linalg::rref(rows).0
    };
    let fixed_constraints: Vec<_> = group
        .elements
        .iter()
        .map(|h| {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| h.get(i, j).sub(identity.get(i, j))).collect())
                .collect();
            canonical(rows)
        })
        .collect();

    let mut subspaces: BTreeSet<Vec<Vec<CyclotomicNumber>>> = BTreeSet::new();
    let mut frontier: Vec<Vec<Vec<CyclotomicNumber>>> = vec![Vec::new()];
    subspaces.insert(Vec::new());
    while let Some(u) = frontier.pop() {
        for f in &fixed_constraints {
            let mut rows = u.clone();
            rows.extend(f.iter().cloned());
            let v = canonical(rows);
            if subspaces.insert(v.clone()) {
                frontier.push(v);
            }
        }
    }

    let stabilizer = |constraints: &Vec<Vec<CyclotomicNumber>>| -> Vec<usize> {
        let basis = linalg::nullspace(constraints.clone(), n, &zero, &one);
        (0..group.order())
            .filter(|&k| {
                let h = &group.elements[k];
                basis.iter().all(|u| {
                    (0..n).all(|i| {
                        let image = (0..n).fold(zero.clone(), |acc, j| acc.add(&h.get(i, j).mul(&u[j])));
                        image == u[i]
                    })
                })
            })
            .collect()
    };
    let principal = stabilizer(&Vec::new());
    let inverses: Vec<CycMatrix> = group
        .elements
        .iter()
        .map(|h| h.inverse().expect("invertible"))
        .collect();

    let mut remaining: BTreeSet<_> = subspaces
        .into_iter()
        .filter(|u| stabilizer(u) != principal)
        .collect();
    let mut codims = Vec::new();
    while let Some(u) = remaining.pop_first() {
        for h_inv in &inverses {
            let moved: Vec<Vec<CyclotomicNumber>> = u
                .iter()
                .map(|row| {
                    (0..n)
                        .map(|j| (0..n).fold(zero.clone(), |acc, k| acc.add(&row[k].mul(h_inv.get(k, j)))))
                        .collect()
                })
                .collect();
            remaining.remove(&canonical(moved));
        }
        codims.push(2 * u.len());
    }
    codims.sort_unstable();
    Ok(codims)
}

impl PartialOrd for CyclotomicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order, used only to store subspaces in sorted sets.
impl Ord for CyclotomicNumber {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.coeffs().cmp(other.coeffs()))
    }
}

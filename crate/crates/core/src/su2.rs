//! `SU_2`-modules `V = R_{d_1} + ... + R_{d_k}` and their symplectic quotients.
//!
//! Everything is computed with characters of the maximal torus, written as
//! Laurent polynomials in `z`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{GradedSeries, LaurentPoly, Rational};
use crate::finite::{RealDecomposition, RealSummand};
use crate::{Error, Result};

/// Multiset of irreducible summands, stored in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SU2Module {
    degrees: Vec<u32>,
}

impl SU2Module {
    /// Rejects trivial summands; the empty list is the zero module.
    pub fn new(degrees: &[u32]) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::Invalid("summand degrees must be positive".into()));
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn complex_dim(&self) -> u32 {
        self.degrees.iter().map(|d| d + 1).sum()
    }

    pub fn is_one_large(&self) -> bool {
        !matches!(self.degrees.as_slice(), [] | [1] | [1, 1] | [2])
    }

    /// Decomposition of the underlying real module. `R_d` is of real type for
    /// even `d` and of quaternionic type for odd `d`.
    pub fn real_decomposition(&self) -> RealDecomposition {
        let mut summands = Vec::new();
        let mut i = 0;
        while i < self.degrees.len() {
            let d = self.degrees[i];
            let k = self.degrees[i..].iter().take_while(|&&e| e == d).count() as u32;
            summands.push(if d.is_multiple_of(2) {
                RealSummand {
                    multiplicity: 2 * k,
                    dim: d + 1,
                    absolutely_irreducible: true,
                }
            } else {
                RealSummand {
                    multiplicity: k,
                    dim: 2 * (d + 1),
                    absolutely_irreducible: false,
                }
            });
            i += k as usize;
        }
        RealDecomposition { summands }
    }
}

impl fmt::Display for SU2Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `z^d + z^{d-2} + ... + z^{-d}`.
pub fn character_rd(d: u32) -> LaurentPoly {
    let d = d as i64;
    LaurentPoly::from_terms((0..=d).map(|j| (d - 2 * j, 1)))
}

pub fn module_character(v: &SU2Module) -> LaurentPoly {
    v.degrees
        .iter()
        .fold(LaurentPoly::zero(), |acc, &d| acc.add(&character_rd(d)))
}

/// Multiplicity of the trivial module, `c_0 - c_2`.
pub fn invariant_dim(chi: &LaurentPoly) -> Result<i128> {
    if !chi.is_symmetric() {
        return Err(Error::AsymmetricCharacter);
    }
    Ok(chi.coeff(0) - chi.coeff(2))
}

/// Characters of `Sym^0, ..., Sym^max` by Newton's identity
/// `m h_m = sum_{k=1}^m p_k h_{m-k}` with `p_k(z) = chi(z^k)`.
pub fn sym_power_characters(chi: &LaurentPoly, max: usize) -> Result<Vec<LaurentPoly>> {
    let adams: Vec<LaurentPoly> = (0..=max).map(|k| chi.adams(k as i64)).collect();
    let mut h = vec![LaurentPoly::one()];
    for m in 1..=max {
        let mut acc = LaurentPoly::zero();
        for k in 1..=m {
            acc = acc.add(&adams[k].mul(&h[m - k]));
        }
        h.push(acc.exact_div(m as i128).ok_or(Error::InexactDivision(m))?);
    }
    Ok(h)
}

pub fn sym_power_character(chi: &LaurentPoly, m: usize) -> Result<LaurentPoly> {
    Ok(sym_power_characters(chi, m)?.pop().expect("nonempty"))
}

/// Number of partitions of `s` into at most `parts` parts, each at most `largest`.
fn bounded_partitions(s: usize, parts: usize, largest: usize) -> u128 {
    // f[j][b][t]: either no part equals b, or remove one part equal to b
    let mut f = vec![vec![vec![0u128; s + 1]; largest + 1]; parts + 1];
    for j in 0..=parts {
        for b in 0..=largest {
            f[j][b][0] = 1;
            for t in 1..=s {
                if j > 0 && b > 0 {
                    f[j][b][t] = f[j][b - 1][t] + if t >= b { f[j - 1][b][t - b] } else { 0 };
                }
            }
        }
    }
    f[parts][largest][s]
}

/// `dim C[R_d]_m^{SL_2}` by the Cayley-Sylvester formula.
pub fn cayley_sylvester(d: u32, m: u32) -> i128 {
    let (d, m) = (d as usize, m as usize);
    if (d * m) % 2 == 1 {
        return 0;
    }
    let s = d * m / 2;
    let p = |s: usize| bounded_partitions(s, m, d) as i128;
    if s == 0 {
        return 1;
    }
    p(s) - p(s - 1)
}

/// Characters of the exterior powers of the adjoint module `R_2`.
pub fn adjoint_exterior_power(j: usize) -> LaurentPoly {
    match j {
        0 | 3 => LaurentPoly::one(),
        1 | 2 => character_rd(2),
        _ => LaurentPoly::zero(),
    }
}

/// Hilbert series of the complex symplectic quotient of a 1-large module.
///
/// The three moment-map quadrics form a regular sequence, so the Koszul
/// complex gives `sum_j (-1)^j dim (Sym^{m-2j}(V + V*) (x) Lambda^j g)^G`.
pub fn quotient_hilbert_series_su2(v: &SU2Module, order: usize) -> Result<GradedSeries> {
    if !v.is_one_large() {
        return Err(Error::NotOneLarge);
    }
    let chi = module_character(v).scale(2);
    let sym = sym_power_characters(&chi, order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut total = 0i128;
        for j in 0..=3usize {
            if 2 * j > m {
                break;
            }
            let term = invariant_dim(&sym[m - 2 * j].mul(&adjoint_exterior_power(j)))?;
            total += if j % 2 == 0 { term } else { -term };
        }
        coeffs.push(Rational::from_integer(total.into()));
    }
    Ok(GradedSeries::from_coeffs(coeffs))
}

/// Dimension of the real quadratic invariants of `V`, i.e. of the
/// degree-two invariants of `V + V*`.
pub fn quadratic_invariant_count(v: &SU2Module) -> Result<i128> {
    let chi = module_character(v).scale(2);
    invariant_dim(&sym_power_character(&chi, 2)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Non2PrincipalMembership {
    /// One of the modules that fail to be 2-principal.
    OnList,
    /// `3 R_1`: only 1-large, but 2-principal.
    ThreeR1,
    /// 2-large.
    OffList,
}

pub fn non_2principal_membership(v: &SU2Module) -> Non2PrincipalMembership {
    match v.degrees() {
        [1] | [1, 1] | [2] | [2, 2] | [2, 1] | [3] | [4] => Non2PrincipalMembership::OnList,
        [1, 1, 1] => Non2PrincipalMembership::ThreeR1,
        _ => Non2PrincipalMembership::OffList,
    }
}

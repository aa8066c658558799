//! Decides how the symplectic quotient of a representation compares with
//! linear symplectic orbifolds, and collects the computed evidence.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{rational_fn_expand, CycMatrix, DenomFactor, GradedSeries};
use crate::circle::{self, CircleQuotientData, WeightVector};
use crate::finite::{self, GeneratorDegrees, LinearAction, MatrixGroup, Preset};
use crate::su2::{self, Non2PrincipalMembership, SU2Module};
use crate::{Error, Result};

/// A compact group together with a unitary module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RepSpec {
    /// `S^1` acting with the given (raw, unnormalized) weights.
    Circle { weights: Vec<i64> },
    /// `SU_2` acting on the sum of the `R_d`.
    Su2 { degrees: Vec<u32> },
    Finite {
        #[serde(flatten)]
        group: FiniteSpec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteSpec {
    Preset(Preset),
    Generators(Vec<CycMatrix>),
}

impl FiniteSpec {
    pub fn group(&self, cap: usize) -> Result<MatrixGroup> {
        match self {
            FiniteSpec::Preset(p) => p.group(cap),
            FiniteSpec::Generators(g) => finite::close_group(g.clone(), cap),
        }
    }

    pub fn model_name(&self, group: &MatrixGroup) -> String {
        match self {
            FiniteSpec::Preset(p) => p.model_name(),
            FiniteSpec::Generators(_) => format!("C^{}/H (|H| = {})", group.dim(), group.order()),
        }
    }
}

impl RepSpec {
    pub fn circle(weights: &[i64]) -> Self {
        RepSpec::Circle {
            weights: weights.to_vec(),
        }
    }

    pub fn su2(degrees: &[u32]) -> Self {
        RepSpec::Su2 {
            degrees: degrees.to_vec(),
        }
    }

    pub fn finite(preset: Preset) -> Self {
        RepSpec::Finite {
            group: FiniteSpec::Preset(preset),
        }
    }
}

/// Conclusions about `M_0`, from strongest to weakest.
///
/// `NotHomeomorphicToSymplecticOrbifold` implies both `NoSymplectomorphism`
/// and `NoRegularDiffeomorphism`; each of those implies
/// `NoRegularSymplectomorphism`, which implies
/// `NotGradedRegularSymplectomorphic`. A report lists the strongest verdict
/// first, followed by everything it implies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Point,
    OrbifoldModel,
    NotHomeomorphicToSymplecticOrbifold,
    NoSymplectomorphism,
    NoRegularDiffeomorphism,
    /// Also the conclusion available when the image of the group in the
    /// symplectic group is disconnected. Circle and `SU_2` images are
    /// connected, so no input handled here has it as strongest verdict.
    NoRegularSymplectomorphism,
    NotGradedRegularSymplectomorphic,
    Inconclusive,
}

impl Verdict {
    fn direct_consequences(self) -> &'static [Verdict] {
        use Verdict::*;
        match self {
            NotHomeomorphicToSymplecticOrbifold => &[NoSymplectomorphism, NoRegularDiffeomorphism],
            NoSymplectomorphism | NoRegularDiffeomorphism => &[NoRegularSymplectomorphism],
            NoRegularSymplectomorphism => &[NotGradedRegularSymplectomorphic],
            _ => &[],
        }
    }

    /// The verdict followed by every verdict it implies, in strength order.
    pub fn closure(self) -> Vec<Verdict> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            for &v in out[i].direct_consequences() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Point | Verdict::OrbifoldModel)
    }

    pub fn name(self) -> &'static str {
        use Verdict::*;
        match self {
            Point => "point",
            OrbifoldModel => "orbifold_model",
            NotHomeomorphicToSymplecticOrbifold => "not_homeomorphic_to_symplectic_orbifold",
            NoSymplectomorphism => "no_symplectomorphism",
            NoRegularDiffeomorphism => "no_regular_diffeomorphism",
            NoRegularSymplectomorphism => "no_regular_symplectomorphism",
            NotGradedRegularSymplectomorphic => "not_graded_regular_symplectomorphic",
            Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A known result a verdict rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub id: String,
    pub statement: String,
}

fn cite(id: &str) -> Citation {
    let statement = match id {
        "circle.one_signed_point" => {
            "If all circle weights have the same sign, the symplectic quotient is a point."
        }
        "circle.two_weights_cyclic" => {
            "For two weights of opposite sign the symplectic quotient is graded regularly symplectomorphic to a cyclic orbifold C/Z_m; here m is found by matching graded data."
        }
        "circle.not_rational_homology_manifold" => {
            "With at least two positive and two negative weights the quotient is not a rational homology manifold, so it is not homeomorphic to a symplectic orbifold."
        }
        "circle.no_regular_diffeomorphism" => {
            "A stable circle module of dimension at least 3 has a quotient admitting no regular diffeomorphism to a linear symplectic orbifold."
        }
        "su2.r1_point" => "The symplectic quotient of R_1 is a point.",
        "su2.two_r1" => "The quotient of 2R_1 is graded regularly symplectomorphic to C/{+-1}.",
        "su2.r2" => "The quotient of R_2 is graded regularly symplectomorphic to C/{+-1}.",
        "su2.r3" => "The quotient of R_3 is graded regularly symplectomorphic to C/Z_4.",
        "su2.r4" => {
            "The quotient of R_4 is graded regularly symplectomorphic to C^2/S_3 with the standard diagonal action."
        }
        "su2.r2_sums" => {
            "The quotients of 2R_2 and R_2+R_1 admit no graded regular symplectomorphism to a linear symplectic orbifold."
        }
        "su2.off_list_two_principal" => {
            "Every SU_2-module outside R_1, 2R_1, R_2, 2R_2, R_2+R_1, R_3, R_4 is 2-principal (2-large except 3R_1)."
        }
        "two_principal.no_symplectomorphism" => {
            "If a stable module is 2-principal and the group has connected positive-dimensional image, the quotient is not symplectomorphic to a linear symplectic orbifold."
        }
        "finite.linear_orbifold" => "A finite unitary group acting linearly gives a linear symplectic orbifold.",
        _ => unreachable!("unknown citation {id}"),
    };
    Citation {
        id: id.into(),
        statement: statement.into(),
    }
}

/// The orbifold `W/H` proposed as a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldModel {
    pub name: String,
    pub group: FiniteSpec,
    pub group_order: usize,
}

/// Comparison of graded data of a quotient with a candidate orbifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEvidence {
    pub model: String,
    pub order: usize,
    pub quotient_series: GradedSeries,
    pub model_series: GradedSeries,
    pub quotient_degrees: Option<GeneratorDegrees>,
    pub model_degrees: Option<GeneratorDegrees>,
    pub series_equal: bool,
    /// `None` when one side's generator degrees are not available.
    pub degrees_equal: Option<bool>,
    pub passed: bool,
}

/// Counting argument excluding orbifold models by quadratic invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticEvidence {
    pub count: u64,
    /// Real dimension of a candidate `W`, equal to that of `M_0`.
    pub real_dim: u32,
    /// All decompositions of `W` into absolutely irreducibles giving `count`.
    pub patterns: Vec<String>,
    /// The subset compatible with a complex structure on `W`.
    pub compatible: Vec<String>,
    /// For each remaining candidate group, its stratum codimensions.
    pub candidate_codims: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// Hilbert series of the quotient, when computable.
    pub series: Option<GradedSeries>,
    pub generator_degrees: Option<GeneratorDegrees>,
    /// Real codimensions of singular strata of the model orbifold.
    pub codims: Vec<usize>,
    pub model: Option<OrbifoldModel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub circle: Option<CircleQuotientData>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub su2_membership: Option<Non2PrincipalMembership>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quadratic: Option<QuadraticEvidence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbifold_match: Option<MatchEvidence>,
    /// First degree where the quotient series differs from the free algebra on
    /// its generators, i.e. a degree carrying a relation.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub relation_degree: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec: RepSpec,
    pub verdicts: Vec<Verdict>,
    pub citations: Vec<Citation>,
    pub evidence: Evidence,
    pub order: usize,
}

impl Report {
    pub fn strongest(&self) -> Verdict {
        self.verdicts[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Truncation order of all series.
    pub order: usize,
    /// Largest cyclic group order tried for two-weight circle modules.
    pub search_bound: u32,
    pub group_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            order: 20,
            search_bound: 50,
            group_cap: finite::DEFAULT_GROUP_CAP,
        }
    }
}

/// `1 / prod (1 - t^d)^{c}` for the generator degrees, the Hilbert series of a
/// polynomial ring on those generators.
pub fn free_algebra_series(degrees: &GeneratorDegrees, order: usize) -> Result<GradedSeries> {
    let factors: Vec<DenomFactor> = degrees
        .counts
        .iter()
        .map(|(&d, &c)| DenomFactor::new(d, c))
        .collect();
    rational_fn_expand(&[BigInt::one()], &factors, order)
}

/// Graded data of a quotient that does not come from a general formula.
struct TableEntry {
    series: GradedSeries,
    degrees: GeneratorDegrees,
}

fn su2_table_entry(v: &SU2Module, order: usize) -> Option<TableEntry> {
    let complete = |pairs: &[(usize, usize)]| GeneratorDegrees {
        counts: pairs.iter().copied().collect(),
        cap: order,
        complete: true,
    };
    match v.degrees() {
        [1] => Some(TableEntry {
            series: GradedSeries::one(order),
            degrees: complete(&[]),
        }),
        // C[u, v, w]/(uw - v^2) with u, v, w of degree 2
        [1, 1] | [2] => Some(TableEntry {
            series: rational_fn_expand(
                &[BigInt::one(), 0.into(), 0.into(), 0.into(), BigInt::from(-1)],
                &[DenomFactor::new(2, 3)],
                order,
            )
            .expect("nonzero denominators"),
            degrees: complete(&[(2, 3)]),
        }),
        _ => None,
    }
}

/// Generator degrees of the quotient for the modules whose minimal
/// presentation is known.
fn su2_known_degrees(v: &SU2Module, order: usize) -> Option<GeneratorDegrees> {
    let pairs: &[(usize, usize)] = match v.degrees() {
        [1] => &[],
        [1, 1] | [2] => &[(2, 3)],
        [3] => &[(2, 1), (4, 2)],
        [4] => &[(2, 3), (3, 4)],
        _ => return None,
    };
    Some(GeneratorDegrees {
        counts: pairs.iter().copied().filter(|&(d, _)| d <= order).collect(),
        cap: order,
        complete: pairs.iter().all(|&(d, _)| d <= order),
    })
}

/// Hilbert series and (when known) generator degrees of the quotient.
fn quotient_graded_data(spec: &RepSpec, config: &Config) -> Result<(GradedSeries, Option<GeneratorDegrees>)> {
    let order = config.order;
    match spec {
        RepSpec::Circle { weights } => {
            let a = circle::normalize_weights(weights);
            let series = circle::quotient_hilbert_series_circle(&a, order);
            let degrees = circle_generator_degrees(&a, order)?;
            Ok((series, Some(degrees)))
        }
        RepSpec::Su2 { degrees } => {
            let v = SU2Module::new(degrees)?;
            if let Some(entry) = su2_table_entry(&v, order) {
                return Ok((entry.series, Some(entry.degrees)));
            }
            Ok((su2::quotient_hilbert_series_su2(&v, order)?, su2_known_degrees(&v, order)))
        }
        RepSpec::Finite { group } => {
            let g = group.group(config.group_cap)?;
            Ok((finite::molien_series(&g.doubled(), order)?, None))
        }
    }
}

/// Hilbert series of the complexified quotient ring; for a finite group this
/// is the Molien series of `W + W*`.
pub fn quotient_hilbert_series(spec: &RepSpec, config: &Config) -> Result<GradedSeries> {
    let order = config.order;
    match spec {
        RepSpec::Circle { weights } => Ok(circle::quotient_hilbert_series_circle(
            &circle::normalize_weights(weights),
            order,
        )),
        RepSpec::Su2 { degrees } => {
            let v = SU2Module::new(degrees)?;
            if v.degrees().is_empty() {
                return Ok(GradedSeries::one(order));
            }
            match su2_table_entry(&v, order) {
                Some(entry) => Ok(entry.series),
                None => su2::quotient_hilbert_series_su2(&v, order),
            }
        }
        RepSpec::Finite { group } => finite::molien_series(&group.group(config.group_cap)?.doubled(), order),
    }
}

/// Quotient generator degrees with the cap at the degree bound of the Hilbert
/// basis (so the result is complete whenever the bound fits the order).
fn circle_generator_degrees(a: &WeightVector, order: usize) -> Result<GeneratorDegrees> {
    let max_abs = a.weights.iter().map(|w| w.unsigned_abs() as usize).max().unwrap_or(1);
    circle::quotient_generator_degrees(a, order.min(2 * max_abs).max(2))
}

fn truncated(g: &GeneratorDegrees, cap: usize) -> BTreeMap<usize, usize> {
    g.counts.range(..=cap).map(|(&d, &c)| (d, c)).collect()
}

/// Compares the quotient of `spec` with `W/H` for the model group `H`.
pub fn verify_orbifold_match(spec: &RepSpec, model: &FiniteSpec, config: &Config) -> Result<MatchEvidence> {
    let order = config.order;
    let (quotient_series, quotient_degrees) = quotient_graded_data(spec, config)?;
    let group = model.group(config.group_cap)?;
    let doubled = group.doubled();
    let model_series = finite::molien_series(&doubled, order)?;
    let model_degrees = match quotient_degrees {
        Some(_) => Some(finite::minimal_generator_degrees(
            &doubled,
            order.min(doubled.order()).max(2),
        )?),
        None => None,
    };
    let series_equal = quotient_series == model_series;
    let degrees_equal = match (&quotient_degrees, &model_degrees) {
        (Some(q), Some(m)) => {
            let cap = q.cap.min(m.cap);
            Some(truncated(q, cap) == truncated(m, cap))
        }
        _ => None,
    };
    Ok(MatchEvidence {
        model: model.model_name(&group),
        order,
        quotient_series,
        model_series,
        quotient_degrees,
        model_degrees,
        series_equal,
        degrees_equal,
        passed: series_equal && degrees_equal != Some(false),
    })
}

fn report(spec: &RepSpec, strongest: Verdict, citations: &[&str], evidence: Evidence, order: usize) -> Report {
    Report {
        spec: spec.clone(),
        verdicts: strongest.closure(),
        citations: citations.iter().map(|id| cite(id)).collect(),
        evidence,
        order,
    }
}

/// Attaches a verified orbifold model, or downgrades to `Inconclusive`.
fn orbifold_report(
    spec: &RepSpec,
    model: FiniteSpec,
    citations: &[&str],
    mut evidence: Evidence,
    config: &Config,
) -> Report {
    let group = match model.group(config.group_cap) {
        Ok(g) => g,
        Err(e) => {
            evidence.notes.push(format!("model group unavailable: {e}"));
            return report(spec, Verdict::Inconclusive, citations, evidence, config.order);
        }
    };
    if let Ok(codims) = finite::stratum_codims(&group) {
        evidence.codims = codims;
    }
    evidence.model = Some(OrbifoldModel {
        name: model.model_name(&group),
        group: model.clone(),
        group_order: group.order(),
    });
    match verify_orbifold_match(spec, &model, config) {
        Ok(m) => {
            evidence.series = Some(m.quotient_series.clone());
            evidence.generator_degrees = m.quotient_degrees.clone();
            let verdict = if m.passed {
                Verdict::OrbifoldModel
            } else {
                evidence.notes.push(format!(
                    "graded data of the quotient does not match {}; verdict withheld",
                    m.model
                ));
                Verdict::Inconclusive
            };
            evidence.orbifold_match = Some(m);
            report(spec, verdict, citations, evidence, config.order)
        }
        Err(e) => {
            evidence.notes.push(format!("could not compare with the model: {e}"));
            report(spec, Verdict::Inconclusive, citations, evidence, config.order)
        }
    }
}

pub fn classify(spec: &RepSpec, config: &Config) -> Result<Report> {
    if config.order < 4 {
        return Err(Error::Invalid("truncation order must be at least 4".into()));
    }
    match spec {
        RepSpec::Circle { weights } => classify_circle(spec, weights, config),
        RepSpec::Su2 { degrees } => classify_su2(spec, degrees, config),
        RepSpec::Finite { group } => classify_finite(spec, group, config),
    }
}

fn classify_circle(spec: &RepSpec, weights: &[i64], config: &Config) -> Result<Report> {
    let order = config.order;
    let a = circle::normalize_weights(weights);
    let mut evidence = Evidence {
        circle: Some(CircleQuotientData::new(&a)),
        ..Evidence::default()
    };
    let mut steps = Vec::new();
    if a.zeros_removed > 0 {
        steps.push(format!("dropped {} zero weight(s)", a.zeros_removed));
    }
    if a.scale != 1 {
        steps.push(format!("divided by {}", a.scale));
    }
    if !steps.is_empty() {
        evidence.notes.push(format!("weights normalized to {a}: {}", steps.join(", ")));
    }
    if !circle::is_stable(&a) {
        evidence.series = Some(GradedSeries::one(order));
        return Ok(report(spec, Verdict::Point, &["circle.one_signed_point"], evidence, order));
    }
    if a.len() == 2 {
        let citations = ["circle.two_weights_cyclic"];
        return Ok(match circle::cyclic_model_order(&a, config.search_bound, order) {
            Ok(m) => orbifold_report(spec, FiniteSpec::Preset(Preset::cyclic(m)), &citations, evidence, config),
            Err(e) => {
                evidence.series = Some(circle::quotient_hilbert_series_circle(&a, order));
                evidence.notes.push(format!("no cyclic model determined: {e}"));
                report(spec, Verdict::Inconclusive, &citations, evidence, order)
            }
        });
    }
    let series = circle::quotient_hilbert_series_circle(&a, order);
    let degrees = circle_generator_degrees(&a, order)?;
    evidence.relation_degree = free_algebra_series(&degrees, order)?.first_difference(&series);
    evidence.series = Some(series);
    evidence.generator_degrees = Some(degrees);
    Ok(if a.positives() >= 2 && a.negatives() >= 2 {
        report(
            spec,
            Verdict::NotHomeomorphicToSymplecticOrbifold,
            &["circle.not_rational_homology_manifold", "circle.no_regular_diffeomorphism"],
            evidence,
            order,
        )
    } else {
        report(spec, Verdict::NoRegularDiffeomorphism, &["circle.no_regular_diffeomorphism"], evidence, order)
    })
}

/// The counting step excluding a model for `2R_2` and `R_2 + R_1`.
fn quadratic_evidence(v: &SU2Module) -> Result<QuadraticEvidence> {
    let count = su2::quadratic_invariant_count(v)? as u64;
    // dim_R M_0 = dim_R V - 2 dim SU_2
    let real_dim = 2 * v.complex_dim() - 6;
    let patterns = finite::quadratic_patterns(real_dim, count);
    let compatible: Vec<_> = patterns.iter().filter(|p| p.admits_complex_structure()).collect();
    let mut candidate_codims = BTreeMap::new();
    if !compatible.is_empty() {
        // a compatible 2W_1 + W_2 forces -1 on W_1 and rotations on W_2
        for m in 2..=6 {
            let preset = Preset::SignTimesRotation { order: m };
            let group = preset.group(finite::DEFAULT_GROUP_CAP)?;
            candidate_codims.insert(preset.model_name(), finite::stratum_codims(&group)?);
        }
    }
    Ok(QuadraticEvidence {
        count,
        real_dim,
        patterns: patterns.iter().map(ToString::to_string).collect(),
        compatible: compatible.iter().map(|p| p.to_string()).collect(),
        candidate_codims,
    })
}

fn classify_su2(spec: &RepSpec, degrees: &[u32], config: &Config) -> Result<Report> {
    let order = config.order;
    let v = SU2Module::new(degrees)?;
    if v.degrees().is_empty() {
        let evidence = Evidence {
            series: Some(GradedSeries::one(order)),
            ..Evidence::default()
        };
        return Ok(report(spec, Verdict::Point, &[], evidence, order));
    }
    let membership = su2::non_2principal_membership(&v);
    let mut evidence = Evidence {
        su2_membership: Some(membership),
        ..Evidence::default()
    };
    let model = |p: Preset| FiniteSpec::Preset(p);
    match v.degrees() {
        [1] => {
            evidence.series = Some(GradedSeries::one(order));
            Ok(report(spec, Verdict::Point, &["su2.r1_point"], evidence, order))
        }
        [1, 1] => Ok(orbifold_report(spec, model(Preset::PlusMinusOne { dim: 1 }), &["su2.two_r1"], evidence, config)),
        [2] => Ok(orbifold_report(spec, model(Preset::PlusMinusOne { dim: 1 }), &["su2.r2"], evidence, config)),
        [3] => Ok(orbifold_report(spec, model(Preset::cyclic(4)), &["su2.r3"], evidence, config)),
        [4] => Ok(orbifold_report(spec, model(Preset::Symmetric3Standard), &["su2.r4"], evidence, config)),
        [2, 2] | [2, 1] => {
            evidence.series = Some(su2::quotient_hilbert_series_su2(&v, order)?);
            evidence.quadratic = Some(quadratic_evidence(&v)?);
            Ok(report(spec, Verdict::NotGradedRegularSymplectomorphic, &["su2.r2_sums"], evidence, order))
        }
        _ => {
            evidence.series = Some(su2::quotient_hilbert_series_su2(&v, order)?);
            if membership == Non2PrincipalMembership::ThreeR1 {
                evidence.notes.push("3R_1 is 1-large and 2-principal".into());
            }
            Ok(report(
                spec,
                Verdict::NoSymplectomorphism,
                &["su2.off_list_two_principal", "two_principal.no_symplectomorphism"],
                evidence,
                order,
            ))
        }
    }
}

fn classify_finite(spec: &RepSpec, group: &FiniteSpec, config: &Config) -> Result<Report> {
    // validates the generators before any verdict is produced
    group.group(config.group_cap)?;
    Ok(orbifold_report(
        spec,
        group.clone(),
        &["finite.linear_orbifold"],
        Evidence::default(),
        config,
    ))
}

use proptest::prelude::*;
use symquot::algebra::{GradedSeries, Monomial, Rational};
use symquot::circle::{self, normalize_weights};
use symquot::classifier::{classify, Config, RepSpec, Verdict};
use symquot::finite::{self, LinearAction, Preset};
use symquot::su2::{self, SU2Module};

/// Molien series of a diagonal cyclic action by counting monomials whose
/// weight vanishes modulo the order.
fn diagonal_cyclic_count(order: u32, weights: &[i64], max_degree: usize) -> GradedSeries {
    let coeffs: Vec<i64> = (0..=max_degree)
        .map(|d| {
            Monomial::all_of_degree(weights.len(), d)
                .iter()
                .filter(|m| m.weight(weights).rem_euclid(order as i64) == 0)
                .count() as i64
        })
        .collect();
    GradedSeries::from_integers(&coeffs)
}

fn small_config() -> Config {
    Config {
        order: 12,
        ..Config::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn molien_of_diagonal_cyclic_groups(order in 1u32..7, weights in prop::collection::vec(-3i64..=3, 1..4)) {
        let group = Preset::Cyclic { order, weights: weights.clone() }.group(100).unwrap();
        prop_assert_eq!(finite::molien_series(&group, 8).unwrap(), diagonal_cyclic_count(order, &weights, 8));
        let doubled: Vec<i64> = weights.iter().copied().chain(weights.iter().map(|w| -w)).collect();
        prop_assert_eq!(
            finite::molien_series(&group.doubled(), 6).unwrap(),
            diagonal_cyclic_count(order, &doubled, 6)
        );
    }

    #[test]
    fn classification_is_scale_invariant(
        raw in prop::collection::vec(-3i64..=3, 1..4),
        c in prop::sample::select(vec![-3i64, -2, -1, 2, 3]),
    ) {
        prop_assume!(raw.iter().any(|&w| w != 0));
        let scaled: Vec<i64> = raw.iter().map(|w| w * c).collect();
        let a = classify(&RepSpec::circle(&raw), &small_config()).unwrap();
        let b = classify(&RepSpec::circle(&scaled), &small_config()).unwrap();
        prop_assert_eq!(a.verdicts, b.verdicts);
        prop_assert_eq!(a.evidence.series, b.evidence.series);
    }

    #[test]
    fn two_weight_quotients_match_their_cyclic_model(a in 1i64..6, b in 1i64..6) {
        let w = normalize_weights(&[a, -b]);
        let m = circle::cyclic_model_order(&w, 50, 16).unwrap();
        let group = Preset::cyclic(m).group(100).unwrap().doubled();
        prop_assert_eq!(
            circle::quotient_hilbert_series_circle(&w, 16),
            finite::molien_series(&group, 16).unwrap()
        );
    }

    #[test]
    fn su2_quotient_series_are_nonnegative(degrees in prop::collection::vec(1u32..6, 1..4)) {
        let v = SU2Module::new(&degrees).unwrap();
        prop_assume!(v.is_one_large());
        let s = su2::quotient_hilbert_series_su2(&v, 12).unwrap();
        prop_assert_eq!(s.coeff(0), &Rational::from_integer(1.into()));
        prop_assert!(s.coeffs().iter().all(|c| *c >= Rational::from_integer(0.into())));
    }

    #[test]
    fn hilbert_basis_elements_are_irreducible(raw in prop::collection::vec(-4i64..=4, 2..4)) {
        let a = normalize_weights(&raw);
        prop_assume!(circle::is_stable(&a));
        let basis = circle::invariant_hilbert_basis(&a, 6).unwrap();
        let doubled = a.doubled();
        for (i, x) in basis.generators.iter().enumerate() {
            prop_assert_eq!(x.weight(&doubled), 0);
            for (j, y) in basis.generators.iter().enumerate() {
                prop_assert!(i == j || !y.divides(x));
            }
        }
    }
}

#[test]
fn verdict_lists_are_closed_under_implication() {
    let config = small_config();
    let specs = [
        RepSpec::circle(&[1, 1, -1, -1]),
        RepSpec::circle(&[1, 2, -1]),
        RepSpec::su2(&[2, 2]),
        RepSpec::su2(&[1, 1, 1]),
        RepSpec::su2(&[3]),
    ];
    for spec in specs {
        let report = classify(&spec, &config).unwrap();
        for v in &report.verdicts {
            for implied in v.closure() {
                assert!(report.verdicts.contains(&implied), "{spec:?}: {v} without {implied}");
            }
        }
        if report.strongest() == Verdict::OrbifoldModel {
            assert!(report.evidence.orbifold_match.unwrap().passed);
        }
    }
}

#[test]
fn classification_is_deterministic() {
    let config = small_config();
    for spec in [RepSpec::circle(&[3, -5]), RepSpec::su2(&[4]), RepSpec::finite(Preset::Symmetric3Standard)] {
        assert_eq!(classify(&spec, &config).unwrap(), classify(&spec, &config).unwrap());
    }
}

#[test]
fn model_strata_for_two_weight_circles() {
    // C/Z_m has a single singular stratum, the origin
    for m in 2..8 {
        let group = Preset::cyclic(m).group(100).unwrap();
        assert_eq!(finite::stratum_codims(&group).unwrap(), vec![2]);
        assert_eq!(group.order(), m as usize);
    }
}

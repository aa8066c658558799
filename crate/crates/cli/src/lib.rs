//! Spec parsing, report rendering and sweeps behind the `symquot` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use symquot::circle::normalize_weights;
use symquot::classifier::{self, Config, FiniteSpec, Report, RepSpec, Verdict};
use symquot::finite::Preset;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

fn fail<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

/// Comma-separated integers starting at byte `offset` of the full input.
fn parse_int_list(body: &str, offset: usize) -> Result<Vec<i64>, ParseError> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pos = offset;
    for token in body.split(',') {
        let lead = token.len() - token.trim_start().len();
        let t = token.trim();
        match t.parse::<i64>() {
            Ok(v) => out.push(v),
            Err(_) => return fail(pos + lead, format!("expected an integer, found {t:?}")),
        }
        pos += token.len() + 1;
    }
    Ok(out)
}

fn parse_preset(body: &str, offset: usize) -> Result<Preset, ParseError> {
    let lead = body.len() - body.trim_start().len();
    let text = body.trim();
    let start = offset + lead;
    let Some(open) = text.find('(') else {
        return match text {
            "s3" | "symmetric3_standard" => Ok(Preset::Symmetric3Standard),
            _ => fail(start, format!("expected preset(args), found {text:?}")),
        };
    };
    if !text.ends_with(')') {
        return fail(start + text.len(), "missing closing parenthesis");
    }
    let name = text[..open].trim();
    let args = parse_int_list(&text[open + 1..text.len() - 1], start + open + 1)?;
    let positive = |i: usize| -> Result<i64, ParseError> {
        match args.get(i) {
            Some(&v) if v > 0 => Ok(v),
            _ => fail(start + open + 1, format!("{name} needs a positive argument")),
        }
    };
    let arity = |n: usize| -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            fail(start + open + 1, format!("{name} takes {n} argument(s), got {}", args.len()))
        }
    };
    match name {
        "trivial" => {
            arity(1)?;
            Ok(Preset::Trivial { dim: positive(0)? as usize })
        }
        "cyclic" => {
            let order = positive(0)? as u32;
            let weights = if args.len() == 1 { vec![1] } else { args[1..].to_vec() };
            Ok(Preset::Cyclic { order, weights })
        }
        "symmetric3_standard" | "s3" => {
            arity(0)?;
            Ok(Preset::Symmetric3Standard)
        }
        "plus_minus_one" => {
            arity(1)?;
            Ok(Preset::PlusMinusOne { dim: positive(0)? as usize })
        }
        "sign_times_rotation" => {
            arity(1)?;
            Ok(Preset::SignTimesRotation { order: positive(0)? as u32 })
        }
        _ => fail(start, format!("unknown preset {name:?}")),
    }
}

fn validate(spec: RepSpec) -> Result<RepSpec, ParseError> {
    match &spec {
        RepSpec::Circle { weights } if weights.iter().all(|&w| w == 0) => fail(0, "no nonzero weights"),
        RepSpec::Su2 { degrees } if degrees.is_empty() => fail(0, "no summands"),
        RepSpec::Su2 { degrees } if degrees.contains(&0) => fail(0, "invalid degree 0; degrees must be positive"),
        RepSpec::Finite { group: FiniteSpec::Generators(g) } if g.is_empty() => fail(0, "no generators"),
        _ => Ok(spec),
    }
}

/// Parses `circle: w1,w2,...`, `su2: d1,d2,...`, `finite: preset(args)` or a
/// JSON object with a `"type"` field.
pub fn parse_spec(input: &str) -> Result<RepSpec, ParseError> {
    let lead = input.len() - input.trim_start().len();
    let text = input.trim();
    if text.starts_with('{') {
        let spec: RepSpec = serde_json::from_str(text).map_err(|e| ParseError {
            position: lead + json_offset(text, e.line(), e.column()),
            message: e.to_string(),
        })?;
        return validate(spec);
    }
    let Some(colon) = text.find(':') else {
        return fail(lead, "expected `kind: ...` or a JSON object");
    };
    let kind = text[..colon].trim();
    let body = &text[colon + 1..];
    let offset = lead + colon + 1;
    let spec = match kind {
        "circle" => RepSpec::Circle {
            weights: parse_int_list(body, offset)?,
        },
        "su2" => {
            let raw = parse_int_list(body, offset)?;
            if let Some(i) = raw.iter().position(|&d| d <= 0) {
                return fail(offset, format!("invalid degree {} at entry {}; degrees must be positive", raw[i], i + 1));
            }
            RepSpec::Su2 {
                degrees: raw.iter().map(|&d| d as u32).collect(),
            }
        }
        "finite" => RepSpec::finite(parse_preset(body, offset)?),
        _ => return fail(lead, format!("unknown representation kind {kind:?}")),
    };
    validate(spec)
}

fn json_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Inverse of [`parse_spec`]; explicit generators are written as JSON.
pub fn render_spec(spec: &RepSpec) -> String {
    match spec {
        RepSpec::Circle { weights } => format!("circle: {}", join(weights)),
        RepSpec::Su2 { degrees } => format!("su2: {}", join(degrees)),
        RepSpec::Finite { group: FiniteSpec::Preset(p) } => format!("finite: {p}"),
        RepSpec::Finite { .. } => serde_json::to_string(spec).expect("serializable"),
    }
}

pub fn report_json(report: &Report) -> String {
    serde_json::to_string(report).expect("serializable")
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let ev = &report.evidence;
    let _ = writeln!(out, "spec: {}", render_spec(&report.spec));
    let strongest = report.strongest();
    match (&ev.model, strongest) {
        (Some(model), Verdict::OrbifoldModel) => {
            let _ = writeln!(out, "verdict: {strongest} ({})", model.name);
        }
        _ => {
            let _ = writeln!(out, "verdict: {strongest}");
        }
    }
    if report.verdicts.len() > 1 {
        let _ = writeln!(out, "implied: {}", join(&report.verdicts[1..]));
    }
    if let Some(series) = &ev.series {
        let _ = writeln!(out, "series: {series}");
    }
    if let Some(g) = &ev.generator_degrees {
        let degrees: Vec<String> = g.counts.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        let status = if g.complete { "complete" } else { "truncated" };
        let _ = writeln!(out, "generator degrees: {{{}}} ({status} at cap {})", degrees.join(", "), g.cap);
    }
    if let Some(d) = ev.relation_degree {
        let _ = writeln!(out, "first relation in degree: {d}");
    }
    if ev.model.is_some() {
        let _ = writeln!(out, "model strata codimensions: [{}]", join(&ev.codims));
    }
    if let Some(m) = &ev.orbifold_match {
        let degrees = match m.degrees_equal {
            Some(true) => "degrees equal",
            Some(false) => "degrees differ",
            None => "degrees not compared",
        };
        let series = if m.series_equal { "series equal" } else { "series differ" };
        let status = if m.passed { "passed" } else { "failed" };
        let _ = writeln!(out, "match with {}: {status} ({series}, {degrees})", m.model);
    }
    if let Some(c) = &ev.circle {
        let _ = writeln!(
            out,
            "normalized weights: {} (real dim {}, null cone codim {})",
            c.weights, c.real_dim, c.null_cone_codim
        );
    }
    if let Some(q) = &ev.quadratic {
        let _ = writeln!(out, "quadratic invariants: {} (model real dim {})", q.count, q.real_dim);
        let _ = writeln!(out, "  patterns: {}", q.patterns.join("; "));
        let _ = writeln!(out, "  unitary-compatible: {}", q.compatible.join("; "));
        for (name, codims) in &q.candidate_codims {
            let _ = writeln!(out, "  {name} strata codimensions: [{}]", join(codims));
        }
    }
    if !report.citations.is_empty() {
        let _ = writeln!(out, "citations:");
        for c in &report.citations {
            let _ = writeln!(out, "  {}: {}", c.id, c.statement);
        }
    }
    for note in &ev.notes {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out, "order: {}", report.order);
    out
}

pub fn exit_code(report: &Report) -> i32 {
    if report.strongest() == Verdict::Inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

/// Parses and classifies; returns the exit code and what goes to stdout, or
/// an error message.
pub fn run_classify(input: &str, config: &Config, json: bool) -> Result<(i32, String), String> {
    let spec = parse_spec(input).map_err(|e| e.to_string())?;
    let report = classifier::classify(&spec, config).map_err(|e| e.to_string())?;
    let body = if json {
        report_json(&report) + "\n"
    } else {
        render_text(&report)
    };
    Ok((exit_code(&report), body))
}

/// Families enumerated by `sweep`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Circle weight vectors with `1 <= n <= max_n` and `0 < |a_i| <= max_weight`.
    Circle { max_n: usize, max_weight: i64 },
    /// `SU_2`-modules with `1 <= #summands <= max_summands` and degrees `<= max_degree`.
    Su2 { max_degree: u32, max_summands: usize },
}

/// Specs of the family, one per isomorphism class, in canonical order.
pub fn enumerate_family(family: Family) -> Vec<RepSpec> {
    match family {
        Family::Circle { max_n, max_weight } => {
            let values: Vec<i64> = (-max_weight..=max_weight).filter(|&w| w != 0).collect();
            let mut keys = std::collections::BTreeSet::new();
            for n in 1..=max_n {
                for combo in multisets(&values, n) {
                    keys.insert(normalize_weights(&combo).canonical_key());
                }
            }
            keys.into_iter().map(|w| RepSpec::Circle { weights: w }).collect()
        }
        Family::Su2 { max_degree, max_summands } => {
            let values: Vec<i64> = (1..=max_degree as i64).rev().collect();
            let mut keys = std::collections::BTreeSet::new();
            for n in 1..=max_summands {
                for combo in multisets(&values, n) {
                    keys.insert(combo.iter().map(|&d| d as u32).collect::<Vec<_>>());
                }
            }
            keys.into_iter().map(|degrees| RepSpec::Su2 { degrees }).collect()
        }
    }
}

/// Non-decreasing index sequences of length `n` over `values`.
fn multisets(values: &[i64], n: usize) -> Vec<Vec<i64>> {
    fn rec(values: &[i64], start: usize, n: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            rec(values, i, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(values, 0, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Serialize)]
struct Footer {
    summary: Summary,
}

#[derive(Serialize)]
struct Summary {
    count: usize,
    errors: usize,
    histogram: BTreeMap<&'static str, usize>,
}

#[derive(Serialize)]
struct ErrorLine {
    spec: RepSpec,
    error: String,
}

/// Classifies the family in parallel and returns the JSON-lines output: one
/// report per line in canonical order, then a summary line.
pub fn run_sweep(family: Family, config: &Config) -> String {
    let specs = enumerate_family(family);
    let results: Vec<_> = specs
        .par_iter()
        .map(|spec| (spec, classifier::classify(spec, config)))
        .collect();
    let mut out = String::new();
    let mut histogram = BTreeMap::new();
    let mut errors = 0;
    for (spec, result) in &results {
        match result {
            Ok(report) => {
                *histogram.entry(report.strongest().name()).or_insert(0) += 1;
                out.push_str(&report_json(report));
            }
            Err(e) => {
                errors += 1;
                let line = ErrorLine {
                    spec: (*spec).clone(),
                    error: e.to_string(),
                };
                out.push_str(&serde_json::to_string(&line).expect("serializable"));
            }
        }
        out.push('\n');
    }
    let footer = Footer {
        summary: Summary {
            count: results.len(),
            errors,
            histogram,
        },
    };
    out.push_str(&serde_json::to_string(&footer).expect("serializable"));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_specs() {
        assert_eq!(parse_spec("circle: 1,1,-1").unwrap(), RepSpec::circle(&[1, 1, -1]));
        assert_eq!(parse_spec("su2: 4").unwrap(), RepSpec::su2(&[4]));
        assert_eq!(parse_spec("  su2: 2, 1 ").unwrap(), RepSpec::su2(&[2, 1]));
        assert_eq!(parse_spec("finite: cyclic(4)").unwrap(), RepSpec::finite(Preset::cyclic(4)));
        assert_eq!(
            parse_spec("finite: cyclic(5, 1, 2)").unwrap(),
            RepSpec::finite(Preset::Cyclic { order: 5, weights: vec![1, 2] })
        );
        assert_eq!(parse_spec("finite: s3").unwrap(), RepSpec::finite(Preset::Symmetric3Standard));
    }

    #[test]
    fn reports_errors_with_positions() {
        let e = parse_spec("circle: 0,0").unwrap_err();
        assert!(e.message.contains("no nonzero weights"));
        let e = parse_spec("circle: 1,x").unwrap_err();
        assert_eq!(e.position, 10);
        let e = parse_spec("su2: 2,0").unwrap_err();
        assert!(e.message.contains("invalid degree"));
        assert!(parse_spec("torus: 1").is_err());
        assert!(parse_spec("finite: cyclic(0)").is_err());
        assert!(parse_spec("finite: cyclic(4").is_err());
        assert!(parse_spec("{\"type\": \"circle\"}").is_err());
    }

    #[test]
    fn parses_json_specs() {
        assert_eq!(
            parse_spec(r#"{"type": "circle", "weights": [1, -2]}"#).unwrap(),
            RepSpec::circle(&[1, -2])
        );
        let i = r#"{"type": "finite", "generators": [{"conductor": 4, "coeffs": [[["0", "1"]]]}]}"#;
        let spec = parse_spec(i).unwrap();
        let report = classifier::classify(&spec, &Config::default()).unwrap();
        assert_eq!(report.evidence.model.unwrap().group_order, 4);
    }

    #[test]
    fn render_round_trips() {
        for spec in [
            RepSpec::circle(&[2, -4, 0]),
            RepSpec::su2(&[1, 3]),
            RepSpec::finite(Preset::Cyclic { order: 6, weights: vec![1, -1] }),
            RepSpec::finite(Preset::SignTimesRotation { order: 3 }),
            RepSpec::Finite { group: FiniteSpec::Generators(Preset::Symmetric3Standard.generators()) },
        ] {
            assert_eq!(parse_spec(&render_spec(&spec)).unwrap(), spec);
        }
    }

    #[test]
    fn sweep_enumeration() {
        let specs = enumerate_family(Family::Circle { max_n: 2, max_weight: 2 });
        // n = 1: [-1], [1]; n = 2 after normalization and sorting
        assert_eq!(
            specs,
            [
                vec![-2, -1],
                vec![-2, 1],
                vec![-1],
                vec![-1, -1],
                vec![-1, 1],
                vec![-1, 2],
                vec![1],
                vec![1, 1],
                vec![1, 2]
            ]
            .into_iter()
            .map(|w| RepSpec::Circle { weights: w })
            .collect::<Vec<_>>()
        );
        assert!(enumerate_family(Family::Circle { max_n: 0, max_weight: 3 }).is_empty());
        let su2 = enumerate_family(Family::Su2 { max_degree: 4, max_summands: 2 });
        assert_eq!(su2.len(), 4 + 10);
    }

    #[test]
    fn empty_sweep_is_only_a_footer() {
        let out = run_sweep(Family::Su2 { max_degree: 0, max_summands: 3 }, &Config::default());
        assert_eq!(out, "{\"summary\":{\"count\":0,\"errors\":0,\"histogram\":{}}}\n");
    }
}

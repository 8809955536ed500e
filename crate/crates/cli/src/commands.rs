use std::fmt::Write as _;

use m0n_core::divisor::{boundary, canonical_class, contracted_partitions};
use m0n_core::fulton::{
    f_simplex_vertex, facets_of_face, pk_fnef_threshold, FaceReport, ThresholdReport,
};
use m0n_core::log_canonical::{
    a_alpha, breakpoint, c_interval, check_breakpoints, convex_decompose_on, direct_c_feasible,
    known_positivity, model_for_alpha, model_interval, piece_left_end, verify_lemma, LemmaReport,
};
use m0n_core::{is_f_nef, FNefVerdict, Rational, SymmetricDivisor};
use serde_json::{json, Value};

use crate::report::{Outcome, Report, Status};
use crate::table::{compare_row, CellComparison, RowComparison};
use crate::{CliError, ConeArgs, DivisorArgs, FnefArgs, ModelArgs, NRange, Suite, VerifyArgs};

fn coefficient_strings(d: &SymmetricDivisor) -> Vec<String> {
    d.coeffs().iter().map(ToString::to_string).collect()
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("core types serialize")
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn divisor(args: &DivisorArgs) -> Result<Outcome, CliError> {
    let n = args.n;
    let src = &args.source;
    let (source, d) = if let Some(alpha) = &src.alpha {
        (format!("alpha={alpha}"), a_alpha(n, alpha)?)
    } else if src.canonical {
        ("canonical".to_string(), canonical_class(n)?)
    } else if src.boundary {
        ("boundary".to_string(), boundary(n)?)
    } else if let Some(k) = src.pk {
        (format!("pk={k}"), f_simplex_vertex(n, k)?)
    } else {
        return Err(CliError::Usage("no divisor selected".into()));
    };
    let coefficients = coefficient_strings(&d);
    let report = Report::new(
        "divisor",
        Status::Info,
        json!({ "n": n, "source": source, "coefficients": coefficients }),
    )
    .param("n", n)
    .param("source", &source);
    Ok(Outcome {
        report,
        text: format!("{}\n", coefficients.join(" ")),
    })
}

pub fn fnef(args: &FnefArgs) -> Result<Outcome, CliError> {
    let n = args.n;
    let (source, d) = match &args.alpha {
        Some(alpha) => (format!("alpha={alpha}"), a_alpha(n, alpha)?),
        None => (
            "coeffs".to_string(),
            SymmetricDivisor::new(n, args.coeffs.clone())?,
        ),
    };
    let verdict = is_f_nef(&d);
    let mut text = String::new();
    match &verdict {
        FNefVerdict::Nef { contracted } => {
            let _ = writeln!(text, "F-nef: yes");
            let listed: Vec<String> = contracted.iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "contracted ({}): {}", listed.len(), listed.join(" "));
        }
        FNefVerdict::NotNef { witness, value } => {
            let _ = writeln!(text, "F-nef: no");
            let _ = writeln!(text, "witness {witness} value {value}");
            let _ = writeln!(text, "contracted ({})", contracted_partitions(&d).len());
        }
    }
    let report = Report::new(
        "fnef",
        pass_fail(verdict.is_nef()),
        json!({
            "n": n,
            "coefficients": coefficient_strings(&d),
            "result": to_value(&verdict),
        }),
    )
    .param("n", n)
    .param("source", source);
    Ok(Outcome { report, text })
}

pub fn model(args: &ModelArgs) -> Result<Outcome, CliError> {
    let n = args.n;
    let label = model_for_alpha(n, &args.alpha)?;
    let (lo, hi) = model_interval(n, label);
    let description = label.describe(n);
    let positivity = known_positivity(n, &args.alpha);
    let report = Report::new(
        "model",
        Status::Info,
        json!({
            "n": n,
            "alpha": args.alpha.to_string(),
            "label": to_value(&label),
            "description": description,
            "interval": [lo.to_string(), hi.to_string()],
            "known_positivity": to_value(&positivity),
        }),
    )
    .param("n", n)
    .param("alpha", &args.alpha);
    Ok(Outcome {
        report,
        text: format!("{description}\ninterval ({lo}, {hi}]\n"),
    })
}

struct SuiteResult {
    name: &'static str,
    passed: bool,
    payload: Value,
    text: String,
}

fn lemma_suite(max_n: usize) -> SuiteResult {
    let reports: Vec<LemmaReport> = (6..=max_n).map(verify_lemma).collect();
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    let mut case_counts = [0usize; 15];
    for r in &reports {
        for (total, c) in case_counts.iter_mut().zip(r.case_counts) {
            *total += c;
        }
    }
    let first: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.violations
                .iter()
                .map(move |v| json!({ "n": r.n, "violation": to_value(v) }))
        })
        .take(20)
        .collect();
    let mut text =
        format!("lemma: n = 6..{max_n}, {checked} (k, partition) pairs, {violations} violations\n");
    let counts: Vec<String> = case_counts
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{}:{c}", i + 1))
        .collect();
    let _ = writeln!(text, "  case counts {}", counts.join(" "));
    SuiteResult {
        name: "lemma",
        passed: violations == 0,
        payload: json!({
            "max_n": max_n,
            "checked": checked,
            "violations": violations,
            "case_counts": case_counts,
            "first_violations": first,
        }),
        text,
    }
}

fn fnef_suite(max_n: usize) -> Result<SuiteResult, CliError> {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    let mut total = 0;
    for n in 6..=max_n {
        let checks = check_breakpoints(n)?;
        let failed: Vec<usize> = checks.iter().filter(|c| !c.passed()).map(|c| c.k).collect();
        // interior points of each piece recombine exactly and stay F-nef
        let mut interior_ok = true;
        for k in 1..=n / 2 {
            let (lo, hi) = (piece_left_end(n, k), breakpoint(k));
            let mid = (&lo + &hi) / Rational::from_integer(2);
            let piece = convex_decompose_on(n, &mid, k)?;
            let direct = a_alpha(n, &mid)?;
            interior_ok &= piece.recombine(n)? == direct && is_f_nef(&direct).is_nef();
        }
        let ok = failed.is_empty() && interior_ok;
        all_ok &= ok;
        total += checks.len();
        if !ok {
            let _ = writeln!(
                text,
                "  n = {n}: failing breakpoints {failed:?}, interior ok {interior_ok}"
            );
        }
        rows.push(json!({ "n": n, "breakpoints": checks.len(), "failed_k": failed, "interior_ok": interior_ok }));
    }
    text.insert_str(
        0,
        &format!(
            "fnef: n = 6..{max_n}, {total} breakpoints, {}\n",
            if all_ok { "all F-nef" } else { "FAILURES" }
        ),
    );
    Ok(SuiteResult {
        name: "fnef",
        passed: all_ok,
        payload: json!({ "max_n": max_n, "rows": rows }),
        text,
    })
}

fn threshold_suite(max_n: usize) -> Result<SuiteResult, CliError> {
    let reports: Vec<ThresholdReport> = (6..=max_n)
        .map(pk_fnef_threshold)
        .collect::<Result<_, _>>()?;
    let mut text = format!("pk-threshold: n = 6..{max_n}\n");
    let mut all_ok = true;
    for r in &reports {
        let witness_negative = r
            .tightness
            .as_ref()
            .is_none_or(|w| w.value_at_l.is_negative());
        let ok = r.matches_expected() && witness_negative;
        all_ok &= ok;
        let threshold = r.threshold.map_or("none".into(), |t| t.to_string());
        let witness = r.tightness.as_ref().map_or(String::new(), |w| {
            format!("  witness {} at p_{}: {}", w.partition, w.l, w.value_at_l)
        });
        let _ = writeln!(
            text,
            "  n = {:>2}  threshold {threshold:>2}  ceil(n/3) {:>2}  {}{witness}",
            r.n,
            r.expected,
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    Ok(SuiteResult {
        name: "pk-threshold",
        passed: all_ok,
        payload: json!({ "max_n": max_n, "rows": to_value(&reports) }),
        text,
    })
}

fn interval_text(bounds: &Option<(Rational, Option<Rational>)>) -> String {
    match bounds {
        None => "empty".into(),
        Some((lo, Some(hi))) => format!("[{lo}, {hi}]"),
        Some((lo, None)) => format!("[{lo}, inf)"),
    }
}

fn c_interval_suite(n: usize) -> Result<SuiteResult, CliError> {
    if n < 12 {
        return Err(CliError::Usage(format!(
            "c-interval needs n >= 12 (k up to 6), got {n}"
        )));
    }
    let mut rows = Vec::new();
    let mut text =
        format!("c-interval: n = {n}; claim: feasible for k <= 5, infeasible for k = 6\n");
    let mut direct_ok = true;
    let mut printed_ok = true;
    for k in 2..=n / 2 {
        let printed = c_interval(n, k);
        let direct = direct_c_feasible(n, k)?;
        let claim = (k <= 6).then_some(k <= 5);
        if let Some(claim) = claim {
            direct_ok &= direct.is_some() == claim;
            printed_ok &= printed.is_some() == claim;
        }
        let printed_text = interval_text(&printed.clone().map(|(lo, hi)| (lo, Some(hi))));
        let _ = writeln!(
            text,
            "  k = {k:>2}  printed bounds {printed_text:<24} direct {}",
            interval_text(&direct)
        );
        rows.push(json!({
            "k": k,
            "printed_bounds": printed.map(|(lo, hi)| [lo.to_string(), hi.to_string()]),
            "direct": direct.as_ref().map(|(lo, hi)| json!({
                "lo": lo.to_string(),
                "hi": hi.as_ref().map(ToString::to_string),
            })),
            "claimed_feasible": claim,
        }));
    }
    let _ = writeln!(
        text,
        "  direct computation {} the claim; printed bounds {} it",
        if direct_ok { "matches" } else { "contradicts" },
        if printed_ok { "match" } else { "do not match" }
    );
    Ok(SuiteResult {
        name: "c-interval",
        passed: direct_ok,
        payload: json!({
            "n": n,
            "rows": rows,
            "direct_matches_claim": direct_ok,
            "printed_bounds_match_claim": printed_ok,
        }),
        text,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    if args.max_n < 6 {
        return Err(CliError::Usage(format!(
            "--max-n must be at least 6, got {}",
            args.max_n
        )));
    }
    let suites = match args.suite {
        Suite::Lemma => vec![lemma_suite(args.max_n)],
        Suite::Fnef => vec![fnef_suite(args.max_n)?],
        Suite::PkThreshold => vec![threshold_suite(args.max_n)?],
        Suite::CInterval => vec![c_interval_suite(args.n)?],
        Suite::All => vec![
            lemma_suite(args.max_n),
            fnef_suite(args.max_n)?,
            threshold_suite(args.max_n)?,
            c_interval_suite(args.n)?,
        ],
    };
    let passed = suites.iter().all(|s| s.passed);
    let mut text: String = suites.iter().map(|s| s.text.as_str()).collect();
    let failed: Vec<&str> = suites
        .iter()
        .filter(|s| !s.passed)
        .map(|s| s.name)
        .collect();
    let _ = writeln!(
        text,
        "summary: {} suite(s), {} failed{}",
        suites.len(),
        failed.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(" ({})", failed.join(", "))
        }
    );
    let payload = Value::Object(
        suites
            .into_iter()
            .map(|s| {
                (
                    s.name.to_string(),
                    json!({ "passed": s.passed, "result": s.payload }),
                )
            })
            .collect(),
    );
    let suite_name = match args.suite {
        Suite::Lemma => "lemma",
        Suite::Fnef => "fnef",
        Suite::PkThreshold => "pk-threshold",
        Suite::CInterval => "c-interval",
        Suite::All => "all",
    };
    let report = Report::new("verify", pass_fail(passed), payload)
        .param("suite", suite_name)
        .param("max_n", args.max_n)
        .param("n", args.n);
    Ok(Outcome { report, text })
}

fn face_text(face: &FaceReport) -> String {
    let mut text = String::new();
    let k = face.k.map_or("?".into(), |k| k.to_string());
    let _ = writeln!(
        text,
        "F_{k} for n = {}: projective dimension {}, {} facet(s), {} vertex/vertices",
        face.n,
        face.projective_dim,
        face.facets.len(),
        face.vertices.len()
    );
    for facet in &face.facets {
        let labels: Vec<String> = facet.labels.iter().map(ToString::to_string).collect();
        let form: Vec<String> = facet.form.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "  facet {}  [{}]", labels.join(" = "), form.join(" "));
    }
    for v in &face.vertices {
        let _ = writeln!(text, "  vertex {v}");
    }
    text
}

fn cell_text(cell: &CellComparison) -> String {
    match (&cell.expected, &cell.computed) {
        (_, None) => "-".into(),
        (_, Some(facets)) => facets
            .iter()
            .map(|labels| labels[0].clone())
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn row_text(row: &RowComparison) -> String {
    let mark = if !row.has_expected {
        "no reference"
    } else if row.matches {
        "match"
    } else {
        "MISMATCH"
    };
    let mut line = format!(
        "{:>3} | {:<28} | {:>2} | {:<40} | {mark}\n",
        row.n,
        cell_text(&row.penultimate),
        row.facet_count.map_or("-".into(), |c| c.to_string()),
        cell_text(&row.antepenultimate),
    );
    for (name, cell) in [
        ("F_{m-1}", &row.penultimate),
        ("F_{m-2}", &row.antepenultimate),
    ] {
        if !cell.matches {
            if let Some(expected) = &cell.expected {
                let _ = writeln!(
                    line,
                    "    {name}: expected {} ; not matched: {}",
                    expected.join(", "),
                    cell.unmatched.join(", ")
                );
            }
        }
    }
    if row.facet_count != row.expected_facet_count {
        let _ = writeln!(
            line,
            "    facet count: expected {:?}, computed {:?}",
            row.expected_facet_count, row.facet_count
        );
    }
    line
}

pub fn cone(args: &ConeArgs) -> Result<Outcome, CliError> {
    if args.table {
        let NRange { start, end } = args.n_range;
        if start < 6 {
            return Err(CliError::Usage(format!(
                "table rows start at n = 6, got {start}"
            )));
        }
        let rows: Vec<RowComparison> = (start..=end).map(compare_row).collect::<Result<_, _>>()?;
        let passed = rows.iter().all(|r| r.matches);
        let mut text = format!(
            "{:>3} | {:<28} | {:>2} | {:<40} |\n",
            "n", "facets of F_{m-1}", "#", "facets of F_{m-2}"
        );
        for row in &rows {
            text.push_str(&row_text(row));
        }
        let mismatches: Vec<usize> = rows.iter().filter(|r| !r.matches).map(|r| r.n).collect();
        let _ = writeln!(text, "{} row(s), mismatches: {mismatches:?}", rows.len());
        let report = Report::new(
            "cone",
            pass_fail(passed),
            json!({ "rows": to_value(&rows) }),
        )
        .param("table", true)
        .param("n_range", format!("{start}:{end}"));
        return Ok(Outcome { report, text });
    }
    let (n, k) = match (args.n, args.k) {
        (Some(n), Some(k)) => (n, k),
        _ => return Err(CliError::Usage("cone needs --n and --k, or --table".into())),
    };
    let face = facets_of_face(n, k)?;
    let report = Report::new("cone", Status::Info, to_value(&face))
        .param("n", n)
        .param("k", k);
    Ok(Outcome {
        report,
        text: face_text(&face),
    })
}

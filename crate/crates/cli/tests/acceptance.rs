//! Acceptance run: one line per criterion, written straight to stdout so it
//! survives test-output capture.

use std::io::Write;
use std::time::{Duration, Instant};

use m0n_cli::table::compare_row;
use m0n_core::cone::{
    double_description, essential_by_removal, facets_from_generators, LinearForm,
};
use m0n_core::fulton::{
    contracted_span_matches_special, f_simplex_vertex, f_simplex_vertex_from_canonical, face_cone,
    face_subspace, facets_of_face, minimal_face_of, pk_fnef_threshold,
};
use m0n_core::log_canonical::{
    a_alpha, breakpoint, c_interval, convex_decompose, direct_c_feasible, h_sum, lower_endpoint,
    model_for_alpha, model_interval, verify_lemma, ModelLabel,
};
use m0n_core::rational::{primitive_integer_vector, q};
use m0n_core::{enumerate_vital_partitions, intersect_vital, Rational, SymmetricDivisor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that fail on the published statements; see the project notes.
const EXPECTED_RED: &[u8] = &[4, 6, 7];

struct Outcome {
    id: u8,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn run(
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    check: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = check();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    if !in_time {
        detail.push_str(&format!("; over time limit {:?}", limit.unwrap()));
    }
    Outcome {
        id,
        title,
        passed: ok && in_time,
        detail,
        elapsed,
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// r_0..r_n with zero at 0, 1, n-1, n, read off the stored coefficients.
fn unfolded(d: &SymmetricDivisor) -> Vec<Rational> {
    let n = d.n();
    (0..=n)
        .map(|i| {
            if i < 2 || i + 2 > n {
                Rational::zero()
            } else {
                d.coeffs()[i.min(n - i) - 2].clone()
            }
        })
        .collect()
}

fn scan_min(d: &SymmetricDivisor) -> Option<Rational> {
    let r = unfolded(d);
    enumerate_vital_partitions(d.n())
        .iter()
        .map(|p| {
            let [a, b, c, e] = p.parts();
            &r[a + b] + &r[a + c] + &r[a + e] - &r[a] - &r[b] - &r[c] - &r[e]
        })
        .min()
}

fn criterion_1() -> (bool, String) {
    let bad: Vec<usize> = (4..=40)
        .filter(|&n| !a_alpha(n, &lower_endpoint(n)).unwrap().is_zero())
        .collect();
    (bad.is_empty(), format!("n = 4..40, nonzero at {bad:?}"))
}

fn criterion_2() -> (bool, String) {
    let mut breakpoint_failures = Vec::new();
    let mut checked = 0;
    for n in 6..=25 {
        for k in 1..=n / 2 {
            let a = a_alpha(n, &breakpoint(k)).unwrap();
            checked += 1;
            if scan_min(&a).is_some_and(|m| m.is_negative()) {
                breakpoint_failures.push((n, k));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut interior_failures = Vec::new();
    for n in 6..=25 {
        let lo = lower_endpoint(n);
        for _ in 0..40 {
            let j: i64 = rng.random_range(0..=100_000);
            let alpha = &lo + (Rational::one() - &lo) * q(j, 100_000);
            let piece = convex_decompose(n, &alpha).unwrap();
            let mixed = piece.recombine(n).unwrap();
            let ok = mixed == a_alpha(n, &alpha).unwrap()
                && !scan_min(&mixed).is_some_and(|m| m.is_negative());
            if !ok {
                interior_failures.push((n, alpha.to_string()));
            }
        }
    }
    (
        breakpoint_failures.is_empty() && interior_failures.is_empty(),
        format!(
            "{checked} breakpoints, negative at {breakpoint_failures:?}; 800 sampled alpha, decomposition failures {interior_failures:?}"
        ),
    )
}

fn criterion_3() -> (bool, String) {
    let mut checked = 0;
    let mut violations = 0;
    let mut case_15 = 0;
    let mut oracle_mismatch = 0;
    for n in 6..=30 {
        let report = verify_lemma(n);
        checked += report.checked;
        violations += report.violations.len();
        case_15 += report.case_counts[14];
        for k in 2..n / 2 {
            let a = a_alpha(n, &breakpoint(k)).unwrap();
            for p in enumerate_vital_partitions(n) {
                if h_sum(n, k, &p) != intersect_vital(&a, &p).unwrap() {
                    oracle_mismatch += 1;
                }
            }
        }
    }
    (
        violations == 0 && case_15 == 0 && oracle_mismatch == 0,
        format!(
            "{checked} (n, k, partition) triples, {violations} violations, case 15 seen {case_15} times, h-sum vs intersection mismatches {oracle_mismatch}"
        ),
    )
}

fn criterion_4() -> (bool, String) {
    let n = 20;
    let printed: Vec<bool> = (2..=6).map(|k| c_interval(n, k).is_some()).collect();
    let direct: Vec<bool> = (2..=6)
        .map(|k| direct_c_feasible(n, k).unwrap().is_some())
        .collect();
    let claim = vec![true, true, true, true, false];
    let mut direct_other_n = true;
    for m in 14..=30 {
        let verdicts: Vec<bool> = (2..=6)
            .map(|k| direct_c_feasible(m, k).unwrap().is_some())
            .collect();
        direct_other_n &= verdicts == claim;
    }
    let printed_ok = printed == claim;
    let direct_ok = direct == claim;
    (
        printed_ok && direct_ok,
        format!(
            "n = 20, k = 2..6: printed inequalities feasible {printed:?} (claim {claim:?}) {}; direct {direct:?} {}; direct matches claim for n = 14..30: {direct_other_n}",
            if printed_ok { "ok" } else { "FAIL" },
            if direct_ok { "ok" } else { "FAIL" },
        ),
    )
}

fn criterion_5() -> (bool, String) {
    let mut disagreements = Vec::new();
    let mut not_proportional = Vec::new();
    let mut degenerate = Vec::new();
    for n in 4..=40 {
        let m = n / 2;
        for k in 2..=m {
            if f_simplex_vertex(n, k).unwrap() != f_simplex_vertex_from_canonical(n, k).unwrap() {
                disagreements.push((n, k));
            }
        }
        // at n = 4 the breakpoint 2/(m+1) is the lower endpoint, where A is zero
        let a = a_alpha(n, &breakpoint(m)).unwrap();
        if a.is_zero() {
            degenerate.push(n);
            continue;
        }
        if !f_simplex_vertex(n, m).unwrap().is_positive_multiple_of(&a) {
            not_proportional.push(n);
        }
    }
    (
        disagreements.is_empty() && not_proportional.is_empty() && degenerate == [4],
        format!(
            "n = 4..40: formula disagreements {disagreements:?}; p_m not proportional to A at {not_proportional:?}; A zero (no projective point) at n = {degenerate:?}"
        ),
    )
}

fn criterion_6() -> (bool, String) {
    let mut wrong_threshold = Vec::new();
    let mut not_negative = Vec::new();
    let mut not_minus_one = Vec::new();
    for n in 6..=40 {
        let r = pk_fnef_threshold(n).unwrap();
        if !r.matches_expected() {
            wrong_threshold.push(n);
        }
        if let Some(w) = r.tightness {
            if !w.value_at_l.is_negative() {
                not_negative.push(n);
            }
            if w.value_at_l != q(-1, 1) {
                not_minus_one.push(format!("n={n} (p={}): {}", w.p, w.value_at_l));
            }
        }
    }
    let threshold_ok = wrong_threshold.is_empty();
    let negative_ok = not_negative.is_empty();
    let exact_ok = not_minus_one.is_empty();
    let shown: Vec<&String> = not_minus_one.iter().take(6).collect();
    (
        threshold_ok && negative_ok && exact_ok,
        format!(
            "threshold = ceil(n/3) for n = 6..40: {}; witness negative: {}; witness exactly -1: {} ({} values differ, e.g. {shown:?})",
            if threshold_ok { "ok" } else { "FAIL" },
            if negative_ok { "ok" } else { "FAIL" },
            if exact_ok { "ok" } else { "FAIL" },
            not_minus_one.len(),
        ),
    )
}

fn criterion_7() -> (bool, String) {
    let rows: Vec<_> = (6..=20).map(|n| compare_row(n).unwrap()).collect();
    let printed_mismatch: Vec<String> = rows
        .iter()
        .filter(|r| r.n <= 14 && !r.matches)
        .map(|r| {
            let mut missing = r.penultimate.unmatched.clone();
            missing.extend(r.antepenultimate.unmatched.iter().cloned());
            format!("n={} unmatched {missing:?}", r.n)
        })
        .collect();
    let counts: Vec<usize> = rows
        .iter()
        .filter(|r| (8..=14).contains(&r.n))
        .map(|r| r.facet_count.unwrap_or(0))
        .collect();
    let counts_ok = counts == [4, 4, 4, 4, 3, 4, 3];
    let stable_ok = rows.iter().filter(|r| r.n >= 14).all(|r| r.matches);
    (
        printed_mismatch.is_empty() && counts_ok && stable_ok,
        format!(
            "rows 6..14 mismatching: {printed_mismatch:?}; facet counts {counts:?} {}; stable pattern n = 14..20: {}",
            if counts_ok { "ok" } else { "FAIL" },
            if stable_ok { "ok" } else { "FAIL" },
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let mut span_failures = Vec::new();
    let mut dim_failures = Vec::new();
    let mut checked = 0;
    for n in 6..=20 {
        let m = n / 2;
        for k in 2..=m {
            checked += 1;
            if !contracted_span_matches_special(n, k).unwrap() {
                span_failures.push((n, k));
            }
            let expected = (m - k) as isize;
            let face = facets_of_face(n, k).unwrap();
            let minimal = minimal_face_of(&a_alpha(n, &breakpoint(k)).unwrap()).unwrap();
            if face.projective_dim != expected || minimal.projective_dim != expected {
                dim_failures.push((n, k));
            }
        }
    }
    (
        span_failures.is_empty() && dim_failures.is_empty(),
        format!("{checked} (n, k) pairs; span failures {span_failures:?}; dimension failures {dim_failures:?}"),
    )
}

fn sorted_primitive(forms: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = forms.iter().map(|f| primitive_integer_vector(f)).collect();
    out.sort();
    out.dedup();
    out
}

fn criterion_9() -> (bool, String) {
    let ints = |v: &[i64]| -> Vec<Rational> { v.iter().map(|&x| q(x, 1)).collect() };
    let orthant: Vec<LinearForm> = (0..3)
        .map(|i| {
            let mut v = vec![0; 3];
            v[i] = 1;
            LinearForm::derived(ints(&v))
        })
        .collect();
    let cone = double_description(3, &orthant).unwrap();
    let orthant_ok = cone.rays.len() == 3 && cone.facets.len() == 3;
    let mut doubled = orthant.clone();
    doubled.push(orthant[0].clone());
    let cone = double_description(3, &doubled).unwrap();
    let duplicate_ok = cone.facets.len() == 3 && cone.redundant == vec![3];

    let mut instances = 0;
    let mut failures = Vec::new();
    for n in 6..=24 {
        let m = n / 2;
        for k in 2..=m {
            let basis = face_subspace(n, k).unwrap();
            let dim = basis.reduced_dim();
            if dim > 6 {
                continue;
            }
            instances += 1;
            let (cone, _) = face_cone(n, &basis).unwrap();
            let normals = facets_from_generators(dim, &cone.rays, &cone.lineality).unwrap();
            let facets: Vec<Vec<Rational>> = cone
                .facet_forms()
                .iter()
                .map(|f| f.coeffs.clone())
                .collect();
            let round_trip = sorted_primitive(&facets) == normals;
            let removal_ok = cone.halfspaces.len() > 60
                || essential_by_removal(dim, &cone.halfspaces)
                    .unwrap()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| e == cone.facets.contains(&i));
            if !(round_trip && removal_ok) {
                failures.push((n, k));
            }
        }
    }
    (
        orthant_ok && duplicate_ok && failures.is_empty(),
        format!(
            "orthant {orthant_ok}, duplicate {duplicate_ok}; {instances} face instances (n = 6..24, reduced dim <= 6), failures {failures:?}"
        ),
    )
}

fn criterion_10() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    let mut overlaps = Vec::new();
    for n in 5..=30 {
        let m = n / 2;
        let low = lower_endpoint(n);
        let mut labels: Vec<ModelLabel> = (1..m).map(|k| ModelLabel::Hassett { k }).collect();
        labels.push(ModelLabel::GitQuotient);
        let intervals: Vec<(Rational, Rational)> =
            labels.iter().map(|&l| model_interval(n, l)).collect();
        // consecutive, no gap, no overlap, from 1 down to 2/(n-1)
        let mut chain_ok = intervals[0].1 == Rational::one();
        for pair in intervals.windows(2) {
            chain_ok &= pair[0].0 == pair[1].1;
        }
        chain_ok &= intervals.last().unwrap().0 == low;
        let mut points: Vec<Rational> = intervals.iter().map(|(_, hi)| hi.clone()).collect();
        for _ in 0..1000 {
            let j: i64 = rng.random_range(1..=1_000_000);
            points.push(&low + (Rational::one() - &low) * q(j, 1_000_000));
        }
        let single_valued = points.iter().all(|x| {
            let hits = intervals
                .iter()
                .filter(|(lo, hi)| lo < x && x <= hi)
                .count();
            let label = model_for_alpha(n, x).unwrap();
            let (lo, hi) = model_interval(n, label);
            hits == 1 && &lo < x && x <= &hi
        });
        let rejects_low = model_for_alpha(n, &low).is_err();
        if !(chain_ok && single_valued && rejects_low) {
            failures.push(n);
        }
        // the Hassett range read literally runs to floor((n-1)/2)
        if (n - 1) / 2 == m {
            let (lo, hi) = model_interval(n, ModelLabel::Hassett { k: m });
            if lo >= low && hi <= breakpoint(m) {
                overlaps.push(n);
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "n = 5..30, endpoints plus 1000 random alpha each, failures {failures:?}; literal Hassett(floor((n-1)/2)) interval lies inside the GIT interval for n = {overlaps:?} (GIT label used there)"
        ),
    )
}

#[test]
fn acceptance() {
    let outcomes = vec![
        run(
            1,
            "zero divisor at the lower endpoint",
            secs(1),
            criterion_1,
        ),
        run(
            2,
            "A_alpha is F-nef at every breakpoint and in between",
            secs(10),
            criterion_2,
        ),
        run(3, "lemma oracle", secs(60), criterion_3),
        run(4, "c-interval verdicts", None, criterion_4),
        run(5, "p_k formulas", None, criterion_5),
        run(6, "F-nef threshold of p_k", secs(30), criterion_6),
        run(7, "table reproduction", secs(60), criterion_7),
        run(8, "minimal-face span and dimension", None, criterion_8),
        run(9, "polyhedral engine self-consistency", None, criterion_9),
        run(10, "model map tiles the alpha domain", None, criterion_10),
    ];
    let mut out = std::io::stdout().lock();
    for o in &outcomes {
        let _ = writeln!(
            out,
            "[{}] criterion {:>2}: {} ({:.2} s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.elapsed.as_secs_f64(),
            o.detail
        );
    }
    let red: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    let _ = writeln!(
        out,
        "acceptance: {} of {} criteria pass; failing {red:?}",
        outcomes.len() - red.len(),
        outcomes.len()
    );
    drop(out);
    assert_eq!(
        red, EXPECTED_RED,
        "failing criteria differ from the recorded set"
    );
}

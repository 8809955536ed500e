//! The divisors `A_alpha`, their piecewise structure in `alpha`, the model
//! attached to each `alpha`, and the exhaustive check of the vital-curve
//! inequalities at the breakpoints `alpha = 2/(k+1)`.
//!
//! For `2/(n-1) <= alpha <= 1` let `k` be the largest integer in
//! `1..=floor(n/2)` with `alpha <= 2/(k+1)`. Then
//!
//! ```text
//! A_alpha = K + sum_{j<=k} (C(j,2) alpha - (j-2)) D_j + sum_{j>k} alpha D_j.
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::divisor::{
    boundary, canonical_class, enumerate_vital_partitions, intersect_vital, SymmetricDivisor,
    VitalPartition,
};
use crate::error::{Error, Result};
use crate::rational::{q, Rational};

fn binom2(j: usize) -> i64 {
    let j = j as i64;
    j * (j - 1) / 2
}

/// `2 / (m + 1)`, the breakpoint attached to `m`.
pub fn breakpoint(m: usize) -> Rational {
    q(2, m as i64 + 1)
}

/// Smallest admissible `alpha`, `2/(n-1)`, where `A_alpha` vanishes.
pub fn lower_endpoint(n: usize) -> Rational {
    q(2, n as i64 - 1)
}

fn check_closed_range(n: usize, alpha: &Rational) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidN(n, 4));
    }
    if *alpha < lower_endpoint(n) || *alpha > Rational::one() {
        return Err(Error::AlphaOutOfRange {
            n,
            alpha: alpha.clone(),
            range: "[2/(n-1), 1]",
        });
    }
    Ok(())
}

/// A validated `(n, alpha)` pair together with its threshold `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaParam {
    pub n: usize,
    pub alpha: Rational,
    pub k: usize,
}

impl AlphaParam {
    pub fn new(n: usize, alpha: Rational) -> Result<Self> {
        let k = threshold_k(n, &alpha)?;
        Ok(AlphaParam { n, alpha, k })
    }
}

/// Largest `k` in `1..=floor(n/2)` with `alpha <= 2/(k+1)`.
pub fn threshold_k(n: usize, alpha: &Rational) -> Result<usize> {
    check_closed_range(n, alpha)?;
    Ok((1..=n / 2)
        .rev()
        .find(|&k| *alpha <= breakpoint(k))
        .expect("alpha <= 1 = 2/(1+1)"))
}

/// The divisor `A_alpha` for `2/(n-1) <= alpha <= 1`.
pub fn a_alpha(n: usize, alpha: &Rational) -> Result<SymmetricDivisor> {
    let k = threshold_k(n, alpha)?;
    let canonical = canonical_class(n)?;
    SymmetricDivisor::from_fn(n, |j| {
        let kappa = &canonical.coeffs()[j - 2];
        if j <= k {
            kappa + Rational::from_integer(binom2(j)) * alpha - Rational::from_integer(j as i64 - 2)
        } else {
            kappa + alpha
        }
    })
}

/// `K + alpha D - A_alpha`, supported on `D_3, ..., D_k` with coefficients
/// `(j-2) + alpha (1 - C(j,2)) >= 0`.
pub fn exceptional_divisor(n: usize, alpha: &Rational) -> Result<SymmetricDivisor> {
    let log_canonical = canonical_class(n)?.add(&boundary(n)?.scale(alpha))?;
    log_canonical.sub(&a_alpha(n, alpha)?)
}

/// The model of `alpha`, as a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelLabel {
    /// Weighted pointed curves with all `n` weights equal to `1/k`.
    Hassett { k: usize },
    /// The GIT quotient `(P^1)^n // SL_2`.
    GitQuotient,
}

impl ModelLabel {
    /// Human label, e.g. `Hassett(3) weights 1/3 x10`.
    pub fn describe(&self, n: usize) -> String {
        match self {
            ModelLabel::Hassett { k } => format!("Hassett({k}) weights 1/{k} \u{d7}{n}"),
            ModelLabel::GitQuotient => format!("GIT (P^1)^{n}//SL_2"),
        }
    }
}

impl fmt::Display for ModelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelLabel::Hassett { k } => write!(f, "Hassett({k})"),
            ModelLabel::GitQuotient => f.write_str("GIT"),
        }
    }
}

/// The half-open interval `(lo, hi]` on which a model label is returned.
pub fn model_interval(n: usize, label: ModelLabel) -> (Rational, Rational) {
    match label {
        ModelLabel::Hassett { k } => (breakpoint(k + 1), breakpoint(k)),
        ModelLabel::GitQuotient => (lower_endpoint(n), breakpoint(n / 2)),
    }
}

/// Model attached to `alpha in (2/(n-1), 1]`.
///
/// `Hassett(k)` on `(2/(k+2), 2/(k+1)]` for `k < floor(n/2)`, and the GIT
/// quotient on `(2/(n-1), 2/(floor(n/2)+1)]`. For odd `n` the weight-`1/floor(n/2)`
/// Hassett interval lies inside the GIT interval (the two spaces coincide);
/// the GIT label is returned there so the labels tile the domain.
pub fn model_for_alpha(n: usize, alpha: &Rational) -> Result<ModelLabel> {
    if n >= 4 && *alpha == lower_endpoint(n) {
        return Err(Error::AlphaOutOfRange {
            n,
            alpha: alpha.clone(),
            range: "(2/(n-1), 1]",
        });
    }
    let k = threshold_k(n, alpha)?;
    if k == n / 2 {
        Ok(ModelLabel::GitQuotient)
    } else {
        Ok(ModelLabel::Hassett { k })
    }
}

/// Positivity known for `A_alpha` on fixed `alpha`-ranges; reported as labels only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownPositivity {
    /// `2/3 < alpha <= 1`.
    Ample,
    /// `2/(n-1) < alpha <= 2/(floor(n/2)+1)`.
    SemiAmple,
}

pub fn known_positivity(n: usize, alpha: &Rational) -> Option<KnownPositivity> {
    if *alpha > q(2, 3) && *alpha <= Rational::one() {
        Some(KnownPositivity::Ample)
    } else if *alpha > lower_endpoint(n) && *alpha <= breakpoint(n / 2) {
        Some(KnownPositivity::SemiAmple)
    } else {
        None
    }
}

/// `alpha = t * left + (1 - t) * right` on the piece of index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexDecomposition {
    pub k: usize,
    pub t: Rational,
    pub left: Rational,
    pub right: Rational,
}

/// Left end of the piece on which `A_alpha` uses threshold `k`.
///
/// `2/(k+2)` for `k < floor(n/2)`; the last piece runs down to `2/(n-1)`.
pub fn piece_left_end(n: usize, k: usize) -> Rational {
    if k < n / 2 {
        breakpoint(k + 1)
    } else {
        lower_endpoint(n)
    }
}

/// Decomposition of `alpha` on the piece chosen by [`threshold_k`].
pub fn convex_decompose(n: usize, alpha: &Rational) -> Result<ConvexDecomposition> {
    let k = threshold_k(n, alpha)?;
    convex_decompose_on(n, alpha, k)
}

/// Decomposition of `alpha` on the piece with index `k`; `alpha` must lie in
/// `[piece_left_end(n, k), 2/(k+1)]`. Endpoints shared by two pieces are
/// accepted by both.
pub fn convex_decompose_on(n: usize, alpha: &Rational, k: usize) -> Result<ConvexDecomposition> {
    check_closed_range(n, alpha)?;
    if k == 0 || k > n / 2 {
        return Err(Error::KOutOfRange {
            n,
            k,
            min: 1,
            max: n / 2,
        });
    }
    let left = piece_left_end(n, k);
    let right = breakpoint(k);
    if *alpha < left || *alpha > right {
        return Err(Error::AlphaOutOfRange {
            n,
            alpha: alpha.clone(),
            range: "the piece of the requested k",
        });
    }
    let t = (&right - alpha) / (&right - &left);
    Ok(ConvexDecomposition { k, t, left, right })
}

impl ConvexDecomposition {
    /// `t * A_left + (1 - t) * A_right`.
    pub fn recombine(&self, n: usize) -> Result<SymmetricDivisor> {
        let left = a_alpha(n, &self.left)?.scale(&self.t);
        let right = a_alpha(n, &self.right)?.scale(&(Rational::one() - &self.t));
        left.add(&right)
    }
}

/// `h(j)` at `alpha = 2/(k+1)`: `f(j)` for `j <= k`, `g(j)` for `k < j < n-k`,
/// `f(n-j)` for `j >= n-k`, where
/// `f(j) = j(j-1)((n-1)alpha/2 - 1)/(n-1)` and
/// `g(j) = ((n-1)(alpha + j - 2) - j(j-1))/(n-1)`.
pub fn h_value(n: usize, k: usize, j: usize) -> Rational {
    let alpha = breakpoint(k);
    let nm1 = Rational::from_integer(n as i64 - 1);
    let f = |j: usize| {
        let jj = Rational::from_integer((j * j.saturating_sub(1)) as i64);
        jj * (&nm1 * &alpha / q(2, 1) - Rational::one()) / &nm1
    };
    let g = |j: usize| {
        let j = j as i64;
        (&nm1 * (&alpha + Rational::from_integer(j - 2)) - Rational::from_integer(j * (j - 1)))
            / &nm1
    };
    if j <= k {
        f(j)
    } else if j + k < n {
        g(j)
    } else {
        f(n.saturating_sub(j))
    }
}

/// `h(a+b) + h(a+c) + h(a+d) - h(a) - h(b) - h(c) - h(d)`.
pub fn h_sum(n: usize, k: usize, p: &VitalPartition) -> Rational {
    let [a, b, c, d] = p.parts();
    let h = |j| h_value(n, k, j);
    h(a + b) + h(a + c) + h(a + d) - h(a) - h(b) - h(c) - h(d)
}

/// Index of one of the fifteen `(k, partition)` regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseId(u8);

impl CaseId {
    pub fn new(id: u8) -> Option<Self> {
        (1..=15).contains(&id).then_some(CaseId(id))
    }

    pub fn get(&self) -> u8 {
        self.0
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.0)
    }
}

/// Condition of each case, in list order, for sorted `a <= b <= c <= d`.
fn case_conditions(k: usize, p: &VitalPartition) -> [bool; 15] {
    let [a, b, c, d] = p.parts();
    let le = |x: usize| x <= k;
    [
        a > k,
        le(a) && b > k,
        le(b) && c > k && a + b > k,
        le(b) && c > k && le(a + b),
        le(c) && d > k && a + b > k,
        le(c) && d > k && le(a + b) && a + c > k,
        le(c) && d > k && le(a + c) && b + c > k,
        le(c) && d > k && le(b + c) && a + b + c > k,
        le(c) && d > k && le(b + c) && le(a + b + c),
        le(d) && a + b > k,
        le(d) && le(a + b) && a + c > k,
        le(d) && le(a + c) && a + d > k && b + c > k,
        le(d) && le(a + c) && le(a + d) && b + c > k,
        le(d) && le(a + c) && a + d > k && le(b + c),
        le(d) && le(a + c) && le(a + d) && le(b + c),
    ]
}

/// Every case whose condition holds. Exactly one for sorted input.
pub fn matching_cases(k: usize, p: &VitalPartition) -> Vec<CaseId> {
    case_conditions(k, p)
        .iter()
        .enumerate()
        .filter(|(_, hit)| **hit)
        .map(|(i, _)| CaseId(i as u8 + 1))
        .collect()
}

/// First case (in list order) whose condition holds.
pub fn classify_case(k: usize, p: &VitalPartition) -> CaseId {
    let hit = case_conditions(k, p)
        .iter()
        .position(|h| *h)
        .expect("the fifteen conditions cover every sorted partition");
    CaseId(hit as u8 + 1)
}

/// Closed form of the h-sum in the given case. Case 15 is empty for
/// `k < floor(n/2)` and is reported as [`Error::EmptyCase`].
///
/// Case 14 is `(n - 2d)(n - 2 - k)/(1 + k)`: there `h(a+d) = f(b+c)`, the
/// binomial identity collapses the `f`-terms to `f(n-d) - f(d)`, and the
/// common factor `(n - 2 - k)` of `f` survives (as it does in case 13).
pub fn case_closed_form(n: usize, k: usize, p: &VitalPartition, case: CaseId) -> Result<Rational> {
    let [a, b, c, d] = p.parts().map(|x| x as i64);
    let (n, k) = (n as i64, k as i64);
    let numer = match case.0 {
        1 => 2 * k,
        2 => a * (2 + k - a),
        3 => (b - 2) * (k - b) + a * (2 + k - a),
        4 => 2 * a * b,
        5 => (k - c) * (c - 2) + (k - b) * (b - 2) + a * (2 + k - a),
        6 => 2 * a * b + (c - 2) * (k - c),
        7 => a * (a + 2 * b + 2 * c - 2 - k),
        8 => (a + b + c - 2) * (a + b + c - k),
        9 => 0,
        10 => (k - d) * (d - 2) + (k - c) * (c - 2) + (k - b) * (b - 2) + a * (2 + k - a),
        11 => 2 * a * b + (c - 2) * (k - c) + (d - 2) * (k - d),
        12 => a * (2 * b + 2 * c + a - 2 - k) + (d - 2) * (k - d),
        13 => 2 * a * (n - 2 - k),
        14 => (n - 2 * d) * (n - 2 - k),
        _ => return Err(Error::EmptyCase),
    };
    Ok(q(numer, 1 + k))
}

/// One failed check in [`verify_lemma`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaViolation {
    Negative {
        k: usize,
        partition: VitalPartition,
        value: Rational,
    },
    ClosedFormMismatch {
        k: usize,
        partition: VitalPartition,
        case: CaseId,
        direct: Rational,
        closed_form: Rational,
    },
    EmptyCaseOccurred {
        k: usize,
        partition: VitalPartition,
    },
    AmbiguousCase {
        k: usize,
        partition: VitalPartition,
        cases: Vec<CaseId>,
    },
    ZeroSetMismatch {
        k: usize,
        partition: VitalPartition,
        value: Rational,
    },
    CoefficientMismatch {
        k: usize,
        j: usize,
        h: Rational,
        coefficient: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub n: usize,
    /// Number of `(k, partition)` pairs examined.
    pub checked: usize,
    /// How often each case occurred, indexed by case number minus one.
    pub case_counts: [usize; 15],
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive check over `k in 2..floor(n/2)` and all vital partitions:
/// the h-sum is nonnegative, equals the closed form of its case, vanishes
/// exactly when `a + b + c <= k`, case 15 never occurs, the case
/// classification is unambiguous, and `h` agrees with the coefficients of
/// `A_{2/(k+1)}`.
pub fn verify_lemma(n: usize) -> LemmaReport {
    let mut report = LemmaReport {
        n,
        checked: 0,
        case_counts: [0; 15],
        violations: Vec::new(),
    };
    if n < 6 {
        return report;
    }
    let partitions = enumerate_vital_partitions(n);
    for k in 2..n / 2 {
        let divisor = a_alpha(n, &breakpoint(k)).expect("breakpoint is admissible");
        for j in 1..n {
            let h = h_value(n, k, j);
            let coefficient = divisor.coefficient(j).expect("1 <= j < n");
            if h != coefficient {
                report.violations.push(LemmaViolation::CoefficientMismatch {
                    k,
                    j,
                    h,
                    coefficient,
                });
            }
        }
        for p in &partitions {
            report.checked += 1;
            let direct = h_sum(n, k, p);
            let matches = matching_cases(k, p);
            if matches.len() != 1 {
                report.violations.push(LemmaViolation::AmbiguousCase {
                    k,
                    partition: *p,
                    cases: matches,
                });
            }
            let case = classify_case(k, p);
            report.case_counts[case.0 as usize - 1] += 1;
            match case_closed_form(n, k, p, case) {
                Ok(closed_form) if closed_form != direct => {
                    report.violations.push(LemmaViolation::ClosedFormMismatch {
                        k,
                        partition: *p,
                        case,
                        direct: direct.clone(),
                        closed_form,
                    })
                }
                Ok(_) => {}
                Err(_) => report
                    .violations
                    .push(LemmaViolation::EmptyCaseOccurred { k, partition: *p }),
            }
            if direct.is_negative() {
                report.violations.push(LemmaViolation::Negative {
                    k,
                    partition: *p,
                    value: direct.clone(),
                });
            }
            if direct.is_zero() != (p.a() + p.b() + p.c() <= k) {
                report.violations.push(LemmaViolation::ZeroSetMismatch {
                    k,
                    partition: *p,
                    value: direct,
                });
            }
        }
    }
    report
}

/// Result of checking `A_alpha` at every breakpoint for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakpointCheck {
    pub k: usize,
    pub alpha: Rational,
    pub min_intersection: Rational,
    /// Whether the zero set is exactly `{a + b + c <= k}`.
    pub contracted_match: bool,
    /// Whether `K + alpha D - A_alpha` is effective and supported on `D_3..D_k`.
    pub exceptional_ok: bool,
}

impl BreakpointCheck {
    pub fn passed(&self) -> bool {
        !self.min_intersection.is_negative() && self.contracted_match && self.exceptional_ok
    }
}

/// Checks the vital inequalities for `A_{2/(k+1)}`, `k = 1..=floor(n/2)`.
pub fn check_breakpoints(n: usize) -> Result<Vec<BreakpointCheck>> {
    let partitions = enumerate_vital_partitions(n);
    (1..=n / 2)
        .map(|k| {
            let alpha = breakpoint(k);
            let divisor = a_alpha(n, &alpha)?;
            let mut min_intersection: Option<Rational> = None;
            let mut contracted_match = true;
            for p in &partitions {
                let value = intersect_vital(&divisor, p)?;
                contracted_match &= value.is_zero() == (p.a() + p.b() + p.c() <= k);
                if min_intersection.as_ref().is_none_or(|m| value < *m) {
                    min_intersection = Some(value);
                }
            }
            let exceptional = exceptional_divisor(n, &alpha)?;
            let exceptional_ok = exceptional
                .coeffs()
                .iter()
                .enumerate()
                .all(|(i, c)| !c.is_negative() && (c.is_zero() || (3..=k).contains(&(i + 2))));
            Ok(BreakpointCheck {
                k,
                alpha,
                min_intersection: min_intersection.unwrap_or_else(Rational::zero),
                contracted_match,
                exceptional_ok,
            })
        })
        .collect()
}

/// `(lo, hi)` when the four bounds on `c` coming from the lowest and highest
/// coefficients of `c A_alpha - K` (at `alpha = 2/(k+1)`) can hold together:
///
/// ```text
/// c >= (k+1)/(n-1) + (k+1)/6,   c <= (k+1)/(n-1) + (k+1)/k,
/// c >= ((m-2)(n+m)+2) / ((n-1)(m-2+alpha)),   c <= k(n-k) / ((n-1)(k-1+alpha)),
/// ```
///
/// with `m = floor(n/2)`, taken exactly as written. These bounds are not
/// derived from the true coefficients of `c A_alpha - K`; use
/// [`direct_c_feasible`] for the exact answer.
pub fn c_interval(n: usize, k: usize) -> Option<(Rational, Rational)> {
    let bounds = c_interval_bounds(n, k);
    let lo = bounds[0].clone().max(bounds[2].clone());
    let hi = bounds[1].clone().min(bounds[3].clone());
    (lo <= hi).then_some((lo, hi))
}

/// The four bounds of [`c_interval`] as `[lower1, upper1, lower2, upper2]`.
pub fn c_interval_bounds(n: usize, k: usize) -> [Rational; 4] {
    let alpha = breakpoint(k);
    let (ni, ki, m) = (n as i64, k as i64, (n / 2) as i64);
    let kp1 = Rational::from_integer(ki + 1);
    let nm1 = Rational::from_integer(ni - 1);
    [
        &kp1 / &nm1 + &kp1 / q(6, 1),
        &kp1 / &nm1 + &kp1 / q(ki, 1),
        q((m - 2) * (ni + m) + 2, 1) / (&nm1 * (q(m - 2, 1) + &alpha)),
        q(ki * (ni - ki), 1) / (&nm1 * (q(ki - 1, 1) + &alpha)),
    ]
}

/// Exact set of `c >= 0` with every coefficient of `c A_alpha - K` in `[0, 1]`,
/// `alpha = 2/(k+1)`. Returns `(lo, hi)` with `hi = None` when unbounded.
pub fn direct_c_feasible(n: usize, k: usize) -> Result<Option<(Rational, Option<Rational>)>> {
    let a = a_alpha(n, &breakpoint(k))?;
    let canonical = canonical_class(n)?;
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    // coefficient_j(c) = slope * c - kappa_j must lie in [0, 1]
    for (slope, kappa) in a.coeffs().iter().zip(canonical.coeffs()) {
        for (target, is_lower) in [(kappa.clone(), true), (kappa + Rational::one(), false)] {
            if slope.is_zero() {
                let constant = -kappa;
                let ok = if is_lower {
                    !constant.is_negative()
                } else {
                    constant <= Rational::one()
                };
                if !ok {
                    return Ok(None);
                }
                continue;
            }
            let root = &target / slope;
            if is_lower == slope.is_positive() {
                lo = lo.max(root);
            } else {
                hi = Some(match hi {
                    Some(h) => h.min(root),
                    None => root,
                });
            }
        }
    }
    match hi {
        Some(h) if h < lo => Ok(None),
        hi => Ok(Some((lo, hi))),
    }
}

//! The cone `F` of F-nef symmetric divisors in coordinates `(r_2, ..., r_m)`,
//! `m = floor(n/2)`, and its faces `F_k = F ∩ V_1 ∩ ... ∩ V_{k-2}`.
//!
//! `V_i` is the hyperplane of the partition `1 + 1 + i + (n - i - 2)`, with
//! equation `r_2 + 2 r_{i+1} - r_i - r_{i+2} = 0` after folding indices.
//! The vertices `p_k` of the simplex cut out by `V_1, ..., V_{m-1}` have
//!
//! ```text
//! r_i = 2/(n-1) * C(i,2)                          for i <= k
//! r_i = 2/(n-1) * (C(i,2) - (i-k)(n-1)/2)         for i > k
//! ```
//!
//! and lie on every `V_i` with `i != k - 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cone::{double_description, ConeDescription, FormLabel, LinearForm};
use crate::divisor::{
    canonical_class, contracted_partitions, enumerate_vital_partitions, intersect_vital, is_f_nef,
    FNefVerdict, SymmetricDivisor, VitalPartition,
};
use crate::error::{Error, Result};
use crate::linalg::{combine, dot, nullspace, span_contains};
use crate::rational::{primitive_integer_vector, q, Rational};

fn binom2(j: usize) -> i64 {
    let j = j as i64;
    j * (j - 1) / 2
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidN(n, 4));
    }
    if k < 2 || k > n / 2 {
        return Err(Error::KOutOfRange {
            n,
            k,
            min: 2,
            max: n / 2,
        });
    }
    Ok(())
}

/// The form `r -> intersect_vital(r, p)` on `(r_2, ..., r_m)`, canonical.
pub fn vital_form(n: usize, p: &VitalPartition) -> Result<LinearForm> {
    if n < 4 {
        return Err(Error::InvalidN(n, 4));
    }
    if p.n() != n {
        return Err(Error::MismatchedN(n, p.n()));
    }
    let m = n / 2;
    let mut coeffs = vec![Rational::zero(); m - 1];
    let mut bump = |i: usize, delta: i64| {
        let i = if i > m { n - i } else { i };
        if i >= 2 {
            coeffs[i - 2] += Rational::from_integer(delta);
        }
    };
    let [a, b, c, d] = p.parts();
    for x in [a + b, a + c, a + d] {
        bump(x, 1);
    }
    for x in [a, b, c, d] {
        bump(x, -1);
    }
    Ok(LinearForm::new(coeffs, FormLabel::for_partition(*p)).canonical())
}

/// `V_i`, the form of `(1, 1, i, n - i - 2)`, for `1 <= i <= floor(n/2) - 1`.
pub fn special_hyperplane(n: usize, i: usize) -> Result<LinearForm> {
    if n < 4 {
        return Err(Error::InvalidN(n, 4));
    }
    if i == 0 || i + 1 > n / 2 {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n / 2 - 1,
        });
    }
    vital_form(n, &VitalPartition::new([1, 1, i, n - i - 2])?)
}

/// The vertex `p_k`, `2 <= k <= floor(n/2)`, from its explicit coordinates.
pub fn f_simplex_vertex(n: usize, k: usize) -> Result<SymmetricDivisor> {
    check_k(n, k)?;
    let nm1 = n as i64 - 1;
    SymmetricDivisor::from_fn(n, |i| {
        let base = q(binom2(i), 1);
        let r = if i <= k {
            base
        } else {
            base - q((i - k) as i64 * nm1, 2)
        };
        q(2, nm1) * r
    })
}

/// The same vertex written as `-K + sum_{i<=k} (i-2) D_i + sum_{i>k} (k-2) D_i`.
pub fn f_simplex_vertex_from_canonical(n: usize, k: usize) -> Result<SymmetricDivisor> {
    check_k(n, k)?;
    let minus_k = canonical_class(n)?.scale(&q(-1, 1));
    let shift = SymmetricDivisor::from_fn(n, |i| q(i.min(k) as i64 - 2, 1))?;
    minus_k.add(&shift)
}

/// The failing vertex and partition for `n = 3l + p`, `p in {1,2,3}`, `l >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessWitness {
    pub l: usize,
    pub p: usize,
    pub partition: VitalPartition,
    /// `p_l . C` for the vertex in the `-K + sum` normalization.
    pub value_at_l: Rational,
    /// Index `floor(n/2) - l` of the alternative reading of the failing vertex.
    pub alternative_index: usize,
    /// `p_{floor(n/2)-l} . C`, when that index is a valid vertex.
    pub value_at_alternative: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub n: usize,
    /// Least `k` with `p_k` F-nef.
    pub threshold: Option<usize>,
    /// Every `k` with `p_k` F-nef.
    pub f_nef_ks: Vec<usize>,
    /// `ceil(n/3)`.
    pub expected: usize,
    pub tightness: Option<TightnessWitness>,
}

impl ThresholdReport {
    /// Threshold equals `ceil(n/3)` and every `k` above it is F-nef.
    pub fn matches_expected(&self) -> bool {
        let m = self.n / 2;
        self.threshold == Some(self.expected)
            && self.f_nef_ks == (self.expected..=m).collect::<Vec<_>>()
    }
}

/// Brute-force search for the least `k` with `p_k` F-nef, plus the
/// tightness witness `(p, l, l, l)`.
pub fn pk_fnef_threshold(n: usize) -> Result<ThresholdReport> {
    if n < 6 {
        return Err(Error::InvalidN(n, 6));
    }
    let m = n / 2;
    let f_nef_ks: Vec<usize> = (2..=m)
        .filter(|&k| {
            f_simplex_vertex(n, k)
                .map(|d| is_f_nef(&d).is_nef())
                .unwrap_or(false)
        })
        .collect();
    let l = (n - 1) / 3;
    let p = n - 3 * l;
    let tightness = if l >= 2 {
        let partition = VitalPartition::new([p, l, l, l])?;
        let value_at_l = intersect_vital(&f_simplex_vertex_from_canonical(n, l)?, &partition)?;
        let alternative_index = m - l;
        let value_at_alternative = f_simplex_vertex_from_canonical(n, alternative_index)
            .ok()
            .map(|d| intersect_vital(&d, &partition))
            .transpose()?;
        Some(TightnessWitness {
            l,
            p,
            partition,
            value_at_l,
            alternative_index,
            value_at_alternative,
        })
    } else {
        None
    };
    Ok(ThresholdReport {
        n,
        threshold: f_nef_ks.first().copied(),
        f_nef_ks,
        expected: n.div_ceil(3),
        tightness,
    })
}

/// Linearly independent vectors spanning a linear subspace of the
/// coefficient space `(r_2, ..., r_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceBasis {
    pub ambient: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    /// Solution space of `f = 0` for every form.
    pub fn solution_space(ambient: usize, forms: &[LinearForm]) -> Self {
        let rows: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs.clone()).collect();
        SubspaceBasis {
            ambient,
            vectors: nullspace(&rows, ambient),
        }
    }

    pub fn reduced_dim(&self) -> usize {
        self.vectors.len()
    }

    /// `sum_j y_j v_j` in ambient coordinates.
    pub fn lift(&self, reduced: &[Rational]) -> Vec<Rational> {
        combine(reduced, &self.vectors, self.ambient)
    }
}

/// Parametrization of `V_1 ∩ ... ∩ V_{k-2}`: the vector with `r_i = C(i,2)`
/// for `i <= k` (zero above), followed by the unit vectors of
/// `r_{k+1}, ..., r_m`.
pub fn face_subspace(n: usize, k: usize) -> Result<SubspaceBasis> {
    check_k(n, k)?;
    let m = n / 2;
    let mut vectors = vec![(2..=m)
        .map(|i| {
            if i <= k {
                q(binom2(i), 1)
            } else {
                Rational::zero()
            }
        })
        .collect::<Vec<_>>()];
    for j in k + 1..=m {
        vectors.push(
            (2..=m)
                .map(|i| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        );
    }
    Ok(SubspaceBasis {
        ambient: m - 1,
        vectors,
    })
}

/// `form` composed with the parametrization, canonical, label kept.
pub fn restrict_form(form: &LinearForm, basis: &SubspaceBasis) -> Result<LinearForm> {
    if form.dim() != basis.ambient {
        return Err(Error::DimensionMismatch {
            expected: basis.ambient,
            got: form.dim(),
        });
    }
    let coeffs = basis.vectors.iter().map(|v| dot(&form.coeffs, v)).collect();
    Ok(LinearForm::new(coeffs, form.label).canonical())
}

/// One facet of a face, with every vital partition inducing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetEntry {
    /// Canonical form in reduced coordinates.
    pub form: Vec<Rational>,
    pub labels: Vec<FormLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub n: usize,
    /// `Some(k)` for `F_k`; `None` for a face found from a divisor.
    pub k: Option<usize>,
    pub reduced_dim: usize,
    /// Cone dimension minus one (`-1` for the zero cone).
    pub projective_dim: isize,
    pub facets: Vec<FacetEntry>,
    /// Extreme rays as primitive integer divisors in `(r_2, ..., r_m)`.
    pub vertices: Vec<SymmetricDivisor>,
    /// Lineality directions in ambient coordinates; empty for faces of `F`.
    pub lineality: Vec<Vec<Rational>>,
}

impl FaceReport {
    /// Labels of every facet, facets in report order.
    pub fn facet_labels(&self) -> Vec<Vec<FormLabel>> {
        self.facets.iter().map(|f| f.labels.clone()).collect()
    }
}

/// Vital forms restricted to `basis`, zero forms dropped, grouped by
/// canonical form. Groups are ordered by their smallest label.
pub fn restricted_vital_forms(
    n: usize,
    basis: &SubspaceBasis,
) -> Result<Vec<(LinearForm, Vec<FormLabel>)>> {
    let mut groups: BTreeMap<Vec<Rational>, Vec<FormLabel>> = BTreeMap::new();
    for p in enumerate_vital_partitions(n) {
        let restricted = restrict_form(&vital_form(n, &p)?, basis)?;
        if restricted.is_zero() {
            continue;
        }
        groups
            .entry(restricted.coeffs)
            .or_default()
            .push(restricted.label);
    }
    let mut out: Vec<(LinearForm, Vec<FormLabel>)> = groups
        .into_iter()
        .map(|(coeffs, mut labels)| {
            labels.sort();
            (LinearForm::new(coeffs, labels[0]), labels)
        })
        .collect();
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// The cone cut out by the restricted vital forms inside `basis`.
pub fn face_cone(
    n: usize,
    basis: &SubspaceBasis,
) -> Result<(ConeDescription, Vec<Vec<FormLabel>>)> {
    let groups = restricted_vital_forms(n, basis)?;
    let forms: Vec<LinearForm> = groups.iter().map(|(f, _)| f.clone()).collect();
    let cone = double_description(basis.reduced_dim(), &forms)?;
    Ok((cone, groups.into_iter().map(|(_, l)| l).collect()))
}

fn face_report(n: usize, k: Option<usize>, basis: &SubspaceBasis) -> Result<FaceReport> {
    let (cone, labels) = face_cone(n, basis)?;
    let mut facets: Vec<FacetEntry> = cone
        .facets
        .iter()
        .map(|&i| FacetEntry {
            form: cone.halfspaces[i].coeffs.clone(),
            labels: labels[i].clone(),
        })
        .collect();
    facets.sort_by(|a, b| a.labels.cmp(&b.labels));
    let vertices = cone
        .rays
        .iter()
        .map(|r| SymmetricDivisor::new(n, primitive_integer_vector(&basis.lift(r))))
        .collect::<Result<Vec<_>>>()?;
    let lineality = cone
        .lineality
        .iter()
        .map(|l| primitive_integer_vector(&basis.lift(l)))
        .collect();
    Ok(FaceReport {
        n,
        k,
        reduced_dim: basis.reduced_dim(),
        projective_dim: cone.cone_dim() as isize - 1,
        facets,
        vertices,
        lineality,
    })
}

/// Facets and vertices of `F_k`, `2 <= k <= floor(n/2)`.
pub fn facets_of_face(n: usize, k: usize) -> Result<FaceReport> {
    let basis = face_subspace(n, k)?;
    face_report(n, Some(k), &basis)
}

/// The smallest face of `F` containing an F-nef divisor: `F` intersected with
/// the hyperplanes of every contracted vital partition.
pub fn minimal_face_of(divisor: &SymmetricDivisor) -> Result<FaceReport> {
    if let FNefVerdict::NotNef { witness, value } = is_f_nef(divisor) {
        return Err(Error::NotFNef {
            witness: witness.to_string(),
            value,
        });
    }
    let n = divisor.n();
    let contracted: Vec<LinearForm> = contracted_partitions(divisor)
        .iter()
        .map(|p| vital_form(n, p))
        .collect::<Result<_>>()?;
    let basis = SubspaceBasis::solution_space(n / 2 - 1, &contracted);
    face_report(n, None, &basis)
}

/// Whether `{V(a,b,c,d) : a+b+c <= k}` and `{V_1, ..., V_{k-2}}` span the same
/// space of linear forms.
pub fn contracted_span_matches_special(n: usize, k: usize) -> Result<bool> {
    check_k(n, k)?;
    let dim = n / 2 - 1;
    let contracted: Vec<Vec<Rational>> = enumerate_vital_partitions(n)
        .into_iter()
        .filter(|p| p.a() + p.b() + p.c() <= k)
        .map(|p| vital_form(n, &p).map(|f| f.coeffs))
        .collect::<Result<_>>()?;
    let special: Vec<Vec<Rational>> = (1..k.saturating_sub(1))
        .map(|i| special_hyperplane(n, i).map(|f| f.coeffs))
        .collect::<Result<_>>()?;
    Ok(span_contains(&special, &contracted, dim) && span_contains(&contracted, &special, dim))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexVerdict {
    pub n: usize,
    pub k: usize,
    pub projective_dim: isize,
    pub facet_count: usize,
    pub vertex_count: usize,
    /// The face is a simplex (pointed, as many rays and facets as its dimension).
    pub is_simplex: bool,
    /// Its vertices are exactly the rays of `p_k, ..., p_m`.
    pub vertices_are_pk: bool,
}

impl SimplexVerdict {
    pub fn holds(&self) -> bool {
        self.is_simplex && self.vertices_are_pk
    }
}

/// Whether `F_k` is the simplex spanned by `p_k, ..., p_{floor(n/2)}`.
pub fn stable_simplex_check(n: usize, k: usize) -> Result<SimplexVerdict> {
    let face = facets_of_face(n, k)?;
    let dim = (face.projective_dim + 1) as usize;
    let is_simplex =
        face.lineality.is_empty() && face.vertices.len() == dim && face.facets.len() == dim;
    let mut expected: Vec<Vec<Rational>> = (k..=n / 2)
        .map(|j| f_simplex_vertex(n, j).map(|d| primitive_integer_vector(d.coeffs())))
        .collect::<Result<_>>()?;
    expected.sort();
    let mut actual: Vec<Vec<Rational>> =
        face.vertices.iter().map(|d| d.coeffs().to_vec()).collect();
    actual.sort();
    Ok(SimplexVerdict {
        n,
        k,
        projective_dim: face.projective_dim,
        facet_count: face.facets.len(),
        vertex_count: face.vertices.len(),
        is_simplex,
        vertices_are_pk: actual == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::log_canonical::{a_alpha, breakpoint};

    fn vp(p: [usize; 4]) -> VitalPartition {
        VitalPartition::new(p).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    fn labels(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn label_strings(entry: &FacetEntry) -> Vec<String> {
        entry.labels.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn vital_form_examples() {
        let f = vital_form(8, &vp([2, 2, 2, 2])).unwrap();
        assert_eq!(f.coeffs, ints(&[-4, 0, 3]));
        assert_eq!(f.label.to_string(), "V(2,2,2,2)");
        // forms agree with intersect_vital on random points
        for n in 6..=16 {
            let point =
                SymmetricDivisor::from_fn(n, |j| q((j * j) as i64 % 7 - 3, j as i64)).unwrap();
            for p in enumerate_vital_partitions(n) {
                let raw = intersect_vital(&point, &p).unwrap();
                let form = vital_form(n, &p).unwrap();
                let value = form.eval(point.coeffs());
                // canonical form is a positive multiple of the raw one
                assert_eq!(raw.signum(), value.signum());
            }
        }
    }

    #[test]
    fn proportional_forms_share_canonical_form() {
        // n = 9: V_3 restricted to F_3 and V(2,2,2,3) restricted coincide
        let basis = face_subspace(9, 3).unwrap();
        let a = restrict_form(&special_hyperplane(9, 3).unwrap(), &basis).unwrap();
        let b = restrict_form(&vital_form(9, &vp([2, 2, 2, 3])).unwrap(), &basis).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn special_hyperplanes() {
        for n in 6..=20 {
            let m = n / 2;
            // V_1 = 3 r_2 - r_3 (for n >= 6)
            let v1 = special_hyperplane(n, 1).unwrap();
            let mut expected = vec![Rational::zero(); m - 1];
            expected[0] = q(3, 1);
            expected[1] = q(-1, 1);
            assert_eq!(v1.coeffs, expected, "n = {n}");
            for i in 1..m {
                let v = special_hyperplane(n, i).unwrap();
                let point = SymmetricDivisor::from_fn(n, |j| q((j * 5 % 11) as i64, 3)).unwrap();
                let r = |j| point.coefficient(j).unwrap();
                let generic = r(2) + r(i + 1) * q(2, 1) - r(i) - r(i + 2);
                let value = intersect_vital(&point, &vp([1, 1, i, n - i - 2])).unwrap();
                assert_eq!(generic, value);
                assert_eq!(v.label, FormLabel::Special { i });
            }
            assert!(special_hyperplane(n, 0).is_err());
            assert!(special_hyperplane(n, m).is_err());
        }
    }

    #[test]
    fn last_special_hyperplane_parity() {
        // On V_1..V_{m-2} with r_i = C(i,2) for i <= k, V_{m-1} forces
        // r_{k+1} = C(k+1,2) - (n-1)/2 once the recurrence is continued.
        for n in 6..=30 {
            let m = n / 2;
            for k in 2..m {
                let vertex = f_simplex_vertex(n, k).unwrap().scale(&q(n as i64 - 1, 2));
                let last = special_hyperplane(n, m - 1).unwrap();
                if k != m {
                    assert!(last.eval(vertex.coeffs()).is_zero(), "n={n} k={k}");
                }
                assert_eq!(
                    vertex.coefficient(k + 1).unwrap(),
                    q(binom2(k + 1), 1) - q(n as i64 - 1, 2)
                );
            }
            // parity forms: r_m = r_{m-1} - 1/2 (even) or r_m = r_{m-1} - 1 (odd), relative to r_2 = 1
            let v = special_hyperplane(n, m - 1).unwrap();
            let mut point = vec![Rational::zero(); m - 1];
            point[0] = q(1, 1);
            point[m - 3] = q(5, 1);
            point[m - 2] = if n % 2 == 0 { q(9, 2) } else { q(4, 1) };
            if m > 3 {
                // V_{m-1} involves r_2, r_{m-1}, r_m only
                assert!(v.eval(&point).is_zero(), "n={n}");
            }
        }
    }

    #[test]
    fn vertex_examples() {
        assert_eq!(
            f_simplex_vertex(8, 3).unwrap().coeffs(),
            &[q(2, 7), q(6, 7), q(5, 7)]
        );
        for n in 4..=40 {
            for k in 2..=n / 2 {
                assert_eq!(
                    f_simplex_vertex(n, k).unwrap(),
                    f_simplex_vertex_from_canonical(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
        assert!(f_simplex_vertex(8, 1).is_err());
        assert!(f_simplex_vertex(8, 5).is_err());
    }

    #[test]
    fn vertices_lie_on_special_hyperplanes() {
        for n in 6..=30 {
            let m = n / 2;
            for k in 2..=m {
                let p = f_simplex_vertex(n, k).unwrap();
                for i in 1..m {
                    let value = special_hyperplane(n, i).unwrap().eval(p.coeffs());
                    assert_eq!(value.is_zero(), i + 1 != k, "n={n} k={k} i={i}");
                }
            }
            let top = f_simplex_vertex(n, m).unwrap();
            assert!(top.is_positive_multiple_of(&a_alpha(n, &breakpoint(m)).unwrap()));
        }
    }

    #[test]
    fn threshold_small() {
        let r = pk_fnef_threshold(12).unwrap();
        assert_eq!(r.threshold, Some(4));
        assert!(r.matches_expected());
        let r = pk_fnef_threshold(13).unwrap();
        assert_eq!(r.threshold, Some(5));
        let w = r.tightness.unwrap();
        assert_eq!((w.l, w.p, w.partition), (4, 1, vp([1, 4, 4, 4])));
        assert_eq!(w.value_at_l, q(-1, 1));
        assert!(pk_fnef_threshold(5).is_err());
    }

    #[test]
    fn subspace_examples() {
        let full = face_subspace(10, 2).unwrap();
        assert_eq!(full.reduced_dim(), 4);
        let line = face_subspace(8, 4).unwrap();
        assert_eq!(line.reduced_dim(), 1);
        assert_eq!(line.vectors[0], ints(&[1, 3, 6]));
        for n in 6..=24 {
            let m = n / 2;
            for k in 2..=m {
                let basis = face_subspace(n, k).unwrap();
                assert_eq!(basis.reduced_dim(), m - k + 1);
                let specials: Vec<LinearForm> = (1..k - 1)
                    .map(|i| special_hyperplane(n, i).unwrap())
                    .collect();
                let solved = SubspaceBasis::solution_space(m - 1, &specials);
                assert_eq!(solved.reduced_dim(), basis.reduced_dim());
                for v in &basis.vectors {
                    for s in &specials {
                        assert!(s.eval(v).is_zero());
                    }
                }
            }
        }
        assert!(face_subspace(10, 6).is_err());
        assert!(face_subspace(10, 1).is_err());
    }

    #[test]
    fn restriction_examples() {
        for n in 8..=20 {
            for k in 3..=n / 2 {
                let basis = face_subspace(n, k).unwrap();
                for i in 1..k - 1 {
                    assert!(restrict_form(&special_hyperplane(n, i).unwrap(), &basis)
                        .unwrap()
                        .is_zero());
                }
                for p in enumerate_vital_partitions(n) {
                    if p.a() + p.b() + p.c() <= k {
                        let f = restrict_form(&vital_form(n, &p).unwrap(), &basis).unwrap();
                        assert!(f.is_zero(), "n={n} k={k} p={p}");
                    }
                }
            }
        }
        let basis = face_subspace(10, 3).unwrap();
        let short = LinearForm::derived(ints(&[1, 2]));
        assert!(matches!(
            restrict_form(&short, &basis),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn fulton_cone_six() {
        let face = facets_of_face(6, 2).unwrap();
        assert_eq!(face.projective_dim, 1);
        assert_eq!(face.vertices.len(), 2);
        let names: Vec<Vec<String>> = face.facets.iter().map(label_strings).collect();
        assert_eq!(names, vec![labels(&["V_1"]), labels(&["V_2"])]);
    }

    #[test]
    fn faces_of_eight() {
        let face = facets_of_face(8, 3).unwrap();
        let names: Vec<Vec<String>> = face.facets.iter().map(label_strings).collect();
        assert_eq!(names, vec![labels(&["V_2"]), labels(&["V_3"])]);
        let face = facets_of_face(8, 2).unwrap();
        let names: Vec<Vec<String>> = face.facets.iter().map(label_strings).collect();
        assert_eq!(
            names,
            vec![
                labels(&["V_1"]),
                labels(&["V_2"]),
                labels(&["V_3"]),
                labels(&["V(2,2,2,2)"])
            ]
        );
        assert_eq!(face.projective_dim, 2);
        let vertex = facets_of_face(8, 4).unwrap();
        assert_eq!(vertex.projective_dim, 0);
        assert_eq!(vertex.vertices.len(), 1);
    }

    #[test]
    fn stabilized_row() {
        for n in 14..=20 {
            let m = n / 2;
            let face = facets_of_face(n, m - 2).unwrap();
            assert_eq!(face.facets.len(), 3, "n = {n}");
            for (entry, i) in face.facets.iter().zip([m - 3, m - 2, m - 1]) {
                assert!(entry.labels.contains(&FormLabel::Special { i }), "n={n}");
            }
        }
    }

    #[test]
    fn minimal_faces() {
        for n in 6..=14 {
            let m = n / 2;
            for k in 2..=m {
                let face = minimal_face_of(&a_alpha(n, &breakpoint(k)).unwrap()).unwrap();
                let expected = facets_of_face(n, k).unwrap();
                assert_eq!(face.projective_dim, (m - k) as isize, "n={n} k={k}");
                let mut a: Vec<_> = face.vertices.clone();
                let mut b: Vec<_> = expected.vertices.clone();
                a.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
                b.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
                assert_eq!(a, b);
                assert!(contracted_span_matches_special(n, k).unwrap());
            }
            // the sum of all vertices of F lies in its relative interior
            let mut interior = SymmetricDivisor::zero(n).unwrap();
            for v in facets_of_face(n, 2).unwrap().vertices {
                interior = interior.add(&v).unwrap();
            }
            let face = minimal_face_of(&interior).unwrap();
            assert_eq!(face.projective_dim, (m - 2) as isize);
            assert!(face.lineality.is_empty());
        }
        let bad = canonical_class(8).unwrap();
        assert!(matches!(minimal_face_of(&bad), Err(Error::NotFNef { .. })));
    }

    #[test]
    fn simplex_checks() {
        assert!(!stable_simplex_check(8, 2).unwrap().holds());
        let v = stable_simplex_check(14, 5).unwrap();
        assert!(v.holds());
        assert_eq!((v.facet_count, v.projective_dim), (3, 2));
        for n in 6..=20usize {
            for k in n.div_ceil(3)..=n / 2 {
                assert!(stable_simplex_check(n, k).unwrap().holds(), "n={n} k={k}");
            }
        }
    }
}

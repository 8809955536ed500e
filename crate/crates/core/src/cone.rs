//! Exact polyhedral cones: `{x : f(x) >= 0 for every form f}`.
//!
//! [`double_description`] converts a halfspace list into extreme rays with
//! incidence data, splitting off the lineality space first. Internally rays
//! and rows are primitive integer vectors, so every step is exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::VitalPartition;
use crate::error::{Error, Result};
use crate::linalg::{combine, dot, nullspace, rank};
use crate::rational::{common_denominator, primitive_integer_vector, Rational};

/// Where a linear form came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormLabel {
    /// The vital partition `1 + 1 + i + (n - i - 2)`.
    Special {
        i: usize,
    },
    Partition {
        partition: VitalPartition,
    },
    Derived,
}

impl FormLabel {
    /// Label for the vital form of `p`: `Special` when `p = (1,1,i,n-i-2)`.
    pub fn for_partition(p: VitalPartition) -> Self {
        match p.special_index() {
            Some(i) => FormLabel::Special { i },
            None => FormLabel::Partition { partition: p },
        }
    }
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormLabel::Special { i } => write!(f, "V_{i}"),
            FormLabel::Partition { partition } => {
                let [a, b, c, d] = partition.parts();
                write!(f, "V({a},{b},{c},{d})")
            }
            FormLabel::Derived => f.write_str("derived"),
        }
    }
}

impl fmt::Debug for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear functional with a provenance label, read as the halfspace `f >= 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<Rational>,
    pub label: FormLabel,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>, label: FormLabel) -> Self {
        LinearForm { coeffs, label }
    }

    pub fn derived(coeffs: Vec<Rational>) -> Self {
        LinearForm::new(coeffs, FormLabel::Derived)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    /// Primitive integer form, reached by a positive rescaling, so the
    /// halfspace is unchanged. Equal canonical forms define the same halfspace.
    pub fn canonical(&self) -> LinearForm {
        LinearForm {
            coeffs: primitive_integer_vector(&self.coeffs),
            label: self.label,
        }
    }

    /// Primitive integer form with first nonzero coefficient positive;
    /// identifies the hyperplane `f = 0` regardless of orientation.
    pub fn hyperplane_key(&self) -> Vec<Rational> {
        let mut v = primitive_integer_vector(&self.coeffs);
        if v.iter()
            .find(|c| !c.is_zero())
            .is_some_and(Rational::is_negative)
        {
            v = v.iter().map(|c| -c).collect();
        }
        v
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.label, self.coeffs)
    }
}

/// Both representations of a cone, with incidence data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDescription {
    pub dim: usize,
    /// Input halfspaces, in input order.
    pub halfspaces: Vec<LinearForm>,
    /// Extreme rays of the pointed part, primitive integer vectors, sorted.
    pub rays: Vec<Vec<Rational>>,
    /// Basis of the lineality space (empty for a pointed cone).
    pub lineality: Vec<Vec<Rational>>,
    /// For each ray, the indices of the halfspaces tight on it.
    pub incidence: Vec<Vec<usize>>,
    /// One representative halfspace index per facet, in input order.
    pub facets: Vec<usize>,
    /// Indices of halfspaces that are not facet representatives.
    pub redundant: Vec<usize>,
}

impl ConeDescription {
    /// Dimension of the cone itself (rank of its generators).
    pub fn cone_dim(&self) -> usize {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        rank(&gens, self.dim)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Pointed and spanned by exactly `cone_dim` rays.
    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.cone_dim()
    }

    /// The facet-inducing halfspaces, one per facet.
    pub fn facet_forms(&self) -> Vec<&LinearForm> {
        self.facets.iter().map(|&i| &self.halfspaces[i]).collect()
    }

    /// True when `x` satisfies every halfspace.
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| !h.eval(x).is_negative())
    }
}

fn to_integer_row(values: &[Rational]) -> Vec<BigInt> {
    let lcm = common_denominator(values);
    values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_superset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zero: Bits,
}

/// Extreme rays of the pointed cone `{y : row . y >= 0}` where `rows` has
/// full column rank `dim`. Rows are inserted in the given order.
fn pointed_rays(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if dim == 0 {
        return Vec::new();
    }
    let as_rat = |r: &Vec<BigInt>| {
        r.iter()
            .cloned()
            .map(Rational::from_bigint)
            .collect::<Vec<_>>()
    };

    // initial simplicial cone from the first independent rows
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(as_rat(r));
        if rank(&trial, dim) > chosen.len() {
            chosen = trial;
            basis_rows.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), dim, "rows must have full column rank");

    // columns of the inverse: solve chosen * x = e_i via the augmented system
    let mut aug: Vec<Vec<Rational>> = chosen
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..dim).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let (reduced, _) = crate::linalg::rref(&aug, 2 * dim);
    aug = reduced;

    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let col: Vec<Rational> = aug.iter().map(|row| row[dim + i].clone()).collect();
            let mut zero = Bits::new(rows.len());
            for (j, &b) in basis_rows.iter().enumerate() {
                if j != i {
                    zero.set(b);
                }
            }
            let mut v = to_integer_row(&col);
            make_primitive(&mut v);
            Ray { v, zero }
        })
        .collect();

    let mut processed = basis_rows.len();
    for (h, row) in rows.iter().enumerate() {
        if basis_rows.contains(&h) {
            continue;
        }
        processed += 1;
        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if neg.is_empty() {
            for (r, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    r.zero.set(h);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &nq in &neg {
                let common = rays[p].zero.and(&rays[nq].zero);
                if (common.count() as usize) + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != nq && r.zero.is_superset_of(&common));
                if blocked {
                    continue;
                }
                let mut v: Vec<BigInt> = rays[nq]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(qv, pv)| &values[p] * qv - &values[nq] * pv)
                    .collect();
                make_primitive(&mut v);
                let mut zero = common;
                zero.set(h);
                created.push(Ray { v, zero });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (mut r, val) in rays.into_iter().zip(&values) {
            if val.is_negative() {
                continue;
            }
            if val.is_zero() {
                r.zero.set(h);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        debug_assert!(processed <= rows.len());
    }
    rays.into_iter().map(|r| r.v).collect()
}

fn insertion_order(halfspaces: &[LinearForm]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..halfspaces.len()).collect();
    order.sort_by(|&a, &b| {
        let nz = |i: usize| halfspaces[i].coeffs.iter().filter(|c| !c.is_zero()).count();
        nz(a)
            .cmp(&nz(b))
            .then_with(|| halfspaces[a].coeffs.cmp(&halfspaces[b].coeffs))
            .then(a.cmp(&b))
    });
    order
}

/// H-to-V conversion. Every halfspace must have `dim` coefficients.
///
/// The lineality space `{x : f(x) = 0 for all f}` is computed first and
/// split off; the pointed remainder is enumerated by incremental insertion
/// in order of increasing support size (ties lexicographic). A halfspace
/// is facet-inducing when its tight rays together with the lineality span
/// a space of rank one less than the cone; among halfspaces inducing the
/// same facet the first in input order is the representative.
pub fn double_description(dim: usize, halfspaces: &[LinearForm]) -> Result<ConeDescription> {
    if let Some(bad) = halfspaces.iter().find(|h| h.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.dim(),
        });
    }
    let order: Vec<usize> = insertion_order(halfspaces)
        .into_iter()
        .filter(|&i| !halfspaces[i].is_zero())
        .collect();
    let rows: Vec<Vec<Rational>> = order
        .iter()
        .map(|&i| halfspaces[i].coeffs.clone())
        .collect();
    let lineality: Vec<Vec<Rational>> = nullspace(&rows, dim)
        .iter()
        .map(|v| primitive_integer_vector(v))
        .collect();
    // coordinates on a complement of the lineality space
    let complement = if lineality.is_empty() {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        nullspace(&lineality, dim)
    };
    let reduced_dim = complement.len();
    let reduced_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let coords: Vec<Rational> = complement.iter().map(|w| dot(r, w)).collect();
            let mut v = to_integer_row(&coords);
            make_primitive(&mut v);
            v
        })
        .collect();
    let mut rays: Vec<Vec<Rational>> = pointed_rays(&reduced_rows, reduced_dim)
        .into_iter()
        .map(|y| {
            let y: Vec<Rational> = y.into_iter().map(Rational::from_bigint).collect();
            primitive_integer_vector(&combine(&y, &complement, dim))
        })
        .collect();
    rays.sort();
    rays.dedup();

    let incidence: Vec<Vec<usize>> = rays
        .iter()
        .map(|r| {
            (0..halfspaces.len())
                .filter(|&i| halfspaces[i].eval(r).is_zero())
                .collect()
        })
        .collect();

    let mut generators = rays.clone();
    generators.extend(lineality.iter().cloned());
    let cone_dim = rank(&generators, dim);

    let mut facets = Vec::new();
    let mut facet_tight_sets: Vec<Vec<usize>> = Vec::new();
    let mut redundant = Vec::new();
    for i in 0..halfspaces.len() {
        let tight: Vec<usize> = (0..rays.len())
            .filter(|&r| incidence[r].contains(&i))
            .collect();
        let is_facet = tight.len() < rays.len() && {
            let mut span: Vec<Vec<Rational>> = tight.iter().map(|&r| rays[r].clone()).collect();
            span.extend(lineality.iter().cloned());
            rank(&span, dim) + 1 == cone_dim
        };
        if is_facet && !facet_tight_sets.contains(&tight) {
            facet_tight_sets.push(tight);
            facets.push(i);
        } else {
            redundant.push(i);
        }
    }

    Ok(ConeDescription {
        dim,
        halfspaces: halfspaces.to_vec(),
        rays,
        lineality,
        incidence,
        facets,
        redundant,
    })
}

/// V-to-H conversion: primitive facet normals of the cone generated by
/// `rays` and the subspace `lineality`, sorted. Computed as the extreme
/// rays of the dual cone, which is pointed when the cone is full-dimensional.
pub fn facets_from_generators(
    dim: usize,
    rays: &[Vec<Rational>],
    lineality: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>> {
    let mut dual: Vec<LinearForm> = rays
        .iter()
        .map(|r| LinearForm::derived(r.clone()))
        .collect();
    for l in lineality {
        dual.push(LinearForm::derived(l.clone()));
        dual.push(LinearForm::derived(l.iter().map(|x| -x).collect()));
    }
    let described = double_description(dim, &dual)?;
    let mut normals = described.rays;
    for l in &described.lineality {
        normals.push(l.clone());
        normals.push(l.iter().map(|x| -x).collect());
    }
    normals.sort();
    Ok(normals)
}

/// For each halfspace, whether dropping it (together with every halfspace
/// positively proportional to it) enlarges the cone. Each verdict comes
/// from a separate conversion of the reduced system.
pub fn essential_by_removal(dim: usize, halfspaces: &[LinearForm]) -> Result<Vec<bool>> {
    let keys: Vec<Vec<Rational>> = halfspaces.iter().map(|h| h.canonical().coeffs).collect();
    halfspaces
        .iter()
        .enumerate()
        .map(|(i, h)| {
            if h.is_zero() {
                return Ok(false);
            }
            let rest: Vec<LinearForm> = halfspaces
                .iter()
                .zip(&keys)
                .filter(|(_, k)| **k != keys[i])
                .map(|(f, _)| f.clone())
                .collect();
            let wider = double_description(dim, &rest)?;
            let violated = wider.rays.iter().any(|r| h.eval(r).is_negative())
                || wider.lineality.iter().any(|l| !h.eval(l).is_zero());
            Ok(violated)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn form(v: &[i64]) -> LinearForm {
        LinearForm::derived(v.iter().map(|&x| q(x, 1)).collect())
    }

    fn vecq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn orthant() {
        let hs = vec![form(&[1, 0, 0]), form(&[0, 1, 0]), form(&[0, 0, 1])];
        let cone = double_description(3, &hs).unwrap();
        assert_eq!(
            cone.rays,
            vec![vecq(&[0, 0, 1]), vecq(&[0, 1, 0]), vecq(&[1, 0, 0])]
        );
        assert_eq!(cone.facets, vec![0, 1, 2]);
        assert!(cone.redundant.is_empty());
        assert!(cone.is_simplicial());
    }

    #[test]
    fn duplicate_is_redundant() {
        let hs = vec![form(&[1, 0]), form(&[0, 1]), form(&[2, 0])];
        let cone = double_description(2, &hs).unwrap();
        assert_eq!(cone.rays.len(), 2);
        assert_eq!(cone.facets, vec![0, 1]);
        assert_eq!(cone.redundant, vec![2]);
        let single = double_description(2, &hs[..2]).unwrap();
        assert_eq!(single.rays, cone.rays);
    }

    #[test]
    fn square_pyramid() {
        // cone over a square: 4 rays, 4 facets, not simplicial
        let hs = vec![
            form(&[1, 0, 1]),
            form(&[-1, 0, 1]),
            form(&[0, 1, 1]),
            form(&[0, -1, 1]),
            form(&[0, 0, 1]),
        ];
        let cone = double_description(3, &hs).unwrap();
        assert_eq!(cone.rays.len(), 4);
        assert_eq!(cone.facets, vec![0, 1, 2, 3]);
        assert_eq!(cone.redundant, vec![4]);
        assert!(!cone.is_simplicial());
        let normals = facets_from_generators(3, &cone.rays, &[]).unwrap();
        let mut expected: Vec<Vec<Rational>> =
            hs[..4].iter().map(|h| h.canonical().coeffs).collect();
        expected.sort();
        assert_eq!(normals, expected);
        assert_eq!(
            essential_by_removal(3, &hs).unwrap(),
            vec![true, true, true, true, false]
        );
    }

    #[test]
    fn lineality_is_split_off() {
        // half-plane x >= 0 in 2D: lineality along y
        let cone = double_description(2, &[form(&[1, 0])]).unwrap();
        assert_eq!(cone.lineality, vec![vecq(&[0, 1])]);
        assert_eq!(cone.rays, vec![vecq(&[1, 0])]);
        assert_eq!(cone.facets, vec![0]);
        assert!(!cone.is_pointed());
        let whole = double_description(2, &[]).unwrap();
        assert_eq!(whole.lineality.len(), 2);
        assert!(whole.rays.is_empty());
    }

    #[test]
    fn trivial_cone() {
        let cone = double_description(1, &[form(&[1]), form(&[-1])]).unwrap();
        assert!(cone.rays.is_empty());
        assert!(cone.lineality.is_empty());
        assert!(cone.facets.is_empty());
        assert_eq!(cone.cone_dim(), 0);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            double_description(3, &[form(&[1, 0])]),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn canonical_keeps_orientation() {
        let f = form(&[-2, 4]);
        assert_eq!(f.canonical().coeffs, vecq(&[-1, 2]));
        assert_eq!(f.hyperplane_key(), vecq(&[1, -2]));
        let g = LinearForm::derived(vec![q(1, 2), q(-3, 4)]);
        assert_eq!(g.canonical().coeffs, vecq(&[2, -3]));
    }
}

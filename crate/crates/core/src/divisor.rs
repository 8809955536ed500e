//! Symmetric divisor classes on the moduli space of stable `n`-pointed
//! rational curves, in the boundary basis `D_2, ..., D_{n/2}`.
//!
//! Vital curves are indexed by sorted partitions `a + b + c + d = n`, and a
//! class `sum r_j D_j` meets the vital curve of `(a, b, c, d)` in
//!
//! ```text
//! r_{a+b} + r_{a+c} + r_{a+d} - r_a - r_b - r_c - r_d
//! ```
//!
//! with the conventions `r_i = r_{n-i}` and `r_1 = 0`. The third positive term
//! is `r_{a+d}`: the often-quoted form repeating `r_{a+c}` is not symmetric in
//! the four parts and does not reproduce the per-case values used elsewhere.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An `S_n`-equivariant divisor class `sum_{j=2}^{n/2} r_j D_j`.
///
/// Only `r_2 ..= r_{floor(n/2)}` are stored; every other index is resolved by
/// reflection in [`SymmetricDivisor::coefficient`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricDivisor {
    n: usize,
    coeffs: Vec<Rational>,
}

/// Number of stored coefficients, `floor(n/2) - 1`.
pub fn coefficient_count(n: usize) -> usize {
    n / 2 - 1
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidN(n, 4));
    }
    Ok(())
}

impl SymmetricDivisor {
    /// Builds a divisor from `r_2, ..., r_{floor(n/2)}`.
    pub fn new(n: usize, coeffs: Vec<Rational>) -> Result<Self> {
        check_n(n)?;
        let expected = coefficient_count(n);
        if coeffs.len() != expected {
            return Err(Error::CoefficientCount {
                n,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(SymmetricDivisor { n, coeffs })
    }

    /// Builds a divisor from a function of the boundary index `j`.
    pub fn from_fn<F>(n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize) -> Rational,
    {
        check_n(n)?;
        Ok(SymmetricDivisor {
            n,
            coeffs: (2..=n / 2).map(&mut f).collect(),
        })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| Rational::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stored coefficients `r_2, ..., r_{floor(n/2)}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `r_i` for `1 <= i <= n - 1`, folding `i > n/2` onto `n - i`.
    pub fn coefficient(&self, i: usize) -> Result<Rational> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n - 1,
            });
        }
        Ok(self.folded(i).clone())
    }

    // Caller guarantees 1 <= i <= n - 1.
    fn folded(&self, i: usize) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        let i = if i > self.n / 2 { self.n - i } else { i };
        if i <= 1 {
            ZERO.get_or_init(Rational::zero)
        } else {
            &self.coeffs[i - 2]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &SymmetricDivisor) -> Result<SymmetricDivisor> {
        if self.n != other.n {
            return Err(Error::MismatchedN(self.n, other.n));
        }
        Ok(SymmetricDivisor {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> SymmetricDivisor {
        SymmetricDivisor {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn sub(&self, other: &SymmetricDivisor) -> Result<SymmetricDivisor> {
        self.add(&other.scale(&Rational::from_integer(-1)))
    }

    /// True when `self = lambda * other` for some `lambda > 0`.
    pub fn is_positive_multiple_of(&self, other: &SymmetricDivisor) -> bool {
        if self.n != other.n {
            return false;
        }
        let Some(pivot) = other.coeffs.iter().position(|c| !c.is_zero()) else {
            return self.is_zero();
        };
        let lambda = &self.coeffs[pivot] / &other.coeffs[pivot];
        lambda.is_positive() && *self == other.scale(&lambda)
    }
}

impl fmt::Debug for SymmetricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricDivisor(n={}, r={:?})", self.n, self.coeffs)
    }
}

impl fmt::Display for SymmetricDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The canonical class, `r_j = ((j-2)(n-1) - j(j-1)) / (n-1)`.
pub fn canonical_class(n: usize) -> Result<SymmetricDivisor> {
    let denom = n as i64 - 1;
    SymmetricDivisor::from_fn(n, |j| {
        let j = j as i64;
        Rational::new((j - 2) * denom - j * (j - 1), denom)
    })
}

/// The total boundary `D = sum D_j`.
pub fn boundary(n: usize) -> Result<SymmetricDivisor> {
    SymmetricDivisor::from_fn(n, |_| Rational::one())
}

/// A vital curve class, stored as a sorted partition `a <= b <= c <= d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VitalPartition {
    parts: [usize; 4],
}

impl VitalPartition {
    /// Sorts the parts; every part must be positive.
    pub fn new(mut parts: [usize; 4]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        parts.sort_unstable();
        Ok(VitalPartition { parts })
    }

    pub fn parts(&self) -> [usize; 4] {
        self.parts
    }

    pub fn a(&self) -> usize {
        self.parts[0]
    }
    pub fn b(&self) -> usize {
        self.parts[1]
    }
    pub fn c(&self) -> usize {
        self.parts[2]
    }
    pub fn d(&self) -> usize {
        self.parts[3]
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `Some(i)` when this is the partition `1 + 1 + i + (n - i - 2)`.
    pub fn special_index(&self) -> Option<usize> {
        (self.parts[0] == 1 && self.parts[1] == 1).then_some(self.parts[2])
    }
}

impl fmt::Display for VitalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.parts;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Debug for VitalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All sorted positive quadruples summing to `n`, in lexicographic order.
pub fn enumerate_vital_partitions(n: usize) -> Vec<VitalPartition> {
    let mut out = Vec::new();
    for a in 1..=n / 4 {
        for b in a..=(n - a) / 3 {
            for c in b..=(n - a - b) / 2 {
                let d = n - a - b - c;
                out.push(VitalPartition {
                    parts: [a, b, c, d],
                });
            }
        }
    }
    out
}

/// Intersection number of `divisor` with the vital curve of `p`.
pub fn intersect_vital(divisor: &SymmetricDivisor, p: &VitalPartition) -> Result<Rational> {
    if p.n() != divisor.n {
        return Err(Error::MismatchedN(divisor.n, p.n()));
    }
    let [a, b, c, d] = p.parts;
    let r = |i| divisor.folded(i);
    let mut value = r(a + b) + r(a + c);
    value += r(a + d);
    for x in [a, b, c, d] {
        value -= r(x);
    }
    Ok(value)
}

/// Outcome of an F-nefness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FNefVerdict {
    /// Every vital intersection is nonnegative; `contracted` lists the
    /// partitions with intersection exactly zero.
    Nef { contracted: Vec<VitalPartition> },
    /// Some vital curve is met negatively; `witness` attains the minimum.
    NotNef {
        witness: VitalPartition,
        value: Rational,
    },
}

impl FNefVerdict {
    pub fn is_nef(&self) -> bool {
        matches!(self, FNefVerdict::Nef { .. })
    }
}

/// Checks every vital curve. On failure the witness is the first partition
/// (lexicographically) attaining the minimal intersection.
pub fn is_f_nef(divisor: &SymmetricDivisor) -> FNefVerdict {
    let mut contracted = Vec::new();
    let mut worst: Option<(VitalPartition, Rational)> = None;
    for p in enumerate_vital_partitions(divisor.n) {
        let value = intersect_vital(divisor, &p).expect("partition built for this n");
        if value.is_zero() {
            contracted.push(p);
        } else if value.is_negative() && worst.as_ref().is_none_or(|(_, w)| value < *w) {
            worst = Some((p, value));
        }
    }
    match worst {
        Some((witness, value)) => FNefVerdict::NotNef { witness, value },
        None => FNefVerdict::Nef { contracted },
    }
}

/// Partitions whose vital curve has intersection exactly zero.
pub fn contracted_partitions(divisor: &SymmetricDivisor) -> Vec<VitalPartition> {
    enumerate_vital_partitions(divisor.n)
        .into_iter()
        .filter(|p| {
            intersect_vital(divisor, p)
                .expect("partition built for this n")
                .is_zero()
        })
        .collect()
}

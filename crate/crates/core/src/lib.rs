//! Exact arithmetic for symmetric divisors on the moduli space of stable
//! n-pointed rational curves: F-nef tests, the log canonical family
//! `K + alpha D`, and faces of the cone of F-nef symmetric divisors.

pub mod cone;
pub mod divisor;
pub mod error;
pub mod fulton;
pub mod linalg;
pub mod log_canonical;
pub mod rational;

pub use divisor::{
    boundary, canonical_class, enumerate_vital_partitions, intersect_vital, is_f_nef, FNefVerdict,
    SymmetricDivisor, VitalPartition,
};
pub use error::{Error, Result};
pub use rational::Rational;

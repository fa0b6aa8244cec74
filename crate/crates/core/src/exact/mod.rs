//! Exact coefficient fields.
//!
//! Three concrete fields are provided: [`Rational`], [`GaussianRational`] and
//! [`RationalFunction`] (the fraction field of [`Polynomial`] in `t1, t2, ...`).
//! Generic code is written against the [`Field`] trait.

mod gaussian;
mod parse;
mod poly;
mod rational;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{self, Matrix};

pub use gaussian::GaussianRational;
pub use parse::{parse_field_element, FieldElement};
pub use poly::{Monomial, Polynomial};
pub use rational::Rational;
pub use ratfunc::RationalFunction;

/// Which concrete field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Rational,
    Gaussian,
    Symbolic,
}

impl FieldMode {
    pub fn name(self) -> &'static str {
        match self {
            FieldMode::Rational => "rational",
            FieldMode::Gaussian => "gaussian",
            FieldMode::Symbolic => "symbolic",
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact field. Values are immutable; arithmetic consumes and returns
/// owned values in canonical form.
///
/// `determinant_of` and `rank_of` are elimination hooks. The default is plain
/// Gaussian elimination; fields whose elements grow under division (rational
/// functions) override them with fraction-free elimination.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const MODE: FieldMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    fn from_rational(q: Rational) -> Self;
    /// Re-derive the canonical form. Idempotent.
    fn normalize(&self) -> Self;
    /// Parse one element with the field-element grammar.
    fn parse(text: &str) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v))
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    fn determinant_of(m: &Matrix<Self>) -> Result<Self> {
        linalg::gauss_determinant(m)
    }

    fn rank_of(m: &Matrix<Self>) -> usize {
        linalg::rref(m).1.len()
    }
}

/// Product of a slice of field elements; the empty product is one.
pub fn product<F: Field>(xs: &[F]) -> F {
    xs.iter().cloned().fold(F::one(), |acc, x| acc * x)
}

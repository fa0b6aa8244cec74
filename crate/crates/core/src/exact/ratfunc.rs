use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{parse, Field, FieldMode, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::{bareiss, Matrix};

/// A quotient of polynomials. Not reduced to lowest terms; equality is by
/// cross-multiplication.
///
/// Normal form: a zero numerator forces denominator `1`, a constant
/// denominator is folded into the numerator, and otherwise the denominator's
/// leading coefficient is `1`.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den }.canonical())
    }

    pub fn var(index: usize) -> Self {
        Polynomial::var(index).into()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    /// The numerator when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.as_constant().map(|_| &self.num)
    }

    /// Cancel the denominator when it divides the numerator exactly.
    pub fn simplify(&self) -> Self {
        match self.num.exact_div(&self.den) {
            Some(q) => q.into(),
            None => self.clone(),
        }
    }

    pub fn eval<F: Field>(&self, point: &[F]) -> Result<F> {
        self.num.eval(point).div(&self.den.eval(point))
    }

    fn canonical(self) -> Self {
        if self.num.is_zero() {
            return Polynomial::zero().into();
        }
        if let Some(c) = self.den.as_constant() {
            let inv = c.inv().expect("denominator is nonzero");
            return RationalFunction { num: self.num.scale(&inv), den: Rational::one().into() };
        }
        let lead = self.den.leading_term().map(|(_, c)| c.clone()).unwrap();
        if lead.is_one() {
            return self;
        }
        let inv = lead.inv().expect("leading coefficient is nonzero");
        RationalFunction { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(num: Polynomial) -> Self {
        RationalFunction { num, den: Rational::one().into() }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return RationalFunction { num: self.num + rhs.num, den: self.den }.canonical();
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RationalFunction { num, den: self.den * rhs.den }.canonical()
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RationalFunction { num: self.num * rhs.num, den: self.den * rhs.den }.canonical()
    }
}

impl Field for RationalFunction {
    const MODE: FieldMode = FieldMode::Symbolic;

    fn zero() -> Self {
        Polynomial::zero().into()
    }

    fn one() -> Self {
        Polynomial::constant(Rational::one()).into()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num: self.den.clone(), den: self.num.clone() }.canonical())
    }

    fn from_rational(q: Rational) -> Self {
        Polynomial::constant(q).into()
    }

    fn normalize(&self) -> Self {
        self.clone().canonical()
    }

    fn parse(text: &str) -> Result<Self> {
        parse::parse_expr(text)?.into_polynomial().map(Into::into)
    }

    fn determinant_of(m: &Matrix<Self>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                m.rows(),
                m.cols()
            )));
        }
        let (poly, scale) = clear_denominators(m);
        let det = bareiss::determinant(poly)?;
        RationalFunction::new(det, scale)
    }

    fn rank_of(m: &Matrix<Self>) -> usize {
        bareiss::rank(clear_denominators(m).0)
    }
}

/// Scale each row by the product of its denominators. Returns the polynomial
/// matrix and the product of all row multipliers.
fn clear_denominators(m: &Matrix<RationalFunction>) -> (Matrix<Polynomial>, Polynomial) {
    let mut scale = Polynomial::constant(Rational::one());
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        let row = m.row(r);
        let mut row_scale = Polynomial::constant(Rational::one());
        for x in row {
            if x.den.as_constant().is_none() {
                row_scale = row_scale * x.den.clone();
            }
        }
        for x in row {
            let mut v = x.num.clone() * row_scale.clone();
            if x.den.as_constant().is_none() {
                v = v.exact_div(&x.den).expect("row multiplier contains the denominator");
            }
            data.push(v);
        }
        scale = scale * row_scale;
    }
    (Matrix::from_vec(m.rows(), m.cols(), data), scale)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

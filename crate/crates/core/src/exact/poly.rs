use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational};

/// Exponent vector of a monomial in `t1, t2, ...`, ordered graded
/// lexicographically (total degree first, then `t1 > t2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn padded(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Monomial(e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Every stored exponent vector has length `nvars` and no coefficient is
/// zero; the zero polynomial has no terms. Operands with different `nvars`
/// are promoted to the larger ring (padding exponents with zeros preserves
/// the term order).
#[derive(Clone, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(0), c);
        }
        Polynomial { nvars: 0, terms }
    }

    /// The generator `t_index` (1-based).
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "variables are 1-based");
        let mut e = vec![0; index];
        e[index - 1] = 1;
        Polynomial::monomial(Rational::one(), Monomial(e))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial { nvars, terms: BTreeMap::new() };
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal nvars");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading_term().map_or(0, |(m, _)| m.degree())
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial { nvars: self.nvars, terms: BTreeMap::new() };
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn promote(&self, nvars: usize) -> Polynomial {
        if nvars <= self.nvars {
            return self.clone();
        }
        Polynomial {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.padded(nvars), c.clone())).collect(),
        }
    }

    /// Evaluate at a point; `point` must cover every variable.
    pub fn eval<F: Field>(&self, point: &[F]) -> F {
        assert!(point.len() >= self.nvars, "evaluation point too short");
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c.clone());
            for (x, &e) in point.iter().zip(&m.0) {
                t = t * x.pow(e);
            }
            acc = acc + t;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn aligned(self, other: Polynomial) -> (Polynomial, Polynomial) {
        let n = self.nvars.max(other.nvars);
        (self.promote(n), other.promote(n))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (mut rem, divisor) = self.clone().aligned(divisor.clone());
        let (lead_m, lead_c) = divisor.leading_term()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let lead_inv = lead_c.inv().ok()?;
        let mut quot = Polynomial { nvars: rem.nvars, terms: BTreeMap::new() };
        while let Some((m, c)) = rem.leading_term() {
            // In any monomial order LT(q*d) = LT(q)*LT(d), so a leading term
            // not divisible by LT(d) rules out exact division.
            let qm = m.div(&lead_m)?;
            let qc = c * &lead_inv;
            let step = Polynomial::monomial(qc.clone(), qm.clone());
            rem = rem - step * divisor.clone();
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        let (a, b) = self.clone().aligned(other.clone());
        a.terms == b.terms
    }
}

impl Eq for Polynomial {}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        let (a, b) = self.aligned(rhs);
        let mut out = Polynomial { nvars: a.nvars, terms: BTreeMap::new() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Terms in descending graded-lex order; coefficients are written directly in
/// front of the monomial (`2t1*t2`, `-t3`, `1/2t1^2`).
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = if m.degree() == 0 {
                c.to_string()
            } else if c.is_one() {
                fmt_monomial(m)
            } else if (-c.clone()).is_one() {
                format!("-{}", fmt_monomial(m))
            } else {
                format!("{}{}", c, fmt_monomial(m))
            };
            if idx > 0 && !body.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! The rank-1 local system `L_a` on the complement of `n` lines through the
//! origin and its three extensions across the lines (away from the origin),
//! as quiver diagrams.
//!
//! Only `n` and the monodromy multipliers are stored: any central arrangement
//! of `n` lines is treated through the normal form `x^n = y^n`.

use crate::error::{Error, Result};
use crate::exact::{product, Field, RationalFunction};
use crate::linalg::{rank, Matrix};

/// Rank-1 local system: the generator `Γ_i` around line `i` acts by `a_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSystem<F> {
    a: Vec<F>,
    k: usize,
    product: F,
}

impl<F: Field> LocalSystem<F> {
    pub fn new(a: Vec<F>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Precondition("a local system needs at least one line".into()));
        }
        if let Some(i) = a.iter().position(Field::is_zero) {
            return Err(Error::ZeroMonodromy(i + 1));
        }
        let k = a.iter().filter(|x| x.is_one()).count();
        let product = product(&a);
        Ok(LocalSystem { a, k, product })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn multipliers(&self) -> &[F] {
        &self.a
    }

    /// `a_i`, 1-based as in the line numbering.
    pub fn multiplier(&self, i: usize) -> &F {
        &self.a[i - 1]
    }

    /// Number of lines with trivial monodromy.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Total monodromy `a_1 * ... * a_n` (the loop around the origin).
    pub fn product(&self) -> &F {
        &self.product
    }

    pub fn product_is_one(&self) -> bool {
        self.product.is_one()
    }

    /// 0-based indices `i` with `a_i = 1`.
    pub fn trivial_lines(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a[i].is_one()).collect()
    }

    /// The local system with `a'_j = a_{perm[j]}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n()];
        if perm.len() != self.n() || perm.iter().any(|&p| p >= self.n() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Precondition(format!("{perm:?} is not a permutation of 0..{}", self.n())));
        }
        LocalSystem::new(perm.iter().map(|&p| self.a[p].clone()).collect())
    }

    /// Stable reordering with trivial lines first; `perm[j]` is the original
    /// index of the line placed at position `j`.
    pub fn trivial_first_order(&self) -> Vec<usize> {
        let (mut ones, rest): (Vec<usize>, Vec<usize>) = (0..self.n()).partition(|&i| self.a[i].is_one());
        ones.extend(rest);
        ones
    }
}

impl LocalSystem<RationalFunction> {
    /// The generic local system `a = (t1, ..., tn)`.
    pub fn generic(n: usize) -> Result<Self> {
        LocalSystem::new((1..=n).map(RationalFunction::var).collect())
    }
}

/// A diagram `A -> B_i -> A` for every line `i`: the stalk `A` of the local
/// system, the arm spaces `B_i` and maps `p_i: A -> B_i`, `q_i: B_i -> A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage1Diagram<F> {
    dim_a: usize,
    dim_b: Vec<usize>,
    p: Vec<Matrix<F>>,
    q: Vec<Matrix<F>>,
}

impl<F: Field> Stage1Diagram<F> {
    pub fn new(dim_a: usize, p: Vec<Matrix<F>>, q: Vec<Matrix<F>>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::Dimension(format!("{} p-maps but {} q-maps", p.len(), q.len())));
        }
        let mut dim_b = Vec::with_capacity(p.len());
        for (i, (pi, qi)) in p.iter().zip(&q).enumerate() {
            let b = pi.rows();
            if pi.cols() != dim_a || qi.rows() != dim_a || qi.cols() != b {
                return Err(Error::Dimension(format!(
                    "arm {}: p is {}x{}, q is {}x{}, stalk has dimension {dim_a}",
                    i + 1,
                    pi.rows(),
                    pi.cols(),
                    qi.rows(),
                    qi.cols()
                )));
            }
            dim_b.push(b);
        }
        Ok(Stage1Diagram { dim_a, dim_b, p, q })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> &[usize] {
        &self.dim_b
    }

    pub fn arms(&self) -> usize {
        self.dim_b.len()
    }

    pub fn p(&self, i: usize) -> &Matrix<F> {
        &self.p[i]
    }

    pub fn q(&self, i: usize) -> &Matrix<F> {
        &self.q[i]
    }

    pub fn is_zero(&self) -> bool {
        self.dim_a == 0 && self.dim_b.iter().all(|&b| b == 0)
    }

    /// `(p_1, ..., p_n)` stacked: `A -> B_1 ⊕ ... ⊕ B_n`.
    pub fn stacked_p(&self) -> Matrix<F> {
        let total: usize = self.dim_b.iter().sum();
        let mut data = Vec::with_capacity(total * self.dim_a);
        for pi in &self.p {
            data.extend(pi.entries().iter().cloned());
        }
        Matrix::from_vec(total, self.dim_a, data)
    }

    /// `(q_1, ..., q_n)` side by side: `B_1 ⊕ ... ⊕ B_n -> A`.
    pub fn concatenated_q(&self) -> Matrix<F> {
        let owner: Vec<(usize, usize)> = self
            .dim_b
            .iter()
            .enumerate()
            .flat_map(|(arm, &b)| (0..b).map(move |j| (arm, j)))
            .collect();
        Matrix::from_fn(self.dim_a, owner.len(), |r, c| {
            let (arm, j) = owner[c];
            self.q[arm].get(r, j).clone()
        })
    }

    /// Every triangle commutes with the variation: `q_i p_i = (a_i - 1) id_A`.
    pub fn commutes_with(&self, l: &LocalSystem<F>) -> bool {
        self.arms() == l.n()
            && (0..self.arms()).all(|i| {
                let var = Matrix::scalar(self.dim_a, l.a[i].clone() - F::one());
                self.q[i].mul(&self.p[i]).map(|m| m == var).unwrap_or(false)
            })
    }
}

fn scalar1<F: Field>(x: F) -> Matrix<F> {
    Matrix::from_vec(1, 1, vec![x])
}

/// Direct image: `p_i = a_i - 1`, `q_i = id`.
pub fn stage1_pushforward<F: Field>(l: &LocalSystem<F>) -> Stage1Diagram<F> {
    let p = l.a.iter().map(|a| scalar1(a.clone() - F::one())).collect();
    let q = l.a.iter().map(|_| scalar1(F::one())).collect();
    Stage1Diagram { dim_a: 1, dim_b: vec![1; l.n()], p, q }
}

/// Extension by zero: `p_i = id`, `q_i = a_i - 1`.
pub fn stage1_shriek<F: Field>(l: &LocalSystem<F>) -> Stage1Diagram<F> {
    let p = l.a.iter().map(|_| scalar1(F::one())).collect();
    let q = l.a.iter().map(|a| scalar1(a.clone() - F::one())).collect();
    Stage1Diagram { dim_a: 1, dim_b: vec![1; l.n()], p, q }
}

/// Intermediate extension: `B_i` is the image of `a_i - 1`, so it vanishes
/// exactly on the trivial lines.
pub fn stage1_intermediate<F: Field>(l: &LocalSystem<F>) -> Stage1Diagram<F> {
    let mut p = Vec::with_capacity(l.n());
    let mut q = Vec::with_capacity(l.n());
    for a in &l.a {
        if a.is_one() {
            p.push(Matrix::zeros(0, 1));
            q.push(Matrix::zeros(1, 0));
        } else {
            p.push(scalar1(a.clone() - F::one()));
            q.push(scalar1(F::one()));
        }
    }
    let dim_b = p.iter().map(Matrix::rows).collect();
    Stage1Diagram { dim_a: 1, dim_b, p, q }
}

/// Irreducibility of the direct image away from the origin: every `p_i` must
/// be an isomorphism, i.e. no line has trivial monodromy.
pub fn stage1_irreducible<F: Field>(d: &Stage1Diagram<F>, l: &LocalSystem<F>) -> Result<bool> {
    if d.arms() != l.n() || d.dim_a != 1 || d.dim_b.iter().any(|&b| b != 1) {
        return Err(Error::Precondition("expected the direct-image diagram of the local system".into()));
    }
    Ok((0..d.arms()).all(|i| rank(&d.p[i]) == 1))
}

/// The two pieces of the direct image when some lines have trivial
/// monodromy.
///
/// `d_i` carries the trivial lines (zero stalk, one-dimensional arms, zero
/// maps); `d_ii` carries the stalk and the non-trivial lines. Both diagrams
/// keep the original arm numbering; `permutation` records the trivial-first
/// order used to label them `1..k` and `k+1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting<F> {
    pub d_i: Stage1Diagram<F>,
    pub d_ii: Stage1Diagram<F>,
    pub k: usize,
    /// `permutation[j]` is the original 0-based index of sorted line `j`.
    pub permutation: Vec<usize>,
}

pub fn split_di_dii<F: Field>(l: &LocalSystem<F>) -> Splitting<F> {
    let n = l.n();
    let mut p_i = Vec::with_capacity(n);
    let mut q_i = Vec::with_capacity(n);
    let mut p_ii = Vec::with_capacity(n);
    let mut q_ii = Vec::with_capacity(n);
    for a in &l.a {
        if a.is_one() {
            p_i.push(Matrix::zeros(1, 0));
            q_i.push(Matrix::zeros(0, 1));
            p_ii.push(Matrix::zeros(0, 1));
            q_ii.push(Matrix::zeros(1, 0));
        } else {
            p_i.push(Matrix::zeros(0, 0));
            q_i.push(Matrix::zeros(0, 0));
            p_ii.push(scalar1(a.clone() - F::one()));
            q_ii.push(scalar1(F::one()));
        }
    }
    let d_i = Stage1Diagram::new(0, p_i, q_i).expect("shapes are consistent");
    let d_ii = Stage1Diagram::new(1, p_ii, q_ii).expect("shapes are consistent");
    Splitting { d_i, d_ii, k: l.k(), permutation: l.trivial_first_order() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, Rational};

    fn ls(a: &[&str]) -> LocalSystem<Rational> {
        LocalSystem::new(a.iter().map(|s| Rational::parse(s).unwrap()).collect()).unwrap()
    }

    fn q(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn local_system_basics() {
        let l = ls(&["2", "3", "5"]);
        assert_eq!((l.k(), l.product().clone()), (0, q("30")));
        let l = ls(&["1", "1"]);
        assert_eq!((l.k(), l.product_is_one()), (2, true));
        let l = ls(&["1", "2", "1/2"]);
        assert_eq!((l.k(), l.product_is_one()), (1, true));
    }

    #[test]
    fn zero_monodromy_rejected() {
        let err = LocalSystem::new(vec![q("2"), q("0")]).unwrap_err();
        assert_eq!(err, Error::ZeroMonodromy(2));
        assert!(LocalSystem::<Rational>::new(vec![]).is_err());
    }

    #[test]
    fn pushforward_maps() {
        let d = stage1_pushforward(&ls(&["2"]));
        assert_eq!((d.p(0).get(0, 0).clone(), d.q(0).get(0, 0).clone()), (q("1"), q("1")));
        let d = stage1_pushforward(&ls(&["1", "1", "1"]));
        assert!((0..3).all(|i| d.p(i).is_zero() && d.q(i).get(0, 0).is_one()));
        let d = stage1_pushforward(&ls(&["2", "1/2"]));
        assert_eq!(d.p(1).get(0, 0), &q("-1/2"));
    }

    #[test]
    fn shriek_maps() {
        let d = stage1_shriek(&ls(&["1"]));
        assert_eq!((d.p(0).get(0, 0).clone(), d.q(0).get(0, 0).clone()), (q("1"), q("0")));
        let d = stage1_shriek(&ls(&["3", "4"]));
        assert_eq!((d.q(0).get(0, 0).clone(), d.q(1).get(0, 0).clone()), (q("2"), q("3")));
    }

    #[test]
    fn intermediate_arm_dimensions() {
        assert_eq!(stage1_intermediate(&ls(&["2", "3"])).dim_b(), &[1, 1]);
        assert_eq!(stage1_intermediate(&ls(&["1"])).dim_b(), &[0]);
        assert_eq!(stage1_intermediate(&ls(&["1", "2"])).dim_b(), &[0, 1]);
    }

    #[test]
    fn irreducibility_away_from_origin() {
        for (a, expect) in [(vec!["2", "3", "5"], true), (vec!["1", "2"], false), (vec!["-1", "-1"], true)] {
            let l = ls(&a);
            assert_eq!(stage1_irreducible(&stage1_pushforward(&l), &l).unwrap(), expect, "{a:?}");
        }
        let l = ls(&["2", "3"]);
        assert!(stage1_irreducible(&stage1_shriek(&ls(&["2"])), &l).is_err());
    }

    #[test]
    fn splitting_examples() {
        let s = split_di_dii(&ls(&["1", "1", "1"]));
        assert_eq!((s.d_i.dim_a(), s.d_i.dim_b()), (0, &[1, 1, 1][..]));
        assert_eq!((s.d_ii.dim_a(), s.d_ii.dim_b()), (1, &[0, 0, 0][..]));

        let l = ls(&["2", "3"]);
        let s = split_di_dii(&l);
        assert!(s.d_i.is_zero());
        assert_eq!(s.d_ii, stage1_pushforward(&l));

        let s = split_di_dii(&ls(&["2", "1", "1/2"]));
        assert_eq!(s.d_i.dim_b(), &[0, 1, 0]);
        assert_eq!(s.d_ii.dim_b(), &[1, 0, 1]);
        assert_eq!(s.permutation, vec![1, 0, 2]);
    }

    #[test]
    fn gaussian_fourth_roots() {
        let i = GaussianRational::i();
        let l = LocalSystem::new(vec![i.clone(), i.clone(), i.clone(), i]).unwrap();
        assert!(l.product_is_one());
        assert_eq!(l.k(), 0);
    }

    #[test]
    fn generic_system_has_no_trivial_lines() {
        let l = LocalSystem::generic(3).unwrap();
        assert_eq!(l.k(), 0);
        assert!(!l.product_is_one());
        assert!(stage1_pushforward(&l).commutes_with(&l));
    }
}

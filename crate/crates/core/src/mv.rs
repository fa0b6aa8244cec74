//! Nearby cycles at the origin, the variation map between them, and the
//! ambient variation matrix `M_n` with its minor.
//!
//! All 1-based formulas are evaluated with 1-based loop variables and
//! converted to 0-based matrix positions at the point of storage.

use crate::arrangement::{LocalSystem, Stage1Diagram};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::linalg::{cokernel_basis, delete_row_col, free_columns, kernel_basis, rref, Cokernel, Matrix};

/// The `n x n` matrix of `⊕B_i -> ψ -> ψ_c -> ⊕B_i` for the direct image of
/// a rank-1 local system, with the tail products `β_k = a_k * ... * a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarMatrix<F> {
    n: usize,
    entries: Matrix<F>,
    betas: Vec<F>,
}

impl<F: Field> VarMatrix<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.entries
    }

    /// `d_rc` with 1-based `r`, `c`.
    pub fn entry(&self, r: usize, c: usize) -> &F {
        self.entries.get(r - 1, c - 1)
    }

    /// `β_k = a_k * ... * a_n` for `1 <= k <= n + 1` (`β_{n+1} = 1`).
    pub fn beta(&self, k: usize) -> &F {
        &self.betas[k - 1]
    }
}

fn tail_products<F: Field>(a: &[F]) -> Vec<F> {
    let n = a.len();
    let mut betas = vec![F::one(); n + 1];
    for k in (0..n).rev() {
        betas[k] = a[k].clone() * betas[k + 1].clone();
    }
    betas
}

/// `M_n` entry by entry from its closed-form case split:
///
/// * `r < c`: `(1 - a_r) (a_1 ... a_{r-1}) (a_{c+1} ... a_n)`
/// * `r = c`: `-1 + (product of all a_i with i != c)`
/// * `r > c`: `(1 - a_r) (a_{c+1} ... a_{r-1})`
pub fn ambient_var_matrix<F: Field>(l: &LocalSystem<F>) -> VarMatrix<F> {
    let a = l.multipliers();
    let n = a.len();
    let betas = tail_products(a);
    let mut prefix = vec![F::one(); n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i].clone() * a[i].clone();
    }
    // a_lo * ... * a_hi, 1-based, empty when lo > hi
    let range = |lo: usize, hi: usize| (lo..=hi).fold(F::one(), |acc, i| acc * a[i - 1].clone());
    let entries = Matrix::from_fn(n, n, |r0, c0| {
        let (r, c) = (r0 + 1, c0 + 1);
        let one = F::one();
        if r < c {
            (one - a[r - 1].clone()) * prefix[r - 1].clone() * betas[c].clone()
        } else if r == c {
            let others = (1..=n).filter(|&i| i != c).fold(F::one(), |acc, i| acc * a[i - 1].clone());
            others - one
        } else {
            (one - a[r - 1].clone()) * range(c + 1, r - 1)
        }
    });
    VarMatrix { n, entries, betas }
}

/// `M_n` assembled column by column from the variation on `B_l = C e_l`:
///
/// `var(e_l) = -Σ_{i=l+1}^{l+n} p_i a_{i-1} ... a_{l+1} e_i + (Π a_i) e_l - e_l`
///
/// with `p_i = a_i - 1`, indices taken modulo `n`, the product empty for
/// `i = l + 1` and equal to `a_{l+1}` for `i = l + 2`. The last summand
/// `i = l + n` lands on `e_l` itself and is added to the diagonal.
pub fn ambient_var_from_formula<F: Field>(l: &LocalSystem<F>) -> VarMatrix<F> {
    let a = l.multipliers();
    let n = a.len();
    let wrap = |i: usize| (i - 1) % n + 1;
    let total = l.product().clone();
    let mut columns: Vec<Vec<F>> = Vec::with_capacity(n);
    for col in 1..=n {
        let mut v = vec![F::zero(); n];
        let mut chain = F::one();
        for i in col + 1..=col + n {
            if i >= col + 2 {
                chain = chain * a[wrap(i - 1) - 1].clone();
            }
            let row = wrap(i);
            let p = a[row - 1].clone() - F::one();
            v[row - 1] = v[row - 1].clone() - p * chain.clone();
        }
        v[col - 1] = v[col - 1].clone() + total.clone() - F::one();
        columns.push(v);
    }
    VarMatrix { n, entries: Matrix::from_columns(n, &columns), betas: tail_products(a) }
}

/// `M'_{n-1}`: `M_n` without its first column and last row.
pub fn minor_matrix<F: Field>(mn: &VarMatrix<F>) -> Result<Matrix<F>> {
    if mn.n < 2 {
        return Err(Error::Precondition("no minor for n=1".into()));
    }
    delete_row_col(&mn.entries, mn.n - 1, 0)
}

/// `(-1)^(n-1) (a_1 - 1) (a_1 ... a_n - 1)^(n-2)`.
pub fn minor_det_closed_form<F: Field>(l: &LocalSystem<F>) -> Result<F> {
    let n = l.n();
    if n < 2 {
        return Err(Error::Precondition("no minor for n=1".into()));
    }
    let sign = if (n - 1).is_multiple_of(2) { F::one() } else { -F::one() };
    let first = l.multiplier(1).clone() - F::one();
    Ok(sign * first * (l.product().clone() - F::one()).pow((n - 2) as u32))
}

/// Which of the three extensions across the origin to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// `ψ -> ψ -> ψ_c` with maps `id`, `var`.
    Shriek,
    /// `ψ ->> im(var) >-> ψ_c`.
    Intermediate,
    /// `ψ -> ψ_c -> ψ_c` with maps `var`, `id`.
    Pushforward,
}

/// A triangle `ψ --m--> Φ --n--> ψ_c` over the variation `ψ -> ψ_c`.
///
/// `ψ` is the cokernel of `A -> ⊕B_i`, presented on the coordinates listed in
/// `psi.representatives`; `ψ_c` is the kernel of `⊕B_i -> A` with the basis
/// `psic`, whose coordinates are the entries at `psic_coords`. Positions in
/// `⊕B_i` are listed in `arms` by original (0-based) line index.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage2Object<F> {
    pub arms: Vec<usize>,
    pub psi: Cokernel<F>,
    pub psic: Vec<Vec<F>>,
    pub psic_coords: Vec<usize>,
    pub phi: usize,
    pub varmap: Matrix<F>,
    pub m: Matrix<F>,
    pub nmap: Matrix<F>,
}

impl<F: Field> Stage2Object<F> {
    pub fn dim_psi(&self) -> usize {
        self.psi.dim()
    }

    pub fn dim_psic(&self) -> usize {
        self.psic.len()
    }

    pub fn rank_var(&self) -> usize {
        self.varmap.rank()
    }

    pub fn triangle_commutes(&self) -> bool {
        self.nmap.mul(&self.m).map(|nm| nm == self.varmap).unwrap_or(false)
    }
}

/// Extend a diagram built from `l` (direct image, either splitting piece, or
/// any diagram with arms of dimension at most one) across the origin.
pub fn stage2_extension<F: Field>(
    d: &Stage1Diagram<F>,
    l: &LocalSystem<F>,
    kind: Extension,
) -> Result<Stage2Object<F>> {
    if d.arms() != l.n() {
        return Err(Error::Dimension(format!("diagram has {} arms, local system {} lines", d.arms(), l.n())));
    }
    if d.dim_b().iter().any(|&b| b > 1) {
        return Err(Error::Precondition("arms of dimension > 1 are not supported".into()));
    }
    let arms: Vec<usize> = (0..d.arms()).filter(|&i| d.dim_b()[i] == 1).collect();
    let ambient = ambient_var_matrix(l).entries.select(&arms, &arms);
    let p = d.stacked_p();
    let q = d.concatenated_q();
    let factors = ambient.mul(&p).map(|m| m.is_zero()).unwrap_or(false)
        && q.mul(&ambient).map(|m| m.is_zero()).unwrap_or(false);
    if !factors {
        return Err(Error::Precondition(
            "the variation of the local system does not factor through this diagram".into(),
        ));
    }

    let psi = cokernel_basis(&p);
    let psic = kernel_basis(&q);
    let psic_coords = free_columns(q.cols(), &rref(&q).1);
    let varmap = ambient.select(&psic_coords, &psi.representatives);

    let (phi, m, nmap) = match kind {
        Extension::Pushforward => (psic.len(), varmap.clone(), Matrix::identity(psic.len())),
        Extension::Shriek => (psi.dim(), Matrix::identity(psi.dim()), varmap.clone()),
        Extension::Intermediate => {
            let (r, pivots) = rref(&varmap);
            let rank = pivots.len();
            let rows: Vec<usize> = (0..rank).collect();
            let cols: Vec<usize> = (0..varmap.cols()).collect();
            let all_rows: Vec<usize> = (0..varmap.rows()).collect();
            (rank, r.select(&rows, &cols), varmap.select(&all_rows, &pivots))
        }
    };
    Ok(Stage2Object { arms, psi, psic, psic_coords, phi, varmap, m, nmap })
}

/// `ψ -> ψ_c -> ψ_c` for the given diagram: `Φ = ψ_c`, `m = var`, `n = id`.
pub fn stage2_pushforward<F: Field>(d: &Stage1Diagram<F>, l: &LocalSystem<F>) -> Result<Stage2Object<F>> {
    stage2_extension(d, l, Extension::Pushforward)
}

/// Variation on the trivial-line piece: `(a_1 ... a_n - 1) id_k`.
pub fn var_i_matrix<F: Field>(l: &LocalSystem<F>) -> Result<Matrix<F>> {
    if l.k() == 0 {
        return Err(Error::Precondition("var_I needs at least one line with a_i = 1".into()));
    }
    Ok(Matrix::scalar(l.k(), l.product().clone() - F::one()))
}

/// Variation on the non-trivial piece in the basis `e_{k+1}, ..., e_{n-1}`
/// after moving the trivial lines to the front: the principal block of
/// `M_n` on rows and columns `k+1..n-1`.
pub fn var_ii_matrix<F: Field>(l: &LocalSystem<F>) -> Result<Matrix<F>> {
    let (n, k) = (l.n(), l.k());
    if k == n {
        return Err(Error::Precondition("var_II needs a line with a_i != 1".into()));
    }
    let sorted = l.permuted(&l.trivial_first_order())?;
    let idx: Vec<usize> = (k..n - 1).collect();
    Ok(ambient_var_matrix(&sorted).entries.select(&idx, &idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{split_di_dii, stage1_intermediate, stage1_pushforward, stage1_shriek};
    use crate::exact::{Rational, RationalFunction};

    fn ls(a: &[&str]) -> LocalSystem<Rational> {
        LocalSystem::new(a.iter().map(|s| Rational::parse(s).unwrap()).collect()).unwrap()
    }

    fn q(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    fn sym(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn four_line_entries() {
        let m = ambient_var_matrix(&LocalSystem::generic(4).unwrap());
        assert_eq!(m.entry(1, 1), &sym("-1 + t2*t3*t4"));
        assert_eq!(m.entry(2, 4), &sym("t1 - t1*t2"));
        assert_eq!(m.entry(4, 1), &sym("t2*t3 - t2*t3*t4"));
        assert_eq!(m.beta(3), &sym("t3*t4"));
        assert_eq!(m.beta(5), &sym("1"));
    }

    #[test]
    fn degenerate_matrices() {
        let m = ambient_var_matrix(&ls(&["7"]));
        assert_eq!(m.matrix(), &Matrix::from_vec(1, 1, vec![q("0")]));
        assert!(ambient_var_matrix(&ls(&["1", "1", "1"])).matrix().is_zero());
        assert!(ambient_var_from_formula(&ls(&["1", "1", "1"])).matrix().is_zero());
        assert!(minor_matrix(&m).is_err());
        assert!(minor_det_closed_form(&ls(&["7"])).is_err());
    }

    #[test]
    fn formula_path_two_lines() {
        let m = ambient_var_from_formula(&LocalSystem::generic(2).unwrap());
        assert_eq!(m.matrix().col(0), vec![sym("-1 + t2"), sym("1 - t2")]);
    }

    #[test]
    fn two_paths_agree_symbolically() {
        for n in 1..=5 {
            let l = LocalSystem::generic(n).unwrap();
            assert_eq!(ambient_var_matrix(&l), ambient_var_from_formula(&l), "n={n}");
        }
    }

    #[test]
    fn minors() {
        let l = ls(&["5", "7"]);
        let minor = minor_matrix(&ambient_var_matrix(&l)).unwrap();
        assert_eq!(minor, Matrix::from_vec(1, 1, vec![q("-4")]));
        assert_eq!(minor.determinant().unwrap(), q("-4"));
        assert_eq!(minor_det_closed_form(&l).unwrap(), q("-4"));

        let l = ls(&["2", "3", "5"]);
        assert_eq!(minor_matrix(&ambient_var_matrix(&l)).unwrap().determinant().unwrap(), q("29"));
        assert_eq!(minor_det_closed_form(&l).unwrap(), q("29"));

        let g = minor_matrix(&ambient_var_matrix(&LocalSystem::generic(4).unwrap())).unwrap();
        assert_eq!((g.rows(), g.cols()), (3, 3));
        assert_eq!(g.get(0, 0), &sym("t3*t4 - t1*t3*t4"));

        assert!(minor_det_closed_form(&ls(&["2", "1/2", "1"])).unwrap().is_zero());
    }

    #[test]
    fn stage2_dimensions() {
        let l = ls(&["2", "3", "5", "7"]);
        let s = stage2_pushforward(&stage1_pushforward(&l), &l).unwrap();
        assert_eq!((s.dim_psi(), s.dim_psic(), s.phi), (3, 3, 3));
        assert_eq!(s.nmap, Matrix::identity(3));
        assert!(s.triangle_commutes());

        let l = ls(&["1", "1", "1"]);
        let split = split_di_dii(&l);
        let s = stage2_pushforward(&split.d_i, &l).unwrap();
        assert_eq!((s.dim_psi(), s.dim_psic()), (3, 3));
        assert!(s.varmap.is_zero());

        let l = ls(&["1", "2", "1/2", "3"]);
        let s = stage2_pushforward(&split_di_dii(&l).d_ii, &l).unwrap();
        assert_eq!((s.dim_psi(), s.dim_psic()), (2, 2));
    }

    #[test]
    fn stage2_rejects_foreign_diagram() {
        let l = ls(&["2", "3"]);
        assert!(stage2_pushforward(&stage1_pushforward(&ls(&["2"])), &l).is_err());
        // shriek diagram: var does not vanish on the image of p = id
        assert!(stage2_pushforward(&stage1_shriek(&l), &l).is_err());
    }

    #[test]
    fn all_three_extensions_commute() {
        let l = ls(&["2", "1/2", "3"]);
        for d in [stage1_pushforward(&l), stage1_intermediate(&l)] {
            for kind in [Extension::Shriek, Extension::Intermediate, Extension::Pushforward] {
                let s = stage2_extension(&d, &l, kind).unwrap();
                assert!(s.triangle_commutes(), "{kind:?}");
            }
        }
        let s = stage2_extension(&stage1_pushforward(&l), &l, Extension::Intermediate).unwrap();
        assert_eq!(s.phi, s.rank_var());
    }

    #[test]
    fn var_blocks() {
        assert!(var_i_matrix(&ls(&["1", "1", "1"])).unwrap().is_zero());
        assert_eq!(var_i_matrix(&ls(&["1", "2", "3"])).unwrap(), Matrix::scalar(1, q("5")));
        assert!(var_i_matrix(&ls(&["1", "1", "4", "1/4"])).unwrap().is_zero());
        assert!(var_i_matrix(&ls(&["2", "3"])).is_err());

        let m = var_ii_matrix(&ls(&["1", "2", "1/2"])).unwrap();
        assert_eq!((m.rows(), m.rank()), (1, 1));
        let m = var_ii_matrix(&ls(&["1", "1", "3"])).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
        let m = var_ii_matrix(&ls(&["2", "3", "5"])).unwrap();
        assert_eq!(m.determinant().unwrap(), q("116"));
        assert!(var_ii_matrix(&ls(&["1", "1"])).is_err());
    }

    #[test]
    fn pushforward_rank_matches_minor_rank() {
        for a in [["2", "3", "5"], ["2", "1/2", "3"], ["-1", "-1", "-1"], ["2", "2", "1/4"]] {
            let l = ls(&a);
            let s = stage2_pushforward(&stage1_pushforward(&l), &l).unwrap();
            let minor = minor_matrix(&ambient_var_matrix(&l)).unwrap();
            assert_eq!(s.rank_var(), minor.rank(), "{a:?}");
        }
    }
}

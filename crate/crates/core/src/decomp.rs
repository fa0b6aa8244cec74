//! Irreducibility and composition-factor counts for `Rj_* L_a`.
//!
//! Two independent counts are kept side by side:
//!
//! * the closed form in `n`, `k = #{i : a_i = 1}` and whether `Π a_i = 1`;
//! * a rank count: the part away from the origin has `k + 1` simple factors
//!   (one per trivial line plus the intermediate extension of `L_a`), and the
//!   origin contributes `dim ψ_c - rank(var)` more, with `dim ψ_c = n - 1`.

use serde::{Deserialize, Serialize};

use crate::arrangement::{split_di_dii, stage1_pushforward, LocalSystem};
use crate::error::Result;
use crate::exact::Field;
use crate::mv::{stage2_pushforward, var_i_matrix, var_ii_matrix};

/// Which of the two families of simple objects a factor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// `0 -> L -> 0`, supported at the origin.
    PhiType,
    /// Intermediate extension of a simple object away from the origin.
    ThatType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub kind: FactorKind,
    pub multiplicity: usize,
    pub description: String,
}

/// Factor count report. Serialized with a fixed key set; `schema` versions it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub schema: u32,
    pub a: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub product_is_one: bool,
    pub irreducible: bool,
    #[serde(rename = "closed_form")]
    pub closed_form_count: usize,
    #[serde(rename = "oracle")]
    pub oracle_count: usize,
    pub rank_var: usize,
    #[serde(rename = "factors")]
    pub factor_list: Vec<SimpleFactor>,
    pub agrees: bool,
}

pub const REPORT_SCHEMA: u32 = 1;

impl FactorReport {
    pub fn total_multiplicity(&self) -> usize {
        self.factor_list.iter().map(|f| f.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, kind: FactorKind) -> usize {
        self.factor_list.iter().filter(|f| f.kind == kind).map(|f| f.multiplicity).sum()
    }
}

/// Irreducibility criterion: no line has trivial monodromy and the total
/// monodromy is not trivial.
///
/// For `n = 2` this disagrees with both counts when `k = 0` and `Π a_i = 1`
/// (e.g. `a = (2, 1/2)` has a single factor); the criterion is kept as stated
/// and the disagreement is covered by tests.
pub fn is_irreducible<F: Field>(l: &LocalSystem<F>) -> bool {
    l.k() == 0 && !l.product_is_one()
}

pub fn count_closed_form<F: Field>(l: &LocalSystem<F>) -> usize {
    let (n, k) = (l.n(), l.k());
    if k == n {
        2 * n
    } else if l.product_is_one() {
        n + k - 1
    } else {
        k + 1
    }
}

fn line_list(lines: &[usize]) -> String {
    lines.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn factors(trivial: &[usize], with_generic: bool, phi: usize) -> Vec<SimpleFactor> {
    let mut out = Vec::new();
    if !trivial.is_empty() {
        out.push(SimpleFactor {
            kind: FactorKind::ThatType,
            multiplicity: trivial.len(),
            description: format!("intermediate extension of the constant sheaf on line(s) {}", line_list(trivial)),
        });
    }
    if with_generic {
        out.push(SimpleFactor {
            kind: FactorKind::ThatType,
            multiplicity: 1,
            description: "intermediate extension of L_a".into(),
        });
    }
    if phi > 0 {
        out.push(SimpleFactor {
            kind: FactorKind::PhiType,
            multiplicity: phi,
            description: "skyscraper at the origin".into(),
        });
    }
    out
}

fn report<F: Field>(l: &LocalSystem<F>, closed: usize, oracle: usize, rank_var: usize, list: Vec<SimpleFactor>) -> FactorReport {
    FactorReport {
        schema: REPORT_SCHEMA,
        a: l.multipliers().iter().map(ToString::to_string).collect(),
        n: l.n(),
        k: l.k(),
        product_is_one: l.product_is_one(),
        irreducible: is_irreducible(l),
        closed_form_count: closed,
        oracle_count: oracle,
        rank_var,
        factor_list: list,
        agrees: closed == oracle,
    }
}

/// Rank-based count, reported next to the closed form.
pub fn count_oracle<F: Field>(l: &LocalSystem<F>) -> Result<FactorReport> {
    let (n, k) = (l.n(), l.k());
    let s = stage2_pushforward(&stage1_pushforward(l), l)?;
    debug_assert_eq!(s.dim_psic(), n - 1);
    let rank_var = s.rank_var();
    let phi = s.dim_psic() - rank_var;
    let oracle = (k + 1) + phi;
    let list = factors(&l.trivial_lines(), true, phi);
    Ok(report(l, count_closed_form(l), oracle, rank_var, list))
}

/// Counts for the two pieces of the direct image away from the origin.
///
/// In each report `closed_form` is the per-piece value (`2k` or `k` for the
/// trivial-line piece; `n - k - 1` or `1` for the other) and `oracle` is
/// computed from the rank of the piece's variation. With `k = n` the second
/// piece has no data at the origin and reports zero.
pub fn decompose_branches<F: Field>(l: &LocalSystem<F>) -> Result<(FactorReport, FactorReport)> {
    let (n, k) = (l.n(), l.k());
    let unit = l.product_is_one();
    let trivial = l.trivial_lines();

    let first = if k == 0 {
        report(l, 0, 0, 0, Vec::new())
    } else {
        let rank = var_i_matrix(l)?.rank();
        let closed = if unit { 2 * k } else { k };
        report(l, closed, k + (k - rank), rank, factors(&trivial, false, k - rank))
    };

    let second = if k == n {
        report(l, 0, 0, 0, Vec::new())
    } else {
        let m = var_ii_matrix(l)?;
        let rank = m.rank();
        let closed = if unit { n - k - 1 } else { 1 };
        let phi = m.rows() - rank;
        report(l, closed, 1 + phi, rank, factors(&[], true, phi))
    };
    Ok((first, second))
}

/// The simple factors of `Rj_* L_a` with multiplicities, from the rank count.
pub fn classify_simples<F: Field>(l: &LocalSystem<F>) -> Result<Vec<SimpleFactor>> {
    Ok(count_oracle(l)?.factor_list)
}

/// Splitting pieces agree with the direct image vertex by vertex.
pub fn splitting_is_additive<F: Field>(l: &LocalSystem<F>) -> bool {
    let full = stage1_pushforward(l);
    let s = split_di_dii(l);
    s.d_i.dim_a() + s.d_ii.dim_a() == full.dim_a()
        && (0..l.n()).all(|i| s.d_i.dim_b()[i] + s.d_ii.dim_b()[i] == full.dim_b()[i])
}

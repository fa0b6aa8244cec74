//! Identity checks run by `pervarr verify`.
//!
//! Each check returns a [`CheckResult`]; on failure the first offending
//! multiplier vector is kept as the counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::LocalSystem;
use crate::decomp::{count_closed_form, count_oracle, decompose_branches};
use crate::exact::{Field, Rational};
use crate::mv::{ambient_var_from_formula, ambient_var_matrix, minor_det_closed_form, minor_matrix, var_ii_matrix};
use crate::sweep::Grid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &str, summary: String, counterexample: Option<String>) -> Self {
        CheckResult { name: name.into(), passed: counterexample.is_none(), summary, counterexample }
    }
}

fn show<F: Field>(a: &[F]) -> String {
    format!("a=({})", a.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn n_list(ns: impl Iterator<Item = usize>) -> String {
    ns.map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// Multiplier values of the standard test grid.
pub fn standard_values() -> Vec<Rational> {
    ["1", "-1", "2", "1/2", "3", "1/3", "2/3"]
        .iter()
        .map(|s| Rational::parse(s).expect("valid literal"))
        .collect()
}

/// A random nonzero rational `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn random_multiplier(rng: &mut impl Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=9);
        if p != 0 {
            return Rational::new(p, q).expect("nonzero denominator");
        }
    }
}

/// Determinant of the minor over rational functions in `t1..tn` against the
/// closed form, for `2 <= n <= nmax`.
pub fn minor_det_symbolic(nmax: usize) -> CheckResult {
    let ns = 2..=nmax;
    let bad = ns.clone().into_par_iter().find_first(|&n| {
        let l = LocalSystem::generic(n).expect("generators are nonzero");
        let minor = minor_matrix(&ambient_var_matrix(&l)).expect("n >= 2");
        minor.determinant().ok() != minor_det_closed_form(&l).ok()
    });
    CheckResult::new(
        "minor determinant (symbolic)",
        format!("n={}", n_list(ns)),
        bad.map(|n| format!("n={n}, a=(t1..t{n})")),
    )
}

/// The same identity at `points` random rational points per `n`.
pub fn minor_det_random(nmax: usize, points: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<Rational>> = (2..=nmax)
        .flat_map(|n| (0..points).map(move |_| n))
        .map(|n| (0..n).map(|_| random_multiplier(&mut rng)).collect())
        .collect();
    let bad = samples.par_iter().find_first(|a| {
        let l = LocalSystem::new(a.to_vec()).expect("nonzero multipliers");
        let minor = minor_matrix(&ambient_var_matrix(&l)).expect("n >= 2");
        minor.determinant().ok() != minor_det_closed_form(&l).ok()
    });
    CheckResult::new(
        "minor determinant (random rational points)",
        format!("{} points, n=2..{nmax}, seed {seed}", samples.len()),
        bad.map(|a| show(a)),
    )
}

/// Closed-form entries against the column-by-column assembly, symbolically.
pub fn cross_path(nmax: usize) -> CheckResult {
    let bad = (1..=nmax).into_par_iter().find_first(|&n| {
        let l = LocalSystem::generic(n).expect("generators are nonzero");
        ambient_var_matrix(&l) != ambient_var_from_formula(&l)
    });
    CheckResult::new(
        "variation matrix: closed form = assembled sum (symbolic)",
        format!("n={}", n_list(1..=nmax)),
        bad.map(|n| format!("n={n}")),
    )
}

/// `rank(var_II) = 1` wherever `Π a_i = 1` and `k < n - 1`.
pub fn rank_one(values: &[Rational], nmax: usize) -> CheckResult {
    let mut tested = 0;
    let mut bad = None;
    for n in 1..=nmax {
        let grid = Grid::uniform(values.to_vec(), n, usize::MAX).expect("nonempty values");
        let results = grid.par_map(|a| {
            let l = LocalSystem::new(a.clone()).ok()?;
            if !(l.product_is_one() && l.k() + 1 < l.n()) {
                return None;
            }
            let rank = var_ii_matrix(&l).map(|m| m.rank()).unwrap_or(usize::MAX);
            Some((rank == 1, a))
        });
        for (ok, a) in results.into_iter().flatten() {
            tested += 1;
            if !ok && bad.is_none() {
                bad = Some(show(&a));
            }
        }
    }
    CheckResult::new("rank of var_II is one", format!("{tested} points, n<={nmax}"), bad)
}

/// Closed-form count = rank count = sum of the branch counts.
pub fn counts_agree(values: &[Rational], nmax: usize) -> CheckResult {
    let mut tested = 0;
    let mut bad = None;
    for n in 1..=nmax {
        let grid = Grid::uniform(values.to_vec(), n, usize::MAX).expect("nonempty values");
        let results = grid.par_map(|a| {
            let ok = LocalSystem::new(a.clone()).ok().and_then(|l| {
                let closed = count_closed_form(&l);
                let oracle = count_oracle(&l).ok()?.oracle_count;
                let (b1, b2) = decompose_branches(&l).ok()?;
                Some(closed == oracle && b1.oracle_count + b2.oracle_count == closed)
            });
            (ok == Some(true), a)
        });
        for (ok, a) in results {
            tested += 1;
            if !ok && bad.is_none() {
                bad = Some(show(&a));
            }
        }
    }
    CheckResult::new(
        "closed-form count = rank count = branch sum",
        format!("{} values, {tested} grid points, n<={nmax}", values.len()),
        bad,
    )
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub symbolic: bool,
    pub numeric: bool,
    pub nmax_symbolic: usize,
    pub nmax_random: usize,
    pub points: usize,
    pub seed: u64,
    pub grid_values: Vec<Rational>,
    pub grid_nmax: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            symbolic: true,
            numeric: true,
            nmax_symbolic: 6,
            nmax_random: 12,
            points: 100,
            seed: 0,
            grid_values: standard_values(),
            grid_nmax: 5,
        }
    }
}

pub fn run(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if cfg.symbolic {
        out.push(minor_det_symbolic(cfg.nmax_symbolic));
    }
    if cfg.numeric {
        out.push(minor_det_random(cfg.nmax_random, cfg.points, cfg.seed));
    }
    if cfg.symbolic {
        out.push(cross_path(cfg.nmax_symbolic));
    }
    if cfg.numeric {
        out.push(rank_one(&cfg.grid_values, cfg.grid_nmax));
        out.push(counts_agree(&cfg.grid_values, cfg.grid_nmax));
    }
    out
}

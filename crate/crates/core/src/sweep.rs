//! Batch evaluation over a product grid of multiplier values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::LocalSystem;
use crate::decomp::{count_closed_form, count_oracle, is_irreducible};
use crate::error::{Error, Result};
use crate::exact::Field;

/// Default cap on the number of grid points.
pub const DEFAULT_MAX_GRID: usize = 1_000_000;

/// One grid point. Column order is fixed: `a, k, product, irreducible,
/// c_closed, c_oracle`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: String,
    pub k: usize,
    pub product: String,
    pub irreducible: bool,
    pub c_closed: usize,
    pub c_oracle: usize,
}

/// A product of per-coordinate value sets, enumerated in mixed radix with the
/// last coordinate varying fastest.
#[derive(Debug, Clone)]
pub struct Grid<F> {
    sets: Vec<Vec<F>>,
    size: usize,
}

impl<F: Field> Grid<F> {
    pub fn new(sets: Vec<Vec<F>>, cap: usize) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Precondition("a grid needs at least one coordinate".into()));
        }
        if let Some(i) = sets.iter().position(Vec::is_empty) {
            return Err(Error::EmptyValueSet(i + 1));
        }
        let size = sets.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len()));
        match size {
            Some(size) if size <= cap => Ok(Grid { sets, size }),
            Some(size) => Err(Error::GridTooLarge { points: size.to_string(), cap }),
            None => Err(Error::GridTooLarge { points: "more than usize::MAX".into(), cap }),
        }
    }

    /// The same value set on each of `n` coordinates.
    pub fn uniform(values: Vec<F>, n: usize, cap: usize) -> Result<Self> {
        Grid::new(vec![values; n], cap)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn dims(&self) -> usize {
        self.sets.len()
    }

    pub fn point(&self, mut index: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.sets.len()];
        for (slot, set) in out.iter_mut().zip(&self.sets).rev() {
            *slot = set[index % set.len()].clone();
            index /= set.len();
        }
        out
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<F>> + '_ {
        (0..self.size).map(|i| self.point(i))
    }

    /// Evaluate `f` at every point in parallel; results are in grid order.
    pub fn par_map<T: Send>(&self, f: impl Fn(Vec<F>) -> T + Sync + Send) -> Vec<T> {
        (0..self.size).into_par_iter().map(|i| f(self.point(i))).collect()
    }
}

pub fn evaluate<F: Field>(l: &LocalSystem<F>) -> Result<SweepRow> {
    let oracle = count_oracle(l)?;
    Ok(SweepRow {
        a: l.multipliers().iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        k: l.k(),
        product: l.product().to_string(),
        irreducible: is_irreducible(l),
        c_closed: count_closed_form(l),
        c_oracle: oracle.oracle_count,
    })
}

/// One row per grid point, in grid order. Points with a zero multiplier are
/// rejected.
pub fn sweep<F: Field>(grid: &Grid<F>) -> Result<Vec<SweepRow>> {
    grid.par_map(|a| LocalSystem::new(a).and_then(|l| evaluate(&l)))
        .into_iter()
        .collect()
}

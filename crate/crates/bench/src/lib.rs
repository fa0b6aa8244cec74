//! Inputs shared by the benchmarks in `benches/`.

use pervarr_core::arrangement::LocalSystem;
use pervarr_core::exact::{Rational, RationalFunction};
use pervarr_core::sweep::{Grid, DEFAULT_MAX_GRID};
use pervarr_core::verify::standard_values;

/// The local system `(t1, ..., tn)` over rational functions.
pub fn generic_system(n: usize) -> LocalSystem<RationalFunction> {
    LocalSystem::generic(n).expect("n >= 1")
}

/// A fixed rational point with no trivial line: `a_i = (i + 1) / i`.
pub fn rational_system(n: usize) -> LocalSystem<Rational> {
    let a = (1..=n as i64).map(|i| Rational::new(i + 1, i).expect("i >= 1")).collect();
    LocalSystem::new(a).expect("nonzero multipliers")
}

/// The standard seven-value grid on `n` lines.
pub fn standard_grid(n: usize) -> Grid<Rational> {
    Grid::uniform(standard_values(), n, DEFAULT_MAX_GRID).expect("grid within cap")
}

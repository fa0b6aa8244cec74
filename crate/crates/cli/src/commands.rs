use anyhow::{bail, ensure, Context, Result};
use pervarr_core::arrangement::LocalSystem;
use pervarr_core::decomp::{count_oracle, decompose_branches};
use pervarr_core::exact::{Field, FieldElement, FieldMode, GaussianRational, Rational, RationalFunction};
use pervarr_core::mv::{ambient_var_matrix, minor_det_closed_form, minor_matrix};
use pervarr_core::sweep::{sweep, Grid};
use pervarr_core::verify::{self, VerifyConfig};

use crate::output::{self, Emit, MatrixReport, VerifyReport};
use crate::{Cli, Command, Status};

macro_rules! with_field {
    ($mode:expr, $f:ident => $body:expr) => {
        match $mode {
            FieldMode::Rational => {
                type $f = Rational;
                $body
            }
            FieldMode::Gaussian => {
                type $f = GaussianRational;
                $body
            }
            FieldMode::Symbolic => {
                type $f = RationalFunction;
                $body
            }
        }
    };
}

pub fn run(cli: &Cli) -> Result<Status> {
    let explicit = cli.common.mode.map(FieldMode::from);
    let emit = Emit::new(cli.common.format, cli.common.out.clone());
    match &cli.command {
        Command::Matrix { a, n } => {
            let (mode, a) = match (a, n) {
                (Some(a), _) => (explicit.unwrap_or_else(|| FieldElement::infer_mode(a)), Some(a)),
                (None, Some(_)) => (explicit.unwrap_or(FieldMode::Symbolic), None),
                (None, None) => bail!("`matrix` needs -a or -n"),
            };
            with_field!(mode, F => matrix::<F>(a.map(String::as_str), *n, &emit))
        }
        Command::Factors { a } => {
            let mode = explicit.unwrap_or_else(|| FieldElement::infer_mode(a));
            with_field!(mode, F => factors::<F>(a, &emit))
        }
        Command::Verify { nmax, grid, seed, points } => {
            let cfg = VerifyConfig {
                symbolic: explicit.is_none_or(|m| m == FieldMode::Symbolic),
                numeric: explicit.is_none_or(|m| m != FieldMode::Symbolic),
                nmax_symbolic: *nmax,
                points: *points,
                seed: *seed,
                grid_nmax: grid.nmax(),
                ..VerifyConfig::default()
            };
            ensure!(*nmax >= 2, "--nmax must be at least 2");
            let checks = verify::run(&cfg);
            let status = if checks.iter().all(|c| c.passed) { Status::Pass } else { Status::Violated };
            emit.verify(&VerifyReport { schema: output::SCHEMA, seed: *seed, checks })?;
            Ok(status)
        }
        Command::Sweep { grid, n, max_grid } => {
            let mode = explicit.unwrap_or_else(|| FieldElement::infer_mode(grid));
            with_field!(mode, F => sweep_grid::<F>(grid, *n, *max_grid, &emit))
        }
    }
}

/// Parse a comma-separated list of field elements.
pub fn parse_list<F: Field>(text: &str, what: &str) -> Result<Vec<F>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| {
            let s = s.trim();
            F::parse(s).with_context(|| format!("{what}{} = `{s}`", i + 1))
        })
        .collect()
}

fn local_system<F: Field>(a: &str) -> Result<LocalSystem<F>> {
    Ok(LocalSystem::new(parse_list(a, "a_")?)?)
}

fn matrix<F: Field>(a: Option<&str>, n: Option<usize>, emit: &Emit) -> Result<Status> {
    let l: LocalSystem<F> = match a {
        Some(a) => {
            let l = local_system(a)?;
            if let Some(n) = n {
                ensure!(n == l.n(), "-n {n} does not match the {} multipliers given", l.n());
            }
            l
        }
        None => {
            let n = n.expect("checked by caller");
            ensure!(F::MODE == FieldMode::Symbolic, "-n without -a needs symbolic mode");
            ensure!(n >= 1, "-n must be at least 1");
            let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
            local_system(&names.join(","))?
        }
    };
    let mn = ambient_var_matrix(&l);
    let mut report = MatrixReport::new(F::MODE, &l, mn.matrix());
    if l.n() >= 2 {
        let minor = minor_matrix(&mn)?;
        let det = minor.determinant()?;
        let closed = minor_det_closed_form(&l)?;
        report.set_minor(&minor, &det, &closed, det == closed);
    }
    let status = if report.agrees == Some(false) { Status::Violated } else { Status::Pass };
    emit.matrix(&report)?;
    Ok(status)
}

fn factors<F: Field>(a: &str, emit: &Emit) -> Result<Status> {
    if F::MODE == FieldMode::Symbolic {
        bail!("`factors` needs numeric multipliers; symbolic mode is not supported");
    }
    let l: LocalSystem<F> = local_system(a)?;
    let report = count_oracle(&l)?;
    let branches = if l.k() >= 1 { Some(decompose_branches(&l)?) } else { None };
    let status = if report.agrees { Status::Pass } else { Status::Violated };
    emit.factors(&report, l.product(), branches.as_ref())?;
    Ok(status)
}

fn sweep_grid<F: Field>(spec: &str, n: Option<usize>, cap: usize, emit: &Emit) -> Result<Status> {
    if F::MODE == FieldMode::Symbolic {
        bail!("`sweep` needs numeric values; symbolic mode is not supported");
    }
    let sets: Vec<Vec<F>> = if spec.contains(';') {
        let sets = spec
            .split(';')
            .enumerate()
            .map(|(i, s)| if s.trim().is_empty() { Ok(Vec::new()) } else { parse_list(s, &format!("set {} value ", i + 1)) })
            .collect::<Result<Vec<_>>>()?;
        if let Some(n) = n {
            ensure!(n == sets.len(), "-n {n} does not match the {} value sets given", sets.len());
        }
        sets
    } else {
        let n = n.context("a single value set needs -n")?;
        ensure!(n >= 1, "-n must be at least 1");
        let values = if spec.trim().is_empty() { Vec::new() } else { parse_list(spec, "value ")? };
        vec![values; n]
    };
    let grid = Grid::new(sets, cap)?;
    let rows = sweep(&grid)?;
    let status = if rows.iter().all(|r| r.c_closed == r.c_oracle) { Status::Pass } else { Status::Violated };
    emit.sweep(&rows)?;
    Ok(status)
}

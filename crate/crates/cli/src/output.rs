//! Pretty, JSON and CSV renderings of command results.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use pervarr_core::arrangement::LocalSystem;
use pervarr_core::decomp::{FactorKind, FactorReport};
use pervarr_core::exact::{Field, FieldMode};
use pervarr_core::linalg::Matrix;
use pervarr_core::sweep::SweepRow;
use pervarr_core::verify::CheckResult;
use serde::{Deserialize, Serialize};

use crate::Format;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub schema: u32,
    pub mode: FieldMode,
    pub a: Vec<String>,
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
    pub minor: Option<Vec<Vec<String>>>,
    pub minor_det: Option<String>,
    pub closed_form: Option<String>,
    pub agrees: Option<bool>,
    #[serde(skip)]
    pretty: String,
}

fn cells<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

impl MatrixReport {
    pub fn new<F: Field>(mode: FieldMode, l: &LocalSystem<F>, m: &Matrix<F>) -> Self {
        let a: Vec<String> = l.multipliers().iter().map(ToString::to_string).collect();
        let n = l.n();
        let mut pretty = format!("a = ({})\nM_{n} =\n{m}\n", a.join(","));
        if n == 1 {
            pretty.push_str("no minor for n=1\n");
        }
        MatrixReport {
            schema: SCHEMA,
            mode,
            a,
            n,
            matrix: cells(m),
            minor: None,
            minor_det: None,
            closed_form: None,
            agrees: None,
            pretty,
        }
    }

    pub fn set_minor<F: Field>(&mut self, minor: &Matrix<F>, det: &F, closed: &F, agrees: bool) {
        let _ = write!(
            self.pretty,
            "minor (first column and last row deleted) =\n{minor}\n\
             det(minor)  = {det}\nclosed form = {closed}\n{}\n",
            if agrees { "agree" } else { "DISAGREE" }
        );
        self.minor = Some(cells(minor));
        self.minor_det = Some(det.to_string());
        self.closed_form = Some(closed.to_string());
        self.agrees = Some(agrees);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize)]
struct FactorRow {
    a: String,
    n: usize,
    k: usize,
    product_is_one: bool,
    irreducible: bool,
    closed_form: usize,
    oracle: usize,
    rank_var: usize,
    phi_type: usize,
    that_type: usize,
    agrees: bool,
}

#[derive(Serialize)]
struct MatrixCell<'a> {
    matrix: &'a str,
    row: usize,
    col: usize,
    value: &'a str,
}

#[derive(Serialize)]
struct CheckRow<'a> {
    check: &'a str,
    passed: bool,
    summary: &'a str,
    counterexample: &'a str,
}

pub struct Emit {
    format: Format,
    out: Option<PathBuf>,
}

fn csv_string<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().context("flushing CSV")?)?)
}

fn json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

impl Emit {
    pub fn new(format: Format, out: Option<PathBuf>) -> Self {
        Emit { format, out }
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(stdout.flush()?)
            }
        }
    }

    pub fn matrix(&self, r: &MatrixReport) -> Result<()> {
        let text = match self.format {
            Format::Pretty => r.pretty.clone(),
            Format::Json => json_string(r)?,
            Format::Csv => {
                let mut cells = Vec::new();
                for (name, m) in [("M", Some(&r.matrix)), ("minor", r.minor.as_ref())] {
                    for (i, row) in m.into_iter().flatten().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            cells.push(MatrixCell { matrix: name, row: i + 1, col: j + 1, value: v });
                        }
                    }
                }
                csv_string(cells)?
            }
        };
        self.write(&text)
    }

    pub fn factors<F: Field>(
        &self,
        r: &FactorReport,
        product: &F,
        branches: Option<&(FactorReport, FactorReport)>,
    ) -> Result<()> {
        let text = match self.format {
            Format::Pretty => {
                let mut s = format!("a = ({})\n", r.a.join(","));
                let _ = writeln!(s, "n = {}, k = {}, product = {product}", r.n, r.k);
                let verdict = if r.irreducible { "irreducible" } else { "reducible" };
                let _ = writeln!(s, "{verdict}; c={}", r.closed_form_count);
                let rel = if r.agrees { "=" } else { "!=" };
                let _ = writeln!(s, "c={} (closed form) {rel} {} (oracle)", r.closed_form_count, r.oracle_count);
                let _ = writeln!(s, "rank var = {}", r.rank_var);
                if r.irreducible != (r.closed_form_count == 1) {
                    let _ = writeln!(s, "note: the irreducibility criterion and the count disagree for this input");
                }
                s.push_str("factors:\n");
                for f in &r.factor_list {
                    let _ = writeln!(s, "  {} x {}: {}", f.multiplicity, kind_name(f.kind), f.description);
                }
                if let Some((b1, b2)) = branches {
                    let _ = writeln!(
                        s,
                        "branches: trivial lines {} + remaining lines {} = {}",
                        b1.oracle_count,
                        b2.oracle_count,
                        b1.oracle_count + b2.oracle_count
                    );
                }
                s
            }
            Format::Json => json_string(r)?,
            Format::Csv => csv_string([FactorRow {
                a: r.a.join(","),
                n: r.n,
                k: r.k,
                product_is_one: r.product_is_one,
                irreducible: r.irreducible,
                closed_form: r.closed_form_count,
                oracle: r.oracle_count,
                rank_var: r.rank_var,
                phi_type: r.multiplicity_of(FactorKind::PhiType),
                that_type: r.multiplicity_of(FactorKind::ThatType),
                agrees: r.agrees,
            }])?,
        };
        self.write(&text)
    }

    pub fn verify(&self, r: &VerifyReport) -> Result<()> {
        let text = match self.format {
            Format::Pretty => {
                let mut s = String::new();
                for c in &r.checks {
                    let _ = writeln!(s, "{}: {} ({})", c.name, if c.passed { "PASS" } else { "FAIL" }, c.summary);
                    if let Some(x) = &c.counterexample {
                        let _ = writeln!(s, "  counterexample: {x}");
                    }
                }
                let failed = r.checks.iter().filter(|c| !c.passed).count();
                if failed == 0 {
                    let _ = writeln!(s, "all {} checks passed", r.checks.len());
                } else {
                    let _ = writeln!(s, "{failed} of {} checks failed", r.checks.len());
                }
                s
            }
            Format::Json => json_string(r)?,
            Format::Csv => csv_string(r.checks.iter().map(|c| CheckRow {
                check: &c.name,
                passed: c.passed,
                summary: &c.summary,
                counterexample: c.counterexample.as_deref().unwrap_or(""),
            }))?,
        };
        self.write(&text)
    }

    pub fn sweep(&self, rows: &[SweepRow]) -> Result<()> {
        let text = match self.format {
            Format::Pretty => {
                let header = ["a", "k", "product", "irreducible", "c_closed", "c_oracle"];
                let body: Vec<[String; 6]> = rows
                    .iter()
                    .map(|r| {
                        [
                            format!("({})", r.a),
                            r.k.to_string(),
                            r.product.clone(),
                            r.irreducible.to_string(),
                            r.c_closed.to_string(),
                            r.c_oracle.to_string(),
                        ]
                    })
                    .collect();
                let mut width = header.map(str::len);
                for row in &body {
                    for (w, c) in width.iter_mut().zip(row) {
                        *w = (*w).max(c.len());
                    }
                }
                let mut s = String::new();
                let line = |s: &mut String, cols: &[&str]| {
                    let cells: Vec<String> = cols.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
                    let _ = writeln!(s, "{}", cells.join("  ").trim_end());
                };
                line(&mut s, &header);
                for row in &body {
                    line(&mut s, &row.each_ref().map(String::as_str));
                }
                s
            }
            Format::Json => json_string(&rows)?,
            Format::Csv => csv_string(rows)?,
        };
        self.write(&text)
    }
}

fn kind_name(kind: FactorKind) -> &'static str {
    match kind {
        FactorKind::PhiType => "phi-type",
        FactorKind::ThatType => "that-type",
    }
}

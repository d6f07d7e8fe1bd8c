//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{h2_lminus1_basis, predicted_poincare, Engine};
use crate::complex::{Cochain, Fault};
use crate::conjecture::ConjectureScan;
use crate::error::{Error, Result};
use crate::partitions::KContext;
use crate::report::CheckReport;
use crate::verify::{run_all, Ranges};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Brute-force dimensions of H^q_(n)(L_k)
    Dims,
    /// Poincaré polynomials per degree, with the partition formula when k >= 1
    Poincare,
    /// Cocycle representatives of a cohomology basis
    Basis,
    /// Run the verification suites
    Verify,
    /// Evidence for the presentation conjecture of H*(L_1)
    Conjecture,
    /// Cocycles of H^2_(n)(L_-1), the central extensions
    Extensions,
}

#[derive(Debug, Parser)]
#[command(name = "lk-cohomology", version, about = "Cohomology of L_k over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub k: i32,

    /// Largest degree; `verify` uses its built-in ranges when omitted
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub n_max: Option<i32>,

    #[arg(long, global = true)]
    pub q_max: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Negative control: run with a deliberately wrong coboundary
    #[arg(long, global = true, hide = true)]
    pub inject_fault: bool,
}

/// Validated settings for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub k: KContext,
    pub n_max: Option<i32>,
    pub q_max: Option<usize>,
    pub format: Format,
    pub jobs: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

pub const DEFAULT_N_MAX: i32 = 12;

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let k = KContext::new(cli.k)?;
        if let Some(n) = cli.n_max.filter(|n| *n < 0) {
            return Err(Error::OutOfRange(format!("--n-max must be >= 0, got {n}")));
        }
        if cli.jobs == 0 {
            return Err(Error::OutOfRange("--jobs must be >= 1".into()));
        }
        Ok(Self {
            command: cli.command,
            k,
            n_max: cli.n_max,
            q_max: cli.q_max,
            format: cli.format,
            jobs: cli.jobs,
            seed: cli.seed,
            fault: cli.inject_fault.then_some(Fault::IgnoreParity),
        })
    }

    fn n_max(&self) -> i32 {
        self.n_max.unwrap_or(DEFAULT_N_MAX)
    }

    fn engine(&self) -> Engine {
        match self.fault {
            Some(f) => Engine::with_fault(f),
            None => Engine::new(),
        }
    }

    fn q_range(&self, engine: &Engine, n: i32) -> std::ops::RangeInclusive<usize> {
        let top = engine.get(self.k).complex().max_q(n);
        1..=self.q_max.map_or(top, |q| q.min(top))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCell {
    pub n: i32,
    pub q: usize,
    pub dim: usize,
}

/// `dim H^q_(n)(L_k)` for a range of cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsTable {
    pub k: i32,
    pub cells: Vec<DimCell>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvDimRow {
    k: i32,
    n: i32,
    q: usize,
    dim: usize,
}

impl DimsTable {
    pub fn compute(cfg: &RunConfig, engine: &Engine) -> Self {
        let h = engine.get(cfg.k);
        let keys: Vec<(i32, usize)> =
            (0..=cfg.n_max()).flat_map(|n| cfg.q_range(engine, n).map(move |q| (n, q))).collect();
        let cells = keys.par_iter().map(|&(n, q)| DimCell { n, q, dim: h.dim(n, q) }).collect();
        Self { k: cfg.k.k(), cells }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.cells {
            w.serialize(CsvDimRow { k: self.k, n: c.n, q: c.q, dim: c.dim }).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    /// Parses the output of [`DimsTable::to_csv`]. The `k` of an empty
    /// table cannot be recovered and is taken from `k`.
    pub fn from_csv(s: &str, k: i32) -> csv::Result<Self> {
        let mut table = Self { k, cells: Vec::new() };
        for row in csv::Reader::from_reader(s.as_bytes()).deserialize() {
            let row: CsvDimRow = row?;
            table.k = row.k;
            table.cells.push(DimCell { n: row.n, q: row.q, dim: row.dim });
        }
        Ok(table)
    }

    pub fn to_table(&self) -> String {
        let q_top = self.cells.iter().map(|c| c.q).max().unwrap_or(0);
        let mut out = format!("dim H^q_(n)(L_{})\n{:>4}", self.k, "n");
        for q in 1..=q_top {
            let _ = write!(out, " {:>5}", format!("q={q}"));
        }
        out.push('\n');
        let mut rows: Vec<i32> = self.cells.iter().map(|c| c.n).collect();
        rows.dedup();
        for n in rows {
            let _ = write!(out, "{n:>4}");
            for q in 1..=q_top {
                match self.cells.iter().find(|c| c.n == n && c.q == q) {
                    Some(c) => {
                        let _ = write!(out, " {:>5}", c.dim);
                    }
                    None => out.push_str("      "),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareRow {
    pub n: i32,
    pub coefficients: Vec<u64>,
    pub polynomial: String,
    pub predicted: Option<String>,
}

impl PoincareRow {
    pub fn matches(&self) -> bool {
        self.predicted.as_ref().is_none_or(|p| *p == self.polynomial)
    }
}

#[derive(Debug, Serialize)]
struct BasisEntry {
    n: i32,
    q: usize,
    dim: usize,
    /// Each representative as a list of monomials, each an index list.
    representatives: Vec<Vec<Vec<i32>>>,
}

fn index_lists(c: &Cochain) -> Vec<Vec<i32>> {
    c.terms().map(|m| m.indices().to_vec()).collect()
}

#[derive(Debug, Serialize)]
struct ExtensionCocycle {
    name: String,
    terms: Vec<Vec<i32>>,
}

#[derive(Debug, Serialize)]
struct ExtensionEntry {
    n: i32,
    dim: usize,
    cocycles: Vec<ExtensionCocycle>,
}

fn csv_string<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data")
}

/// Output text and exit code of one command.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn cmd_dims(cfg: &RunConfig, engine: &Engine) -> Outcome {
    let table = DimsTable::compute(cfg, engine);
    let stdout = match cfg.format {
        Format::Table => table.to_table(),
        Format::Json => table.to_json() + "\n",
        Format::Csv => table.to_csv(),
    };
    Outcome { stdout, code: EXIT_OK }
}

fn cmd_poincare(cfg: &RunConfig, engine: &Engine) -> Result<Outcome> {
    let h = engine.get(cfg.k);
    let rows: Vec<Result<PoincareRow>> = (0..=cfg.n_max())
        .into_par_iter()
        .map(|n| {
            let brute = h.poincare(n);
            let predicted = if cfg.k.k() >= 1 { Some(predicted_poincare(cfg.k, n)?.to_string()) } else { None };
            Ok(PoincareRow { n, coefficients: brute.coefficients().to_vec(), polynomial: brute.to_string(), predicted })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let code = if rows.iter().all(PoincareRow::matches) { EXIT_OK } else { EXIT_VIOLATION };
    let stdout = match cfg.format {
        Format::Json => json(&serde_json::json!({ "k": cfg.k.k(), "rows": rows })) + "\n",
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                k: i32,
                n: i32,
                polynomial: &'a str,
                predicted: &'a str,
                matches: bool,
            }
            csv_string(rows.iter().map(|r| Row {
                k: cfg.k.k(),
                n: r.n,
                polynomial: &r.polynomial,
                predicted: r.predicted.as_deref().unwrap_or(""),
                matches: r.matches(),
            }))
        }
        Format::Table => {
            let mut out = format!("Poincare polynomials of H_(n)(L_{})\n", cfg.k.k());
            for r in &rows {
                let _ = write!(out, "{:>4}  {}", r.n, r.polynomial);
                if let Some(p) = &r.predicted {
                    let _ = write!(out, "  [{}]", if r.matches() { "matches formula" } else { "formula gives " });
                    if !r.matches() {
                        let _ = write!(out, " {p}");
                    }
                }
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome { stdout, code })
}

fn cmd_basis(cfg: &RunConfig, engine: &Engine) -> Outcome {
    let h = engine.get(cfg.k);
    let keys: Vec<(i32, usize)> = (0..=cfg.n_max()).flat_map(|n| cfg.q_range(engine, n).map(move |q| (n, q))).collect();
    let entries: Vec<BasisEntry> = keys
        .par_iter()
        .map(|&(n, q)| {
            let b = h.basis(n, q);
            BasisEntry { n, q, dim: b.dim, representatives: b.representatives.iter().map(index_lists).collect() }
        })
        .filter(|e| e.dim > 0)
        .collect();
    let stdout = match cfg.format {
        Format::Json => json(&serde_json::json!({ "k": cfg.k.k(), "bases": entries })) + "\n",
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                k: i32,
                n: i32,
                q: usize,
                index: usize,
                representative: String,
            }
            csv_string(entries.iter().flat_map(|e| {
                let k = cfg.k.k();
                e.representatives.iter().enumerate().map(move |(index, r)| Row {
                    k,
                    n: e.n,
                    q: e.q,
                    index,
                    representative: render_terms(r),
                })
            }))
        }
        Format::Table => {
            let mut out = String::new();
            for e in &entries {
                let _ = writeln!(out, "H^{}_({})(L_{}), dim {}", e.q, e.n, cfg.k.k(), e.dim);
                for r in &e.representatives {
                    let _ = writeln!(out, "  {}", render_terms(r));
                }
            }
            out
        }
    };
    Outcome { stdout, code: EXIT_OK }
}

fn render_terms(terms: &[Vec<i32>]) -> String {
    terms
        .iter()
        .map(|m| m.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join("^"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn report_outcome(cfg: &RunConfig, reports: &[CheckReport]) -> Outcome {
    let code = if reports.iter().all(CheckReport::passed) { EXIT_OK } else { EXIT_VIOLATION };
    let stdout = match cfg.format {
        Format::Json => json(&reports) + "\n",
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                suite: &'a str,
                passed: bool,
                checked: usize,
                failures: usize,
                first_failure: &'a str,
            }
            csv_string(reports.iter().map(|r| Row {
                suite: &r.name,
                passed: r.passed(),
                checked: r.checked,
                failures: r.failures.len(),
                first_failure: r.failures.first().map_or("", String::as_str),
            }))
        }
        Format::Table => reports.iter().map(|r| format!("{r}\n")).collect(),
    };
    Outcome { stdout, code }
}

fn cmd_verify(cfg: &RunConfig, engine: &Engine) -> Outcome {
    let mut ranges = cfg.n_max.map_or_else(Ranges::default, Ranges::capped);
    for k in 5..=cfg.k.k() {
        ranges.hk_values.push(k);
    }
    report_outcome(cfg, &run_all(engine, &ranges, cfg.seed))
}

fn cmd_conjecture(cfg: &RunConfig, engine: &Engine) -> Outcome {
    let scan = ConjectureScan::run(engine, cfg.n_max());
    let verdict = if !scan.consistent() {
        "inconsistent: the two reductions disagree"
    } else if scan.hilbert_holds() {
        "conjecture-consistent"
    } else {
        "counterexample found"
    };
    let violations = scan.generation_violations().len();
    let code = if scan.consistent() && violations == 0 { EXIT_OK } else { EXIT_VIOLATION };
    let stdout = match cfg.format {
        Format::Json => {
            json(&serde_json::json!({
                "n_max": scan.n_max,
                "cells": scan.cells,
                "hilbert_holds": scan.hilbert_holds(),
                "counting_holds": scan.counting_holds(),
                "consistent": scan.consistent(),
                "verdict": verdict,
            })) + "\n"
        }
        Format::Csv => csv_string(&scan.cells),
        Format::Table => {
            let mut out = format!(
                "{:>3} {:>2} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}\n",
                "n", "q", "words", "ideal", "quot", "H", "|P|", "|M0|"
            );
            for c in &scan.cells {
                let flag = match (c.hilbert_holds(), c.counting_holds()) {
                    (true, true) => "",
                    (false, true) => "  quotient != H",
                    (true, false) => "  |P| != |M0|",
                    (false, false) => "  quotient != H, |P| != |M0|",
                };
                let _ = writeln!(
                    out,
                    "{:>3} {:>2} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}{flag}",
                    c.n, c.q, c.monomials, c.ideal_rank, c.quotient, c.cohomology, c.pairs, c.m0
                );
            }
            if violations > 0 {
                let _ = writeln!(out, "{violations} cells have a quotient smaller than the cohomology");
            }
            let _ = writeln!(out, "{verdict}");
            out
        }
    };
    Outcome { stdout, code }
}

fn cmd_extensions(cfg: &RunConfig, engine: &Engine) -> Result<Outcome> {
    let h = engine.k(-1);
    let mut entries = Vec::new();
    let mut report = CheckReport::new("extensions");
    for n in (2..=cfg.n_max()).step_by(2) {
        let cocycles = h2_lminus1_basis(n)?;
        for c in &cocycles {
            report.check(h.complex().coboundary(&c.value)?.is_zero(), || format!("{} at n={n} is not closed", c.name));
        }
        entries.push(ExtensionEntry {
            n,
            dim: h.dim(n, 2),
            cocycles: cocycles
                .into_iter()
                .map(|c| ExtensionCocycle { name: c.name, terms: index_lists(&c.value) })
                .collect(),
        });
    }
    report.check(entries.iter().all(|e| e.dim == e.cocycles.len()), || "cocycle count differs from dim H^2".into());
    let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
    let stdout = match cfg.format {
        Format::Json => json(&serde_json::json!({ "extensions": entries })) + "\n",
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                n: i32,
                name: &'a str,
                cocycle: String,
            }
            csv_string(entries.iter().flat_map(|e| {
                e.cocycles.iter().map(move |c| Row { n: e.n, name: &c.name, cocycle: render_terms(&c.terms) })
            }))
        }
        Format::Table => {
            let mut out = String::new();
            for e in &entries {
                let _ = writeln!(out, "n={} dim H^2 = {}", e.n, e.dim);
                for c in &e.cocycles {
                    let _ = writeln!(out, "  {:<8} {}", c.name, render_terms(&c.terms));
                }
            }
            out
        }
    };
    Ok(Outcome { stdout, code })
}

/// Runs one validated configuration on a pool of `cfg.jobs` workers.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| Error::OutOfRange(e.to_string()))?;
    let engine = cfg.engine();
    pool.install(|| match cfg.command {
        Command::Dims => Ok(cmd_dims(cfg, &engine)),
        Command::Poincare => cmd_poincare(cfg, &engine),
        Command::Basis => Ok(cmd_basis(cfg, &engine)),
        Command::Verify => Ok(cmd_verify(cfg, &engine)),
        Command::Conjecture => Ok(cmd_conjecture(cfg, &engine)),
        Command::Extensions => cmd_extensions(cfg, &engine),
    })
}

/// Parses arguments, runs, and writes data to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cfg) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VIOLATION
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("lk-cohomology").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dims_json_example() {
        let (code, out, _) = run_args(&["dims", "--n-max", "12", "--format", "json"]);
        assert_eq!(code, 0);
        let table = DimsTable::from_json(&out).unwrap();
        assert_eq!(table.k, 1);
        assert!(table.cells.contains(&DimCell { n: 12, q: 2, dim: 3 }));
        assert!(table.cells.iter().all(|c| c.n != 0));
    }

    #[test]
    fn dims_k0_odd_rows_vanish() {
        let (code, out, _) = run_args(&["dims", "--k", "0", "--n-max", "9", "--format", "json"]);
        assert_eq!(code, 0);
        let table = DimsTable::from_json(&out).unwrap();
        assert!(table.cells.iter().filter(|c| c.n % 2 == 1).all(|c| c.dim == 0));
        assert!(table.cells.iter().any(|c| c.n % 2 == 1));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["dims", "--k", "-2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["dims", "--jobs", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["dims", "--n-max", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["dims", "--format", "xml"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn extensions_example() {
        let (code, out, _) = run_args(&["extensions", "--n-max", "6", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let ext = v["extensions"].as_array().unwrap();
        let counts: Vec<usize> = ext.iter().map(|e| e["cocycles"].as_array().unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 2]);
        assert_eq!(ext[0]["cocycles"][0]["terms"], serde_json::json!([[0, 2]]));
    }

    #[test]
    fn verify_and_fault() {
        assert_eq!(run_args(&["verify", "--n-max", "0"]).0, EXIT_OK);
        assert_eq!(run_args(&["verify", "--n-max", "9"]).0, EXIT_OK);
        assert_eq!(run_args(&["verify", "--n-max", "9", "--inject-fault"]).0, EXIT_VIOLATION);
    }

    #[test]
    fn conjecture_small() {
        let (code, out, _) = run_args(&["conjecture", "--n-max", "12"]);
        assert_eq!(code, 0);
        assert!(out.trim_end().ends_with("conjecture-consistent"), "{out}");
    }
}

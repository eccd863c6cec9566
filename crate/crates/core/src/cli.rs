//! Batch command-line interface.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::cells::{betti, cell_list, stability_check, stable_betti};
use crate::classalg::{ClassAlgebra, CountMethod, FactorizationKey, DEFAULT_MAX_DEGREE};
use crate::cover::{local_conditions, validate_hurwitz_point, BranchTuple, ComponentSignature};
use crate::monoid::{multiply_opposite, multiply_with, GenusRule};
use crate::partition::{factorial, partition_count, Partition};
use crate::perm::Perm;
use crate::report::{Format, Report, Table};
use crate::ring::{Ring, RingElement};
use crate::suites::{self, SuiteOutcome};

pub const DEFAULT_SEED: u64 = 20_061_027;
pub const BRUTE_FORCE_LIMIT: usize = 10;
pub const PARTITION_LIMIT: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {message}")]
    Usage { flag: String, message: String },
    #[error(transparent)]
    Library(#[from] crate::error::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Library(_) => 1,
        }
    }
}

fn usage(flag: &str, message: impl ToString) -> CliError {
    CliError::Usage { flag: flag.into(), message: message.to_string() }
}

#[derive(Debug, Parser)]
#[command(
    name = "hurwitz-cells",
    version,
    about = "Branched covers of the disk: components, cells, Betti numbers and cup products"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached character tables (also read from HURWITZ_CELLS_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random trials per degree for randomized suites.
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Raise the degree guard (10 for brute-force paths, 12 otherwise).
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Chars,
    Both,
}

impl MethodArg {
    fn methods(self) -> Vec<CountMethod> {
        match self {
            MethodArg::Brute => vec![CountMethod::Brute],
            MethodArg::Chars => vec![CountMethod::Chars],
            MethodArg::Both => vec![CountMethod::Brute, CountMethod::Chars],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Euler,
    BoundaryFree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MonoidCheck {
    Oracle,
    Commutation,
    Ore,
    Good,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverCheck {
    Local,
    Hurwitz,
    Moves,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers of the degree-d complex.
    Betti {
        #[arg(long)]
        d: usize,
    },
    /// Cell inventory: dimension and isotropy order per partition.
    Cells {
        #[arg(long)]
        d: usize,
    },
    /// Cup product of two cell classes.
    Cup {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Chars)]
        method: MethodArg,
        /// Report coefficients in the isotropy-weighted basis.
        #[arg(long)]
        orbifold: bool,
    },
    /// Polynomial structure of the ring in degrees up to d.
    RingVerify {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Chars)]
        method: MethodArg,
    },
    /// Product of two component signatures given as JSON.
    MonoidMul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = RuleArg::Euler)]
        rule: RuleArg,
        /// Cross b before a.
        #[arg(long)]
        opposite: bool,
    },
    /// Randomized monoid laws for every degree up to --max-d.
    MonoidCheck {
        #[arg(long, value_enum, default_value_t = MonoidCheck::All)]
        check: MonoidCheck,
        #[arg(long, default_value_t = 6)]
        max_d: usize,
    },
    /// Local-cover criterion, Hurwitz-point validation or braid-move invariance.
    CoverCheck {
        #[arg(long, value_enum, default_value_t = CoverCheck::Local)]
        check: CoverCheck,
        /// A branch tuple such as "d=3; (1 2); (1 3)"; omitted for the randomized suites.
        #[arg(long)]
        tuple: Option<String>,
        /// Target boundary monodromy for --check hurwitz.
        #[arg(long)]
        pi: Option<String>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 7)]
        max_d: usize,
        /// Degrees enumerated exhaustively by the local suite.
        #[arg(long, default_value_t = 4)]
        exhaustive_d: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Character table of S_d.
    Chars {
        #[arg(long)]
        d: usize,
    },
    /// Number of pairs (s, t) in classes (mu, nu) with t∘s a fixed element of class lam.
    FactorCount {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        lam: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Chars)]
        method: MethodArg,
    },
    /// Stabilization from degree d to d+1 (or every degree up to --max-d).
    Stability {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        max_d: Option<usize>,
    },
    /// Betti numbers for every degree up to --max-d against the stable values.
    StableTable {
        #[arg(long, default_value_t = 12)]
        max_d: usize,
    },
}

/// Parses the arguments, runs one subcommand on a pool of `--jobs` workers
/// and returns its report.
pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.config.jobs {
        if jobs == 0 {
            return Err(usage("--jobs", "must be at least 1"));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| usage("--jobs", e))?;
    pool.install(|| run(&cli.command, &cli.config))
}

#[derive(Clone, Copy)]
enum Path {
    Brute,
    Partitions,
}

fn guard(config: &RunConfig, flag: &str, d: usize, path: Path) -> Result<(), CliError> {
    if d == 0 {
        return Err(usage(flag, "degree must be at least 1"));
    }
    let (default, estimate) = match path {
        Path::Brute => (BRUTE_FORCE_LIMIT, format!("{} permutations", factorial(d.min(34)))),
        Path::Partitions => (PARTITION_LIMIT, format!("{} partitions", partition_count(d))),
    };
    let limit = config.max_degree.unwrap_or(default);
    if d > limit {
        return Err(usage(
            flag,
            format!("degree {d} exceeds the limit {limit} (about {estimate}); raise --max-degree"),
        ));
    }
    if d > default {
        eprintln!("note: degree {d} is past the default limit {default}; enumerating about {estimate}");
    }
    Ok(())
}

fn algebra(config: &RunConfig, d: usize) -> ClassAlgebra {
    let max = d.max(DEFAULT_MAX_DEGREE);
    if config.no_cache {
        ClassAlgebra::new(max)
    } else {
        ClassAlgebra::from_env(max, config.cache_dir.clone())
    }
}

fn partition_arg(flag: &str, value: &str, d: Option<usize>) -> Result<Partition, CliError> {
    let p = Partition::from_str(value).map_err(|e| usage(flag, e))?;
    if let Some(d) = d {
        if p.degree() != d {
            return Err(usage(flag, format!("{p} is a partition of {}, not of {d}", p.degree())));
        }
    }
    Ok(p)
}

fn run(command: &Command, config: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Betti { d } => {
            guard(config, "--d", *d, Path::Partitions)?;
            Ok(betti_report(*d))
        }
        Command::Cells { d } => {
            guard(config, "--d", *d, Path::Partitions)?;
            Ok(cells_report(*d))
        }
        Command::Cup { d, mu, nu, method, orbifold } => {
            let mu = partition_arg("--mu", mu, *d)?;
            let nu = partition_arg("--nu", nu, Some(mu.degree()))?;
            let path = if *method == MethodArg::Chars { Path::Partitions } else { Path::Brute };
            guard(config, "--d", mu.degree(), path)?;
            cup_report(config, &mu, &nu, *method, *orbifold)
        }
        Command::RingVerify { d, method } => {
            let path = if *method == MethodArg::Chars { Path::Partitions } else { Path::Brute };
            guard(config, "--d", *d, path)?;
            ring_verify_report(config, *d, *method)
        }
        Command::MonoidMul { a, b, rule, opposite } => {
            let a: ComponentSignature = serde_json::from_str(a).map_err(|e| usage("--a", e))?;
            let b: ComponentSignature = serde_json::from_str(b).map_err(|e| usage("--b", e))?;
            if a.degree() != b.degree() {
                return Err(usage("--b", format!("degree {} differs from degree {} of --a", b.degree(), a.degree())));
            }
            let rule = match rule {
                RuleArg::Euler => GenusRule::EulerCharacteristic,
                RuleArg::BoundaryFree => GenusRule::BoundaryFree,
            };
            let product = if *opposite { multiply_opposite(&a, &b)? } else { multiply_with(&a, &b, rule)? };
            let mut report = Report::new("monoid-mul", &product);
            report.line(format!("{a} * {b} = {product}"));
            let mut table = Table::new(["block", "genus"]);
            for (block, g) in product.blocks().blocks().iter().zip(product.genus()) {
                table.push([format!("{block:?}"), g.to_string()]);
            }
            Ok(report.with_table(table))
        }
        Command::MonoidCheck { check, max_d } => {
            guard(config, "--max-d", *max_d, Path::Brute)?;
            let mut outcomes = Vec::new();
            for d in 1..=*max_d {
                let (t, s) = (config.trials, config.seed);
                if matches!(check, MonoidCheck::Oracle | MonoidCheck::All) {
                    outcomes.push(suites::monoid_oracle(d, t, s));
                }
                if matches!(check, MonoidCheck::Commutation | MonoidCheck::All) {
                    outcomes.push(suites::commutation(d, t, s));
                }
                if matches!(check, MonoidCheck::Ore | MonoidCheck::All) {
                    outcomes.push(suites::ore(d, t, s));
                }
                if matches!(check, MonoidCheck::Good | MonoidCheck::All) {
                    outcomes.push(suites::cofinality(d, t, s));
                }
            }
            Ok(suite_report("monoid-check", config.seed, outcomes))
        }
        Command::CoverCheck { check, tuple, pi, genus, max_d, exhaustive_d, max_len } => {
            cover_check(config, *check, tuple.as_deref(), pi.as_deref(), *genus, *max_d, *exhaustive_d, *max_len)
        }
        Command::Chars { d } => {
            guard(config, "--d", *d, Path::Partitions)?;
            chars_report(config, *d)
        }
        Command::FactorCount { d, mu, nu, lam, method } => {
            let mu = partition_arg("--mu", mu, *d)?;
            let nu = partition_arg("--nu", nu, Some(mu.degree()))?;
            let lam = partition_arg("--lam", lam, Some(mu.degree()))?;
            let path = if *method == MethodArg::Chars { Path::Partitions } else { Path::Brute };
            guard(config, "--d", mu.degree(), path)?;
            factor_count_report(config, FactorizationKey { mu, nu, lam }, *method)
        }
        Command::Stability { d, max_d } => {
            let degrees: Vec<usize> = match (d, max_d) {
                (Some(d), None) => vec![*d],
                (None, Some(m)) => (1..=*m).collect(),
                _ => return Err(usage("--d", "give exactly one of --d and --max-d")),
            };
            let top = *degrees.last().expect("nonempty");
            guard(config, if d.is_some() { "--d" } else { "--max-d" }, top, Path::Partitions)?;
            Ok(stability_report(&degrees))
        }
        Command::StableTable { max_d } => {
            guard(config, "--max-d", *max_d, Path::Partitions)?;
            Ok(stable_table_report(*max_d))
        }
    }
}

fn betti_report(d: usize) -> Report {
    let b = betti(d);
    let top = 2 * (d - 1);
    let by_degree: Vec<u64> = (0..=top).map(|k| b.get(&k).copied().unwrap_or(0)).collect();
    let mut report = Report::new(
        "betti",
        json!({
            "d": d,
            "betti": by_degree.iter().enumerate().map(|(k, v)| json!({"k": k, "b": v})).collect::<Vec<_>>(),
        }),
    );
    let mut table = Table::new(std::iter::once("d".to_string()).chain((0..=top).map(|k| k.to_string())));
    table.push(std::iter::once(d as u64).chain(by_degree.iter().copied()));
    report.line(format!("rational Betti numbers, degree {d} (odd degrees vanish)"));
    for (k, v) in &b {
        report.line(format!("b_{k} = {v}"));
    }
    if b.values().sum::<u64>() as u128 != partition_count(d) {
        report.fail("Betti numbers do not sum to the number of partitions");
    }
    for m in 0..=d / 2 {
        if b[&(2 * m)] as u128 != stable_betti(m) {
            report.fail(format!("b_{} = {} differs from p({m}) = {}", 2 * m, b[&(2 * m)], stable_betti(m)));
        }
    }
    report.with_table(table)
}

fn cells_report(d: usize) -> Report {
    let cells = cell_list(d);
    let mut report = Report::new("cells", json!({"d": d, "cells": &cells}));
    let mut table = Table::new(["lam", "dim", "isotropy_order", "class_size", "orientable"]);
    for c in &cells {
        let class_size = c.lam.class_size();
        table.push([
            c.lam.to_string(),
            c.dim.to_string(),
            c.isotropy_order.to_string(),
            class_size.to_string(),
            c.orientable.to_string(),
        ]);
        report.line(format!("e_{{{}}}: dim {}, isotropy order {}", c.lam, c.dim, c.isotropy_order));
        if c.isotropy_order * class_size != factorial(d) {
            report.fail(format!("isotropy order of {} times class size is not {d}!", c.lam));
        }
    }
    report.with_table(table)
}

fn element_table(x: &RingElement) -> Table {
    let mut table = Table::new(["lam", "coefficient"]);
    for (lam, c) in x.terms() {
        table.push([lam.to_string(), c.to_string()]);
    }
    table
}

fn cup_report(
    config: &RunConfig,
    mu: &Partition,
    nu: &Partition,
    method: MethodArg,
    orbifold: bool,
) -> Result<Report, CliError> {
    let store = algebra(config, mu.degree());
    let products =
        method.methods().into_iter().map(|m| Ring::new(&store, m).cup_basis(mu, nu)).collect::<Result<Vec<_>, _>>()?;
    let product = if orbifold { products[0].orbifold_view() } else { products[0].clone() };
    let mut report = Report::new("cup", &product);
    report.line(format!("t_{{{mu}}} * t_{{{nu}}} = {product}"));
    if products.iter().any(|p| *p != products[0]) {
        report.fail(format!("brute force gives {}, characters give {}", products[0], products[1]));
    }
    Ok(report.with_table(element_table(&product)))
}

fn ring_verify_report(config: &RunConfig, d: usize, method: MethodArg) -> Result<Report, CliError> {
    let store = algebra(config, d);
    let mut reports = Vec::new();
    for m in method.methods() {
        reports.push(Ring::new(&store, m).verify_polynomial(d)?);
    }
    let primary = &reports[0];
    let mut report = Report::new(
        "ring-verify",
        json!({"d": d, "passed": reports.iter().all(|r| r.passed()), "degrees": &primary.degrees}),
    );
    let mut table = Table::new(["degree", "betti", "monomials", "rank"]);
    for r in &primary.degrees {
        table.push([r.degree, r.betti, r.monomials.len(), r.rank]);
        report.line(format!(
            "degree {}: {} monomials, rank {}, betti {}",
            r.degree,
            r.monomials.len(),
            r.rank,
            r.betti
        ));
        if let Some(v) = r.violations.first() {
            report.fail(format!("degree {}: {v}", r.degree));
        }
    }
    if reports.len() == 2 {
        let same = reports[0].degrees.iter().zip(&reports[1].degrees).all(|(a, b)| a.expansions == b.expansions);
        if !same {
            report.fail("brute-force and character expansions differ");
        }
    }
    Ok(report.with_table(table))
}

fn suite_report(command: &str, seed: u64, outcomes: Vec<SuiteOutcome>) -> Report {
    let passed = outcomes.iter().all(SuiteOutcome::passed);
    let mut report = Report::new(command, json!({"seed": seed, "passed": passed, "suites": &outcomes}));
    let mut table = Table::new(["suite", "d", "trials", "failures"]);
    for o in &outcomes {
        table.push([o.suite.clone(), o.degree.to_string(), o.trials.to_string(), o.failures.to_string()]);
        report.line(format!("{} d={}: {}/{} failed", o.suite, o.degree, o.failures, o.trials));
        if let Some(w) = &o.witness {
            report.fail(format!("{} d={}: {w}", o.suite, o.degree));
        }
    }
    report.with_table(table)
}

#[allow(clippy::too_many_arguments)]
fn cover_check(
    config: &RunConfig,
    check: CoverCheck,
    tuple: Option<&str>,
    pi: Option<&str>,
    genus: u32,
    max_d: usize,
    exhaustive_d: usize,
    max_len: usize,
) -> Result<Report, CliError> {
    let tuple = tuple.map(|t| BranchTuple::from_str(t).map_err(|e| usage("--tuple", e))).transpose()?;
    match (check, tuple) {
        (CoverCheck::Local, Some(t)) => {
            let c = local_conditions(&t)?;
            let local = c.additive_boundary();
            let mut report = Report::new("cover-check", json!({"tuple": &t, "conditions": c, "local": local}));
            report.line(format!("{t}"));
            report.line(format!(
                "sum of lengths {}, d minus components {}, boundary length {}: {}",
                c.total_length,
                c.degree_minus_components,
                c.boundary_length,
                if local { "local" } else { "not local" }
            ));
            if c.additive_over_components() != local {
                report.fail(format!("the two locality criteria disagree on {t}"));
            }
            let mut table = Table::new(["total_length", "degree_minus_components", "boundary_length", "local"]);
            table.push([
                c.total_length.to_string(),
                c.degree_minus_components.to_string(),
                c.boundary_length.to_string(),
                local.to_string(),
            ]);
            Ok(report.with_table(table))
        }
        (CoverCheck::Local, None) => {
            guard(config, "--max-d", max_d, Path::Brute)?;
            if exhaustive_d > 5 || max_len > 4 {
                return Err(usage("--exhaustive-d", "exhaustive enumeration is limited to d <= 5 and --max-len <= 4"));
            }
            let mut outcomes: Vec<SuiteOutcome> =
                (1..=exhaustive_d).map(|d| suites::local_lemma_exhaustive(d, max_len)).collect();
            outcomes.extend((1..=max_d).map(|d| suites::local_lemma_random(d, config.trials, config.seed)));
            Ok(suite_report("cover-check", config.seed, outcomes))
        }
        (CoverCheck::Hurwitz, Some(t)) => {
            let pi = pi.ok_or_else(|| usage("--pi", "required for --check hurwitz"))?;
            let target = Perm::parse(pi, Some(t.degree())).map_err(|e| usage("--pi", e))?;
            let result = validate_hurwitz_point(&t, &target, genus)?;
            let mut report = Report::new(
                "cover-check",
                json!({"tuple": &t, "pi": &target, "genus": genus, "valid": result.is_valid(), "failures": &result.failures}),
            );
            let mut table = Table::new(["condition", "holds"]);
            for c in [
                crate::cover::HurwitzCondition::BoundaryMonodromy,
                crate::cover::HurwitzCondition::NontrivialBranches,
                crate::cover::HurwitzCondition::Transitive,
                crate::cover::HurwitzCondition::Genus,
            ] {
                let holds = !result.failures.contains(&c);
                table.push([c.label().to_string(), holds.to_string()]);
                report.line(format!("{}: {}", c.label(), if holds { "holds" } else { "fails" }));
            }
            if let Some(c) = result.diagnosis() {
                report.fail(format!("{} fails for {t}", c.label()));
            }
            Ok(report.with_table(table))
        }
        (CoverCheck::Hurwitz, None) => Err(usage("--tuple", "required for --check hurwitz")),
        (CoverCheck::Moves, _) => {
            guard(config, "--max-d", max_d, Path::Brute)?;
            let outcomes = (1..=max_d).map(|d| suites::hurwitz_moves(d, config.trials, config.seed)).collect();
            Ok(suite_report("cover-check", config.seed, outcomes))
        }
    }
}

fn chars_report(config: &RunConfig, d: usize) -> Result<Report, CliError> {
    let store = algebra(config, d);
    let table = store.table(d)?;
    let mut report = Report::new("chars", &*table);
    let mut out =
        Table::new(std::iter::once("irrep".to_string()).chain(table.partitions.iter().map(|p| p.to_string())));
    let width = table.partitions.iter().map(|p| p.to_string().len()).max().unwrap_or(1).max(4) + 1;
    report.line(format!(
        "{:>w$} |{}",
        "",
        table.partitions.iter().map(|p| format!("{:>width$}", p.to_string())).collect::<String>(),
        w = width
    ));
    for (lam, row) in table.partitions.iter().zip(&table.values) {
        out.push(std::iter::once(lam.to_string()).chain(row.iter().map(|v| v.to_string())));
        let cells: String = row.iter().map(|v| format!("{v:>width$}")).collect();
        report.line(format!("{:>width$} |{cells}", lam.to_string()));
    }
    if let Err(e) = table.verify() {
        report.fail(e.to_string());
    }
    Ok(report.with_table(out))
}

fn factor_count_report(config: &RunConfig, key: FactorizationKey, method: MethodArg) -> Result<Report, CliError> {
    let store = algebra(config, key.degree());
    let methods = method.methods();
    let counts = methods.iter().map(|m| store.count(&key, *m)).collect::<Result<Vec<_>, _>>()?;
    let agree = counts.iter().all(|c| *c == counts[0]);
    let mut data = json!({"mu": &key.mu, "nu": &key.nu, "lam": &key.lam, "d": key.degree()});
    let mut table = Table::new(["mu", "nu", "lam", "method", "count"]);
    let mut report_lines = Vec::new();
    for (m, c) in methods.iter().zip(&counts) {
        let name = serde_json::to_value(m).expect("method name").as_str().expect("string").to_string();
        data[&name] = json!(c);
        table.push([key.mu.to_string(), key.nu.to_string(), key.lam.to_string(), name.clone(), c.to_string()]);
        report_lines.push(format!("{name}: {c}"));
    }
    if methods.len() == 2 {
        data["match"] = json!(agree);
        report_lines.push(if agree { "match".into() } else { "MISMATCH".into() });
    }
    let mut report = Report::new("factor-count", data);
    report.line(format!("mu={} nu={} lam={}", key.mu, key.nu, key.lam));
    for l in report_lines {
        report.line(l);
    }
    if !agree {
        report.fail(format!("counts differ for ({}; {}; {}): {counts:?}", key.mu, key.nu, key.lam));
    }
    Ok(report.with_table(table))
}

fn stability_report(degrees: &[usize]) -> Report {
    let reports: Vec<_> = degrees.iter().map(|&d| stability_check(d)).collect();
    let passed = reports.iter().all(|r| r.passed());
    let mut report = Report::new("stability", json!({"passed": passed, "checks": &reports}));
    let mut table = Table::new(["d", "new_cells", "min_new_length", "predicted", "stable_below"]);
    for r in &reports {
        let names: Vec<String> = r.new_cells.iter().map(|p| format!("({p})")).collect();
        table.push([
            r.d.to_string(),
            names.join(" "),
            r.min_new_length.to_string(),
            r.predicted_min_length.to_string(),
            r.stable_below.to_string(),
        ]);
        report.line(format!(
            "d={} -> {}: {} new cells, min N {} (predicted {}), Betti numbers agree below degree {}",
            r.d,
            r.d + 1,
            r.new_cells.len(),
            r.min_new_length,
            r.predicted_min_length,
            r.stable_below
        ));
        if let Some(v) = r.violations.first() {
            report.fail(format!("d={}: {v}", r.d));
        }
    }
    report.with_table(table)
}

fn stable_table_report(max_d: usize) -> Report {
    let columns: Vec<usize> = (0..max_d).collect();
    let stable: Vec<u128> = columns.iter().map(|&m| stable_betti(m)).collect();
    let mut rows = Vec::new();
    let mut table = Table::new(std::iter::once("d".to_string()).chain(columns.iter().map(|m| (2 * m).to_string())));
    let mut violations = Vec::new();
    for d in 1..=max_d {
        let b = betti(d);
        let values: Vec<u64> = columns.iter().map(|m| b.get(&(2 * m)).copied().unwrap_or(0)).collect();
        for (m, v) in values.iter().enumerate() {
            if 2 * m <= d && *v as u128 != stable[m] {
                violations.push(format!("d={d}: b_{} = {v}, p({m}) = {}", 2 * m, stable[m]));
            }
        }
        table.push(std::iter::once(d as u64).chain(values.iter().copied()));
        rows.push(json!({"d": d, "betti": values}));
    }
    let stable_json: Vec<String> = stable.iter().map(u128::to_string).collect();
    let mut report = Report::new(
        "stable-table",
        json!({"max_d": max_d, "rows": rows, "stable": stable_json, "passed": violations.is_empty()}),
    );
    report.line(format!("{:>3} |{}", "d", columns.iter().map(|m| format!("{:>5}", 2 * m)).collect::<String>()));
    for row in &table.rows {
        report.line(format!("{:>3} |{}", row[0], row[1..].iter().map(|v| format!("{v:>5}")).collect::<String>()));
    }
    report.line(format!("p(m)|{}", stable.iter().map(|v| format!("{v:>5}")).collect::<String>()));
    for v in violations {
        report.fail(v);
    }
    report.with_table(table)
}

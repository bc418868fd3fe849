//! Command-line front end for the Macdonald polynomial library: compute
//! polynomials and transition tables, run the identity-verification suites,
//! and emit JSON/CSV/LaTeX documents.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
//! error. Output is byte-identical for identical invocations.

mod cache;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use macqt::hecke::{verify_hecke_relations, Window};
use macqt::kernel::{
    verify_expansion_identities, verify_kernel_expansion, verify_kernel_raising,
    verify_mimachi_t_action,
};
use macqt::kostka::{
    b_table, check_b_properties, check_kostka_properties, kostka_qt, kostka_table, modified_j,
    positivity_scan, BTable, KostkaTable,
};
use macqt::macdonald::{
    eigen_p, eigenvalue_er, integral_scalar, macdonald_d_r, rodrigues_j,
    verify_center_restriction, verify_operator_forms, verify_subset_e_identities,
};
use macqt::partitions::{all_partitions, Partition};
use macqt::qt::{QtJson, QT};
use macqt::report::CheckReport;
use macqt::symfunc::{self, schur_m};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "macqt",
    version,
    about = "Exact Macdonald polynomials, (q,t)-Kostka tables, and operator identity checks"
)]
struct Cli {
    /// Directory for cached results; overrides the MACQT_CACHE_DIR
    /// environment variable. Caching is off when neither is set.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Disable the result cache even if a directory is configured.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads for table construction (tables parallelize across
    /// columns; other commands run single-threaded).
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one polynomial on the monomial symmetric basis.
    Compute {
        /// P = monic eigenfunction, J = integral form, Jmod = modified form
        /// (alphabet x/(1-t), coefficients are the (q,t)-Kostka numbers).
        #[arg(value_enum)]
        what: ComputeWhat,
        /// Partition as comma-separated parts ("3,1"); "0" or "-" for empty.
        #[arg(long)]
        lambda: String,
        /// Number of variables; defaults to |lambda|.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print a full transition table, rows lambda and columns mu, in the
    /// deterministic partition order ((N) first, (1,...,1) last).
    Table {
        /// K = (q,t)-Kostka table, B = modified-form-to-monomial table.
        #[arg(value_enum)]
        what: TableWhat,
        /// Partition size N >= 1.
        #[arg(long)]
        size: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run one verification suite; exit 0 iff every check passes.
    ///
    /// Suite bounds: hecke --n (default 3) --degree (3); center --n (3)
    /// --degree (3), all orders r <= n; eigen --n (3) --size (4); rodrigues
    /// --size (4) with n = |lambda|; kostka/multinomial --size (4); kernel
    /// --n (2) --degree (2) = series order, both alphabet sizes m <= min(n,2);
    /// mimachi --n (3), index sets of size r <= m <= 2; identities --n (3)
    /// --degree (3).
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Number of variables.
        #[arg(long)]
        n: Option<usize>,
        /// Degree or series-order bound.
        #[arg(long)]
        degree: Option<u32>,
        /// Partition-size bound (size-flavored suites).
        #[arg(long)]
        size: Option<u32>,
        /// Emit the report as JSON instead of plain lines.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Scan the K and B tables for negative coefficients. Report only: a
    /// negative entry is logged in the document, never a failure, so the
    /// exit code stays 0.
    ScanPositivity {
        /// Partition size N >= 1.
        #[arg(long)]
        size: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeWhat {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "Jmod", alias = "jmod")]
    Jmod,
}

impl ComputeWhat {
    fn tag(self) -> &'static str {
        match self {
            ComputeWhat::P => "P",
            ComputeWhat::J => "J",
            ComputeWhat::Jmod => "Jmod",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableWhat {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "B", alias = "b")]
    B,
}

impl TableWhat {
    fn tag(self) -> &'static str {
        match self {
            TableWhat::K => "K",
            TableWhat::B => "B",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Hecke,
    Center,
    Eigen,
    Rodrigues,
    Kostka,
    Multinomial,
    Kernel,
    Mimachi,
    Identities,
}

enum Failure {
    Usage(String),
    Internal(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn internal(e: macqt::Error) -> Failure {
    Failure::Internal(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cache_dir = if cli.no_cache {
        None
    } else {
        cli.cache_dir
            .clone()
            .or_else(|| std::env::var_os("MACQT_CACHE_DIR").map(PathBuf::from))
    };
    match cli.command {
        Command::Compute { what, lambda, n, format } => {
            let lam = parse_partition(&lambda)?;
            let n = n.unwrap_or_else(|| (lam.size() as usize).max(1));
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            if lam.len() > n {
                return Err(usage(format!(
                    "partition {lam} has {} parts but only {n} variables",
                    lam.len()
                )));
            }
            let rows = compute_rows(what, &lam, n, cache_dir.as_deref())?;
            println!("{}", render_compute(what.tag(), &lam, n, &rows, format));
            Ok(0)
        }
        Command::Table { what, size, format } => {
            if size == 0 {
                return Err(usage("--size must be at least 1"));
            }
            let (parts, cells) = table_rows(what, size, cli.jobs, cache_dir.as_deref())?;
            println!("{}", render_table(what.tag(), size, &parts, &cells, format));
            Ok(0)
        }
        Command::Verify { suite, n, degree, size, format } => {
            let rep = run_suite(suite, n, degree, size)?;
            match format {
                Some(Format::Json) => println!("{}", rep.to_json()),
                Some(_) => return Err(usage("verify reports support only --format json")),
                None => {
                    for item in &rep.items {
                        if item.passed() {
                            println!("  ok  {}", item.relation);
                        } else {
                            let extra = item
                                .counterexample
                                .as_deref()
                                .map(|c| format!("  [{c}]"))
                                .unwrap_or_default();
                            println!("FAIL  {}{extra}", item.relation);
                        }
                    }
                    println!("{}", rep.summary());
                }
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Command::ScanPositivity { size, format } => {
            if size == 0 {
                return Err(usage("--size must be at least 1"));
            }
            let scan = positivity_scan(size).map_err(internal)?;
            match format {
                Format::Json => println!("{}", scan.to_json()),
                Format::Csv => {
                    let mut out = String::from(
                        "lambda,mu,k_nonnegative,k_degree_q,k_degree_t,\
                         b_nonnegative,b_degree_q,b_degree_t\n",
                    );
                    for e in &scan.entries {
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{}\n",
                            csv_field(&e.lambda),
                            csv_field(&e.mu),
                            e.k_nonnegative,
                            e.k_degree_q,
                            e.k_degree_t,
                            e.b_nonnegative,
                            e.b_degree_q,
                            e.b_degree_t,
                        ));
                    }
                    print!("{out}");
                }
                Format::Latex => {
                    let mut out = String::from("\\begin{tabular}{ll|cc}\n");
                    out.push_str(
                        "$\\lambda$ & $\\mu$ & $K$ nonneg. & $B$ nonneg. \\\\ \\hline\n",
                    );
                    for e in &scan.entries {
                        out.push_str(&format!(
                            "$({})$ & $({})$ & {} & {} \\\\\n",
                            e.lambda, e.mu, e.k_nonnegative, e.b_nonnegative
                        ));
                    }
                    out.push_str("\\end{tabular}");
                    println!("{out}");
                }
            }
            Ok(0)
        }
    }
}

// ---- partitions on the command line ----

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let s = s.trim();
    if s == "-" || s == "0" {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for tok in s.split(',') {
        let v: u32 = tok.trim().parse().map_err(|_| {
            usage(format!("invalid partition {s:?}: {tok:?} is not a positive integer"))
        })?;
        if v == 0 {
            return Err(usage(format!(
                "invalid partition {s:?}: zero parts are not allowed (use \"0\" alone for \
                 the empty partition)"
            )));
        }
        parts.push(v);
    }
    Ok(Partition::new(&parts))
}

// ---- compute ----

/// Cache payload for one polynomial: ordered monomial-basis coefficients.
#[derive(Serialize, Deserialize)]
struct CoeffsPayload {
    coefficients: Vec<(String, QtJson)>,
}

fn compute_rows(
    what: ComputeWhat,
    lam: &Partition,
    n: usize,
    cache_dir: Option<&std::path::Path>,
) -> Result<Vec<(Partition, QT)>, Failure> {
    let key = cache::CacheKey::new(what.tag(), &lam.to_string(), n as u64);
    if let Some(dir) = cache_dir {
        if let Some(payload) = cache::get(dir, &key) {
            match decode_rows(&payload) {
                Some(rows) => return Ok(rows),
                None => cache::evict(dir, &key),
            }
        }
    }
    let exp = match what {
        ComputeWhat::P => eigen_map(lam, n)?.p,
        ComputeWhat::J => eigen_map(lam, n)?.j,
        ComputeWhat::Jmod => {
            let full = modified_j(lam).map_err(internal)?;
            full.into_iter().filter(|(mu, _)| mu.len() <= n).collect()
        }
    };
    let rows = ordered_rows(&exp, lam.size());
    if let Some(dir) = cache_dir {
        let payload = CoeffsPayload {
            coefficients: rows.iter().map(|(mu, c)| (mu.to_string(), c.to_json())).collect(),
        };
        let value = serde_json::to_value(&payload).expect("payload serializes");
        if let Err(e) = cache::put(dir, &key, value) {
            eprintln!("warning: cache write failed: {e}");
        }
    }
    Ok(rows)
}

fn eigen_map(lam: &Partition, n: usize) -> Result<macqt::macdonald::MacdonaldPair, Failure> {
    eigen_p(lam, n).map_err(|e| match e {
        macqt::Error::TooFewVariables { needed, got } => {
            usage(format!("partition needs {needed} variables but --n is {got}"))
        }
        other => internal(other),
    })
}

/// Deterministic row order: partitions of the right size, (N) first.
fn ordered_rows(exp: &BTreeMap<Partition, QT>, size: u32) -> Vec<(Partition, QT)> {
    let mut rows = Vec::new();
    for mu in all_partitions(size) {
        if let Some(c) = exp.get(&mu) {
            if !c.is_zero() {
                rows.push((mu, c.clone()));
            }
        }
    }
    rows
}

fn decode_rows(payload: &serde_json::Value) -> Option<Vec<(Partition, QT)>> {
    let parsed: CoeffsPayload = serde_json::from_value(payload.clone()).ok()?;
    let mut rows = Vec::new();
    for (mu, cj) in &parsed.coefficients {
        let mu = parse_partition(mu).ok()?;
        let c = QT::from_json(cj).ok()?;
        rows.push((mu, c));
    }
    Some(rows)
}

#[derive(Serialize)]
struct ComputeDoc<'a> {
    kind: &'a str,
    lambda: String,
    n: usize,
    coefficients: Vec<CoeffRow>,
}

#[derive(Serialize)]
struct CoeffRow {
    mu: String,
    coefficient: String,
}

fn render_compute(
    kind: &str,
    lam: &Partition,
    n: usize,
    rows: &[(Partition, QT)],
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let doc = ComputeDoc {
                kind,
                lambda: lam.to_string(),
                n,
                coefficients: rows
                    .iter()
                    .map(|(mu, c)| CoeffRow { mu: mu.to_string(), coefficient: c.to_string() })
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("document serializes")
        }
        Format::Csv => {
            let mut out = String::from("mu,coefficient");
            for (mu, c) in rows {
                out.push_str(&format!(
                    "\n{},{}",
                    csv_field(&mu.to_string()),
                    csv_field(&c.to_string())
                ));
            }
            out
        }
        Format::Latex => {
            if rows.is_empty() {
                return "0".to_string();
            }
            let terms: Vec<String> = rows
                .iter()
                .map(|(mu, c)| {
                    let m = if mu.is_empty() {
                        String::new()
                    } else {
                        format!("m_{{({mu})}}")
                    };
                    if c.is_one() && !m.is_empty() {
                        m
                    } else if m.is_empty() {
                        format!("{c}")
                    } else {
                        format!("({c}) {m}")
                    }
                })
                .collect();
            terms.join(" + ")
        }
    }
}

// ---- tables ----

#[derive(Serialize, Deserialize)]
struct TablePayload {
    partitions: Vec<String>,
    cells: Vec<Vec<QtJson>>,
}

fn table_rows(
    what: TableWhat,
    size: u32,
    jobs: usize,
    cache_dir: Option<&std::path::Path>,
) -> Result<(Vec<Partition>, Vec<Vec<QT>>), Failure> {
    let key = cache::CacheKey::new(what.tag(), "", size as u64);
    if let Some(dir) = cache_dir {
        if let Some(payload) = cache::get(dir, &key) {
            match decode_table(&payload) {
                Some(t) => return Ok(t),
                None => cache::evict(dir, &key),
            }
        }
    }
    let (parts, cells) = match what {
        TableWhat::K => {
            let t: KostkaTable = if jobs > 1 {
                kostka_table_jobs(size, jobs)?
            } else {
                kostka_table(size).map_err(internal)?
            };
            (t.partitions, t.cells)
        }
        TableWhat::B => {
            let t: BTable = if jobs > 1 {
                b_table_jobs(size, jobs)?
            } else {
                b_table(size).map_err(internal)?
            };
            (t.partitions, t.cells)
        }
    };
    if let Some(dir) = cache_dir {
        let payload = TablePayload {
            partitions: parts.iter().map(|p| p.to_string()).collect(),
            cells: cells
                .iter()
                .map(|row| row.iter().map(|c| c.to_json()).collect())
                .collect(),
        };
        let value = serde_json::to_value(&payload).expect("payload serializes");
        if let Err(e) = cache::put(dir, &key, value) {
            eprintln!("warning: cache write failed: {e}");
        }
    }
    Ok((parts, cells))
}

fn decode_table(payload: &serde_json::Value) -> Option<(Vec<Partition>, Vec<Vec<QT>>)> {
    let parsed: TablePayload = serde_json::from_value(payload.clone()).ok()?;
    let mut parts = Vec::new();
    for p in &parsed.partitions {
        parts.push(parse_partition(p).ok()?);
    }
    let mut cells = Vec::new();
    for row in &parsed.cells {
        let mut out = Vec::new();
        for cj in row {
            out.push(QT::from_json(cj).ok()?);
        }
        cells.push(out);
    }
    if cells.len() != parts.len() || cells.iter().any(|r| r.len() != parts.len()) {
        return None;
    }
    Some((parts, cells))
}

/// Parallel Kostka table: one worker per stripe of mu-columns, assembled in
/// index order so the result is identical to the sequential build.
fn kostka_table_jobs(size: u32, jobs: usize) -> Result<KostkaTable, Failure> {
    let lams = all_partitions(size);
    let cols = parallel_map(&lams, jobs, |mu| kostka_qt(mu))?;
    let mut cells = vec![Vec::with_capacity(lams.len()); lams.len()];
    for col in &cols {
        for (i, lam) in lams.iter().enumerate() {
            cells[i].push(col.get(lam).cloned().unwrap_or_else(QT::zero));
        }
    }
    Ok(KostkaTable { size, partitions: lams, cells })
}

/// Parallel B table: one worker per stripe of lambda-rows, each carrying the
/// same Kostka-reconstruction cross-check as the sequential build.
fn b_table_jobs(size: u32, jobs: usize) -> Result<BTable, Failure> {
    let lams = all_partitions(size);
    let rows = parallel_map(&lams, jobs, |lam| b_row(lam, size))?;
    Ok(BTable { size, partitions: lams, cells: rows })
}

fn b_row(lam: &Partition, size: u32) -> Result<Vec<QT>, macqt::Error> {
    let mus = all_partitions(size);
    let exp = modified_j(lam)?;
    let kost = kostka_qt(lam)?;
    let mut row = Vec::with_capacity(mus.len());
    for mu in &mus {
        let b = exp.get(mu).cloned().unwrap_or_else(QT::zero);
        let mut recon = QT::zero();
        for (nu, k) in &kost {
            let s = schur_m(nu)?;
            if let Some(c) = s.get(mu) {
                recon = recon.add(&k.mul(c));
            }
        }
        if recon != b {
            return Err(macqt::Error::CrossCheckMismatch(format!(
                "B[{lam}; {mu}]: m-expansion gives {b}, Kostka reconstruction gives {recon}"
            )));
        }
        row.push(b);
    }
    Ok(row)
}

/// Apply `f` to every item, `jobs` at a time, preserving input order. Errors
/// are reported for the lowest failing index so runs are deterministic.
fn parallel_map<T: Sync, R: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> Result<R, macqt::Error> + Sync,
) -> Result<Vec<R>, Failure> {
    let jobs = jobs.min(items.len()).max(1);
    let mut slots: Vec<Option<Result<R, macqt::Error>>> = Vec::new();
    slots.resize_with(items.len(), || None);
    let slots = std::sync::Mutex::new(slots);
    std::thread::scope(|scope| {
        for worker in 0..jobs {
            let slots = &slots;
            let f = &f;
            scope.spawn(move || {
                for (i, item) in items.iter().enumerate() {
                    if i % jobs == worker {
                        let r = f(item);
                        slots.lock().unwrap()[i] = Some(r);
                    }
                }
            });
        }
    });
    let slots = slots.into_inner().unwrap();
    let mut out = Vec::with_capacity(items.len());
    for slot in slots {
        match slot.expect("every index visited") {
            Ok(r) => out.push(r),
            Err(e) => return Err(internal(e)),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct TableDoc<'a> {
    kind: &'a str,
    size: u32,
    partitions: Vec<String>,
    cells: Vec<Vec<String>>,
}

fn render_table(
    kind: &str,
    size: u32,
    parts: &[Partition],
    cells: &[Vec<QT>],
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let doc = TableDoc {
                kind,
                size,
                partitions: parts.iter().map(|p| p.to_string()).collect(),
                cells: cells
                    .iter()
                    .map(|row| row.iter().map(|c| c.to_string()).collect())
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("document serializes")
        }
        Format::Csv => {
            let mut out = String::from("lambda\\mu");
            for mu in parts {
                out.push(',');
                out.push_str(&csv_field(&mu.to_string()));
            }
            for (lam, row) in parts.iter().zip(cells) {
                out.push('\n');
                out.push_str(&csv_field(&lam.to_string()));
                for c in row {
                    out.push(',');
                    out.push_str(&csv_field(&c.to_string()));
                }
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            out.push_str(&format!(
                "\\begin{{tabular}}{{l|{}}}\n",
                "c".repeat(parts.len())
            ));
            out.push_str("$\\lambda \\backslash \\mu$");
            for mu in parts {
                out.push_str(&format!(" & $({mu})$"));
            }
            out.push_str(" \\\\ \\hline\n");
            for (lam, row) in parts.iter().zip(cells) {
                out.push_str(&format!("$({lam})$"));
                for c in row {
                    out.push_str(&format!(" & ${c}$"));
                }
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{tabular}");
            out
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// ---- verification suites ----

fn run_suite(
    suite: Suite,
    n: Option<usize>,
    degree: Option<u32>,
    size: Option<u32>,
) -> Result<CheckReport, Failure> {
    match suite {
        Suite::Hecke => {
            let n = n.unwrap_or(3);
            let d = degree.unwrap_or(3);
            verify_hecke_relations(n, d).map_err(internal)
        }
        Suite::Center => {
            let n = n.unwrap_or(3);
            let d = degree.unwrap_or(3);
            let mut rep = CheckReport::new(format!("center restriction n={n} degree <= {d}"));
            for r in 1..=n {
                rep.absorb(verify_center_restriction(n, r, d).map_err(internal)?);
            }
            Ok(rep)
        }
        Suite::Eigen => {
            let n = n.unwrap_or(3);
            let s = size.or(degree).unwrap_or(4);
            eigen_suite(n, s)
        }
        Suite::Rodrigues => {
            let s = size.or(degree).unwrap_or(4);
            rodrigues_suite(s)
        }
        Suite::Kostka => {
            let s = size.or(degree).unwrap_or(4);
            check_kostka_properties(s).map_err(internal)
        }
        Suite::Multinomial => {
            let s = size.or(degree).unwrap_or(4);
            check_b_properties(s).map_err(internal)
        }
        Suite::Kernel => {
            let n = n.unwrap_or(2);
            let d = degree.unwrap_or(2);
            let mut rep = CheckReport::new(format!("kernel suite n={n} series order {d}"));
            for m in 1..=n.min(2) {
                rep.absorb(verify_kernel_expansion(n, m, d).map_err(internal)?);
                rep.absorb(verify_kernel_raising(n, m, d).map_err(internal)?);
            }
            Ok(rep)
        }
        Suite::Mimachi => {
            let n = n.unwrap_or(3);
            let mut rep = CheckReport::new(format!("basis function suite n={n}"));
            for m in 1..=2usize.min(n) {
                for r in 1..=m.min(n) {
                    rep.absorb(verify_mimachi_t_action(n, m, r).map_err(internal)?);
                }
            }
            Ok(rep)
        }
        Suite::Identities => {
            let n = n.unwrap_or(3);
            let d = degree.unwrap_or(3);
            let mut rep = CheckReport::new(format!("operator identities n={n} degree <= {d}"));
            rep.absorb(verify_operator_forms(n, d).map_err(internal)?);
            rep.absorb(verify_subset_e_identities(n).map_err(internal)?);
            for m in 1..=2usize.min(n) {
                rep.absorb(verify_expansion_identities(n, m).map_err(internal)?);
            }
            Ok(rep)
        }
    }
}

/// Every P with |lambda| <= size and at most n parts is a simultaneous
/// eigenfunction of the q-difference operators of all orders, and J is the
/// hook-product multiple of P.
fn eigen_suite(n: usize, size: u32) -> Result<CheckReport, Failure> {
    let mut rep = CheckReport::new(format!("eigenfunctions n={n} size <= {size}"));
    let w = Window::full(n);
    let mut bad_r: Vec<Option<String>> = vec![None; n + 1];
    let mut bad_j: Option<String> = None;
    for k in 1..=size {
        for lam in all_partitions(k) {
            if lam.len() > n {
                continue;
            }
            let pair = eigen_p(&lam, n).map_err(internal)?;
            let p = pair.p_poly();
            for r in 1..=n {
                if bad_r[r].is_some() {
                    continue;
                }
                let lhs = macdonald_d_r(&p, w, r).map_err(internal)?;
                let rhs = p.scale(&eigenvalue_er(&lam, n, r));
                if lhs != rhs {
                    bad_r[r] = Some(format!("lambda = {lam}"));
                }
            }
            if bad_j.is_none() {
                let j = symfunc::m_expansion_to_xpoly(&pair.j, n);
                if j != p.scale(&integral_scalar(&lam)) {
                    bad_j = Some(format!("lambda = {lam}"));
                }
            }
        }
    }
    for r in 1..=n {
        rep.record(
            format!("q-difference operator of order {r} acts by its elementary eigenvalue"),
            bad_r[r].is_none(),
            bad_r[r].clone(),
        );
    }
    rep.record(
        "integral form equals the hook-product multiple of the monic eigenfunction",
        bad_j.is_none(),
        bad_j,
    );
    Ok(rep)
}

/// The raising chain reproduces the integral form computed from the
/// eigenvalue problem, one row per partition size, with n = |lambda|.
fn rodrigues_suite(size: u32) -> Result<CheckReport, Failure> {
    let mut rep = CheckReport::new(format!("raising chains size <= {size}"));
    for k in 1..=size {
        let mut bad: Option<String> = None;
        for lam in all_partitions(k) {
            let n = k as usize;
            let chain = rodrigues_j(&lam, n).map_err(internal)?;
            let direct = eigen_p(&lam, n).map_err(internal)?.j;
            if chain != direct {
                bad = Some(format!("lambda = {lam}"));
                break;
            }
        }
        rep.record(
            format!("raising chain reproduces the integral form at size {k}"),
            bad.is_none(),
            bad,
        );
    }
    Ok(rep)
}

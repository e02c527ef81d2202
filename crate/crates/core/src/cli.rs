//! Command-line front end: `tables` dumps exact coefficient tables, `verify`
//! runs check suites and exits 0 (all pass), 1 (some check failed) or 2 (usage).

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::coeffs::{
    build_d, build_l, check_binomial_recurrence, check_matrix_identities, check_table_invariants, limit_coeffs,
    CoeffTables, HTable, LimitCoeffs,
};
use crate::cothalg::verify_lemma22;
use crate::exactcore::q;
use crate::identities::{
    compare_generator_with_cor41, generate_tanh_recurrence, klimit_combo, schedule_down_to, verify_coth_splitting,
    verify_cor32, verify_klimit, verify_limit, verify_ramanujan, verify_recurrence_cor41, verify_tanh_ids,
};
use crate::laurent::{check_prop21, check_s_recurrences};
use crate::matrix::Matrix;
use crate::report::{CheckRecord, IdentityReport, Status};
use crate::scalar::{parse_rational, rational_string, Real};
use crate::zetanum::{DEFAULT_PRECISION, GUARD_BITS};
use crate::{BigFloat, Rational};

pub const PRECISION_ENV: &str = "ZETARECUR_PRECISION";
const MAX_TABLE_SIZE: usize = 200;

#[derive(Parser, Debug)]
#[command(name = "zetarecur", version, about = "Coefficient tables and certificates for odd zeta value recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an exact coefficient table.
    Tables(TablesArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TableKind {
    #[value(name = "c")]
    #[serde(rename = "c")]
    C,
    #[value(name = "h")]
    #[serde(rename = "h")]
    H,
    #[value(name = "U")]
    #[serde(rename = "U")]
    U,
    #[value(name = "V")]
    #[serde(rename = "V")]
    V,
    #[value(name = "L")]
    #[serde(rename = "L")]
    L,
    #[value(name = "D")]
    #[serde(rename = "D")]
    D,
    #[value(name = "r")]
    #[serde(rename = "r")]
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    pub kind: TableKind,
    /// Table size (alias of --N).
    #[arg(long = "n", conflicts_with = "big_n")]
    pub n: Option<usize>,
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TableFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Ramanujan,
    Limit,
    Recurrence,
    Klimit,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Working precision in bits (default 256, or $ZETARECUR_PRECISION).
    #[arg(long)]
    pub precision_bits: Option<u32>,
    #[arg(long, default_value = "1e-12")]
    pub tol: String,
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    #[arg(long = "N")]
    pub big_n: Option<u32>,
    #[arg(long = "M")]
    pub m: Option<u32>,
    #[arg(long = "K")]
    pub k: Option<u32>,
    #[arg(long, default_value = "1/16")]
    pub alpha_min: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
}

/// Resolved, validated configuration.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub precision_bits: u32,
    pub tol: String,
    pub n_max: usize,
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    #[serde(rename = "M")]
    pub m: Option<u32>,
    #[serde(rename = "K")]
    pub k: Option<u32>,
    pub alpha_min: String,
    #[serde(skip)]
    tol_value: Rational,
    #[serde(skip)]
    alpha_min_value: Rational,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl RunConfig {
    pub fn from_args(args: &VerifyArgs, env_precision: Option<&str>) -> Result<Self, UsageError> {
        let precision_bits = match (args.precision_bits, env_precision) {
            (Some(p), _) => p,
            (None, Some(s)) => s
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("{PRECISION_ENV}={s:?} is not an integer")))?,
            (None, None) => DEFAULT_PRECISION,
        };
        if precision_bits < 64 {
            return Err(UsageError(format!("precision must be at least 64 bits, got {precision_bits}")));
        }
        let tol_value = parse_rational(&args.tol).ok_or_else(|| UsageError(format!("bad --tol {:?}", args.tol)))?;
        if !tol_value.is_positive() {
            return Err(UsageError("--tol must be positive".into()));
        }
        let alpha_min_value = parse_rational(&args.alpha_min)
            .filter(|a| a.is_positive() && *a <= q(1, 1))
            .ok_or_else(|| UsageError(format!("--alpha-min must lie in (0, 1], got {:?}", args.alpha_min)))?;
        if args.n_max == 0 || args.n_max > MAX_TABLE_SIZE {
            return Err(UsageError(format!("--n-max must lie in 1..={MAX_TABLE_SIZE}")));
        }
        for (flag, v) in [("--N", args.big_n), ("--M", args.m)] {
            if v == Some(0) {
                return Err(UsageError(format!("{flag} must be at least 1")));
            }
        }
        Ok(Self {
            suite: args.suite,
            precision_bits,
            tol: args.tol.clone(),
            n_max: args.n_max,
            big_n: args.big_n,
            m: args.m,
            k: args.k,
            alpha_min: args.alpha_min.clone(),
            tol_value,
            alpha_min_value,
        })
    }

    fn tol(&self) -> BigFloat {
        BigFloat::from_rational(&self.tol_value, self.precision_bits + GUARD_BITS)
    }
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

/// Full output of `verify`. `timing` holds wall-clock seconds per suite and is
/// the only non-deterministic field.
#[derive(Serialize)]
pub struct VerifyReport {
    command: &'static str,
    config: RunConfig,
    status: Status,
    summary: Summary,
    records: Vec<CheckRecord>,
    timing: std::collections::BTreeMap<String, f64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

type SuiteFn = fn(&RunConfig) -> Vec<IdentityReport>;

fn suite_table(suite: Suite) -> Vec<(&'static str, SuiteFn)> {
    let all: [(Suite, &'static str, SuiteFn); 5] = [
        (Suite::Algebra, "algebra", suite_algebra),
        (Suite::Ramanujan, "ramanujan", suite_ramanujan),
        (Suite::Limit, "limit", suite_limit),
        (Suite::Recurrence, "recurrence", suite_recurrence),
        (Suite::Klimit, "klimit", suite_klimit),
    ];
    all.into_iter().filter(|(s, _, _)| suite == Suite::All || *s == suite).map(|(_, n, f)| (n, f)).collect()
}

fn error_record(name: &str, label: &str, err: impl std::fmt::Display) -> IdentityReport {
    let mut r = IdentityReport::new(name);
    r.push(CheckRecord::exact(name, label, false).with_detail(err.to_string()));
    r
}

fn suite_algebra(cfg: &RunConfig) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let m_max = cfg.n_max.min(20) as u32;
    for m in 1..=m_max {
        out.push(check_prop21(m).unwrap_or_else(|e| error_record("power_identity", "prop_2_1", e)));
        out.push(check_s_recurrences(m).unwrap_or_else(|e| error_record("s_recurrence", "prop_2_1_proof", e)));
    }
    let tables = match CoeffTables::build(cfg.n_max) {
        Ok(t) => t,
        Err(e) => {
            out.push(error_record("tables/build", "definition_of_V", e));
            return out;
        }
    };
    let mut build = IdentityReport::new("tables");
    build.exact(format!("tables/three_way_V/n_max={}", cfg.n_max), "definition_of_V", true, String::new);
    out.push(build);
    out.push(check_table_invariants(&tables));
    out.push(check_binomial_recurrence(&tables));
    out.push(check_matrix_identities(&tables));
    out.push(verify_lemma22(cfg.n_max.min(20), &tables.c));

    let mut r = IdentityReport::new("limit coefficients");
    r.exact("limit_coeffs/N=1", "limit_equation", limit_coeffs(1).r == vec![q(7, 1)], String::new);
    r.exact("limit_coeffs/N=2", "limit_equation", limit_coeffs(2).r == vec![q(7, 3), q(31, 1)], String::new);
    let bad: Vec<usize> = (1..=cfg.n_max).filter(|&n| !LimitCoeffs::from_h(&tables.h, n).all_positive()).collect();
    r.exact(format!("limit_coeffs/positive/N<={}", cfg.n_max), "limit_equation", bad.is_empty(), || {
        format!("N = {bad:?}")
    });
    out.push(r);
    out
}

fn suite_ramanujan(cfg: &RunConfig) -> Vec<IdentityReport> {
    let p = cfg.precision_bits;
    let w = p + GUARD_BITS;
    let pi = BigFloat::pi(w);
    let alphas = vec![
        ("pi".to_string(), pi.clone()),
        ("2pi".to_string(), pi.clone() * BigFloat::int(2, w)),
        ("pi/3".to_string(), pi / BigFloat::int(3, w)),
    ];
    vec![
        verify_ramanujan(&alphas, &[1, 2, 3], p).unwrap_or_else(|e| error_record("ramanujan", "ramanujan_formula", e)),
        verify_cor32::<BigFloat>(&[q(1, 2), q(2, 1)], 3, p).unwrap_or_else(|e| error_record("coth_series", "eq_N_even", e)),
    ]
}

fn suite_limit(cfg: &RunConfig) -> Vec<IdentityReport> {
    let p = cfg.precision_bits;
    let tol = cfg.tol();
    let ns: Vec<u32> = match cfg.big_n {
        Some(n) => vec![n],
        None => (1..=4).collect(),
    };
    let mut out = Vec::new();
    let schedule = match schedule_down_to(&cfg.alpha_min_value) {
        Ok(s) => s,
        Err(e) => return vec![error_record("limit/schedule", "limit_equation", e)],
    };
    for n in ns {
        let mut r = IdentityReport::new(format!("limit N={n}"));
        match verify_limit::<BigFloat>(n, &schedule, p, &tol) {
            Ok(c) => r.push(c.record("limit_equation")),
            Err(e) => r = error_record(&format!("limit/N={n}"), "limit_equation", e),
        }
        out.push(r);
    }
    let points = [q(1, 2), q(1, 1), q(2, 1)];
    out.push(
        verify_coth_splitting::<BigFloat>(3, &points, p).unwrap_or_else(|e| error_record("coth_split", "eq_coth_odd", e)),
    );
    out.push(
        verify_tanh_ids::<BigFloat>(&[q(1, 4), q(1, 1), q(4, 1)], p)
            .unwrap_or_else(|e| error_record("tanh_identity", "id_tanh", e)),
    );
    out
}

/// Outer truncation used by the CLI recurrence suite.
pub const CLI_RECURRENCE_J: usize = 40;
/// Inner truncation used by the CLI recurrence suite.
pub const CLI_RECURRENCE_BUDGET: usize = 200;

fn suite_recurrence(cfg: &RunConfig) -> Vec<IdentityReport> {
    let p = cfg.precision_bits;
    let tol = cfg.tol();
    let (j, nb) = (CLI_RECURRENCE_J, CLI_RECURRENCE_BUDGET);
    let mut out = Vec::new();
    let cor = match verify_recurrence_cor41::<BigFloat>(j, nb, p, &tol) {
        Ok(c) => c,
        Err(e) => return vec![error_record("cor41", "odd_zeta_recurrence1", e)],
    };
    out.push(cor.report.clone());
    let mut ns = vec![1, 2];
    if let Some(n) = cfg.big_n {
        if !ns.contains(&n) {
            ns.push(n);
        }
    }
    for n in ns {
        match generate_tanh_recurrence::<BigFloat>(n, nb as u32, j, p, &tol) {
            Ok(g) => {
                if n == 1 {
                    let diff = compare_generator_with_cor41(&g, &cor);
                    let mut r = IdentityReport::new("generator vs recurrence");
                    r.push(CheckRecord::numeric(
                        "tanh_recurrence/N=1/matches_cor41",
                        "odd_zeta_recurrence1",
                        diff < tol,
                        diff.to_sci(6),
                        tol.to_sci(6),
                    ));
                    out.push(r);
                }
                out.push(g.report);
            }
            Err(e) => out.push(error_record(&format!("tanh_recurrence/N={n}"), "id_from_tanh", e)),
        }
    }
    out
}

fn suite_klimit(cfg: &RunConfig) -> Vec<IdentityReport> {
    let p = cfg.precision_bits;
    let tol = cfg.tol();
    let mut out = Vec::new();
    let mut r = IdentityReport::new("klimit base");
    for m in 1..=4u32 {
        let ok = klimit_combo(0, m).is_ok_and(|c| c.zeta_coeffs == limit_coeffs(m as usize).r);
        r.exact(format!("klimit/K=0/M={m}/matches_limit"), "K_equation", ok, String::new);
    }
    let ok = klimit_combo(1, 1).is_ok_and(|c| c.zeta_coeffs == vec![q(-14, 3), q(124, 1)]);
    r.exact("klimit/K=1/M=1/combination", "K_equation", ok, String::new);
    out.push(r);

    let (k, m) = (cfg.k.unwrap_or(1), cfg.m.unwrap_or(1));
    let mut r = IdentityReport::new("klimit");
    match schedule_down_to(&cfg.alpha_min_value).map_err(|e| e.to_string()).and_then(|s| {
        verify_klimit::<BigFloat>(k, m, &s, p, &tol).map_err(|e| e.to_string())
    }) {
        Ok(c) => r.push(c.record("K_equation")),
        Err(e) => r = error_record(&format!("klimit/K={k}/M={m}"), "K_equation", e),
    }
    out.push(r);
    out
}

/// Runs the selected suites (concurrently for `all`), streaming a line per
/// finished group to `progress`, and returns the canonical report.
pub fn run_verify(cfg: &RunConfig, progress: &mut (dyn Write + Send)) -> VerifyReport {
    let suites = suite_table(cfg.suite);
    let progress = std::sync::Mutex::new(progress);
    let results: Vec<(&str, Vec<IdentityReport>, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&(name, f)| {
                let progress = &progress;
                scope.spawn(move || {
                    let start = Instant::now();
                    let reports = f(cfg);
                    let secs = start.elapsed().as_secs_f64();
                    let mut out = progress.lock().expect("progress lock");
                    for rep in &reports {
                        for rec in &rep.records {
                            let _ = writeln!(out, "[{name}] {} {}", status_word(rec.status), rec.name);
                        }
                    }
                    (name, reports, secs)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });

    let mut records: Vec<CheckRecord> = Vec::new();
    let mut timing = std::collections::BTreeMap::new();
    for (name, reports, secs) in results {
        timing.insert(name.to_string(), (secs * 1000.0).round() / 1000.0);
        records.extend(reports.into_iter().flat_map(|r| r.records));
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = records.iter().filter(|r| r.passed()).count();
    let failed = records.len() - passed;
    VerifyReport {
        command: "verify",
        config: cfg.clone(),
        status: Status::from_bool(failed == 0 && !records.is_empty()),
        summary: Summary { total: records.len(), passed, failed },
        records,
        timing,
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    }
}

pub fn render_report(report: &VerifyReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "name",
                "paper_equation_label",
                "status",
                "exact",
                "residual",
                "tolerance",
                "terms_used",
                "tail_bounds",
                "detail",
            ])
            .expect("csv write");
            for r in &report.records {
                w.write_record([
                    r.name.clone(),
                    r.paper_equation_label.clone(),
                    status_word(r.status).to_lowercase(),
                    r.exact.map(|b| b.to_string()).unwrap_or_default(),
                    r.residual.clone().unwrap_or_default(),
                    r.tolerance.clone().unwrap_or_default(),
                    r.terms_used.map(|t| t.to_string()).unwrap_or_default(),
                    r.tail_bounds.join(" | "),
                    r.detail.clone().unwrap_or_default(),
                ])
                .expect("csv write");
            }
            String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for r in &report.records {
                let value = match (&r.residual, &r.tolerance) {
                    (Some(res), Some(tol)) => format!("  residual {res} (tol {tol})"),
                    _ => String::new(),
                };
                s.push_str(&format!("{} {}{value}\n", status_word(r.status), r.name));
                if !r.passed() {
                    if let Some(d) = &r.detail {
                        s.push_str(&format!("    {d}\n"));
                    }
                }
            }
            s.push_str(&format!(
                "{}: {} passed, {} failed\n",
                status_word(report.status),
                report.summary.passed,
                report.summary.failed
            ));
            s
        }
    }
}

#[derive(Serialize, Debug, PartialEq)]
pub struct TableEntry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct REntry {
    pub k: usize,
    pub value: String,
}

#[derive(Serialize, Debug, PartialEq)]
#[serde(untagged)]
pub enum Entries {
    Matrix(Vec<TableEntry>),
    Vector(Vec<REntry>),
}

/// `{kind, size, entries}`; only nonzero entries are listed.
#[derive(Serialize, Debug, PartialEq)]
pub struct TableDump {
    pub kind: TableKind,
    pub size: usize,
    pub entries: Entries,
}

fn matrix_entries(m: &Matrix<Rational>) -> Vec<TableEntry> {
    let n = m.size();
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .map(|(i, j)| TableEntry { row: i, col: j, value: rational_string(m.get(i, j)) })
        .collect()
}

pub fn build_table(kind: TableKind, size: usize) -> Result<TableDump, UsageError> {
    if size == 0 || size > MAX_TABLE_SIZE {
        return Err(UsageError(format!("table size must lie in 1..={MAX_TABLE_SIZE}")));
    }
    let bug = |e: crate::coeffs::CoeffError| UsageError(format!("internal table error: {e}"));
    let entries = match kind {
        TableKind::C => {
            let c = crate::coeffs::build_c(size).map_err(bug)?;
            let rows = (0..=size).flat_map(|n| (1..=size).map(move |k| (n, k)));
            Entries::Matrix(
                rows.filter(|&(n, k)| !c.get(n, k).is_zero())
                    .map(|(n, k)| TableEntry { row: n, col: k, value: rational_string(c.get(n, k)) })
                    .collect(),
            )
        }
        TableKind::H => {
            let h = HTable::build(size, size);
            let cells = (1..=size).flat_map(|k| (1..=size).map(move |n| (k, n)));
            Entries::Matrix(
                cells
                    .filter(|&(k, n)| !h.get(k, n).is_zero())
                    .map(|(k, n)| TableEntry { row: k, col: n, value: rational_string(h.get(k, n)) })
                    .collect(),
            )
        }
        TableKind::U | TableKind::V => {
            let c = crate::coeffs::build_c(size).map_err(bug)?;
            let u = crate::coeffs::build_u(&c).map_err(bug)?;
            let m = if kind == TableKind::U { u } else { crate::coeffs::build_v(&u, &HTable::build(size, size)).map_err(bug)? };
            Entries::Matrix(matrix_entries(&m))
        }
        TableKind::L => Entries::Matrix(matrix_entries(&build_l(size))),
        TableKind::D => Entries::Matrix(matrix_entries(&build_d(size))),
        TableKind::R => Entries::Vector(
            limit_coeffs(size).r.iter().enumerate().map(|(i, v)| REntry { k: i + 1, value: rational_string(v) }).collect(),
        ),
    };
    Ok(TableDump { kind, size, entries })
}

pub fn render_table(dump: &TableDump, format: TableFormat) -> String {
    match format {
        TableFormat::Json => serde_json::to_string_pretty(dump).expect("table serializes") + "\n",
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &dump.entries {
                Entries::Matrix(es) => {
                    w.write_record(["row", "col", "value"]).expect("csv write");
                    for e in es {
                        w.write_record([e.row.to_string(), e.col.to_string(), e.value.clone()]).expect("csv write");
                    }
                }
                Entries::Vector(es) => {
                    w.write_record(["k", "value"]).expect("csv write");
                    for e in es {
                        w.write_record([e.k.to_string(), e.value.clone()]).expect("csv write");
                    }
                }
            }
            String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
        }
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(stderr, "{}", e.render());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match cli.command {
        Command::Tables(args) => {
            let Some(size) = args.n.or(args.big_n) else {
                let _ = writeln!(stderr, "error: tables needs --n or --N");
                return 2;
            };
            match build_table(args.kind, size) {
                Ok(dump) => {
                    let _ = stdout.write_all(render_table(&dump, args.format).as_bytes());
                    0
                }
                Err(UsageError(msg)) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Command::Verify(args) => {
            let env = std::env::var(PRECISION_ENV).ok();
            let cfg = match RunConfig::from_args(&args, env.as_deref()) {
                Ok(c) => c,
                Err(UsageError(msg)) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    return 2;
                }
            };
            let report = run_verify(&cfg, stderr);
            let _ = stdout.write_all(render_report(&report, args.format).as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("zetarecur").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn table_examples() {
        let dump = build_table(TableKind::R, 1).unwrap();
        assert_eq!(dump.entries, Entries::Vector(vec![REntry { k: 1, value: "7".into() }]));
        let dump = build_table(TableKind::V, 1).unwrap();
        assert_eq!(dump.entries, Entries::Matrix(vec![TableEntry { row: 1, col: 1, value: "-1".into() }]));
        let dump = build_table(TableKind::D, 2).unwrap();
        let Entries::Matrix(es) = dump.entries else { panic!() };
        assert_eq!(es.iter().map(|e| e.value.as_str()).collect::<Vec<_>>(), ["8", "32"]);
        assert!(es.iter().all(|e| e.row == e.col));
    }

    #[test]
    fn table_json_and_csv() {
        let (code, out, _) = run_capture(&["tables", "--kind", "r", "--N", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "r");
        assert_eq!(v["entries"][0]["value"], "7/3");
        let (code, out, _) = run_capture(&["tables", "--kind", "c", "--n", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("row,col,value\n"));
        assert!(out.contains("0,2,-3/8"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["tables", "--kind", "q", "--n", "2"]).0, 2);
        assert_eq!(run_capture(&["tables", "--kind", "c"]).0, 2);
        assert_eq!(run_capture(&["tables", "--kind", "c", "--n", "0"]).0, 2);
        assert_eq!(run_capture(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(run_capture(&["verify", "--precision-bits", "32"]).0, 2);
        assert_eq!(run_capture(&["verify", "--tol", "-1"]).0, 2);
        assert_eq!(run_capture(&["verify", "--tol", "abc"]).0, 2);
        assert_eq!(run_capture(&["verify", "--alpha-min", "2"]).0, 2);
    }

    #[test]
    fn env_precision() {
        let args = VerifyArgs::parse_from_for_test(&[]);
        assert_eq!(RunConfig::from_args(&args, Some("128")).unwrap().precision_bits, 128);
        assert_eq!(RunConfig::from_args(&args, None).unwrap().precision_bits, DEFAULT_PRECISION);
        assert!(RunConfig::from_args(&args, Some("x")).is_err());
        let args = VerifyArgs::parse_from_for_test(&["--precision-bits", "96"]);
        assert_eq!(RunConfig::from_args(&args, Some("128")).unwrap().precision_bits, 96);
    }

    impl VerifyArgs {
        fn parse_from_for_test(extra: &[&str]) -> Self {
            let argv = ["zetarecur", "verify"].iter().chain(extra).copied();
            match Cli::parse_from(argv).command {
                Command::Verify(a) => a,
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn small_algebra_suite_passes() {
        let (code, out, err) = run_capture(&["verify", "--suite", "algebra", "--n-max", "6", "--format", "text"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(out.ends_with("0 failed\n"));
    }
}

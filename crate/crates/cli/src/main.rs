use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use pary::arith::is_prime;
use pary::automata::{build_nu2_automaton, build_yp_automaton, export_dot, verify_functional_equations, Dfao, Direction};
use pary::congruence::{
    check_a_pm_residue, check_binom_grid, check_cor0, check_cor2, check_mainthm, check_modp_lemma, check_negation,
    check_nonvanishing, check_parycor2, check_parylem1, check_parylem2, check_parylem3, check_parythm3,
    check_wolstenholme, churchhouse_congruences, conjecture_checks, counterexamples_to_csv, odd_primes_up_to,
    reports_to_csv, speccong_search, CheckReport, ConjectureGrid, ConjectureSelector, ResidueDigit, StatementKind,
};
use pary::partitions::{
    a_pm, binary_partitions, d_p_cap, ptm, s_km_fast, t_m_convolution, u_m_partial_sums, vartheta,
};
use pary::valuation::{gap_statistics, nu_p, phi_k, y_sum_check, y_z_sequences};
use pary::ExtNat;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pary", version, about = "Colored k-ary partition functions, their valuations and congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a coefficient table with its valuation column.
    Compute(ComputeArgs),
    /// Run a named check over a parameter grid.
    Verify(CheckArgs),
    /// Run a conjecture search or the high-power congruence pair search.
    Search(CheckArgs),
    /// Maximum and number of distinct digit gaps for m = 1..100.
    Table1(TableArgs),
    /// Export the digit automaton of a sequence family.
    Automaton(AutomatonArgs),
    /// Check sum_{j < p^n} y_p(j) = p(p^n - 1)/2.
    SumCheck(SumArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Dir {
    Lsb,
    Msb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Nu2c,
    Yp,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ComputeArgs {
    /// b, ptm, c, d, s, a, dcap, tm, u, theta, y, z
    #[arg(long)]
    seq: String,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long = "N", default_value_t = 20)]
    n: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CheckArgs {
    /// Check or conjecture name; `list` prints them all.
    name: String,
    #[arg(long)]
    k: Option<u32>,
    /// Congruence exponent for speccong (overrides --k).
    #[arg(long = "k-exp")]
    k_exp: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    m: Vec<i64>,
    /// Inclusive range `a..b`.
    #[arg(long = "m-range", allow_hyphen_values = true)]
    m_range: Option<String>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "X", default_value_t = 100_000)]
    x: usize,
    #[arg(long, default_value_t = 4)]
    threshold: usize,
    #[arg(long = "m-range", allow_hyphen_values = true, default_value = "1..100")]
    m_range: String,
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AutomatonArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, value_enum, default_value_t = Dir::Lsb)]
    dir: Dir,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SumArgs {
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    /// Largest exponent n; default keeps p^n near 10^3.
    #[arg(long = "N")]
    n: Option<u32>,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Counterexample(String),
}

impl From<pary::Error> for Failure {
    fn from(e: pary::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run<T = ()> = Result<T, Failure>;

/// The run configuration echoed at the top of every output.
struct RunConfig {
    command: String,
    params: BTreeMap<&'static str, String>,
}

impl RunConfig {
    fn new(command: impl Into<String>) -> Self {
        RunConfig { command: command.into(), params: BTreeMap::new() }
    }

    fn set(&mut self, key: &'static str, value: impl ToString) -> &mut Self {
        self.params.insert(key, value.to_string());
        self
    }

    fn line(&self) -> String {
        let mut s = format!("pary {}", self.command);
        for (k, v) in &self.params {
            let _ = write!(s, " {k}={v}");
        }
        s
    }

    fn json(&self) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), json!(self.command));
        for (k, v) in &self.params {
            map.insert((*k).into(), json!(v));
        }
        Value::Object(map)
    }
}

/// A rectangular table of strings.
struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, config: &RunConfig, format: Format) -> Run<String> {
        match format {
            Format::Csv => {
                let mut out = format!("# {}\n{}\n", config.line(), self.columns.join(","));
                for r in &self.rows {
                    out.push_str(&r.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap_or(0))
                    .collect();
                let mut out = format!("# {}\n", config.line());
                for r in std::iter::once(&self.columns).chain(&self.rows) {
                    let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    out.push_str(cells.join("  ").trim_end());
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                    .collect();
                let doc = json!({ "config": config.json(), "columns": self.columns, "rows": rows });
                Ok(serde_json::to_string_pretty(&doc).expect("json") + "\n")
            }
            Format::Dot => Err(Failure::Usage("dot output is only available for `automaton`".into())),
        }
    }
}

fn parse_range(text: &str) -> Run<Vec<i64>> {
    let bad = || Failure::Usage(format!("bad range {text:?}, expected a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn one<T: Copy>(values: &[T], what: &str) -> Run<Option<T>> {
    match values {
        [] => Ok(None),
        [v] => Ok(Some(*v)),
        _ => Err(Failure::Usage(format!("--{what} takes a single value here"))),
    }
}

fn need<T>(v: Option<T>, what: &str) -> Run<T> {
    v.ok_or_else(|| Failure::Usage(format!("--{what} is required")))
}

fn require_odd_prime(p: u64) -> Run {
    if p < 3 || !is_prime(p) {
        return Err(Failure::Usage(format!("p must be an odd prime, got {p}")));
    }
    Ok(())
}

fn emit(text: &str, output: &Output) -> Run {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Run<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(pool.install(f))
}

fn compute(args: ComputeArgs) -> Run {
    let format = args.output.format.unwrap_or(Format::Csv);
    let order = args.n;
    let p = one(&args.p, "p")?;
    let mut config = RunConfig::new("compute");
    config.set("seq", &args.seq).set("N", order);
    if let Some(k) = args.k {
        config.set("k", k);
    }
    if let Some(p) = p {
        config.set("p", p);
    }
    if let Some(m) = args.m {
        config.set("m", m);
    }
    let m = || need(args.m, "m");
    let odd_p = || -> Run<u64> {
        let p = need(p, "p")?;
        require_odd_prime(p)?;
        Ok(p)
    };
    // (values, valuation base, whether the valuation is φ_k, first index)
    let (values, base, first): (Vec<BigInt>, Option<u64>, usize) = match args.seq.as_str() {
        "b" => (binary_partitions(order).values, Some(2), 0),
        "ptm" => (ptm(order).values, None, 0),
        "c" => (s_km_fast(2, m()?, order)?.values, Some(2), 0),
        "d" => {
            let p = odd_p()?;
            (s_km_fast(p, m()?, order)?.values, Some(p), 0)
        }
        "s" => {
            let k = need(args.k, "k")?;
            (s_km_fast(k, m()?, order)?.values, Some(k), 0)
        }
        "a" => {
            let p = odd_p()?;
            (a_pm(p, m()?, order)?.values, Some(p), 0)
        }
        "dcap" => {
            let p = odd_p()?;
            (d_p_cap(p, order)?.values, Some(p), 0)
        }
        "tm" => (t_m_convolution(m()?, order)?.values, Some(2), 0),
        "u" => (u_m_partial_sums(m()?, order)?.values, Some(2), 0),
        "theta" => {
            let p = odd_p()?;
            (vartheta(p, m()?, order)?.values, Some(p), 0)
        }
        "y" | "z" => {
            let p = odd_p()?;
            let (y, z) = y_z_sequences(p, order)?;
            (if args.seq == "y" { y.values } else { z.values }, None, 1)
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown sequence {other:?}; available: b, ptm, c, d, s, a, dcap, tm, u, theta, y, z"
            )))
        }
    };
    let mut columns = vec!["n".to_string(), "value".to_string()];
    if let Some(b) = base {
        columns.push(if is_prime(b) { format!("nu_{b}") } else { format!("phi_{b}") });
    }
    let mut rows = Vec::with_capacity(values.len());
    for (n, v) in values.iter().enumerate().skip(first) {
        let mut row = vec![n.to_string(), v.to_string()];
        if let Some(b) = base {
            let val: ExtNat = if is_prime(b) { nu_p(v, b)? } else { phi_k(v, b)? };
            row.push(val.to_string());
        }
        rows.push(row);
    }
    let text = Table { columns, rows }.render(&config, format)?;
    emit(&text, &args.output)
}

const CHECKS: [&str; 18] = [
    "parylem1",
    "parylem2",
    "parylem3",
    "binom",
    "wolstenholme",
    "modp",
    "parythm3",
    "mainthm",
    "parycor2",
    "negation",
    "apm",
    "apm-digit-of-n",
    "cor0",
    "cor2",
    "nonvanishing",
    "churchhouse",
    "funceq",
    "speccong",
];

fn available() -> String {
    let mut names: Vec<String> = CHECKS.iter().map(|s| s.to_string()).collect();
    names.extend(ConjectureSelector::ALL.iter().map(|c| c.name().to_string()));
    names.join(", ")
}

/// Grid values shared by the per-(p, m) checks.
struct Grid {
    primes: Vec<u64>,
    ms: Vec<i64>,
    order: usize,
    from_range: bool,
}

impl Grid {
    fn from_args(args: &CheckArgs, primes: &[u64], ms: impl FnOnce() -> Vec<i64>, order: usize) -> Run<Grid> {
        let primes = if args.p.is_empty() { primes.to_vec() } else { args.p.clone() };
        let ms = match (&args.m_range, args.m.is_empty()) {
            (Some(_), false) => return Err(Failure::Usage("use either --m or --m-range".into())),
            (Some(r), true) => parse_range(r)?,
            (None, false) => args.m.clone(),
            (None, true) => ms(),
        };
        Ok(Grid { primes, ms, order: args.n.unwrap_or(order), from_range: args.m_range.is_some() })
    }

    /// Drops values outside a check's domain, but only from `--m-range`;
    /// explicit `--m` values are passed through and rejected by the check.
    fn restrict(mut self, keep: impl Fn(i64) -> bool) -> Self {
        if self.from_range {
            self.ms.retain(|&m| keep(m));
        }
        self
    }

    fn echo(&self, config: &mut RunConfig) {
        config.set("p", format!("{:?}", self.primes).replace(' ', ""));
        if !self.ms.is_empty() {
            config.set("m", format!("{:?}", self.ms).replace(' ', ""));
        }
        config.set("N", self.order);
    }

    fn points(&self) -> Vec<(u64, i64)> {
        self.primes.iter().flat_map(|&p| self.ms.iter().map(move |&m| (p, m))).collect()
    }
}

fn per_point(
    grid: &Grid,
    check: impl Fn(u64, i64, usize) -> pary::Result<CheckReport> + Sync,
) -> Run<Vec<CheckReport>> {
    let reports: pary::Result<Vec<CheckReport>> = grid
        .points()
        .par_iter()
        .map(|&(p, m)| {
            eprintln!("checking p={p} m={m}");
            check(p, m, grid.order)
        })
        .collect();
    Ok(reports?)
}

fn run_check(args: &CheckArgs, config: &mut RunConfig) -> Run<Vec<CheckReport>> {
    let name = args.name.as_str();
    config.set("check", name);
    let small_ms = || (1..=10).collect::<Vec<i64>>();
    let signed = |top: i64, skip_minus_one: bool| {
        (-top..=top).filter(|&m| m != 0 && !(skip_minus_one && m == -1)).collect::<Vec<i64>>()
    };
    let reports = match name {
        "parylem1" | "parylem2" | "modp" | "negation" => {
            let grid = Grid::from_args(args, &[3, 5, 7], small_ms, 300)?.restrict(|m| m >= 1);
            grid.echo(config);
            match name {
                "parylem1" => per_point(&grid, check_parylem1)?,
                "parylem2" => per_point(&grid, check_parylem2)?,
                "modp" => per_point(&grid, check_modp_lemma)?,
                _ => per_point(&grid, check_negation)?,
            }
        }
        "parythm3" => {
            let grid = Grid::from_args(args, &[5, 7], small_ms, 300)?.restrict(|m| m >= 1);
            grid.echo(config);
            per_point(&grid, check_parythm3)?
        }
        "parylem3" => {
            let grid = Grid::from_args(args, &[3, 5], Vec::new, 300)?;
            let alpha = args.alpha.unwrap_or(1);
            grid.echo(config);
            config.set("alpha", alpha);
            if !grid.ms.is_empty() {
                return Err(Failure::Usage("parylem3 takes --alpha (m = p^alpha), not --m".into()));
            }
            let r: pary::Result<Vec<_>> =
                grid.primes.par_iter().map(|&p| check_parylem3(p, alpha, grid.order)).collect();
            r?
        }
        "apm" | "apm-digit-of-n" => {
            let grid = Grid::from_args(args, &[3], Vec::new, 1000)?;
            let alpha = args.alpha.unwrap_or(1);
            grid.echo(config);
            config.set("alpha", alpha);
            let digit = if name == "apm" { ResidueDigit::OfQuotient } else { ResidueDigit::OfN };
            let r: pary::Result<Vec<_>> =
                grid.primes.par_iter().map(|&p| check_a_pm_residue(p, alpha, grid.order, digit)).collect();
            r?
        }
        "binom" => {
            let grid = Grid::from_args(args, &[3, 5, 7, 11], || vec![60], 0)?;
            let m_max = *grid.ms.iter().max().expect("nonempty");
            if m_max < 1 {
                return Err(Failure::Usage("binom needs a positive --m bound".into()));
            }
            config.set("p", format!("{:?}", grid.primes).replace(' ', "")).set("m_max", m_max);
            vec![check_binom_grid(&grid.primes, m_max as u64)?]
        }
        "wolstenholme" => {
            let primes = if args.p.is_empty() { vec![5, 7, 11, 13] } else { args.p.clone() };
            config.set("p", format!("{primes:?}").replace(' ', ""));
            vec![check_wolstenholme(&primes)?]
        }
        "mainthm" => {
            let grid = Grid::from_args(args, &[2], || signed(20, true), 1000)?.restrict(|m| m != 0 && m != -1);
            config.set("m", format!("{:?}", grid.ms).replace(' ', "")).set("N", grid.order);
            vec![check_mainthm(&grid.ms, grid.order)?]
        }
        "parycor2" => {
            let grid = Grid::from_args(args, &[3, 5, 7], || signed(12, false), 1000)?.restrict(|m| m != 0);
            grid.echo(config);
            vec![check_parycor2(&grid.primes, &grid.ms, grid.order)?]
        }
        "cor0" => {
            let odd = || signed(19, true).into_iter().filter(|m| m % 2 != 0).collect();
            let grid = Grid::from_args(args, &[2], odd, 1000)?.restrict(|m| m % 2 != 0 && m != -1);
            config.set("m", format!("{:?}", grid.ms).replace(' ', "")).set("N", grid.order);
            let r: pary::Result<Vec<_>> = grid.ms.par_iter().map(|&m| check_cor0(m, grid.order)).collect();
            r?
        }
        "cor2" => {
            let grid = Grid::from_args(args, &[2], || vec![10], 1000)?;
            let m_max = *grid.ms.iter().max().expect("nonempty");
            config.set("m_max", m_max).set("N", grid.order);
            vec![check_cor2(m_max, grid.order)?]
        }
        "nonvanishing" => {
            let grid = Grid::from_args(args, &[3, 5], || (-10..=-1).collect(), 1000)?;
            grid.echo(config);
            vec![check_nonvanishing(&grid.ms, &grid.primes, grid.order)?]
        }
        "churchhouse" => {
            let k = args.k.unwrap_or(3);
            let t = args.n.unwrap_or(100) as u64;
            config.set("k", k).set("t_max", t);
            vec![churchhouse_congruences(k, t)?]
        }
        "funceq" => {
            let primes = if args.p.is_empty() { vec![3, 5, 7] } else { args.p.clone() };
            let order = args.n.unwrap_or(2000);
            config.set("p", format!("{primes:?}").replace(' ', "")).set("N", order);
            let r: pary::Result<Vec<_>> =
                primes.par_iter().map(|&p| verify_functional_equations(p, order)).collect();
            r?
        }
        "speccong" => return Err(Failure::Usage("speccong is handled separately".into())),
        other => {
            let selector: ConjectureSelector = other.parse().map_err(|_| {
                Failure::Usage(format!("unknown check {other:?}; available: {}", available()))
            })?;
            vec![run_conjecture(selector, args, config)?]
        }
    };
    Ok(reports)
}

fn run_conjecture(selector: ConjectureSelector, args: &CheckArgs, config: &mut RunConfig) -> Run<CheckReport> {
    let mut grid = ConjectureGrid::standard(selector);
    if let Some(k) = args.k {
        grid.k_max = k;
    }
    if let Some(&m) = args.m.iter().max() {
        grid.m_max = m;
    }
    if !args.p.is_empty() {
        grid.primes = args.p.clone();
    }
    if let Some(s) = args.s {
        grid.s_max = s;
    }
    if let Some(n) = args.n {
        grid.n_max = n;
    }
    config
        .set("check", selector.name())
        .set("k_max", grid.k_max)
        .set("m_max", grid.m_max)
        .set("p", format!("{:?}", grid.primes).replace(' ', ""))
        .set("s_max", grid.s_max)
        .set("N", grid.n_max);
    eprintln!("searching {selector}");
    Ok(conjecture_checks(selector, &grid)?)
}

fn speccong(args: &CheckArgs, command: &str) -> Run {
    let format = args.output.format.unwrap_or(Format::Text);
    let k = args.k_exp.or(args.k).unwrap_or(5);
    let primes = if args.p.is_empty() { odd_primes_up_to(29) } else { args.p.clone() };
    let ms = match (&args.m_range, args.m.is_empty()) {
        (Some(r), _) => parse_range(r)?,
        (None, false) => args.m.clone(),
        (None, true) => (2..=100).collect(),
    };
    let order = args.n.unwrap_or(1000);
    let mut config = RunConfig::new(command);
    config
        .set("check", "speccong")
        .set("k_exp", k)
        .set("modulus", "p^(nu_p(m)+k_exp)")
        .set("p", format!("{primes:?}").replace(' ', ""))
        .set("m", format!("{}..{}", ms.first().unwrap_or(&0), ms.last().unwrap_or(&0)))
        .set("N", order);
    eprintln!("searching speccong k={k}");
    let pairs = with_pool(args.output.jobs, || speccong_search(&primes, &ms, k, order))??;
    let table = Table {
        columns: vec!["p".into(), "m".into()],
        rows: pairs.iter().map(|(p, m)| vec![p.to_string(), m.to_string()]).collect(),
    };
    let mut text = table.render(&config, format)?;
    if format == Format::Text {
        let _ = writeln!(text, "# {} pairs", pairs.len());
    }
    emit(&text, &args.output)
}

fn check_command(args: CheckArgs, command: &str) -> Run {
    if args.name == "list" {
        let mut text = String::new();
        for name in available().split(", ") {
            let _ = writeln!(text, "{name}");
        }
        return emit(&text, &args.output);
    }
    if args.name == "speccong" {
        return speccong(&args, command);
    }
    if command == "search" && args.name.parse::<ConjectureSelector>().is_err() {
        let names: Vec<&str> = ConjectureSelector::ALL.iter().map(|c| c.name()).collect();
        return Err(Failure::Usage(format!(
            "unknown search {:?}; available: speccong, {}",
            args.name,
            names.join(", ")
        )));
    }
    let format = args.output.format.unwrap_or(Format::Text);
    if format == Format::Dot {
        return Err(Failure::Usage("dot output is only available for `automaton`".into()));
    }
    let mut config = RunConfig::new(command);
    let reports = with_pool(args.output.jobs, || run_check(&args, &mut config))??;
    let text = render_reports(&reports, &config, format);
    emit(&text, &args.output)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Counterexample(format!("counterexample found in {}", failed.join(", "))))
    }
}

fn render_reports(reports: &[CheckReport], config: &RunConfig, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = json!({ "config": config.json(), "reports": reports });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = format!("# {}\n{}", config.line(), reports_to_csv(reports));
            if reports.iter().any(|r| !r.counterexamples.is_empty()) {
                out.push_str("# counterexamples\n");
                out.push_str(&counterexamples_to_csv(reports));
            }
            out
        }
        _ => {
            let mut out = format!("# {}\n", config.line());
            if reports.iter().any(|r| r.kind == StatementKind::Conjecture) {
                out.push_str("CONJECTURE: finite search only, not a proof\n");
            }
            for r in reports {
                let _ = writeln!(out, "{}", r.summary());
                for note in &r.notes {
                    let _ = writeln!(out, "  note: {note}");
                }
                for c in &r.counterexamples {
                    let point: Vec<String> = c.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let witness: Vec<String> = c.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let _ = writeln!(out, "  counterexample {}: {}", point.join(" "), witness.join(" "));
                }
            }
            out
        }
    }
}

fn table1(args: TableArgs) -> Run {
    let format = args.output.format.unwrap_or(Format::Text);
    let ms = parse_range(&args.m_range)?;
    if ms[0] < 1 {
        return Err(Failure::Usage("m must be positive".into()));
    }
    if !is_prime(args.p) {
        return Err(Failure::Usage(format!("p must be prime, got {}", args.p)));
    }
    let mut config = RunConfig::new("table1");
    config.set("X", args.x).set("threshold", args.threshold).set("m", &args.m_range).set("p", args.p);
    let (x, p) = (args.x, args.p);
    let stats = with_pool(args.output.jobs, || {
        ms.par_iter()
            .map(|&m| {
                let g = gap_statistics(m, x, p);
                eprintln!("table1: m={m} done");
                g
            })
            .collect::<pary::Result<Vec<_>>>()
    })??;
    let rows = stats
        .iter()
        .filter(|g| g.distinct <= args.threshold)
        .map(|g| vec![g.m.to_string(), g.max.to_string(), g.distinct.to_string()])
        .collect();
    let table = Table { columns: vec!["m".into(), "M".into(), "L".into()], rows };
    emit(&table.render(&config, format)?, &args.output)
}

fn dfao_json(a: &Dfao) -> Value {
    let states: Vec<Value> = (0..a.num_states())
        .map(|q| {
            json!({
                "id": q,
                "output": a.output(q),
                "next": (0..a.base()).map(|d| a.step(q, d)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "base": a.base(),
        "direction": a.direction().short_name(),
        "initial": a.initial(),
        "states": states,
    })
}

fn automaton(args: AutomatonArgs) -> Run {
    let format = args.output.format.unwrap_or(Format::Dot);
    let direction = match args.dir {
        Dir::Lsb => Direction::LsbFirst,
        Dir::Msb => Direction::MsbFirst,
    };
    let mut config = RunConfig::new("automaton");
    config.set("dir", direction.short_name());
    let a = match args.family {
        Family::Nu2c => {
            let m = need(args.m, "m")?;
            config.set("family", "nu2c").set("m", m);
            build_nu2_automaton(m, direction)?
        }
        Family::Yp => {
            let p = need(args.p, "p")?;
            config.set("family", "yp").set("p", p);
            build_yp_automaton(p, direction)?
        }
    };
    let text = match format {
        Format::Dot => format!("// {}\n{}", config.line(), export_dot(&a)),
        Format::Json => {
            let doc = json!({ "config": config.json(), "automaton": dfao_json(&a) });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Csv | Format::Text => {
            let mut columns = vec!["state".to_string(), "output".to_string()];
            columns.extend((0..a.base()).map(|d| format!("on_{d}")));
            let rows = (0..a.num_states())
                .map(|q| {
                    let mut r = vec![
                        if q == a.initial() { format!("{q}*") } else { q.to_string() },
                        a.output(q).map_or("-".into(), |v| v.to_string()),
                    ];
                    r.extend((0..a.base()).map(|d| a.step(q, d).to_string()));
                    r
                })
                .collect();
            Table { columns, rows }.render(&config, format)?
        }
    };
    emit(&text, &args.output)
}

fn sum_check(args: SumArgs) -> Run {
    let format = args.output.format.unwrap_or(Format::Text);
    let primes = if args.p.is_empty() { vec![3, 5, 7] } else { args.p.clone() };
    let mut config = RunConfig::new("sum-check");
    config.set("p", format!("{primes:?}").replace(' ', ""));
    if let Some(n) = args.n {
        config.set("N", n);
    }
    let mut rows = Vec::new();
    let mut failed = false;
    for &p in &primes {
        require_odd_prime(p)?;
        let top = args.n.unwrap_or_else(|| (1..).take_while(|&n| p.pow(n) <= 1000).last().unwrap_or(1));
        for n in 1..=top {
            let ok = y_sum_check(p, n)?;
            failed |= !ok;
            let expected = p * (p.pow(n) - 1) / 2;
            rows.push(vec![p.to_string(), n.to_string(), expected.to_string(), ok.to_string()]);
        }
    }
    let table = Table { columns: vec!["p".into(), "n".into(), "expected_sum".into(), "holds".into()], rows };
    emit(&table.render(&config, format)?, &args.output)?;
    if failed {
        return Err(Failure::Counterexample("summation identity fails".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => check_command(a, "verify"),
        Command::Search(a) => check_command(a, "search"),
        Command::Table1(a) => table1(a),
        Command::Automaton(a) => automaton(a),
        Command::SumCheck(a) => sum_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line interface.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical expectation
//! fails, 2 on usage or IO errors.

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use girthbound_core::bounds::{eval_cubic, eval_reiman, BoundError, BoundReport, Method};
use girthbound_core::constructions::{self, ConstructionError};
use girthbound_core::meanineq::{self, MatrixError};
use girthbound_core::search::SearchError;
use girthbound_core::{BipartiteGraph, GirthTarget, SearchLimits, SimpleGraph};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::driver::{self, InstantClock};
use crate::format::{self, FormatError};

/// Largest graph (vertices) for which `verify` also enumerates paths of length 3.
const ENUMERATION_LIMIT: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "girthbound", version)]
#[command(about = "Edge bounds, extremal constructions and exhaustive search for bipartite graphs of girth 6 and 8")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form edge bounds for class sizes (v, w)
    Bound(BoundArgs),
    /// Build an extremal construction and write it as Graph JSON
    Construct(ConstructArgs),
    /// Report girth, degrees, bound evaluations and paths of length 3 for a Graph JSON file
    Verify(VerifyArgs),
    /// Exhaustive maximum size of a graph with girth at least 6 or 8
    Search(SearchArgs),
    /// Bound table over ranges of class sizes
    Table(TableArgs),
    /// Check the mean inequality for a matrix JSON file
    Awm(AwmArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Girth {
    #[value(name = "6")]
    Six,
    #[value(name = "8")]
    Eight,
}

impl From<Girth> for GirthTarget {
    fn from(g: Girth) -> Self {
        match g {
            Girth::Six => GirthTarget::Six,
            Girth::Eight => GirthTarget::Eight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    All,
    Reiman,
    Cubic,
    Coarse,
    Cap,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub v: u64,
    #[arg(long)]
    pub w: u64,
    #[arg(long, value_enum)]
    pub girth: Girth,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MethodArg,
    /// Print JSON instead of aligned text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: Construction,
    /// Output Graph JSON path
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Construction {
    /// Point/line incidence of the (t+1) x (t+1) grid
    Grid {
        #[arg(long)]
        t: usize,
    },
    /// Point/line incidence of the projective plane PG(2, q), q prime
    Pg2 {
        #[arg(long)]
        q: u32,
    },
    /// Point/line incidence of the symplectic quadrangle W(q), q prime
    Wq {
        #[arg(long)]
        q: u32,
    },
    /// Complete bipartite graph K_{a,b}
    Complete {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Subdivide every edge of a simple graph
    Expand {
        /// Expand the complete graph K_n
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        complete: Option<usize>,
        /// Simple graph JSON: {"n": int, "edges": [[a, b], ...]}
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Optimal girth-6 graph for w >= v(v-1)/2
    Unbalanced6 {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        w: usize,
    },
    /// Optimal girth-8 graph for w >= floor(v^2/4)
    Unbalanced8 {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        w: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Require girth at least this value (forests pass)
    #[arg(long)]
    pub expect_girth: Option<usize>,
    /// Require equality in the bound for the graph's girth class and report the weak-quadrangle verdict
    #[arg(long)]
    pub check_equality: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub w: usize,
    #[arg(long, value_enum)]
    pub girth: Girth,
    /// Node budget
    #[arg(long, default_value_t = SearchLimits::default().max_nodes)]
    pub nodes: u64,
    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = driver::DEFAULT_TIMEOUT.as_secs_f64())]
    pub timeout: f64,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo == 0 || lo > hi {
            return Err(format!("range {s:?} must satisfy 1 <= a <= b"));
        }
        Ok(Range { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub v_range: Range,
    #[arg(long)]
    pub w_range: Range,
    #[arg(long, value_enum)]
    pub girth: Girth,
    /// Add an exhaustive-search column and the gap to the binding bound
    #[arg(long)]
    pub with_search: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct AwmArgs {
    /// Matrix JSON: {"rows": [[entry, ...], ...]} with integer or "p/q" entries
    pub matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: String,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Runs a parsed command, writing its report to `out`. `Ok` carries exit code 0 or 1.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Bound(args) => bound(args, out),
        Command::Construct(args) => construct(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Search(args) => search(args, out),
        Command::Table(args) => table(args, out),
        Command::Awm(args) => awm(args, out),
    }
}

fn bound(args: BoundArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let girth = GirthTarget::from(args.girth);
    let methods: &[Method] = match args.method {
        MethodArg::All => &Method::ALL,
        MethodArg::Reiman => &[Method::Reiman],
        MethodArg::Cubic => &[Method::Cubic],
        MethodArg::Coarse => &[Method::Coarse],
        MethodArg::Cap => &[Method::Cap],
    };
    let report = BoundReport::with_methods(args.v, args.w, girth, methods)?;
    if args.json {
        let values: serde_json::Map<String, serde_json::Value> =
            report.values.iter().map(|(m, b)| (m.name().to_owned(), b.to_string().into())).collect();
        let doc = serde_json::json!({
            "v": report.v.to_string(),
            "w": report.w.to_string(),
            "girth": girth.value(),
            "values": values,
            "binding": report.binding.name(),
            "binding_value": report.binding_value().to_string(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"))?;
    } else {
        writeln!(out, "v = {}, w = {}, girth >= {}", report.v, report.w, girth.value())?;
        for (m, b) in &report.values {
            let mark = if *m == report.binding { "  binding" } else { "" };
            writeln!(out, "{:<8}{:>12}{mark}", m.name(), b)?;
        }
    }
    Ok(0)
}

fn build(kind: &Construction) -> Result<(String, BipartiteGraph), CliError> {
    Ok(match *kind {
        Construction::Grid { t } => (format!("grid(t={t})"), constructions::grid_incidence(t)),
        Construction::Pg2 { q } => (format!("pg2(q={q})"), constructions::pg2_incidence(q)?),
        Construction::Wq { q } => (format!("wq(q={q})"), constructions::wq_incidence(q)?),
        Construction::Complete { a, b } => {
            (format!("complete(a={a}, b={b})"), constructions::complete_bipartite(a, b))
        }
        Construction::Expand { complete, ref input } => {
            let base = match (complete, input) {
                (Some(n), _) => SimpleGraph::complete(n),
                (None, Some(path)) => format::read_simple_graph(path)?,
                (None, None) => return Err(CliError::Usage("expand needs --complete or --input".into())),
            };
            let label = match complete {
                Some(n) => format!("expand(complete={n})"),
                None => "expand".to_owned(),
            };
            (label, constructions::expand(&base))
        }
        Construction::Unbalanced6 { v, w } => {
            (format!("unbalanced6(v={v}, w={w})"), constructions::unbalanced6(v, w)?)
        }
        Construction::Unbalanced8 { v, w } => {
            (format!("unbalanced8(v={v}, w={w})"), constructions::unbalanced8(v, w)?)
        }
    })
}

fn girth_text(g: &BipartiteGraph) -> String {
    match g.girth().girth {
        Some(x) => x.to_string(),
        None => "infinite".to_owned(),
    }
}

fn construct(args: ConstructArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let path = args.out.ok_or_else(|| CliError::Usage("--out <path> is required".into()))?;
    let (label, g) = build(&args.kind)?;
    format::write_graph(&path, &g)?;
    writeln!(out, "{label}: v = {}, w = {}, e = {}, girth = {}", g.v(), g.w(), g.size(), girth_text(&g))?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(0)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let g = format::read_graph(&args.path)?;
    let (v, w, e) = (g.v() as u64, g.w() as u64, g.size() as u64);
    let report = g.girth();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "graph: v = {v}, w = {w}, e = {e}")?;
    writeln!(out, "girth: {} (C4: {}, C6: {})", girth_text(&g), yes_no(report.has_c4), yes_no(report.has_c6))?;
    let range = |it: &mut dyn Iterator<Item = usize>| {
        let ds: Vec<usize> = it.collect();
        match (ds.iter().min(), ds.iter().max()) {
            (Some(lo), Some(hi)) => format!("{lo}..{hi}"),
            _ => "-".to_owned(),
        }
    };
    writeln!(
        out,
        "degrees: V {}, W {}{}",
        range(&mut g.v_degrees()),
        range(&mut g.w_degrees()),
        if g.is_biregular() { " (biregular)" } else { "" }
    )?;
    let (lo, hi) = (v.min(w), v.max(w));
    let o = eval_reiman(lo, hi, e);
    let p = eval_cubic(v, w, e);
    writeln!(out, "O(min, max, e) = {o}")?;
    writeln!(out, "P(v, w, e) = {p}")?;
    if v > 0 && w > 0 {
        let r6 = BoundReport::new(v, w, GirthTarget::Six)?;
        let r8 = BoundReport::new(v, w, GirthTarget::Eight)?;
        let list = |r: &BoundReport| r.values.iter().map(|(m, b)| format!("{} {b}", m.name())).collect::<Vec<_>>().join(", ");
        writeln!(out, "bounds (girth 6): {}", list(&r6))?;
        writeln!(out, "bounds (girth 8): {}", list(&r8))?;
    }
    let paths = g.count_paths3();
    if g.v() + g.w() <= ENUMERATION_LIMIT {
        let enumerated = g.count_paths3_enumerate();
        writeln!(out, "paths of length 3: {paths} (enumeration {enumerated})")?;
        if enumerated != paths {
            writeln!(out, "paths count mismatch: FAIL")?;
            return Ok(1);
        }
    } else {
        writeln!(out, "paths of length 3: {paths}")?;
    }

    let mut ok = true;
    if let Some(target) = args.expect_girth {
        let pass = report.at_least(target);
        writeln!(out, "expect girth >= {target}: {}", verdict(pass))?;
        ok &= pass;
    }
    if args.check_equality {
        writeln!(out, "weak generalized quadrangle: {}", g.verify_weak_gq())?;
        let class = args.expect_girth.unwrap_or(if report.at_least(8) { 8 } else { 6 });
        let pass = if class >= 8 {
            let pass = report.at_least(8) && p.is_zero();
            writeln!(out, "equality P = 0: {}", verdict(pass))?;
            pass
        } else {
            let pass = report.at_least(6) && o.is_zero();
            writeln!(out, "equality O = 0: {}", verdict(pass))?;
            pass
        };
        ok &= pass;
    }
    Ok(if ok { 0 } else { 1 })
}

fn search(args: SearchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if !(args.timeout.is_finite() && args.timeout >= 0.0) {
        return Err(CliError::Usage(format!("invalid timeout {}", args.timeout)));
    }
    let clock = InstantClock::new(Some(Duration::from_secs_f64(args.timeout)));
    let limits = SearchLimits { max_nodes: args.nodes, ..SearchLimits::default() };
    let threads = args.threads.unwrap_or_else(driver::default_threads);
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let cert = driver::search(args.v, args.w, args.girth.into(), limits, threads, &clock)?;
    writeln!(out, "{}", format::certificate_to_string(&cert))?;
    Ok(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub v: u64,
    pub w: u64,
    pub girth: usize,
    pub reiman: Option<String>,
    pub cubic: Option<String>,
    pub cap: Option<String>,
    pub coarse: Option<String>,
    pub search: Option<u64>,
    pub gap: Option<u64>,
}

pub const TABLE_HEADER: &str = "v,w,girth,reiman,cubic,cap,coarse,search,gap";

pub fn table_row(v: u64, w: u64, girth: GirthTarget, with_search: bool) -> Result<TableRow, CliError> {
    let report = BoundReport::new(v, w, girth)?;
    let cell = |m: Method| report.get(m).map(|b| b.to_string());
    let search = if with_search { search_cell(v, w, girth) } else { None };
    Ok(TableRow {
        v,
        w,
        girth: girth.value(),
        reiman: cell(Method::Reiman),
        cubic: cell(Method::Cubic),
        cap: cell(Method::Cap),
        coarse: cell(Method::Coarse),
        search,
        gap: search.map(|s| report.binding_value() - s),
    })
}

fn search_cell(v: u64, w: u64, girth: GirthTarget) -> Option<u64> {
    let (v, w) = (usize::try_from(v).ok()?, usize::try_from(w).ok()?);
    let clock = InstantClock::new(Some(driver::DEFAULT_TIMEOUT));
    let cert = driver::search(v, w, girth, SearchLimits::default(), driver::default_threads(), &clock).ok()?;
    cert.exhaustive.then_some(cert.e_max as u64)
}

impl TableRow {
    pub fn csv(&self) -> String {
        let opt = |x: &Option<String>| x.clone().unwrap_or_default();
        let num = |x: Option<u64>| x.map(|n| n.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.v,
            self.w,
            self.girth,
            opt(&self.reiman),
            opt(&self.cubic),
            opt(&self.cap),
            opt(&self.coarse),
            num(self.search),
            num(self.gap)
        )
    }
}

fn table(args: TableArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let girth = GirthTarget::from(args.girth);
    let mut rows = Vec::new();
    for v in args.v_range.lo..=args.v_range.hi {
        for w in args.w_range.lo..=args.w_range.hi {
            rows.push(table_row(v, w, girth, args.with_search)?);
        }
    }
    match args.format {
        TableFormat::Csv => {
            writeln!(out, "{TABLE_HEADER}")?;
            for row in &rows {
                writeln!(out, "{}", row.csv())?;
            }
        }
        TableFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("rows serialize"))?;
        }
    }
    Ok(0)
}

fn awm(args: AwmArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let m = format::read_matrix(&args.matrix)?;
    let rho: BigRational = format::parse_rational(&args.rho)?;
    let gamma: BigRational = format::parse_rational(&args.gamma)?;
    let verdict = meanineq::check(&m, &rho, &gamma)?;
    let join = |xs: &[BigRational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    writeln!(out, "matrix: {} x {}, e = {}", m.v(), m.w(), m.total())?;
    writeln!(out, "rho = {rho}, gamma = {gamma}")?;
    writeln!(out, "row sums: {}", join(m.row_sums()))?;
    writeln!(out, "column sums: {}", join(m.col_sums()))?;
    writeln!(out, "hypotheses (row sums >= 2 rho, column sums >= 2 gamma): {}", verdict.hypotheses_hold)?;
    writeln!(out, "phi = {}", verdict.phi)?;
    writeln!(out, "rhs = e (e/v - rho)(e/w - gamma) = {}", verdict.rhs)?;
    writeln!(out, "satisfied: {}", verdict.satisfied)?;
    writeln!(out, "equality: {}", verdict.equality)?;
    Ok(if verdict.satisfied { 0 } else { 1 })
}

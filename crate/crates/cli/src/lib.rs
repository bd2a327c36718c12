//! The `spex` command line: argument parsing, dispatch to `spex-core`, and
//! JSON/CSV rendering.
//!
//! [`run`] does all the work and returns what the process should print, so the
//! binary is a few lines and tests can drive commands in-process.

pub mod args;

use std::fs;
use std::io::{BufReader, Cursor, Read};
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use spex_core::constructions::*;
use spex_core::graph6::{parse_graph6, to_graph6};
use spex_core::patterns::{find_forbidden, oracle_agreement, Claim};
use spex_core::planarity::planarity;
use spex_core::search::{
    exhaustive_search, family_search, verify_transformation_ascent, CandidateSource, GapFlag,
    SearchOptions, SearchReport,
};
use spex_core::spectral::{perron_bounds_report, spectral_radius, DEFAULT_TOL};
use spex_core::{sig15, ForbiddenPattern, Graph, PathPartition, SpexError};

use args::*;

/// Environment variable overriding the default residual tolerance.
pub const TOL_ENV: &str = "SPEX_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

/// What the process should emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<SpexError> for Failure {
    fn from(e: SpexError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(m: String) -> Self {
        Failure::Domain(m)
    }
}

type Outcome<T> = Result<T, Failure>;

/// Output of one command before rendering. `text` replaces the JSON envelope
/// on standard output when set (bare graph6 from `construct`).
struct Output {
    payload: Value,
    diagnostics: Vec<String>,
    text: Option<String>,
    csv: Option<String>,
}

impl Output {
    fn json<T: Serialize>(payload: &T) -> Outcome<Output> {
        let payload = serde_json::to_value(payload).map_err(|e| Failure::Domain(e.to_string()))?;
        Ok(Output {
            payload,
            diagnostics: Vec::new(),
            text: None,
            csv: None,
        })
    }
}

pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Execution {
                code: EXIT_OK,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("usage error")
                .trim_start_matches("error: ")
                .to_string();
            return failure(EXIT_USAGE, first);
        }
    };
    match dispatch(&cli, stdin).and_then(|out| render(&cli, out)) {
        Ok(stdout) => Execution {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => failure(EXIT_USAGE, m),
        Err(Failure::Domain(m)) => failure(EXIT_DOMAIN, m),
    }
}

/// Runs `f` on a pool of `jobs` workers, or on the global pool.
fn pooled<R: Send>(jobs: Option<u16>, f: impl FnOnce() -> R + Send) -> Outcome<R> {
    match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j as usize)
                .build()
                .map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn failure(code: i32, message: String) -> Execution {
    let result = CommandResult {
        status: Status::Error,
        payload: Value::Null,
        diagnostics: vec![message],
    };
    let line = serde_json::to_string(&result).expect("error record serializes");
    Execution {
        code,
        stdout: String::new(),
        stderr: line + "\n",
    }
}

fn render(cli: &Cli, mut out: Output) -> Outcome<String> {
    if cli.seed.is_some() {
        out.diagnostics
            .push("--seed ignored: all algorithms are deterministic".into());
    }
    let text = match out.text.take() {
        Some(t) => t,
        None => {
            let result = CommandResult {
                status: Status::Ok,
                payload: out.payload,
                diagnostics: out.diagnostics,
            };
            let s = if cli.pretty {
                serde_json::to_string_pretty(&result)
            } else {
                serde_json::to_string(&result)
            };
            s.map_err(|e| Failure::Domain(e.to_string()))? + "\n"
        }
    };
    if let (
        Some(csv),
        Command::FamilySearch(FamilySearchArgs { search })
        | Command::ExtremalSearch(ExtremalSearchArgs { search, .. }),
    ) = (&out.csv, &cli.command)
    {
        if let Some(path) = &search.csv {
            fs::write(path, csv)?;
        }
    }
    match &cli.out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Outcome<Output> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Rho(a) => rho(a, stdin),
        Command::Planar(a) => Output::json(&planarity(&read_graph(a, stdin)?)),
        Command::CheckFree(a) => check_free(a, stdin),
        Command::Predicate(a) => predicate(a),
        Command::OracleVsPredicate(a) => {
            let (claim, param) = claim_param(&a.claim)?;
            Output::json(&oracle_agreement(claim, param, a.max_total)?)
        }
        Command::FamilySearch(a) => {
            let (pattern, opts) = search_setup(&a.search)?;
            let report = pooled(cli.jobs, || family_search(&pattern, a.search.n, &opts))??;
            search_output(&report)
        }
        Command::ExtremalSearch(a) => extremal_search(a, cli.jobs, stdin),
        Command::PerronReport(a) => {
            let g = read_graph(&a.input, stdin)?;
            let r = spectral_radius(&g, tolerance(&a.tol)?, a.tol.max_iter)?;
            Output::json(&perron_bounds_report(&g, &r)?)
        }
        Command::TransformAscent(a) => {
            let pattern = parse_pattern(&a.forbid)?;
            let base = parse_partition(&a.partition)?;
            Output::json(&verify_transformation_ascent(
                &base, &pattern, a.n, a.gap_tol,
            )?)
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Outcome<usize> {
    v.ok_or_else(|| usage(format!("--family {family} requires --{flag}")))
}

fn parse_pattern(s: &str) -> Outcome<ForbiddenPattern> {
    s.parse::<ForbiddenPattern>()
        .map_err(|e| usage(format!("invalid pattern {s:?}: {e}")))
}

fn parse_partition(s: &str) -> Outcome<PathPartition> {
    PathPartition::parse(s).map_err(|e| usage(format!("invalid partition {s:?}: {e}")))
}

/// Residual tolerance: flag, then environment, then the library default.
fn tolerance(t: &TolArgs) -> Outcome<f64> {
    let tol = match (t.tol, std::env::var(TOL_ENV)) {
        (Some(x), _) => x,
        (None, Ok(v)) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{TOL_ENV}={v:?} is not a number")))?,
        (None, Err(_)) => DEFAULT_TOL,
    };
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(usage(format!("tolerance must be positive, got {tol}")))
    }
}

fn read_graph(input: &InputArgs, stdin: &mut dyn Read) -> Outcome<Graph> {
    let mut text = String::new();
    match input.input.as_deref() {
        Some(p) if p != Path::new("-") => text = fs::read_to_string(p)?,
        _ => {
            stdin.read_to_string(&mut text)?;
        }
    }
    let records: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && *l != ">>graph6<<")
        .collect();
    match records.as_slice() {
        [one] => Ok(parse_graph6(one.as_bytes())?),
        other => Err(Failure::Domain(format!(
            "expected one graph6 record, found {}",
            other.len()
        ))),
    }
}

fn construct(a: &ConstructArgs) -> Outcome<Output> {
    let name = format!("{:?}", a.family).to_lowercase();
    let partition = || -> Outcome<PathPartition> {
        parse_partition(
            a.partition
                .as_deref()
                .ok_or_else(|| usage(format!("--family {name} requires --partition")))?,
        )
    };
    let g = match a.family {
        Family::Path => path(need(a.k, "k", &name)?)?,
        Family::Cycle => cycle(need(a.k, "k", &name)?)?,
        Family::Paths => realize_partition(&partition()?),
        Family::Join => join_k2(&realize_partition(&partition()?))?,
        Family::H => {
            let p = h_partition(
                need(a.n, "n", &name)?,
                need(a.n1, "n1", &name)?,
                need(a.n2, "n2", &name)?,
            )?;
            join_k2(&realize_partition(&p))?
        }
        Family::K2Bipartite => k2_bipartite(need(a.n, "n", &name)?)?,
        Family::K2Plus => k2_plus(need(a.n, "n", &name)?)?,
        Family::Cll => cll_pattern(need(a.l, "l", &name)?)?,
        Family::Theta => theta_member(need(a.k, "k", &name)?, need(a.a, "a", &name)?)?,
        Family::Extremal => {
            let forbid = a
                .forbid
                .as_deref()
                .ok_or_else(|| usage("--family extremal requires --forbid"))?;
            extremal_construction(&parse_pattern(forbid)?, need(a.n, "n", &name)?)?
        }
    };
    let graph6 = to_graph6(&g)?;
    let mut out = Output::json(&json!({ "graph6": graph6, "n": g.n(), "edges": g.edge_count() }))?;
    if !a.json {
        out.text = Some(graph6 + "\n");
    }
    Ok(out)
}

#[derive(Serialize)]
struct RhoRecord {
    #[serde(serialize_with = "sig15::f64")]
    rho: f64,
    iterations: usize,
    #[serde(serialize_with = "sig15::f64")]
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "perron_opt")]
    perron: Option<Vec<f64>>,
}

fn perron_opt<S: serde::Serializer>(x: &Option<Vec<f64>>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig15::vec(v, s),
        None => s.serialize_none(),
    }
}

fn rho(a: &RhoArgs, stdin: &mut dyn Read) -> Outcome<Output> {
    let g = read_graph(&a.input, stdin)?;
    let r = spectral_radius(&g, tolerance(&a.tol)?, a.tol.max_iter)?;
    Output::json(&RhoRecord {
        rho: r.rho,
        iterations: r.iterations,
        residual: r.residual,
        perron: a.perron.then_some(r.perron),
    })
}

fn check_free(a: &CheckFreeArgs, stdin: &mut dyn Read) -> Outcome<Output> {
    let pattern = parse_pattern(&a.pattern)?;
    let g = read_graph(&a.input, stdin)?;
    let witness = find_forbidden(&g, &pattern)?;
    Output::json(&json!({ "pattern": pattern, "free": witness.is_none(), "witness": witness }))
}

fn claim_param(a: &ClaimArgs) -> Outcome<(Claim, usize)> {
    let claim: Claim = a
        .claim
        .parse()
        .map_err(|e| usage(format!("invalid claim {:?}: {e}", a.claim)))?;
    let param = match (claim, a.l, a.k) {
        (Claim::Claim4, Some(l), None) => l,
        (Claim::Claim4, _, _) => return Err(usage("--claim 4 takes --l and not --k")),
        (Claim::Claim8, None, Some(k)) => k,
        (Claim::Claim8, _, _) => return Err(usage("--claim 8 takes --k and not --l")),
        (Claim::C33, None, None) => 3,
        (Claim::C33, _, _) => return Err(usage("--claim c33 takes neither --k nor --l")),
    };
    Ok((claim, param))
}

fn predicate(a: &PredicateArgs) -> Outcome<Output> {
    let (claim, param) = claim_param(&a.claim)?;
    let p = parse_partition(&a.partition)?;
    let free = claim.predicate(&p, param)?;
    Output::json(&json!({ "claim": claim, "param": param, "partition": p, "free": free }))
}

fn search_setup(a: &SearchArgs) -> Outcome<(ForbiddenPattern, SearchOptions)> {
    let pattern = parse_pattern(&a.forbid)?;
    if !(a.gap_tol.is_finite() && a.gap_tol > 0.0) {
        return Err(usage("--gap-tol must be positive"));
    }
    let opts = SearchOptions {
        top_k: a.top,
        gap_tol: a.gap_tol,
        tol: tolerance(&a.tol)?,
        max_iter: a.tol.max_iter,
        record_timing: a.timing,
        ..SearchOptions::default()
    };
    Ok((pattern, opts))
}

fn extremal_search(
    a: &ExtremalSearchArgs,
    jobs: Option<u16>,
    stdin: &mut dyn Read,
) -> Outcome<Output> {
    let (pattern, mut opts) = search_setup(&a.search)?;
    opts.trust_planar = a.trust_planar;
    opts.strict_stream = a.strict;
    let n = a.search.n;
    let report = match a.input.as_deref() {
        None => pooled(jobs, || {
            exhaustive_search(n, &pattern, CandidateSource::Internal, &opts)
        })??,
        Some(p) if p == Path::new("-") => {
            // the stdin handle cannot cross into the pool
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf)?;
            let mut reader = Cursor::new(buf);
            pooled(jobs, || {
                exhaustive_search(n, &pattern, CandidateSource::Stream(&mut reader), &opts)
            })??
        }
        Some(p) => {
            let mut reader = BufReader::new(fs::File::open(p)?);
            pooled(jobs, || {
                exhaustive_search(n, &pattern, CandidateSource::Stream(&mut reader), &opts)
            })??
        }
    };
    let mut out = search_output(&report)?;
    if !report.skipped.is_empty() {
        out.diagnostics
            .push(format!("{} stream line(s) skipped", report.skipped.len()));
    }
    Ok(out)
}

fn search_output(report: &SearchReport) -> Outcome<Output> {
    let mut out = Output::json(report)?;
    out.csv = Some(ranking_csv(report)?);
    Ok(out)
}

/// Columns: rank, graph6, rho, residual, flags. `flags` holds the gap to the
/// next row and marks the conjectured extremal graph when it is identifiable.
pub fn ranking_csv(report: &SearchReport) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "graph6", "rho", "residual", "flags"])
        .map_err(|e| e.to_string())?;
    for (i, c) in report.ranked.iter().enumerate() {
        let mut flags = Vec::new();
        match report.gap_flags.get(i) {
            Some(GapFlag::Strict) => flags.push("strict"),
            Some(GapFlag::Indistinguishable) => flags.push("indistinguishable"),
            None => {}
        }
        let extremal = match &report.theorem_extremal {
            Some(label) if c.partition.is_some() => &c.descriptor == label,
            _ => i == 0 && report.matches_theorem_extremal == Some(true),
        };
        if extremal {
            flags.push("theorem_extremal");
        }
        w.write_record([
            c.rank.to_string(),
            c.graph6.clone(),
            sig15::round15(c.rho).to_string(),
            sig15::round15(c.residual).to_string(),
            flags.join(";"),
        ])
        .map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

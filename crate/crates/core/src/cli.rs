//! Command-line surface. Every command reads JSON, writes one JSON report and
//! maps its outcome to an exit status: 0 success, 1 counterexample, 2 usage
//! or input error. `--pretty` swaps the JSON for an aligned key/value listing.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::buildings::{self, Boundary};
use crate::consistency::check_property_c;
use crate::dependence::{check_k_dependence, min_k_search, triangle_necessity};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::process;
use crate::sft::{self, ShiftOfFiniteType};
use crate::symmetry::Automorphisms;

/// Used whenever `--seed` is absent.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "insertion", version, about = "Building counts, consistency and dependence checks for insertion processes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Human-readable listing instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Structural predicates of a graph.
    Analyze(GraphArg),
    /// Property (C) for extensions up to length N.
    CheckC {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// k-dependence on windows of length at most N and M.
    CheckKdep {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
    },
    /// Smallest k passing the k-dependence check.
    MinK {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
    },
    /// Seeded draws of length `window`.
    Sample {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 5)]
        window: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Use the stepwise insertion sampler instead of the exact marginal.
        #[arg(long)]
        insertion: bool,
    },
    /// Shift of finite type: extension counts, de Bruijn checks, samples, certificate.
    Sft {
        #[arg(long, visible_alias = "file")]
        sft: PathBuf,
        /// Property (C) cross-check bound on the de Bruijn graph.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Tuples per sample; no samples without it.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        certify: bool,
    },
    /// Closed forms and the three-way oracle sweep.
    VerifyIdentities {
        /// Longest word in the sweep.
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    CheckC,
    CheckKdep,
    MinK,
    Sample,
    Sft,
    VerifyIdentities,
}

/// Everything a run depends on. Two equal configs give byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub max_n: usize,
    pub max_m: usize,
    pub k: usize,
    pub max_k: usize,
    pub window: Option<usize>,
    pub count: usize,
    pub seed: u64,
    pub insertion: bool,
    pub certify: bool,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub pretty: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            max_n: 5,
            max_m: 3,
            k: 1,
            max_k: 4,
            window: None,
            count: 1000,
            seed: DEFAULT_SEED,
            insertion: false,
            certify: false,
            threads: None,
            out: None,
            pretty: false,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let mut c = match cli.command {
            CommandArgs::Analyze(g) => RunConfig { input: Some(g.graph), ..RunConfig::new(Command::Analyze) },
            CommandArgs::CheckC { graph, max_n } => RunConfig { input: Some(graph.graph), max_n, ..RunConfig::new(Command::CheckC) },
            CommandArgs::CheckKdep { graph, k, max_n, max_m } => {
                RunConfig { input: Some(graph.graph), k, max_n, max_m, ..RunConfig::new(Command::CheckKdep) }
            }
            CommandArgs::MinK { graph, max_k, max_n, max_m } => {
                RunConfig { input: Some(graph.graph), max_k, max_n, max_m, ..RunConfig::new(Command::MinK) }
            }
            CommandArgs::Sample { graph, window, count, seed, insertion } => RunConfig {
                input: Some(graph.graph),
                window: Some(window),
                count,
                seed,
                insertion,
                ..RunConfig::new(Command::Sample)
            },
            CommandArgs::Sft { sft, max_n, window, count, seed, certify } => {
                RunConfig { input: Some(sft), max_n, window, count, seed, certify, ..RunConfig::new(Command::Sft) }
            }
            CommandArgs::VerifyIdentities { max_n } => RunConfig { max_n, ..RunConfig::new(Command::VerifyIdentities) },
        };
        c.threads = cli.threads;
        c.out = cli.out;
        c.pretty = cli.pretty;
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    Counterexample,
    UsageError,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Counterexample => 1,
            Status::UsageError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

impl Outcome {
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            render_pretty(&self.report)
        } else {
            let mut s = serde_json::to_string(&self.report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// Runs one command. Errors become exit-2 reports, except unmet
/// preconditions and dead ends, which are findings and exit 1.
pub fn run(config: &RunConfig) -> Outcome {
    let result = match config.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(config))),
        None => dispatch(config),
    };
    match result {
        Ok((status, body)) => Outcome { status, report: envelope(config, status, body) },
        Err(e) => {
            let status = match e {
                Error::Precondition(_) | Error::DeadEnd { .. } => Status::Counterexample,
                _ => Status::UsageError,
            };
            Outcome { status, report: envelope(config, status, json!({ "error": e.to_string() })) }
        }
    }
}

fn envelope(config: &RunConfig, status: Status, body: Value) -> Value {
    json!({ "command": config.command, "status": status, "result": body })
}

fn require_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be positive")));
    }
    Ok(())
}

fn load_graph(config: &RunConfig) -> Result<WeightedGraph> {
    let path = config.input.as_ref().ok_or_else(|| Error::InvalidArgument("missing --graph".into()))?;
    WeightedGraph::load(path)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Success
    } else {
        Status::Counterexample
    }
}

fn dispatch(config: &RunConfig) -> Result<(Status, Value)> {
    match config.command {
        Command::Analyze => Ok((Status::Success, analyze(&load_graph(config)?)?)),
        Command::CheckC => {
            require_positive("--max-n", config.max_n)?;
            let r = check_property_c(&load_graph(config)?, config.max_n)?;
            Ok((verdict(r.is_verified()), to_value(&r)))
        }
        Command::CheckKdep => {
            require_positive("--max-n", config.max_n)?;
            require_positive("--max-m", config.max_m)?;
            let g = load_graph(config)?;
            let c = check_property_c(&g, config.max_n.max(config.max_m) + 1)?;
            if !c.is_verified() {
                return Ok((Status::Counterexample, json!({ "property_c": c })));
            }
            let r = check_k_dependence(&g, config.k, config.max_n, config.max_m)?;
            Ok((verdict(r.verified), to_value(&r)))
        }
        Command::MinK => {
            require_positive("--max-n", config.max_n)?;
            require_positive("--max-m", config.max_m)?;
            let g = load_graph(config)?;
            let c = check_property_c(&g, config.max_n.max(config.max_m) + 1)?;
            if !c.is_verified() {
                return Ok((Status::Counterexample, json!({ "property_c": c })));
            }
            let r = min_k_search(&g, config.max_k, config.max_n, config.max_m)?;
            let body = json!({ "min_k": r.min_k, "max_k": r.max_k, "attempts": r.attempts, "triangle": triangle_necessity(&g) });
            Ok((verdict(r.min_k.is_some()), body))
        }
        Command::Sample => {
            let window = config.window.unwrap_or(5);
            require_positive("--window", window)?;
            let g = load_graph(config)?;
            if config.insertion {
                let mut rng = process::rng_from_seed(config.seed);
                let draws = (0..config.count).map(|_| process::sample_insertion_with(&g, window, &mut rng)).collect::<Result<Vec<_>>>()?;
                Ok((Status::Success, json!({ "seed": config.seed, "length": window, "sampler": "insertion", "draws": draws })))
            } else {
                let batch = process::sample_exact(&g, window, config.seed, config.count)?;
                Ok((Status::Success, json!({ "seed": batch.seed, "length": batch.length, "sampler": "exact", "words": batch.words })))
            }
        }
        Command::Sft => run_sft(config),
        Command::VerifyIdentities => {
            let r = verify_identities_with(&IdentityOptions { sweep_len: config.max_n, ..IdentityOptions::default() })?;
            Ok((verdict(r.passed), to_value(&r)))
        }
    }
}

fn analyze(g: &WeightedGraph) -> Result<Value> {
    let simple = g.is_symmetric() && g.is_loopless();
    let mut v = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "symmetric": g.is_symmetric(),
        "loopless": g.is_loopless(),
        "strongly_connected": g.is_strongly_connected(),
        "directed_triangle": g.directed_triangle(),
        "uniform_weight": g.uniform_weight(),
        "regularity": g.regularity(),
        "automorphisms": Automorphisms::of(g).len(),
    });
    if simple {
        v["kite"] = to_value(&g.find_kite()?.map(|k| k.to_string()));
        v["triangles_per_edge"] = to_value(&g.triangles_per_edge()?);
        v["multipartite"] = to_value(&g.classify_multipartite()?);
    }
    Ok(v)
}

fn run_sft(config: &RunConfig) -> Result<(Status, Value)> {
    let path = config.input.as_ref().ok_or_else(|| Error::InvalidArgument("missing --sft".into()))?;
    let s = ShiftOfFiniteType::load(path)?;
    let g = sft::de_bruijn(&s);
    let lr = sft::check_lr(&s);
    let mut body = json!({
        "q": s.q(),
        "n": s.n(),
        "tuples": s.allowed().len(),
        "de_bruijn": { "vertices": g.vertex_count(), "edges": g.edge_count() },
        "lr": lr,
    });
    let mut ok = lr.is_constant;
    if config.max_n >= 2 {
        let c = check_property_c(&g, config.max_n)?;
        body["property_c"] = to_value(&c);
    }
    if let Some(window) = config.window {
        if lr.is_constant {
            body["samples"] = to_value(&sft::sample_sft(&s, window, config.seed, config.count)?);
        }
    }
    if config.certify {
        let cert = sft::not_finitely_dependent_certificate(&s);
        ok = cert.issued;
        body["certificate"] = to_value(&cert);
    }
    Ok((verdict(ok), body))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOptions {
    pub boundary: Boundary,
    pub sweep_len: usize,
    pub sweep_vertices: usize,
    pub seed: u64,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions { boundary: Boundary::One, sweep_len: 7, sweep_vertices: 4, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

pub fn verify_identities() -> Result<IdentityReport> {
    verify_identities_with(&IdentityOptions::default())
}

/// Symbolic `B~` against the closed forms for lengths 2 to 4, then the
/// three-way sweep of [`buildings::oracle_sweep`] on `K_q` and on a seeded
/// rational weight table, both on `sweep_vertices` vertices.
pub fn verify_identities_with(opts: &IdentityOptions) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    for n in 2..=4 {
        let got = buildings::b_tilde_symbolic_with(n, true, opts.boundary)?;
        let want = buildings::b_tilde_closed_form(n).expect("closed form exists");
        checks.push(IdentityCheck {
            name: format!("closed form of B~ at length {n}"),
            passed: got == want,
            detail: format!("recurrence {got}; closed form {want}"),
        });
    }
    let mut rng = process::rng_from_seed(opts.seed);
    let graphs = [
        ("complete graph".to_string(), WeightedGraph::complete(opts.sweep_vertices, crate::rational::int(1))?),
        (format!("random rational weights, seed {}", opts.seed), WeightedGraph::random_rational(opts.sweep_vertices, 4, 12, &mut rng)?),
    ];
    for (label, g) in graphs {
        let r = buildings::oracle_sweep(&g, opts.sweep_len)?;
        let detail = match &r.mismatch {
            None => format!("{} words agree", r.words_checked),
            Some(m) => format!("word {}: bruteforce {}, recurrence {}, factored {}", m.word, m.bruteforce, m.recurrence, m.factored),
        };
        checks.push(IdentityCheck { name: format!("B three ways on {label}, {} vertices", opts.sweep_vertices), passed: r.passed(), detail });
    }
    Ok(IdentityReport { passed: checks.iter().all(|c| c.passed), checks })
}

/// Flattens a JSON value into `path  value` lines.
pub fn render_pretty(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    rows.into_iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, rows)),
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, rows))
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn k3(dir: &tempfile::TempDir) -> PathBuf {
        write(dir, "k3.json", &WeightedGraph::complete(3, crate::rational::int(1)).unwrap().to_json())
    }

    #[test]
    fn check_c_on_k3() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig { input: Some(k3(&dir)), max_n: 5, ..RunConfig::new(Command::CheckC) };
        let out = run(&cfg);
        assert_eq!(out.status, Status::Success);
        assert_eq!(out.report["result"]["constants"][0], "4/1");
        assert_eq!(out.report["result"]["constants"][1], "5/1");
        assert_eq!(out.render(false), run(&cfg).render(false));
    }

    #[test]
    fn check_kdep_counterexample() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig { input: Some(k3(&dir)), k: 1, max_n: 1, max_m: 1, ..RunConfig::new(Command::CheckKdep) };
        let out = run(&cfg);
        assert_eq!(out.status.code(), 1);
        let ce = &out.report["result"]["counterexample"];
        assert_eq!((&ce["x"], &ce["y"]), (&json!([0]), &json!([1])));
        assert_eq!(ce["lhs"], "6/1");
        assert_eq!(ce["canonical_lhs"], "8/1");
    }

    #[test]
    fn usage_errors() {
        let dir = tempfile::tempdir().unwrap();
        let bad = write(&dir, "bad.json", "{\"vertices\": 3, \"weights\": [");
        let out = run(&RunConfig { input: Some(bad), ..RunConfig::new(Command::Analyze) });
        assert_eq!(out.status.code(), 2);
        assert!(out.report["result"]["error"].as_str().unwrap().contains("column"));
        let big = write(&dir, "k10.json", &WeightedGraph::complete(10, crate::rational::int(1)).unwrap().to_json());
        let out = run(&RunConfig { input: Some(big), window: Some(9), ..RunConfig::new(Command::Sample) });
        assert_eq!(out.status.code(), 2);
        assert!(out.report["result"]["error"].as_str().unwrap().contains("10000000"));
        assert_eq!(run(&RunConfig { threads: Some(0), ..RunConfig::new(Command::VerifyIdentities) }).status.code(), 2);
    }

    #[test]
    fn sft_certificate() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "c3.json", &ShiftOfFiniteType::proper_colorings(3).unwrap().to_json());
        let out = run(&RunConfig { input: Some(p), certify: true, window: Some(4), count: 10, ..RunConfig::new(Command::Sft) });
        assert_eq!(out.status, Status::Success);
        assert_eq!(out.report["result"]["lr"]["K"], 2);
        assert_eq!(out.report["result"]["certificate"]["issued"], true);
    }

    #[test]
    fn identities() {
        let quick = IdentityOptions { sweep_len: 4, ..IdentityOptions::default() };
        assert!(verify_identities_with(&quick).unwrap().passed);
        let broken = verify_identities_with(&IdentityOptions { boundary: Boundary::Zero, ..quick }).unwrap();
        assert!(!broken.passed);
        assert!(!broken.checks[0].passed);
    }

    #[test]
    fn cli_parsing() {
        let cli = Cli::try_parse_from(["insertion", "check-kdep", "--graph", "g.json", "--k", "2", "--threads", "1"]).unwrap();
        let c = RunConfig::from(cli);
        assert_eq!((c.command, c.k, c.threads), (Command::CheckKdep, 2, Some(1)));
        let cli = Cli::try_parse_from(["insertion", "sft", "--file", "s.json", "--certify"]).unwrap();
        assert!(RunConfig::from(cli).certify);
        assert!(Cli::try_parse_from(["insertion", "check-kdep", "--graph", "g.json"]).is_err());
    }

    #[test]
    fn pretty_listing() {
        let s = render_pretty(&json!({"a": {"b": 1, "c": [1, 2]}, "d": "x"}));
        assert_eq!(s, "a.b  1\na.c  [1,2]\nd    x\n");
    }
}

//! Command-line interface.
//!
//! Subcommands: `limits`, `rde`, `gen`, `solve`, `simulate`, `ks`, `pairs`.
//! Every stochastic subcommand requires `--seed`; identical invocations
//! produce byte-identical stdout. A `key = value` config file can supply
//! any long flag's value via `--config`; explicit flags win.
//!
//! Exit codes: 0 success, 2 configuration error, 3 budget exhaustion.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::harness::{
    self, karp_sipser_experiment, limit_discrepancies, limits_table, pair_decorrelation,
    parse_objective, ExperimentConfig, HarnessError, Model, ReportRow, SolveMethod,
};
use crate::rde::{
    bracket_iterate, limit_from_pool, uniqueness_verdict, Objective, OperatorSpec, Quantity,
    RdeStream, Verdict,
};
use crate::solvers;
use crate::weights::WeightSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "sparselim",
    about = "Limits of maximum-weight independent sets and matchings in sparse random graphs",
    version
)]
struct Cli {
    /// key = value file supplying defaults for any long flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// rayon worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of scalar fixed points and closed-form limits
    Limits(LimitsArgs),
    /// Iterate a distributional operator to its fixed-point bracket
    Rde(RdeArgs),
    /// Generate a random graph and write it as an edge list
    Gen(GenArgs),
    /// Solve one instance from an edge-list file
    Solve(SolveArgs),
    /// Monte Carlo estimation on sampled graphs, with theory comparison
    Simulate(SimulateArgs),
    /// Karp-Sipser leaf removal with the remainder solved exactly
    Ks(KsArgs),
    /// Pairwise membership decorrelation of the optimum
    Pairs(PairsArgs),
}

#[derive(Args)]
struct LimitsArgs {
    /// print every supported row
    #[arg(long)]
    all: bool,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct RdeArgs {
    /// ind or match
    #[arg(long)]
    objective: Option<String>,
    /// regular:R or poisson:C
    #[arg(long)]
    model: Option<String>,
    /// exp, bernoulli:Z, one, point:V
    #[arg(long)]
    weight: Option<String>,
    /// particles per pool
    #[arg(long)]
    pool: Option<usize>,
    /// even bracket steps (two operator applications each)
    #[arg(long)]
    steps: Option<usize>,
    /// Kolmogorov tolerance for the uniqueness verdict
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo samples for the limit functionals
    #[arg(long)]
    mc_samples: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    /// regular:R, poisson:C, or cycle
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// weight law for the chosen target
    #[arg(long)]
    weight: Option<String>,
    /// nodes or edges
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// output path; node weights go to `<out>.nodes`
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// edge-list file (node weights read from `<input>.nodes` if present)
    #[arg(long)]
    input: Option<PathBuf>,
    /// ind or match
    #[arg(long)]
    objective: Option<String>,
    /// auto, brute, bnb, dp, or ks
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    objective: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KsArgs {
    /// mean degree of G(n, c/n)
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct PairsArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    objective: Option<String>,
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// number of sampled graphs
    #[arg(long)]
    graphs: Option<usize>,
    /// node pairs sampled per graph
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

/// `key = value` lines; `#` starts a comment.
fn read_config(path: &PathBuf) -> Result<HashMap<String, String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path:?}:{}: expected key = value", lineno + 1))?;
        map.insert(k.trim().to_owned(), v.trim().to_owned());
    }
    Ok(map)
}

struct Settings {
    config: HashMap<String, String>,
}

impl Settings {
    /// Flag value, falling back to the config file, then to `default`.
    fn get<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: Option<T>,
    ) -> Result<T, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(raw) = self.config.get(key) {
            return raw.parse().map_err(|_| format!("config key {key} has bad value {raw:?}"));
        }
        default.ok_or_else(|| format!("missing required --{key}"))
    }

    fn optional<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
    ) -> Result<Option<T>, String> {
        if let Some(v) = flag {
            return Ok(Some(v));
        }
        match self.config.get(key) {
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key} has bad value {raw:?}")),
            None => Ok(None),
        }
    }
}

fn exit_code_for(err: &HarnessError) -> i32 {
    match err {
        HarnessError::Budget(_) => EXIT_BUDGET,
        _ => EXIT_CONFIG,
    }
}

/// Parses `argv` and runs the requested subcommand, returning the process
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the same path
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // ignore failure: the global pool may already exist in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let config = match cli.config.as_ref().map(read_config).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let settings = Settings { config };
    let out = std::io::stdout();
    let result = match cli.command {
        Command::Limits(args) => cmd_limits(args, &settings, out.lock()),
        Command::Rde(args) => cmd_rde(args, &settings, out.lock()),
        Command::Gen(args) => cmd_gen(args, &settings),
        Command::Solve(args) => cmd_solve(args, &settings, out.lock()),
        Command::Simulate(args) => cmd_simulate(args, &settings, out.lock()),
        Command::Ks(args) => cmd_ks(args, &settings, out.lock()),
        Command::Pairs(args) => cmd_pairs(args, &settings, out.lock()),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG
        }
    }
}

fn cmd_limits(
    args: LimitsArgs,
    settings: &Settings,
    mut out: impl std::io::Write,
) -> Result<i32, String> {
    let format: String = settings.get(args.format, "format", Some("csv".to_owned()))?;
    let rows = limits_table();
    match format.as_str() {
        "csv" => {
            writeln!(out, "{}", harness::LimitsRow::CSV_HEADER).map_err(|e| e.to_string())?;
            for row in &rows {
                writeln!(out, "{}", row.to_csv()).map_err(|e| e.to_string())?;
            }
            for note in limit_discrepancies() {
                writeln!(out, "# discrepancy: {note}").map_err(|e| e.to_string())?;
            }
        }
        "json" => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row).unwrap())
                    .map_err(|e| e.to_string())?;
            }
            let notes = serde_json::json!({ "discrepancies": limit_discrepancies() });
            writeln!(out, "{notes}").map_err(|e| e.to_string())?;
        }
        other => return Err(format!("format must be csv or json, got {other:?}")),
    }
    Ok(EXIT_OK)
}

fn cmd_rde(args: RdeArgs, settings: &Settings, mut out: impl std::io::Write) -> Result<i32, String> {
    let objective = parse_objective(&settings.get(
        args.objective,
        "objective",
        Some("ind".to_owned()),
    )?)
    .map_err(|e| e.to_string())?;
    let model = Model::parse(&settings.get::<String>(args.model, "model", None)?)
        .map_err(|e| e.to_string())?;
    let weight = WeightSpec::parse(&settings.get(args.weight, "weight", Some("exp".to_owned()))?)
        .map_err(|e| e.to_string())?;
    let pool: usize = settings.get(args.pool, "pool", Some(100_000))?;
    let steps: usize = settings.get(args.steps, "steps", Some(30))?;
    let tol: f64 = settings.get(args.tol, "tol", Some(0.02))?;
    let seed: u64 = settings.get(args.seed, "seed", None)?;
    let mc_samples: usize = settings.get(args.mc_samples, "mc_samples", Some(1_000_000))?;

    let (op, root) = match model {
        Model::Regular(r) => {
            if r < 1 {
                return Err("regular model needs r >= 1".into());
            }
            OperatorSpec::regular(objective, r, weight)
        }
        Model::Poisson(c) => OperatorSpec::poisson(objective, c, weight)
            .map_err(|e| e.to_string())?,
        Model::Cycle => OperatorSpec::regular(objective, 2, weight),
    };
    let mut stream = RdeStream::new(seed);
    let bracket = bracket_iterate(&op, steps, pool, &mut stream);
    let verdict = uniqueness_verdict(&bracket, tol).map_err(|e| e.to_string())?;
    let record = match &verdict {
        Verdict::Unique(fixed_point) => {
            let w = limit_from_pool(
                &op,
                fixed_point,
                root,
                Quantity::WeightPerNode,
                mc_samples,
                &mut stream,
            );
            let card = limit_from_pool(
                &op,
                fixed_point,
                root,
                Quantity::CardinalityPerNode,
                mc_samples,
                &mut stream,
            );
            serde_json::json!({
                "verdict": verdict.label(),
                "gap": bracket.gap,
                "atom_at_zero": fixed_point.atom_at_zero(),
                "limit_weight": w.value,
                "limit_cardinality": card.value,
                "stderr": w.stderr,
            })
        }
        _ => serde_json::json!({
            "verdict": verdict.label(),
            "gap": bracket.gap,
            "atom_at_zero": serde_json::Value::Null,
            "limit_weight": serde_json::Value::Null,
            "limit_cardinality": serde_json::Value::Null,
            "stderr": serde_json::Value::Null,
        }),
    };
    writeln!(out, "{record}").map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn cmd_gen(args: GenArgs, settings: &Settings) -> Result<i32, String> {
    let model = Model::parse(&settings.get::<String>(args.model, "model", None)?)
        .map_err(|e| e.to_string())?;
    let n: usize = settings.get(args.n, "n", None)?;
    let seed: u64 = settings.get(args.seed, "seed", None)?;
    let target: String = settings.get(args.target, "target", Some("nodes".to_owned()))?;
    let weight = settings
        .optional::<String>(args.weight, "weight")?
        .map(|w| WeightSpec::parse(&w))
        .transpose()
        .map_err(|e| e.to_string())?;
    let out_path: PathBuf = settings.get(args.out, "out", None)?;

    let mut g = match model {
        Model::Regular(r) => crate::graphs::WeightedGraph::gen_regular(n, r, seed),
        Model::Poisson(c) => crate::graphs::WeightedGraph::gen_gnp(n, c, seed),
        Model::Cycle => crate::graphs::WeightedGraph::gen_cycle(n),
    }
    .map_err(|e| e.to_string())?;
    if let Some(spec) = weight {
        let t = match target.as_str() {
            "nodes" => crate::graphs::WeightTarget::Nodes,
            "edges" => crate::graphs::WeightTarget::Edges,
            other => return Err(format!("target must be nodes or edges, got {other:?}")),
        };
        g.assign_weights(spec, t, seed);
    }
    let f = fs::File::create(&out_path).map_err(|e| e.to_string())?;
    g.write_edge_list(std::io::BufWriter::new(f)).map_err(|e| e.to_string())?;
    if g.node_weights.is_some() {
        let nodes_path = out_path.with_extension(
            out_path
                .extension()
                .map(|e| format!("{}.nodes", e.to_string_lossy()))
                .unwrap_or_else(|| "nodes".to_owned()),
        );
        let f = fs::File::create(&nodes_path).map_err(|e| e.to_string())?;
        g.write_node_weights(std::io::BufWriter::new(f)).map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn cmd_solve(
    args: SolveArgs,
    settings: &Settings,
    mut out: impl std::io::Write,
) -> Result<i32, String> {
    let input: PathBuf = settings.get(args.input, "input", None)?;
    let objective = parse_objective(&settings.get::<String>(args.objective, "objective", None)?)
        .map_err(|e| e.to_string())?;
    let method = SolveMethod::parse(&settings.get(
        args.method,
        "method",
        Some("auto".to_owned()),
    )?)
    .map_err(|e| e.to_string())?;

    let f = fs::File::open(&input).map_err(|e| format!("cannot open {input:?}: {e}"))?;
    let mut g = crate::graphs::WeightedGraph::read_edge_list(std::io::BufReader::new(f))
        .map_err(|e| e.to_string())?;
    let nodes_path = input.with_extension(
        input
            .extension()
            .map(|e| format!("{}.nodes", e.to_string_lossy()))
            .unwrap_or_else(|| "nodes".to_owned()),
    );
    if nodes_path.exists() {
        let f = fs::File::open(&nodes_path).map_err(|e| e.to_string())?;
        g.read_node_weights(std::io::BufReader::new(f)).map_err(|e| e.to_string())?;
    }

    let started = std::time::Instant::now();
    let result = match (method, objective) {
        (SolveMethod::Brute, Objective::IndependentSet) => solvers::brute::mwis_bruteforce(&g),
        (SolveMethod::Brute, Objective::Matching) => solvers::brute::mwm_bruteforce(&g),
        (SolveMethod::Bnb, Objective::IndependentSet) => solvers::bnb::mwis_bnb(&g),
        (SolveMethod::Bnb, Objective::Matching) => {
            return Err("branch-and-bound solves independent sets only".into())
        }
        (SolveMethod::Dp, Objective::IndependentSet) => {
            solvers::treedp::mwis_forest_unicyclic(&g)
        }
        (SolveMethod::Dp, Objective::Matching) => solvers::treedp::mwm_forest_unicyclic(&g),
        (SolveMethod::Ks, _) => {
            let ks = solvers::karp_sipser::karp_sipser(&g);
            let rest = solvers::solve_sparse_exact(&ks.remainder, Objective::Matching)
                .map_err(|e| e.to_string())?;
            let total = ks.matching.len() + rest.cardinality();
            let record = serde_json::json!({
                "value": total as f64,
                "cardinality": total,
                "exact": true,
                "seconds": started.elapsed().as_secs_f64(),
            });
            writeln!(out, "{record}").map_err(|e| e.to_string())?;
            return Ok(EXIT_OK);
        }
        (SolveMethod::Auto, _) => solvers::solve_sparse_exact(&g, objective)
            .or_else(|_| match objective {
                Objective::IndependentSet => solvers::bnb::mwis_bnb(&g),
                Objective::Matching => solvers::brute::mwm_bruteforce(&g),
            }),
    }
    .map_err(|e| e.to_string())?;
    let record = serde_json::json!({
        "value": result.value,
        "cardinality": result.cardinality(),
        "exact": result.exact,
        "seconds": started.elapsed().as_secs_f64(),
    });
    writeln!(out, "{record}").map_err(|e| e.to_string())?;
    Ok(if result.exact { EXIT_OK } else { EXIT_BUDGET })
}

fn cmd_simulate(
    args: SimulateArgs,
    settings: &Settings,
    mut out: impl std::io::Write,
) -> Result<i32, String> {
    let cfg = ExperimentConfig {
        model: Model::parse(&settings.get::<String>(args.model, "model", None)?)
            .map_err(|e| e.to_string())?,
        objective: parse_objective(&settings.get::<String>(args.objective, "objective", None)?)
            .map_err(|e| e.to_string())?,
        weight: WeightSpec::parse(&settings.get(
            args.weight,
            "weight",
            Some("exp".to_owned()),
        )?)
        .map_err(|e| e.to_string())?,
        n: settings.get(args.n, "n", None)?,
        trials: settings.get(args.trials, "trials", Some(10))?,
        method: SolveMethod::parse(&settings.get(
            args.method,
            "method",
            Some("auto".to_owned()),
        )?)
        .map_err(|e| e.to_string())?,
        seed: settings.get(args.seed, "seed", None)?,
        out: settings.optional(args.out, "out")?,
    };
    let format: String = settings.get(args.format, "format", Some("csv".to_owned()))?;
    match harness::run_experiment(&cfg) {
        Ok(row) => {
            let text = match format.as_str() {
                "csv" => format!("{}\n{}\n", ReportRow::CSV_HEADER, row.to_csv()),
                "json" => format!("{}\n", serde_json::to_string(&row).unwrap()),
                other => return Err(format!("format must be csv or json, got {other:?}")),
            };
            match &cfg.out {
                Some(path) => fs::write(path, text).map_err(|e| e.to_string())?,
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string())?,
            }
            eprintln!("# runtime: {:.3}s", row.runtime_secs);
            Ok(if row.exact { EXIT_OK } else { EXIT_BUDGET })
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(exit_code_for(&e))
        }
    }
}

fn cmd_ks(args: KsArgs, settings: &Settings, mut out: impl std::io::Write) -> Result<i32, String> {
    let c: f64 = settings.get(args.c, "c", None)?;
    let n: usize = settings.get(args.n, "n", None)?;
    let trials: usize = settings.get(args.trials, "trials", Some(10))?;
    let seed: u64 = settings.get(args.seed, "seed", None)?;
    match karp_sipser_experiment(c, n, trials, seed) {
        Ok(report) => {
            writeln!(out, "{}", serde_json::to_string(&report).unwrap())
                .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(exit_code_for(&e))
        }
    }
}

fn cmd_pairs(
    args: PairsArgs,
    settings: &Settings,
    mut out: impl std::io::Write,
) -> Result<i32, String> {
    let cfg = ExperimentConfig {
        model: Model::parse(&settings.get::<String>(args.model, "model", None)?)
            .map_err(|e| e.to_string())?,
        objective: parse_objective(&settings.get(
            args.objective,
            "objective",
            Some("ind".to_owned()),
        )?)
        .map_err(|e| e.to_string())?,
        weight: WeightSpec::parse(&settings.get(
            args.weight,
            "weight",
            Some("exp".to_owned()),
        )?)
        .map_err(|e| e.to_string())?,
        n: settings.get(args.n, "n", None)?,
        trials: settings.get(args.graphs, "graphs", Some(500))?,
        method: SolveMethod::Auto,
        seed: settings.get(args.seed, "seed", None)?,
        out: None,
    };
    let mut cfg = cfg;
    if matches!(cfg.model, Model::Regular(r) if r >= 3) {
        cfg.method = SolveMethod::Bnb;
    }
    let pairs: usize = settings.get(args.pairs, "pairs", Some(10))?;
    match pair_decorrelation(&cfg, pairs) {
        Ok(report) => {
            writeln!(out, "{}", serde_json::to_string(&report).unwrap())
                .map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(exit_code_for(&e))
        }
    }
}

//! Command-line front end. Every artifact carries `format_version` and the
//! config (including seed) that produced it.
//!
//! Exit codes: 0 success (verdicts are data), 1 i/o failure, 2 bad
//! configuration, 3 solver budget exceeded.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{annular_graph, annular_report, find_witness, necklace_params};
use crate::ensembles::{
    certificate_s, dagger_sampled_falsifier, dagger_tiling_check, parse_config, sample_uniform, sweep,
    write_sweep_csv, EnsembleSpec, Measurement, RadiusSpec, Regime, RegimeConstants,
};
use crate::geograph::io::{read_graph_json, read_points_csv, write_graph_json, write_points_csv, GraphFile, FORMAT_VERSION};
use crate::geograph::{build_graph, GeometricGraph, Graph, PointSet};
use crate::geometry::Point2;
use crate::solver::{
    center_order_dismantle, center_pitfall_check, cop_number_with_budget, dismantle, solve_game_with_budget,
    CopNumber, SolveError, DEFAULT_STATE_BUDGET,
};
use crate::strategies::{
    run_game, CopPolicy, Greedy, NineCop, PatrolCops, RandomWalk, RobberPolicy, SolverCop, SolverRobber,
    StrategyConstants, TwoCop,
};

#[derive(Debug, Parser)]
#[command(name = "geocop", version, about = "Cops and robbers on geometric graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample n uniform points into a point CSV.
    Generate(GenerateArgs),
    /// Build the geometric graph of a point CSV.
    Graph(GraphArgs),
    /// Exact cop number up to --kmax.
    Copnumber(CopnumberArgs),
    /// Greedy pitfall dismantling.
    Dismantle(InputArgs),
    /// Center condition and ordered dismantling towards a center.
    CenterDismantle(CenterArgs),
    /// Play a cop policy against a robber policy and write the trace.
    Simulate(SimulateArgs),
    /// Tiling certificate and sampled falsifier for the density condition.
    Dagger(DaggerArgs),
    /// Search for a necklace witness.
    Witness(WitnessArgs),
    /// The 1440-vertex annular construction and its metrics.
    Annular(AnnularArgs),
    /// Monte Carlo sweep to CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct GraphArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct InputArgs {
    /// Graph JSON, or point CSV together with --r.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CopnumberArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value_t = 3)]
    pub kmax: usize,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CenterArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value_t = 0.5)]
    pub cx: f64,
    #[arg(long, default_value_t = 0.5)]
    pub cy: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value = "two_cop", value_parser = ["solver", "two_cop", "patrol", "nine_cop"])]
    pub cop_policy: String,
    #[arg(long, default_value = "greedy", value_parser = ["random", "greedy", "solver"])]
    pub robber_policy: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Round limit; defaults to 10·1000/r for two_cop and 10000 otherwise.
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Cop count for the solver policies.
    #[arg(long, default_value_t = 1)]
    pub kmax: usize,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    pub budget: u64,
    /// Target slack of the two-cop policy; defaults to the tiling bound.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub eps7: Option<f64>,
    #[arg(long)]
    pub eps9: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct DaggerArgs {
    /// Point CSV or geometric graph JSON; otherwise --n points are sampled.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: f64,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct WitnessArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct AnnularArgs {
    /// Also write the graph JSON here.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Config file of `key = value` lines; flags are ignored when given.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<f64>,
    #[arg(long)]
    pub regime: Option<String>,
    #[arg(long = "K")]
    pub k: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "copwin_rate")]
    pub measurement: String,
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Budget(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

fn solve_err(e: SolveError) -> CliError {
    match e {
        SolveError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => config_err(other),
    }
}

fn config_of(command: &str, args: &impl Serialize) -> Value {
    let mut v = serde_json::to_value(args).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), json!(command));
    }
    v
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(|e| io_err(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to `out` when there is none.
fn emit(path: Option<&Path>, out: &mut dyn Write, body: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| io_err(format!("{}: {e}", p.display()))),
        None => out.write_all(body).map_err(io_err),
    }
}

fn emit_json(path: Option<&Path>, out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    let mut body = serde_json::to_vec_pretty(v).map_err(io_err)?;
    body.push(b'\n');
    emit(path, out, &body)
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

struct Loaded {
    graph: Graph,
    geo: Option<GeometricGraph>,
}

impl Loaded {
    fn geometric(&self, what: &str) -> Result<&GeometricGraph, CliError> {
        self.geo.as_ref().ok_or_else(|| config_err(format!("{what} needs a geometric graph (points and radius)")))
    }
}

fn load_points(path: &Path) -> Result<PointSet, CliError> {
    if is_json(path) {
        let f = read_graph_json(open(path)?).map_err(config_err)?;
        let pts = f.points.ok_or_else(|| config_err("graph file has no points"))?;
        Ok(PointSet::new(pts.iter().map(|p| Point2::new(p[0], p[1])).collect()))
    } else {
        read_points_csv(open(path)?).map_err(config_err)
    }
}

fn load_graph(path: &Path, r: Option<f64>) -> Result<Loaded, CliError> {
    if is_json(path) {
        let f = read_graph_json(open(path)?).map_err(config_err)?;
        let geo = f.to_geometric().map_err(config_err)?;
        let graph = f.to_graph().map_err(config_err)?;
        return Ok(Loaded { graph, geo });
    }
    let r = r.ok_or_else(|| config_err("point CSV input needs --r"))?;
    let g = build_graph(read_points_csv(open(path)?).map_err(config_err)?, r).map_err(config_err)?;
    Ok(Loaded { graph: g.graph().clone(), geo: Some(g) })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(a) => {
            let ps = sample_uniform(a.n, a.seed);
            let comments = vec!["command = generate".into(), format!("n = {}", a.n), format!("seed = {}", a.seed)];
            let mut body = Vec::new();
            write_points_csv(&mut body, &ps, &comments).map_err(io_err)?;
            emit(a.output.as_deref(), out, &body)
        }
        Command::Graph(a) => {
            let ps = read_points_csv(open(&a.input)?).map_err(config_err)?;
            let g = build_graph(ps, a.r).map_err(config_err)?;
            let file = GraphFile::from_geometric(&g).with_config(config_of("graph", &a));
            let mut body = Vec::new();
            write_graph_json(&mut body, &file).map_err(io_err)?;
            body.push(b'\n');
            emit(a.output.as_deref(), out, &body)
        }
        Command::Copnumber(a) => {
            let l = load_graph(&a.io.input, a.io.r)?;
            let c = cop_number_with_budget(&l.graph, a.kmax, a.budget).map_err(solve_err)?;
            let value = match c {
                CopNumber::Exactly(k) => json!(k),
                CopNumber::Exceeds(_) => json!(c.to_string()),
            };
            let v = json!({"format_version": FORMAT_VERSION, "config": config_of("copnumber", &a), "cop_number": value});
            emit_json(a.io.output.as_deref(), out, &v)
        }
        Command::Dismantle(a) => {
            let l = load_graph(&a.input, a.r)?;
            let res = dismantle(&l.graph);
            let v = json!({
                "format_version": FORMAT_VERSION,
                "config": config_of("dismantle", &a),
                "verdict": if res.copwin { "cop-win" } else { "robber-win" },
                "result": res,
            });
            emit_json(a.output.as_deref(), out, &v)
        }
        Command::CenterDismantle(a) => {
            let l = load_graph(&a.io.input, a.io.r)?;
            let g = l.geometric("center-dismantle")?;
            let c = Point2::new(a.cx, a.cy);
            let v = json!({
                "format_version": FORMAT_VERSION,
                "config": config_of("center-dismantle", &a),
                "check": center_pitfall_check(g, c),
                "result": center_order_dismantle(g, c),
            });
            emit_json(a.io.output.as_deref(), out, &v)
        }
        Command::Simulate(a) => simulate(a, out),
        Command::Dagger(a) => {
            let ps = match (&a.input, a.n) {
                (Some(p), _) => load_points(p)?,
                (None, Some(n)) => sample_uniform(n, a.seed),
                (None, None) => return Err(config_err("dagger needs --input or --n")),
            };
            if !(a.r > 0.0) {
                return Err(config_err("--r must be positive"));
            }
            let s = a.s.unwrap_or_else(|| certificate_s(ps.len()));
            let tiling = dagger_tiling_check(&ps, a.r, s);
            let cx = dagger_sampled_falsifier(&ps, a.r, s, a.trials.max(1), a.seed);
            let v = json!({
                "format_version": FORMAT_VERSION,
                "config": config_of("dagger", &a),
                "s": s,
                "tiling": tiling,
                "falsifier": cx.map(|(x, y)| json!({"x": x, "y": y})),
            });
            emit_json(a.output.as_deref(), out, &v)
        }
        Command::Witness(a) => {
            let g = match (&a.input, a.n, a.r) {
                (Some(p), _, r) => {
                    let l = load_graph(p, r)?;
                    l.geometric("witness")?.clone()
                }
                (None, Some(n), Some(r)) => build_graph(sample_uniform(n, a.seed), r).map_err(config_err)?,
                _ => return Err(config_err("witness needs --input, or --n with --r")),
            };
            let params = necklace_params(g.n().max(1), g.radius).ok();
            let w = find_witness(&g).map_err(config_err)?;
            let v = json!({
                "format_version": FORMAT_VERSION,
                "config": config_of("witness", &a),
                "params": params,
                "witness": w,
            });
            emit_json(a.output.as_deref(), out, &v)
        }
        Command::Annular(a) => {
            let g = annular_graph().map_err(io_err)?;
            let rep = annular_report(&g);
            if let Some(p) = &a.output {
                let file = GraphFile::from_geometric(&g).with_config(config_of("annular", &a));
                let f = File::create(p).map_err(|e| io_err(format!("{}: {e}", p.display())))?;
                write_graph_json(f, &file).map_err(io_err)?;
            }
            let v = json!({
                "format_version": FORMAT_VERSION,
                "config": config_of("annular", &a),
                "n": rep.n,
                "edges": rep.edges,
                "min_degree": rep.metrics.min_degree,
                "girth": rep.metrics.girth,
                "diameter": rep.metrics.diameter,
                "lower_bound": rep.lower_bound,
                "outer_edge": rep.outer_edge,
                "inner_edge": rep.inner_edge,
                "verdict": if rep.copwin { "cop-win" } else { "robber-win" },
            });
            emit_json(None, out, &v)
        }
        Command::Sweep(a) => {
            let spec = sweep_spec(&a)?;
            let rows = sweep(&spec);
            let mut body = Vec::new();
            write_sweep_csv(&mut body, &spec, &rows).map_err(io_err)?;
            emit(a.output.as_deref(), out, &body)
        }
    }
}

fn sweep_spec(a: &SweepArgs) -> Result<EnsembleSpec, CliError> {
    if let Some(p) = &a.input {
        let text = std::fs::read_to_string(p).map_err(|e| io_err(format!("{}: {e}", p.display())))?;
        return parse_config(&text).map_err(config_err);
    }
    let measurement: Measurement = a.measurement.parse().map_err(config_err)?;
    let mut constants = RegimeConstants::default();
    let radius = match (&a.regime, a.r.is_empty()) {
        (Some(reg), true) => {
            let reg: Regime = reg.parse().map_err(config_err)?;
            if let Some(k) = a.k {
                constants = constants.with(reg, k);
            }
            RadiusSpec::Regime(reg)
        }
        (None, false) => RadiusSpec::Fixed(a.r.clone()),
        (Some(_), false) => return Err(config_err("give either --r or --regime, not both")),
        (None, true) => return Err(config_err("sweep needs --r or --regime")),
    };
    let spec = EnsembleSpec { n_list: a.n.clone(), radius, trials: a.trials, seed: a.seed, measurement, constants, budget: a.budget };
    spec.validate().map_err(config_err)?;
    Ok(spec)
}

/// Path between the two ends of a double sweep inside the component of
/// vertex 0.
fn long_path(g: &Graph) -> Vec<usize> {
    let far = |src: usize| {
        let d = g.bfs_distances(src);
        (0..g.n()).filter(|&v| d[v] != u32::MAX).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap_or(src)
    };
    let a = far(0);
    let b = far(a);
    g.shortest_path(a, b).unwrap_or_else(|| vec![a])
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let l = load_graph(&a.io.input, a.io.r)?;
    if l.graph.n() == 0 {
        return Err(config_err("empty graph"));
    }
    let g = &l.graph;
    let solve = |k: usize| solve_game_with_budget(g, k, a.budget).map_err(solve_err);
    let k = match a.cop_policy.as_str() {
        "solver" => a.kmax,
        "two_cop" => 2,
        "patrol" => 3,
        _ => 9,
    };
    let cop_table = if a.cop_policy == "solver" { Some(solve(k)?) } else { None };
    let robber_table = if a.robber_policy == "solver" && cop_table.is_none() { Some(solve(k)?) } else { None };

    let mut horizon = a.horizon.unwrap_or(10_000);
    let mut cop: Box<dyn CopPolicy + '_> = match a.cop_policy.as_str() {
        "two_cop" => {
            let geo = l.geometric("two_cop")?;
            let mut c = StrategyConstants::relaxed(geo.radius, a.s.unwrap_or_else(|| certificate_s(geo.n())));
            if let Some(e) = a.eps7 {
                c.eps7 = e;
            }
            if let Some(e) = a.eps9 {
                c.eps9 = e;
            }
            c.validate(geo.radius).map_err(config_err)?;
            if a.horizon.is_none() {
                horizon = 10 * c.horizon(geo.radius);
            }
            Box::new(TwoCop::new(geo, c))
        }
        "patrol" => {
            let path = long_path(g);
            let start = path[0];
            Box::new(PatrolCops::new(g, path, start))
        }
        "nine_cop" => Box::new(NineCop::new(l.geometric("nine_cop")?)),
        _ => Box::new(SolverCop::new(cop_table.as_ref().expect("solved above"))),
    };
    let mut robber: Box<dyn RobberPolicy + '_> = match a.robber_policy.as_str() {
        "random" => Box::new(RandomWalk::new(g)),
        "greedy" => Box::new(Greedy::new(g)),
        _ => Box::new(SolverRobber::new(robber_table.as_ref().or(cop_table.as_ref()).expect("solved above"))),
    };
    let mut trace = run_game(g, cop.as_mut(), robber.as_mut(), horizon, a.seed).map_err(|e| io_err(e.to_string()))?;
    trace.config = config_of("simulate", &a);
    let mut body = Vec::new();
    trace.write_jsonl(&mut body).map_err(io_err)?;
    emit(a.io.output.as_deref(), out, &body)?;
    if a.io.output.is_some() {
        let v = json!({"format_version": FORMAT_VERSION, "outcome": trace.outcome});
        emit_json(None, out, &v)?;
    }
    Ok(())
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

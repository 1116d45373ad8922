//! `pustat`: command-line access to subpartition enumeration, exact
//! moments, tail bounds, application presets and the simulation harness.
//!
//! Exit codes: 0 on success, 2 when a theorem precondition is not met (the
//! payload names the reason), 1 on any other error or a failed verification.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{envelope, opt, print_csv, print_json, write_csv, Format};
use pustat::applications::{
    self as apps, GraphFunctionalSpec, HyperbolicMethod, SmallGraph, SpaceSpec, WindowSpec,
};
use pustat::bounds::{self, BoundResult, Tail};
use pustat::combinat;
use pustat::experiments::{self, Scenario, TailEstimate, VerifyRow};
use pustat::model::{A4Params, ConstantKernel, UStatModel};
use pustat::moments::{self, MomentRegime};

#[derive(Parser, Debug)]
#[command(name = "pustat", version, about = "Concentration bounds and simulation for Poisson U-statistics")]
struct Cli {
    /// Overrides the seed of a scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Caps the number of worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the subpartitions indexing the centred-moment formula.
    Enumerate(EnumerateArgs),
    /// Exact centred moments, moment bounds and Poisson moments.
    Moments(MomentsArgs),
    /// Evaluate one tail bound.
    Bound(BoundArgs),
    /// Assumption parameters for a geometric application.
    Preset(PresetArgs),
    /// Simulate a scenario and estimate its tails.
    Simulate(SimulateArgs),
    /// Simulate a scenario and check its bounds.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    ell: usize,
    /// Keep only subpartitions with this completed size.
    #[arg(long)]
    k: Option<usize>,
    /// Print counts per `k` instead of listing.
    #[arg(long)]
    histogram: bool,
    /// Largest `m·ℓ` accepted for listing.
    #[arg(long, default_value_t = combinat::STREAM_CAP)]
    cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MomentKind {
    /// Exact centred moment of a constant kernel, by both routes.
    Exact,
    /// Exact variance of a constant kernel.
    Variance,
    /// Upper bound from the model's (A1) parameters.
    Upper,
    /// Raw Poisson moment and its upper bound.
    Poisson,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum RegimeArg {
    General,
    HighIntensity,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[arg(long, value_enum)]
    kind: MomentKind,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Constant kernel value.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Total mass of the constant-kernel space.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "general")]
    regime: RegimeArg,
    /// Move the `β0` prefactor into the base.
    #[arg(long)]
    absorbed: bool,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum BoundMethod {
    Main,
    Unified,
    Bp,
    BpSharp,
    Wu,
    Cc,
    CcA1,
    Clt,
    Largeorder,
    LargeorderLower,
    PoissonUpper,
    PoissonLower,
    HypWu,
    HypA1,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TailArg {
    Two,
    Upper,
    Lower,
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Two => Tail::Two,
            TailArg::Upper => Tail::Upper,
            TailArg::Lower => Tail::Lower,
        }
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long, value_enum)]
    method: BoundMethod,
    /// Model JSON file.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Deviation `t` (or `s` for the normalised bound).
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, value_enum, default_value = "two")]
    tail: TailArg,
    /// Constant of the variance lower bound; defaults to `γβ1`.
    #[arg(long)]
    c47: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    c43: f64,
    /// Use the non-centred large-order statement.
    #[arg(long)]
    non_centred: bool,
    #[arg(long)]
    theta1: Option<f64>,
    #[arg(long)]
    theta2: Option<f64>,
    /// `‖f‖_{L¹}` for the anti-concentration bound.
    #[arg(long)]
    f_l1: Option<f64>,
    /// Variance, overriding the model's.
    #[arg(long)]
    variance: Option<f64>,
    /// Comma-separated `‖f_k‖²`, `k = 1..m`.
    #[arg(long, value_delimiter = ',')]
    fk_norms: Vec<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    /// Dimension of the hyperbolic space.
    #[arg(long)]
    d: Option<usize>,
    /// Radius of the hyperbolic ball.
    #[arg(long)]
    r: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum App {
    Subgraph,
    Poweredge,
    EuclHyperplane,
    HypHyperplane,
    FixedDegree,
}

#[derive(Args, Debug)]
struct PresetArgs {
    #[arg(long, value_enum)]
    app: App,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    kappa: f64,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Ball window radius.
    #[arg(long)]
    window_radius: Option<f64>,
    /// Volume of a general window (with `--inradius`).
    #[arg(long)]
    window_volume: Option<f64>,
    #[arg(long)]
    inradius: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    #[arg(long, default_value = "edge")]
    h: String,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Asserts the window has no antipodal points (positive curvature).
    #[arg(long)]
    no_antipodal: bool,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    i: usize,
    /// Intrinsic volumes `V_0..V_d` of the window.
    #[arg(long, value_delimiter = ',')]
    nu: Vec<f64>,
    /// Side lengths of a box window.
    #[arg(long = "box", value_delimiter = ',')]
    box_sides: Vec<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Writes the model JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    replications: Option<usize>,
    /// Writes point samples of the first replicates as CSV.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    dump_count: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    replications: Option<usize>,
    /// Writes the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Writes the CSV table here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also compares simulated centred moments of these orders.
    #[arg(long, value_delimiter = ',')]
    moments: Vec<usize>,
}

/// Outcome of a command: payload plus exit status.
struct Outcome {
    command: &'static str,
    status: Status,
    json: Value,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    NotApplicable,
    Failed,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotApplicable => "not-applicable",
            Status::Failed => "failed",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotApplicable => 2,
            Status::Failed => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(out) => match emit(&out, cli.format) {
            Ok(()) => ExitCode::from(out.status.code()),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => match e.downcast_ref::<pustat::Error>() {
            Some(pe) if pe.is_precondition() => {
                let v = json!({
                    "version": pustat::VERSION,
                    "command": name,
                    "status": Status::NotApplicable.label(),
                    "reasons": [pe.to_string()],
                });
                let _ = print_json(&v);
                ExitCode::from(2)
            }
            _ => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate(_) => "enumerate",
        Command::Moments(_) => "moments",
        Command::Bound(_) => "bound",
        Command::Preset(_) => "preset",
        Command::Simulate(_) => "simulate",
        Command::Verify(_) => "verify",
    }
}

fn emit(out: &Outcome, format: Format) -> anyhow::Result<()> {
    match (format, &out.csv) {
        (Format::Csv, Some((header, rows))) => print_csv(header, rows),
        (Format::Csv, None) => bail!("{} has no CSV form; use --format json", out.command),
        (Format::Json, _) => print_json(&envelope(out.command, out.status.label(), &out.json)?),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Moments(a) => moments_cmd(a),
        Command::Bound(a) => bound_cmd(a),
        Command::Preset(a) => preset_cmd(a),
        Command::Simulate(a) => simulate_cmd(a, cli.seed),
        Command::Verify(a) => verify_cmd(a, cli.seed),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> anyhow::Result<T> {
    v.with_context(|| format!("missing --{flag}"))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_model(path: Option<&PathBuf>) -> anyhow::Result<UStatModel> {
    let path = path.context("missing --model")?;
    let model: UStatModel = read_json(path)?;
    model.validate()?;
    Ok(model)
}

fn blocks_str(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-"))
        .collect::<Vec<_>>()
        .join("|")
}

fn enumerate(a: &EnumerateArgs) -> anyhow::Result<Outcome> {
    if a.histogram {
        let hist = combinat::star2_histogram(a.m, a.ell)?;
        let rows: Vec<Vec<String>> = hist
            .iter()
            .enumerate()
            .filter(|(k, _)| a.k.is_none_or(|kk| kk == *k))
            .map(|(k, c)| vec![k.to_string(), c.to_string()])
            .collect();
        let counts: Vec<Value> = rows.iter().map(|r| json!({"k": r[0].parse::<usize>().unwrap_or(0), "count": r[1]})).collect();
        return Ok(Outcome {
            command: "enumerate",
            status: Status::Ok,
            json: json!({"m": a.m, "ell": a.ell, "histogram": counts}),
            csv: Some((vec!["k", "count"], rows)),
        });
    }
    let iter = combinat::enumerate_star2_with_cap(a.m, a.ell, a.cap)?;
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for sigma in iter {
        let k = sigma.k();
        if a.k.is_some_and(|kk| kk != k) {
            continue;
        }
        rows.push(vec![
            k.to_string(),
            sigma.sigma_size().to_string(),
            sigma.norm().to_string(),
            blocks_str(&sigma.blocks),
        ]);
        records.push(json!({
            "blocks": sigma.blocks,
            "k": k,
            "sigma_size": sigma.sigma_size(),
            "norm": sigma.norm(),
        }));
    }
    Ok(Outcome {
        command: "enumerate",
        status: Status::Ok,
        json: json!({"m": a.m, "ell": a.ell, "count": records.len(), "records": records}),
        csv: Some((vec!["k", "sigma_size", "norm", "blocks"], rows)),
    })
}

fn moments_cmd(a: &MomentsArgs) -> anyhow::Result<Outcome> {
    let one = |json: Value, header: Vec<&'static str>, row: Vec<String>| Outcome {
        command: "moments",
        status: Status::Ok,
        json,
        csv: Some((header, vec![row])),
    };
    match a.kind {
        MomentKind::Exact => {
            let (m, ell, g) = (need(a.m, "m")?, need(a.ell, "ell")?, need(a.gamma, "gamma")?);
            let k = ConstantKernel::new(m, a.c, a.a)?;
            let counting = moments::centred_moment_constant_kernel(k.a, k.c, g, m, ell)?;
            let exact = if m * ell <= combinat::STREAM_CAP {
                Some(moments::centred_moment_exact(&k, g, m, ell)?)
            } else {
                None
            };
            Ok(one(
                json!({"m": m, "ell": ell, "gamma": g, "c": k.c, "a": k.a,
                       "enumeration": exact, "counting": counting}),
                vec!["m", "ell", "gamma", "enumeration", "term_count", "counting"],
                vec![
                    m.to_string(),
                    ell.to_string(),
                    g.to_string(),
                    opt(exact.map(|e| e.value)),
                    exact.map(|e| e.term_count.to_string()).unwrap_or_default(),
                    counting.to_string(),
                ],
            ))
        }
        MomentKind::Variance => {
            let (m, g) = (need(a.m, "m")?, need(a.gamma, "gamma")?);
            let k = ConstantKernel::new(m, a.c, a.a)?;
            let v = moments::variance_exact(&k.fk_norms_sq(), g, m)?;
            Ok(one(
                json!({"m": m, "gamma": g, "variance": v}),
                vec!["m", "gamma", "variance"],
                vec![m.to_string(), g.to_string(), v.to_string()],
            ))
        }
        MomentKind::Upper => {
            let model = load_model(a.model.as_ref())?;
            let (ell, g) = (need(a.ell, "ell")?, need(a.gamma, "gamma")?);
            let regime = match a.regime {
                RegimeArg::General => MomentRegime::General,
                RegimeArg::HighIntensity => MomentRegime::HighIntensity,
            };
            let p = model.a1()?;
            let v = if a.absorbed {
                moments::centred_moment_upper_absorbed(&p, g, model.m, ell, regime)?
            } else {
                moments::centred_moment_upper(&p, g, model.m, ell, regime)?
            };
            Ok(one(
                json!({"m": model.m, "ell": ell, "gamma": g, "regime": regime, "absorbed": a.absorbed, "upper": v}),
                vec!["m", "ell", "gamma", "upper"],
                vec![model.m.to_string(), ell.to_string(), g.to_string(), v.to_string()],
            ))
        }
        MomentKind::Poisson => {
            let (alpha, n) = (need(a.alpha, "alpha")?, need(a.n, "n")?);
            let raw = moments::poisson_raw_moment(alpha, n)?;
            let bound = moments::poisson_moment_bound(alpha, n)?;
            Ok(one(
                json!({"alpha": alpha, "n": n, "raw_moment": raw, "upper": bound}),
                vec!["alpha", "n", "raw_moment", "upper"],
                vec![alpha.to_string(), n.to_string(), raw.to_string(), bound.to_string()],
            ))
        }
    }
}

const BOUND_HEADER: [&str; 9] = ["method", "regime", "tail", "t", "rate", "factor", "prob_bound", "preconditions_met", "reasons"];

fn bound_row(b: &BoundResult) -> Vec<String> {
    vec![
        b.method.clone(),
        serde_json::to_value(b.regime).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        serde_json::to_value(b.tail).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        b.t.to_string(),
        b.rate.to_string(),
        b.factor.to_string(),
        b.prob_bound.to_string(),
        b.preconditions_met.to_string(),
        b.reasons.join("; "),
    ]
}

fn bound_outcome(b: BoundResult) -> anyhow::Result<Outcome> {
    Ok(Outcome {
        command: "bound",
        status: if b.applicable() { Status::Ok } else { Status::NotApplicable },
        csv: Some((BOUND_HEADER.to_vec(), vec![bound_row(&b)])),
        json: serde_json::to_value(&b)?,
    })
}

fn bound_cmd(a: &BoundArgs) -> anyhow::Result<Outcome> {
    let tail: Tail = a.tail.into();
    match a.method {
        BoundMethod::PoissonUpper | BoundMethod::PoissonLower => {
            let (alpha, y) = (need(a.alpha, "alpha")?, need(a.y, "y")?);
            let (value, extra) = if a.method == BoundMethod::PoissonUpper {
                (bounds::poisson_tail_upper(alpha, y)?, Value::Null)
            } else {
                let (c1, c2) = (need(a.c1, "c1")?, need(a.c2, "c2")?);
                let k = bounds::poisson_lower_constants(c1, c2)?;
                (bounds::poisson_tail_lower(alpha, y, c1, c2)?, serde_json::to_value(k)?)
            };
            return Ok(Outcome {
                command: "bound",
                status: Status::Ok,
                json: json!({"alpha": alpha, "y": y, "value": value, "constants": extra}),
                csv: Some((vec!["alpha", "y", "value"], vec![vec![alpha.to_string(), y.to_string(), value.to_string()]])),
            });
        }
        BoundMethod::BpSharp => {
            let (g, t) = (need(a.gamma, "gamma")?, need(a.t, "t")?);
            let nonneg = match &a.model {
                Some(p) => load_model(Some(p))?.kernel_nonnegative,
                None => true,
            };
            if a.fk_norms.is_empty() {
                bail!("missing --fk-norms");
            }
            return bound_outcome(bounds::lower_tail_bp_sharp(&a.fk_norms, g, t, nonneg)?);
        }
        BoundMethod::LargeorderLower => {
            let (g, t) = (need(a.gamma, "gamma")?, need(a.t, "t")?);
            let m = match &a.model {
                Some(p) => load_model(Some(p))?.m,
                None => 1,
            };
            let p = A4Params::new(need(a.theta1, "theta1")?, need(a.theta2, "theta2")?, m)?;
            let r = bounds::largeorder_lower(&p, need(a.f_l1, "f-l1")?, g, t)?;
            return Ok(Outcome {
                command: "bound",
                status: if r.applicable { Status::Ok } else { Status::NotApplicable },
                csv: Some((
                    vec!["t", "gamma", "value", "rate", "c1905c", "c1905d", "applicable", "reasons"],
                    vec![vec![
                        r.t.to_string(),
                        r.gamma.to_string(),
                        r.value.to_string(),
                        r.rate.to_string(),
                        r.constants.c1905c.to_string(),
                        r.constants.c1905d.to_string(),
                        r.applicable.to_string(),
                        r.reasons.join("; "),
                    ]],
                )),
                json: serde_json::to_value(&r)?,
            });
        }
        BoundMethod::HypWu | BoundMethod::HypA1 => {
            let method = if a.method == BoundMethod::HypWu { HyperbolicMethod::Wu } else { HyperbolicMethod::A1 };
            let r = apps::hyperbolic_rate(need(a.d, "d")?, need(a.r, "r")?, need(a.gamma, "gamma")?, need(a.t, "t")?, method)?;
            return bound_outcome(r);
        }
        BoundMethod::Cc if a.model.is_none() => {
            let v = need(a.variance, "variance")?;
            return bound_outcome(bounds::chebyshev_cantelli(v, need(a.t, "t")?, a.c43)?);
        }
        _ => {}
    }
    let mut model = load_model(a.model.as_ref())?;
    if let Some(v) = a.variance {
        model = model.with_variance(v)?;
    }
    let (g, t) = (need(a.gamma, "gamma")?, need(a.t, "t")?);
    let c47 = match a.c47 {
        Some(c) => c,
        None => g * model.a1()?.beta1,
    };
    let r = match a.method {
        BoundMethod::Main => bounds::main_bound(&model, g, t, tail)?,
        BoundMethod::Unified => bounds::unified_bound(&model, g, t, tail)?,
        BoundMethod::Bp => bounds::lower_tail_bp(&model, g, t, c47)?,
        BoundMethod::Wu => {
            let a2 = model.a2().context("wu needs a model with (A2) parameters")?;
            if model.m != 1 {
                bail!("wu needs a model of order 1");
            }
            let (up, lo) = bounds::wu_order1(&a2, g, t, model.kernel_nonnegative)?;
            match tail {
                Tail::Lower => lo,
                Tail::Upper => up,
                Tail::Two => bail!("wu gives one-sided bounds; pass --tail upper or --tail lower"),
            }
        }
        BoundMethod::Cc => match model.variance {
            Some(v) => bounds::chebyshev_cantelli(v, t, a.c43)?,
            None => bail!("cc needs --variance or a model variance; see cc-a1"),
        },
        BoundMethod::CcA1 => bounds::chebyshev_cantelli_a1(&model, g, t, a.c43, c47)?,
        BoundMethod::Clt => bounds::clt_regime(&model, g, t, tail)?,
        BoundMethod::Largeorder => {
            let a2 = model.a2().context("largeorder needs a model with (A2) parameters")?;
            bounds::largeorder_upper(&a2, model.m, g, t, !a.non_centred, tail)?
        }
        _ => unreachable!("handled above"),
    };
    bound_outcome(r)
}

fn space_window(a: &PresetArgs) -> anyhow::Result<(SpaceSpec, WindowSpec)> {
    let space = SpaceSpec::new(a.kappa, a.d)?;
    let window = match (a.window_radius, a.window_volume, a.inradius) {
        (Some(r), None, None) => WindowSpec::ball(&space, r)?,
        (None, Some(volume), Some(inradius)) => {
            let w = WindowSpec {
                volume,
                inradius,
                ball_radius: None,
            };
            w.validate(&space)?;
            w
        }
        _ => bail!("give either --window-radius or both --window-volume and --inradius"),
    };
    Ok((space, window))
}

fn preset_cmd(a: &PresetArgs) -> anyhow::Result<Outcome> {
    let (json, model) = match a.app {
        App::Subgraph => {
            let (space, window) = space_window(a)?;
            let f = GraphFunctionalSpec::IncludedSubgraph { h: SmallGraph::parse(&a.h)? };
            let p = apps::subgraph_params(&space, &window, &f, need(a.rho, "rho")?, a.s, a.no_antipodal)?;
            (serde_json::to_value(&p)?, Some(p.model))
        }
        App::Poweredge => {
            let (space, window) = space_window(a)?;
            let p = apps::power_edge_params(&space, &window, need(a.rho, "rho")?, a.tau, a.s, a.no_antipodal)?;
            (serde_json::to_value(&p)?, Some(p.model))
        }
        App::EuclHyperplane => {
            let nu = if !a.nu.is_empty() {
                a.nu.clone()
            } else if !a.box_sides.is_empty() {
                apps::box_intrinsic_volumes(&a.box_sides)
            } else {
                apps::ball_intrinsic_volumes(a.d, need(a.window_radius, "window-radius")?)
            };
            let d = nu.len().saturating_sub(1);
            let p = apps::euclidean_hyperplane_params(d, need(a.m, "m")?, a.i, &nu)?;
            (json!({"nu": nu, "params": p}), Some(p.model))
        }
        App::HypHyperplane => {
            let r = need(a.r, "r")?;
            let params = apps::hyperbolic_f1_params(a.d, r)?;
            let model = apps::hyperbolic_model(a.d, r)?;
            let window = match a.gamma {
                Some(g) => match apps::hyperbolic_variance_window(a.d, r, g) {
                    Ok(w) => json!({"lower": w.0, "upper": w.1}),
                    Err(e) => json!({"not_applicable": e.to_string()}),
                },
                None => Value::Null,
            };
            (json!({"params": params, "model": model, "variance_window": window}), Some(model))
        }
        App::FixedDegree => {
            let space = SpaceSpec::new(a.kappa, a.d)?;
            let rho = apps::fixed_degree_radius(&space, need(a.delta, "delta")?, need(a.gamma, "gamma")?, a.inradius)?;
            (json!({"rho": rho}), None)
        }
    };
    if let (Some(path), Some(model)) = (&a.out, &model) {
        fs::write(path, serde_json::to_string_pretty(model)?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Outcome {
        command: "preset",
        status: Status::Ok,
        json,
        csv: None,
    })
}

fn load_scenario(path: &Path, seed: Option<u64>, replications: Option<usize>) -> anyhow::Result<Scenario> {
    let mut sc: Scenario = read_json(path)?;
    if let Some(s) = seed {
        sc.seed = s;
    }
    if let Some(n) = replications {
        sc.replications = n;
    }
    sc.validate()?;
    Ok(sc)
}

const TAIL_HEADER: [&str; 8] = ["t", "s", "tail", "exceed_count", "n", "estimate", "ci_low", "ci_high"];

fn tail_row(e: &TailEstimate) -> Vec<String> {
    vec![
        e.t.to_string(),
        opt(e.s),
        serde_json::to_value(e.tail).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        e.exceed_count.to_string(),
        e.n.to_string(),
        e.point_estimate.to_string(),
        e.ci_low.to_string(),
        e.ci_high.to_string(),
    ]
}

fn simulate_cmd(a: &SimulateArgs, seed: Option<u64>) -> anyhow::Result<Outcome> {
    let sc = load_scenario(&a.scenario, seed, a.replications)?;
    if let Some(path) = &a.dump {
        dump_samples(&sc, path, a.dump_count)?;
    }
    let run = experiments::run_tails(&sc)?;
    Ok(Outcome {
        command: "simulate",
        status: Status::Ok,
        csv: Some((TAIL_HEADER.to_vec(), run.estimates.iter().map(tail_row).collect())),
        json: serde_json::to_value(&run)?,
    })
}

fn dump_samples(sc: &Scenario, path: &Path, count: usize) -> anyhow::Result<()> {
    use experiments::FunctionalConfig as F;
    let (space, r) = match &sc.functional {
        F::EdgeCount { space, window_radius, .. }
        | F::Subgraph { space, window_radius, .. }
        | F::PowerEdge { space, window_radius, .. } => (*space, *window_radius),
        _ => bail!("--dump needs a point-process functional"),
    };
    let sampler = pustat::geometry::BallSampler::new(space, r, sc.gamma)?;
    let samples: Vec<_> = (0..count as u64)
        .map(|i| sampler.sample(&mut pustat::rng::stream(sc.seed, pustat::rng::Family::Replicate, i), sc.seed))
        .collect();
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    pustat::geometry::write_samples_csv(&samples, std::io::BufWriter::new(file))?;
    Ok(())
}

const VERIFY_HEADER: [&str; 10] = ["t", "s", "tail", "method", "estimate", "ci_low", "ci_high", "bound", "applicable", "pass"];

fn verify_row(r: &VerifyRow) -> Vec<String> {
    vec![
        r.t.to_string(),
        opt(r.s),
        serde_json::to_value(r.tail).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        r.method.clone(),
        r.estimate.to_string(),
        r.ci_low.to_string(),
        r.ci_high.to_string(),
        opt(r.bound),
        r.applicable.to_string(),
        r.pass.map(|p| p.to_string()).unwrap_or_else(|| "na".into()),
    ]
}

fn verify_cmd(a: &VerifyArgs, seed: Option<u64>) -> anyhow::Result<Outcome> {
    let sc = load_scenario(&a.scenario, seed, a.replications)?;
    let report = experiments::verify_scenario(&sc)?;
    let moments = if a.moments.is_empty() {
        None
    } else {
        Some(experiments::moment_mc_check(&sc, &a.moments)?)
    };
    let moments_ok = moments.as_ref().is_none_or(|rows| rows.iter().all(|r| !r.flagged));
    let status = if !report.all_pass || !moments_ok {
        Status::Failed
    } else if report.tally.passed == 0 {
        Status::NotApplicable
    } else {
        Status::Ok
    };
    let rows: Vec<Vec<String>> = report.rows.iter().map(verify_row).collect();
    let json = json!({"report": report, "moments": moments});
    if let Some(path) = &a.out {
        let v = envelope("verify", status.label(), &json)?;
        fs::write(path, serde_json::to_string_pretty(&v)?).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &a.csv {
        let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_csv(std::io::BufWriter::new(file), &VERIFY_HEADER, &rows)?;
    }
    Ok(Outcome {
        command: "verify",
        status,
        json,
        csv: Some((VERIFY_HEADER.to_vec(), rows)),
    })
}

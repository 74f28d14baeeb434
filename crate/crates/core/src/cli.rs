//! Command-line surface: a [`RunConfig`] names one verification, [`run`]
//! executes it and writes a CSV or JSON artifact.
//!
//! Exit statuses: 0 success/pass, 1 verification fail, 2 usage error,
//! 3 numerical failure (non-convergence, truncation, consistency).
//! Failures always emit the JSON envelope, whatever the requested format,
//! with a `reason` object `{kind, message}`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Arg, ArgAction, ArgMatches};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{decay_scan_compact, decay_scan_uniform, on_axis_decay, uniform_phi_grid, DecayScan, ScanGrid};
use crate::error::{Error, Result};
use crate::fit::geometric_grid;
use crate::gbessel::{evaluate, BesselOrder, Representation};
use crate::lattice::{count_lattice, count_lattice_closed, error_sweep, verify_identity};
use crate::output::{to_csv_string, to_json_string, to_value, SCHEMA};
use crate::phase::{phase_derivative, stationary_points, verify_prop25, PhaseFamily, PhaseKind};
use crate::pnorm::{PExponent, Vec2};
use crate::quadrature::QuadratureSpec;

/// Environment variable that caps the number of worker threads.
pub const THREADS_ENV: &str = "LAME_BESSEL_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Eval,
    ScanDecay,
    PhaseStationary,
    Prop25,
    LatticeCount,
    ErrorSweep,
    IdentityVerify,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Eval,
        Command::ScanDecay,
        Command::PhaseStationary,
        Command::Prop25,
        Command::LatticeCount,
        Command::ErrorSweep,
        Command::IdentityVerify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::ScanDecay => "scan-decay",
            Command::PhaseStationary => "phase-stationary",
            Command::Prop25 => "prop25",
            Command::LatticeCount => "lattice-count",
            Command::ErrorSweep => "error-sweep",
            Command::IdentityVerify => "identity-verify",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Command::Eval => "Evaluate J_ω^[p](η) with a chosen representation. CSV columns: p,eta1,eta2,omega,representation,value,error_estimate",
            Command::ScanDecay => "Decay scan of J_0^[p] (modes: compact, uniform, on-axis). CSV columns: p,rho,phi,value,representation,error_estimate",
            Command::PhaseStationary => "Stationary points of a phase family. CSV columns: theta,endpoint,delta_dependent,derivative",
            Command::Prop25 => "Derivative-exponent ledger at the moving stationary point. CSV columns: delta,value",
            Command::LatticeCount => "Count lattice points with |m|_p^p < s (≤ s with --closed). CSV columns: count,s,strict",
            Command::ErrorSweep => "Lattice error term over radii. CSV columns: r,R_p,main_term,P_p",
            Command::IdentityVerify => "Check the lattice-sum series identity. CSV columns: p,beta,s,x1,x2,lhs,rhs_partial,cutoff,tail_bound,abs_gap,quad_error,pass",
        }
    }

    /// `(key, default, help)`; a `None` default marks a required key.
    fn keys(self) -> &'static [(&'static str, Option<&'static str>, &'static str)] {
        match self {
            Command::Eval => &[
                ("p", None, "exponent, rational accepted (\"2/3\")"),
                ("eta", None, "point η as \"a,b\""),
                ("rep", Some("direct"), "direct | oscillatory | odd | series | classical"),
                ("omega", Some("0"), "order ω ≥ 0"),
                ("tol", Some("1e-10"), "quadrature tolerance"),
            ],
            Command::ScanDecay => &[
                ("p", None, "exponent"),
                ("mode", Some("compact"), "compact | uniform | on-axis"),
                ("phi", Some("0.5235987755982988,0.7853981633974483,1.0471975511965976"), "compact direction set"),
                ("rho-min", Some("20"), "smallest radius"),
                ("rho-max", Some("2000"), "largest radius"),
                ("n-rho", Some("12"), "number of radii (geometric)"),
                ("tol", Some("1e-10"), "per-point tolerance"),
            ],
            Command::PhaseStationary => &[
                ("p", None, "exponent"),
                ("kind", None, "f-axis | g-axis | f-compact | g-compact"),
                ("param", None, "δ for the axis families, φ for the compact ones"),
            ],
            Command::Prop25 => &[
                ("p", None, "exponent with 2/p ∈ ℕ, p < 1"),
                ("n", None, "derivative order"),
                ("delta-min", Some("1e-4"), "smallest δ"),
                ("delta-max", Some("1e-2"), "largest δ"),
                ("n-delta", Some("25"), "number of δ values (geometric)"),
            ],
            Command::LatticeCount => &[("p", None, "exponent"), ("s", None, "threshold on |m|_p^p")],
            Command::ErrorSweep => &[
                ("p", None, "exponent"),
                ("r-min", Some("1"), "smallest radius"),
                ("r-max", Some("100"), "largest radius"),
                ("n-r", Some("100"), "number of radii"),
                ("random", Some("false"), "draw radii uniformly at random (uses --seed)"),
            ],
            Command::IdentityVerify => &[
                ("p", None, "exponent (2 or 2/p ∈ {3, 4, …})"),
                ("beta", None, "Riesz order β"),
                ("s", None, "threshold s > 0"),
                ("x", Some("0,0"), "shift x ∈ (−1/2, 1/2]² as \"a,b\""),
                ("cutoff", Some("24"), "box half-width for the series"),
                ("tol", Some("1e-10"), "quadrature tolerance"),
            ],
        }
    }

    fn has_closed_flag(self) -> bool {
        matches!(self, Command::LatticeCount | Command::ErrorSweep)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::domain(format!("unknown output format {s:?}"))),
        }
    }
}

/// A fully specified run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: BTreeMap<String, String>,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, parameters: BTreeMap::new(), output_path: None, output_format: OutputFormat::Json, seed: None }
    }

    pub fn param(mut self, key: &str, value: impl Into<String>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// Parameters with defaults filled in; rejects unknown or missing keys.
    pub fn resolved(&self) -> Result<BTreeMap<String, String>> {
        let keys = self.command.keys();
        let mut out = BTreeMap::new();
        for (k, v) in &self.parameters {
            let known = keys.iter().any(|(name, _, _)| name == k) || (k == "closed" && self.command.has_closed_flag());
            if !known {
                return Err(Error::domain(format!("{} does not take --{k}", self.command)));
            }
            out.insert(k.clone(), v.clone());
        }
        for (name, default, _) in keys {
            if !out.contains_key(*name) {
                match default {
                    Some(d) => {
                        out.insert(name.to_string(), d.to_string());
                    }
                    None => return Err(Error::domain(format!("{} needs --{name}", self.command))),
                }
            }
        }
        if self.command.has_closed_flag() {
            out.entry("closed".to_string()).or_insert_with(|| "false".to_string());
        }
        Ok(out)
    }
}

/// Status and artifact of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub artifact: String,
}

/// Exit status for an error.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Resource(_) => 2,
        Error::NonConvergence { .. } | Error::Truncation { .. } | Error::Consistency(_) => 3,
    }
}

/// Typed, validated parameters of one command.
enum Job {
    Eval { p: PExponent, eta: Vec2, rep: Representation, omega: BesselOrder, spec: QuadratureSpec },
    Scan { p: PExponent, mode: ScanMode, grid: ScanGrid },
    Stationary { fam: PhaseFamily },
    Prop25 { p: PExponent, n: u32, deltas: Vec<f64> },
    Count { p: PExponent, s: f64, closed: bool },
    Sweep { p: PExponent, radii: Vec<f64>, closed: bool },
    Identity { p: PExponent, beta: f64, s: f64, x: Vec2, cutoff: u32, spec: QuadratureSpec },
}

#[derive(Clone, Copy)]
enum ScanMode {
    Compact,
    Uniform,
    OnAxis,
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn raw(&self, k: &str) -> &str {
        self.0.get(k).map(String::as_str).unwrap_or("")
    }
    fn get<T: FromStr>(&self, k: &str) -> Result<T> {
        self.raw(k).trim().parse().map_err(|_| Error::domain(format!("--{k}: cannot parse {:?}", self.raw(k))))
    }
    fn p(&self) -> Result<PExponent> {
        self.raw("p").parse()
    }
    fn list(&self, k: &str) -> Result<Vec<f64>> {
        self.raw(k)
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::domain(format!("--{k}: cannot parse {:?}", self.raw(k)))))
            .collect()
    }
    fn vec2(&self, k: &str) -> Result<Vec2> {
        match self.list(k)?.as_slice() {
            [a, b] => Ok(Vec2::new(*a, *b)),
            _ => Err(Error::domain(format!("--{k} needs two comma-separated numbers"))),
        }
    }
    fn flag(&self, k: &str) -> Result<bool> {
        match self.raw(k) {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" | "" => Ok(false),
            other => Err(Error::domain(format!("--{k}: expected a boolean, got {other:?}"))),
        }
    }
    fn spec(&self) -> Result<QuadratureSpec> {
        let s = QuadratureSpec::with_tol(self.get("tol")?);
        s.validate()?;
        Ok(s)
    }
}

fn parse_job(config: &RunConfig, params: &BTreeMap<String, String>) -> Result<Job> {
    let pr = Params(params);
    Ok(match config.command {
        Command::Eval => Job::Eval {
            p: pr.p()?,
            eta: pr.vec2("eta")?,
            rep: pr.raw("rep").parse()?,
            omega: BesselOrder::new(pr.get("omega")?)?,
            spec: pr.spec()?,
        },
        Command::ScanDecay => {
            let p = pr.p()?;
            let mode = match pr.raw("mode") {
                "compact" => ScanMode::Compact,
                "uniform" => ScanMode::Uniform,
                "on-axis" => ScanMode::OnAxis,
                m => return Err(Error::domain(format!("--mode: unknown scan mode {m:?}"))),
            };
            let rhos = geometric_grid(pr.get("rho-min")?, pr.get("rho-max")?, pr.get("n-rho")?);
            let phis = match mode {
                ScanMode::Compact => pr.list("phi")?,
                ScanMode::Uniform => uniform_phi_grid(&p),
                ScanMode::OnAxis => vec![PI / 2.0],
            };
            Job::Scan { p, mode, grid: ScanGrid::new(rhos, phis, pr.get("tol")?)? }
        }
        Command::PhaseStationary => {
            let p = pr.p()?;
            let kind = match pr.raw("kind") {
                "f-axis" => PhaseKind::FAxis,
                "g-axis" => PhaseKind::GAxis,
                "f-compact" => PhaseKind::FCompact,
                "g-compact" => PhaseKind::GCompact,
                k => return Err(Error::domain(format!("--kind: unknown phase family {k:?}"))),
            };
            Job::Stationary { fam: PhaseFamily::new(kind, p, pr.get("param")?)? }
        }
        Command::Prop25 => {
            let (lo, hi): (f64, f64) = (pr.get("delta-min")?, pr.get("delta-max")?);
            if !(lo > 0.0 && hi > lo) {
                return Err(Error::domain("need 0 < delta-min < delta-max"));
            }
            Job::Prop25 { p: pr.p()?, n: pr.get("n")?, deltas: geometric_grid(lo, hi, pr.get("n-delta")?) }
        }
        Command::LatticeCount => Job::Count { p: pr.p()?, s: pr.get("s")?, closed: pr.flag("closed")? },
        Command::ErrorSweep => {
            let (lo, hi, n): (f64, f64, usize) = (pr.get("r-min")?, pr.get("r-max")?, pr.get("n-r")?);
            if !(lo > 0.0 && hi >= lo) || n == 0 {
                return Err(Error::domain("need 0 < r-min ≤ r-max and n-r ≥ 1"));
            }
            let radii = if pr.flag("random")? {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed.unwrap_or(0));
                let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
                v.sort_by(f64::total_cmp);
                v
            } else if n == 1 {
                vec![lo]
            } else {
                (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
            };
            Job::Sweep { p: pr.p()?, radii, closed: pr.flag("closed")? }
        }
        Command::IdentityVerify => Job::Identity {
            p: pr.p()?,
            beta: pr.get("beta")?,
            s: pr.get("s")?,
            x: pr.vec2("x")?,
            cutoff: pr.get("cutoff")?,
            spec: pr.spec()?,
        },
    })
}

/// A computed result: the JSON payload, CSV rows and verdict.
struct Computed {
    result: Value,
    csv: String,
    pass: bool,
}

#[derive(Serialize)]
struct EvalRow {
    p: f64,
    eta1: f64,
    eta2: f64,
    omega: f64,
    representation: Representation,
    value: f64,
    error_estimate: f64,
}

#[derive(Serialize)]
struct StationaryRow {
    theta: f64,
    endpoint: bool,
    delta_dependent: bool,
    derivative: f64,
}

#[derive(Serialize)]
struct DeltaRow {
    delta: f64,
    value: f64,
}

fn scan_verdict(mode: ScanMode, scan: &DecayScan) -> bool {
    match mode {
        ScanMode::Compact => (scan.fit.slope + 0.5).abs() <= 0.07,
        ScanMode::Uniform => scan.boundedness_ratio.is_finite() && scan.ratio_trend_slope <= 0.05,
        ScanMode::OnAxis => true,
    }
}

fn compute(job: Job) -> Result<Computed> {
    Ok(match job {
        Job::Eval { p, eta, rep, omega, spec } => {
            let q = evaluate(&p, omega, eta, rep, &spec)?;
            let row = EvalRow {
                p: p.p,
                eta1: eta.x1,
                eta2: eta.x2,
                omega: omega.omega,
                representation: rep,
                value: q.value,
                error_estimate: q.error_estimate,
            };
            Computed { result: to_value(&row)?, csv: to_csv_string(&[row])?, pass: true }
        }
        Job::Scan { p, mode, grid } => {
            let scan = match mode {
                ScanMode::Compact => decay_scan_compact(&p, &grid.phi_values, &grid)?,
                ScanMode::Uniform => decay_scan_uniform(&p, &grid)?,
                ScanMode::OnAxis => on_axis_decay(&p, &grid)?,
            };
            let pass = scan_verdict(mode, &scan);
            let result = json!({
                "fit": to_value(&scan.fit)?,
                "boundedness_exponent": scan.boundedness_exponent,
                "boundedness_ratio": scan.boundedness_ratio,
                "ratio_trend_slope": scan.ratio_trend_slope,
                "window": scan.window,
                "sup_points": to_value(&scan.sup_points)?,
                "exploratory": matches!(mode, ScanMode::OnAxis),
                "pass": pass,
            });
            Computed { result, csv: to_csv_string(&scan.samples)?, pass }
        }
        Job::Stationary { fam } => {
            let set = stationary_points(&fam)?;
            let mut rows = Vec::new();
            for i in 0..set.len() {
                rows.push(StationaryRow {
                    theta: set.points[i],
                    endpoint: set.endpoint_flags[i],
                    delta_dependent: set.delta_dependent[i],
                    derivative: phase_derivative(&fam, set.points[i], 1)?.value,
                });
            }
            let result = json!({ "family": to_value(&fam)?, "points": to_value(&rows)? });
            Computed { result, csv: to_csv_string(&rows)?, pass: true }
        }
        Job::Prop25 { p, n, deltas } => {
            let rep = verify_prop25(&p, n, &deltas)?;
            let rows: Vec<DeltaRow> = rep.deltas.iter().zip(&rep.values).map(|(&delta, &value)| DeltaRow { delta, value }).collect();
            Computed { result: to_value(&rep)?, csv: to_csv_string(&rows)?, pass: rep.pass }
        }
        Job::Count { p, s, closed } => {
            let c = if closed { count_lattice_closed(&p, s)? } else { count_lattice(&p, s)? };
            Computed { result: to_value(&c)?, csv: to_csv_string(&[c])?, pass: true }
        }
        Job::Sweep { p, radii, closed } => {
            let rows = error_sweep(&p, &radii, closed)?;
            Computed { result: json!({ "rows": to_value(&rows)? }), csv: to_csv_string(&rows)?, pass: true }
        }
        Job::Identity { p, beta, s, x, cutoff, spec } => {
            let r = verify_identity(&p, beta, s, x, cutoff, &spec)?;
            let row = IdentityRow {
                p: r.p,
                beta: r.beta,
                s: r.s,
                x1: r.x.x1,
                x2: r.x.x2,
                lhs: r.lhs,
                rhs_partial: r.rhs_partial,
                cutoff: r.cutoff,
                tail_bound: r.tail_bound,
                abs_gap: r.abs_gap,
                quad_error: r.quad_error,
                pass: r.pass,
            };
            Computed { result: to_value(&r)?, csv: to_csv_string(&[row])?, pass: r.pass }
        }
    })
}

/// CSV form of an identity report (the shift vector split into columns).
#[derive(Serialize)]
struct IdentityRow {
    p: f64,
    beta: f64,
    s: f64,
    x1: f64,
    x2: f64,
    lhs: f64,
    rhs_partial: f64,
    cutoff: u32,
    tail_bound: f64,
    abs_gap: f64,
    quad_error: f64,
    pass: bool,
}

fn envelope(config: &RunConfig, params: Option<&BTreeMap<String, String>>, status: &str) -> Result<serde_json::Map<String, Value>> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert(
        "config".into(),
        json!({
            "command": config.command.name(),
            "parameters": to_value(params.unwrap_or(&config.parameters))?,
            "output_format": to_value(&config.output_format)?,
            "output_path": config.output_path.as_ref().map(|p| p.display().to_string()),
            "seed": config.seed,
        }),
    );
    m.insert("status".into(), json!(status));
    Ok(m)
}

fn failure(config: &RunConfig, params: Option<&BTreeMap<String, String>>, e: &Error) -> RunOutcome {
    let mut m = envelope(config, params, "error").unwrap_or_default();
    m.insert("reason".into(), json!({ "kind": e.kind(), "message": e.to_string() }));
    let artifact = to_json_string(&Value::Object(m)).unwrap_or_else(|_| format!("{{\"status\":\"error\",\"reason\":{{\"message\":{:?}}}}}\n", e.to_string()));
    RunOutcome { exit_code: exit_code_for(e), artifact }
}

/// Runs `config` and returns the artifact without writing it.
pub fn execute(config: &RunConfig) -> RunOutcome {
    let params = match config.resolved() {
        Ok(p) => p,
        Err(e) => return failure(config, None, &e),
    };
    let job = match parse_job(config, &params) {
        Ok(j) => j,
        Err(e) => return failure(config, Some(&params), &e),
    };
    let computed = match with_thread_cap(|| compute(job)) {
        Ok(c) => c,
        Err(e) => return failure(config, Some(&params), &e),
    };
    let exit_code = if computed.pass { 0 } else { 1 };
    let artifact = match config.output_format {
        OutputFormat::Csv => computed.csv,
        OutputFormat::Json => {
            let built = envelope(config, Some(&params), if computed.pass { "pass" } else { "fail" }).and_then(|mut m| {
                m.insert("result".into(), computed.result);
                if !computed.pass {
                    m.insert("reason".into(), json!({ "kind": "verification_failed", "message": "the check did not meet its criterion" }));
                }
                to_json_string(&Value::Object(m))
            });
            match built {
                Ok(s) => s,
                Err(e) => return failure(config, Some(&params), &e),
            }
        }
    };
    RunOutcome { exit_code, artifact }
}

/// Runs inside a pool of `LAME_BESSEL_THREADS` workers when that is set.
fn with_thread_cap<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start {n} worker threads: {e}")))?
            .install(f),
        None => f(),
    }
}

/// Executes `config` and writes the artifact to `output_path` (stdout when
/// absent).
pub fn run(config: &RunConfig) -> RunOutcome {
    let out = execute(config);
    let written = match &config.output_path {
        Some(path) => std::fs::write(path, &out.artifact).map_err(|e| e.to_string()),
        None => {
            print!("{}", out.artifact);
            Ok(())
        }
    };
    match written {
        Ok(()) => out,
        Err(msg) => {
            let e = Error::Resource(format!("cannot write artifact: {msg}"));
            let f = failure(config, None, &e);
            eprint!("{}", f.artifact);
            f
        }
    }
}

/// The argument parser: one subcommand per [`Command`], one `--key` per
/// parameter, plus `--format`, `--output` and `--seed`.
pub fn clap_command() -> clap::Command {
    let mut root = clap::Command::new("lame-bessel")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Generalized Bessel functions of the p-circle: evaluation, decay scans, phase analysis, lattice sums")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in Command::ALL {
        let mut sub = clap::Command::new(c.name()).about(c.about());
        for (key, default, help) in c.keys() {
            let help = match default {
                Some(d) => format!("{help} [default: {d}]"),
                None => format!("{help} (required)"),
            };
            sub = sub.arg(Arg::new(*key).long(*key).value_name("VALUE").help(help).allow_hyphen_values(true));
        }
        if c.has_closed_flag() {
            sub = sub.arg(Arg::new("closed").long("closed").action(ArgAction::SetTrue).help("count boundary points too (≤ instead of <)"));
        }
        sub = sub
            .arg(Arg::new("format").long("format").value_parser(["csv", "json"]).default_value("json").help("artifact format"))
            .arg(Arg::new("output").long("output").value_name("PATH").help("write the artifact here instead of stdout"))
            .arg(Arg::new("seed").long("seed").value_parser(clap::value_parser!(u64)).help("seed for randomized point selection"));
        root = root.subcommand(sub);
    }
    root
}

/// Builds a [`RunConfig`] from parsed arguments.
pub fn config_from_matches(m: &ArgMatches) -> Result<RunConfig> {
    let (name, sub) = m.subcommand().ok_or_else(|| Error::domain("no command given"))?;
    let command: Command = name.parse()?;
    let mut config = RunConfig::new(command);
    for (key, _, _) in command.keys() {
        if let Some(v) = sub.get_one::<String>(key) {
            config.parameters.insert(key.to_string(), v.clone());
        }
    }
    if command.has_closed_flag() && sub.get_flag("closed") {
        config.parameters.insert("closed".into(), "true".into());
    }
    config.output_format = sub.get_one::<String>("format").map(|s| s.parse()).transpose()?.unwrap_or_default();
    config.output_path = sub.get_one::<String>("output").map(PathBuf::from);
    config.seed = sub.get_one::<u64>("seed").copied();
    Ok(config)
}

//! Command-line front end: argument and config handling, the JSON report
//! envelope, and one handler per command.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use pvi_core::cubic::{
    fixed_point_report, g_sq, lines27, orbit_closed_form, periodic_curves, prime_period, singular_points, triple,
};
use pvi_core::families::{
    applicable_families, build_family, exhaustiveness_count, normalized_coeffs, residual_order, FamilyId, DEFAULT_ORDER,
};
use pvi_core::flow::{branch_count, BranchOptions, FlowOptions, DEFAULT_RHO, DEFAULT_TOL};
use pvi_core::params::{b_vec, classify_stratum, rh_chain, wall_pattern, Theta};
use pvi_core::{Error, Kappa};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// Largest period `report` tabulates.
pub const REPORT_MAX_PERIOD: u32 = 6;

#[derive(Parser, Debug)]
#[command(name = "pvi", version, about = "Finite-branch solutions of Painleve VI at z = 0")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// kappa -> b -> a -> theta
    Rh,
    /// Stratum label and normal form
    Classify,
    /// Fixed-point components of g_j^2
    Fixed,
    /// Curves of prime period n under g_j^2
    Periodic,
    /// Series or closed-form germ of one family
    Series,
    /// Residual orders of one family, or of all applicable ones
    Residual,
    /// Loops around z = 0 until a germ returns
    Monodromy,
    /// Orbit of a seeded surface point, iterated and in closed form
    Orbit,
    /// The 27 lines of the surface
    Lines,
    /// classify + fixed + periodic + exhaustiveness
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rh => "rh",
            Command::Classify => "classify",
            Command::Fixed => "fixed",
            Command::Periodic => "periodic",
            Command::Series => "series",
            Command::Residual => "residual",
            Command::Monodromy => "monodromy",
            Command::Orbit => "orbit",
            Command::Lines => "lines",
            Command::Report => "report",
        }
    }
}

#[derive(Args, Debug, Clone, Default, Serialize)]
pub struct Opts {
    /// k0,k1,k2,k3,k4 as p/q, integers or decimals
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    /// Direction index
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub j: Option<u8>,
    /// Period, ramification, or orbit length
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Numerator of the AlgBranch exponent m/n
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Family parameter as re,im
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Series truncation, in slots
    #[arg(long, global = true)]
    pub order: Option<i64>,
    /// Loop radius
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Local integration tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Family name, e.g. K1K2Plus, A12, AlgBranch, RicA3
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// key = value file with the same keys as the flags
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

const CONFIG_KEYS: [&str; 10] = ["kappa", "j", "n", "m", "t", "order", "rho", "tol", "seed", "family"];

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
pub struct Envelope {
    pub command: String,
    pub version: &'static str,
    pub inputs: Value,
    pub outputs: Value,
    pub timing: Timing,
}

#[derive(Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::KappaConstraint(_) => (EXIT_INVALID, "kappa_constraint"),
            Error::AmbiguousWall
            | Error::NeedRational(_)
            | Error::Predicate(_)
            | Error::Invalid(_)
            | Error::Excluded(_)
            | Error::BranchCut(_)
            | Error::RiccatiDegenerate => (EXIT_INVALID, "invalid"),
            Error::Inconsistent(_) => (EXIT_INCONSISTENT, "inconsistent"),
            _ => (EXIT_RUNTIME, "runtime"),
        };
        Failure { code, kind: kind.into(), message: e.to_string() }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, kind: "invalid".into(), message: msg.into() }
}

fn inconsistent(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INCONSISTENT, kind: "inconsistent".into(), message: msg.into() }
}

type Res<T> = std::result::Result<T, Failure>;

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Res<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| invalid(format!("config line {}: expected key = value", no + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONFIG_KEYS.contains(&k) {
            return Err(invalid(format!("config line {}: unknown key '{k}'", no + 1)));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

/// Appends config entries for flags not given on the command line.
fn merge_config(args: &[String]) -> Res<Vec<String>> {
    let mut path = None;
    let mut given = Vec::new();
    let mut it = args.iter().peekable();
    while let Some(a) = it.next() {
        if let Some(flag) = a.strip_prefix("--") {
            let (name, inline) = match flag.split_once('=') {
                Some((n, v)) => (n, Some(v.to_string())),
                None => (flag, None),
            };
            if name == "config" {
                path = inline.or_else(|| it.peek().map(|s| s.to_string()));
            }
            given.push(name.to_string());
        }
    }
    let mut out = args.to_vec();
    if let Some(p) = path {
        let text = std::fs::read_to_string(&p).map_err(|e| invalid(format!("cannot read config {p}: {e}")))?;
        for (k, v) in parse_config(&text)? {
            if !given.contains(&k) {
                out.push(format!("--{k}={v}"));
            }
        }
    }
    Ok(out)
}

/// Runs the tool on `args` (program name first).
pub fn run<S: AsRef<str>>(args: &[S]) -> Outcome {
    let args: Vec<String> = args.iter().map(|s| s.as_ref().to_string()).collect();
    let merged = match merge_config(&args) {
        Ok(a) => a,
        Err(f) => return failure_outcome("config", &Opts::default(), f),
    };
    let cli = match Cli::try_parse_from(&merged) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => EXIT_INVALID,
            };
            let f = Failure { code, kind: "usage".into(), message: e.to_string() };
            return failure_outcome("usage", &Opts::default(), f);
        }
    };
    let start = Instant::now();
    match dispatch(cli.command, &cli.opts) {
        Ok((outputs, status)) => {
            let env = Envelope {
                command: cli.command.name().into(),
                version: VERSION,
                inputs: inputs_json(&cli.opts),
                outputs,
                timing: Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 },
            };
            let stdout = serde_json::to_string_pretty(&env).expect("report serializes") + "\n";
            match status {
                Ok(()) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
                Err(f) => Outcome { code: f.code, stdout, stderr: f.message + "\n" },
            }
        }
        Err(f) => failure_outcome(cli.command.name(), &cli.opts, f),
    }
}

fn failure_outcome(command: &str, opts: &Opts, f: Failure) -> Outcome {
    let body = json!({
        "command": command,
        "version": VERSION,
        "inputs": inputs_json(opts),
        "error": { "kind": f.kind, "message": f.message, "exit_code": f.code },
    });
    Outcome {
        code: f.code,
        stdout: serde_json::to_string_pretty(&body).expect("error serializes") + "\n",
        stderr: format!("error: {}\n", f.message),
    }
}

/// Flags as given, with kappa normalized to reduced rationals when it parses.
fn inputs_json(opts: &Opts) -> Value {
    let mut v = serde_json::to_value(opts).expect("options serialize");
    if let (Some(s), Some(obj)) = (&opts.kappa, v.as_object_mut()) {
        if let Ok(k) = s.parse::<Kappa>() {
            let r: Vec<String> = k.exact().expect("parsed kappa is rational").iter().map(|x| x.to_string()).collect();
            obj.insert("kappa".into(), json!(r));
        }
        obj.retain(|_, x| !x.is_null());
    } else if let Some(obj) = v.as_object_mut() {
        obj.retain(|_, x| !x.is_null());
    }
    v
}

/// Strips the `timing` field, for comparing reports.
pub fn without_timing(report: &str) -> Value {
    let mut v: Value = serde_json::from_str(report).expect("report is JSON");
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
    }
    v
}

fn kappa(opts: &Opts) -> Res<Kappa> {
    let s = opts.kappa.as_deref().ok_or_else(|| invalid("--kappa is required"))?;
    Ok(s.parse::<Kappa>()?)
}

fn j_of(opts: &Opts) -> usize {
    opts.j.unwrap_or(1) as usize
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn parse_complex(s: &str) -> Res<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|_| invalid(format!("cannot read '{x}' as a number")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(invalid(format!("--t expects re,im, got '{s}'"))),
    }
}

/// Family from `--family`, `--t`, `--n`, `--m`. Pencil families `[s0 : s1]`
/// take `s0 = 1, s1 = t`.
pub fn family_from(opts: &Opts) -> Res<FamilyId> {
    let name = opts.family.as_deref().ok_or_else(|| invalid("--family is required"))?;
    let t = || -> Res<Complex64> {
        opts.t.as_deref().map(parse_complex).transpose().map(|t| t.unwrap_or(Complex64::new(0.375, 0.0)))
    };
    let one = Complex64::new(1.0, 0.0);
    Ok(match name {
        "K1K2Plus" => FamilyId::K1K2Plus,
        "K1K2Minus" => FamilyId::K1K2Minus,
        "K3K4Plus" => FamilyId::K3K4Plus,
        "K3K4Minus" => FamilyId::K3K4Minus,
        "A12" => FamilyId::A12 { t: t()? },
        "A3" => FamilyId::A3 { t: t()? },
        "D4" => FamilyId::D4 { t: t()? },
        "A14A" => FamilyId::A14A { t: t()? },
        "A14B" => FamilyId::A14B { t: t()? },
        "AlgBranch" => FamilyId::AlgBranch { n: opts.n.unwrap_or(2), m: opts.m.unwrap_or(1), t: t()? },
        "RicA1a" => FamilyId::RicA1a,
        "RicA1b" => FamilyId::RicA1b,
        "RicA2a" => FamilyId::RicA2a,
        "RicA2b" => FamilyId::RicA2b,
        "RicA2c" => FamilyId::RicA2c,
        "RicA3" => FamilyId::RicA3 { s: [one, t()?] },
        "RicD4Rat" => FamilyId::RicD4Rat { s: [one, t()?] },
        "RicD4Log" => FamilyId::RicD4Log { t: [one, t()?] },
        other => return Err(invalid(format!("unknown family '{other}'"))),
    })
}

/// Payload and, separately, a failure that still has a full report.
type Dispatched = (Value, std::result::Result<(), Failure>);

fn dispatch(cmd: Command, opts: &Opts) -> Res<Dispatched> {
    match cmd {
        Command::Rh => rh(opts).map(ok),
        Command::Classify => classify(opts).map(ok),
        Command::Fixed => fixed(opts),
        Command::Periodic => periodic(opts),
        Command::Series => series(opts).map(ok),
        Command::Residual => residual(opts),
        Command::Monodromy => monodromy(opts),
        Command::Orbit => orbit(opts),
        Command::Lines => lines(opts).map(ok),
        Command::Report => report(opts),
    }
}

fn ok(v: Value) -> Dispatched {
    (v, Ok(()))
}

fn rh(opts: &Opts) -> Res<Value> {
    let k = kappa(opts)?;
    let img = rh_chain(&k);
    Ok(json!({
        "b": img.b.b,
        "a": img.a,
        "theta": img.theta.t,
        "b_residual": img.b.residual(),
    }))
}

fn classify(opts: &Opts) -> Res<Value> {
    let k = kappa(opts)?;
    let s = classify_stratum(&k)?;
    Ok(json!({
        "label": s.label,
        "normal_form": s.normal_form,
        "word": s.word,
        "walls": wall_pattern(&k),
        "singular_points": s.label.singular_count(),
    }))
}

fn fixed(opts: &Opts) -> Res<Dispatched> {
    let k = kappa(opts)?;
    let rep = fixed_point_report(j_of(opts), &k)?;
    let status = rep.ensure_consistent().map_err(Failure::from);
    let summary = json!({
        "smooth": rep.count("smooth"),
        "singular": rep.count("singular"),
        "lines": rep.lines(),
        "smooth_labels": rep.smooth_labels(),
    });
    Ok((json!({ "summary": summary, "report": rep }), status))
}

fn theta_of(k: &Kappa) -> Theta {
    b_vec(k).theta()
}

fn periodic_payload(j: usize, th: &Theta, n: u32) -> Res<(Value, bool)> {
    let curves = periodic_curves(j, th, n)?;
    let sing = singular_points(th);
    let mut ok = true;
    let mut records = Vec::new();
    for c in &curves {
        let samples = c.sample(th, 5);
        let mut pts = Vec::new();
        for p in &samples.points {
            let period = prime_period(j, &p.x, th, n, 1e-8);
            let dsing = sing.iter().map(|s| s.distance(p)).fold(f64::INFINITY, f64::min);
            ok &= period == Some(n) && dsing > 1e-6;
            pts.push(json!({ "x": p.x, "residual": p.residual, "prime_period": period, "distance_to_singular": dsing }));
        }
        ok &= samples.points.len() == 5;
        records.push(json!({ "curve": c, "samples": pts, "skipped": samples.skipped }));
    }
    Ok((json!({ "n": n, "count": curves.len(), "curves": records }), ok))
}

fn periodic(opts: &Opts) -> Res<Dispatched> {
    let k = kappa(opts)?;
    let n = opts.n.ok_or_else(|| invalid("--n is required"))?;
    let (v, good) = periodic_payload(j_of(opts), &theta_of(&k), n)?;
    let status = if good { Ok(()) } else { Err(inconsistent(format!("a sampled point on a period-{n} curve failed its checks"))) };
    Ok((v, status))
}

fn order_of(opts: &Opts) -> Res<i64> {
    let o = opts.order.unwrap_or(DEFAULT_ORDER);
    if !(1..=400).contains(&o) {
        return Err(invalid(format!("--order {o} is outside 1..=400")));
    }
    Ok(o)
}

fn series(opts: &Opts) -> Res<Value> {
    let k = kappa(opts)?;
    let id = family_from(opts)?;
    let g = build_family::<Complex64>(&id, &k, order_of(opts)?)?;
    let normalized: BTreeMap<&str, Complex64> =
        if id.is_closed_form() { BTreeMap::new() } else { normalized_coeffs(&g)?.into_iter().collect() };
    Ok(json!({ "family": id, "order": g.order, "q": g.q, "p": g.p, "normalized": normalized }))
}

fn residual(opts: &Opts) -> Res<Dispatched> {
    let k = kappa(opts)?;
    let order = order_of(opts)?;
    let ids = match opts.family {
        Some(_) => vec![family_from(opts)?],
        None => applicable_families(&k)?,
    };
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for id in ids {
        let g = build_family::<Complex64>(&id, &k, order)?;
        let r = residual_order(&g)?;
        if !r.passes {
            failed.push(id.name());
        }
        rows.push(json!({ "family": id, "residual": r }));
    }
    let status =
        if failed.is_empty() { Ok(()) } else { Err(inconsistent(format!("residual below threshold: {}", failed.join(", ")))) };
    Ok((json!({ "order": order, "families": rows }), status))
}

fn monodromy(opts: &Opts) -> Res<Dispatched> {
    let k = kappa(opts)?;
    let id = family_from(opts)?;
    let default_order = match id {
        FamilyId::AlgBranch { n, .. } => (8 * n as i64).max(DEFAULT_ORDER),
        _ => DEFAULT_ORDER,
    };
    let g = build_family::<Complex64>(&id, &k, opts.order.map(|_| order_of(opts)).transpose()?.unwrap_or(default_order))?;
    let rho = opts.rho.unwrap_or(DEFAULT_RHO);
    let tol = opts.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1e-3) {
        return Err(invalid(format!("--tol {tol} is outside (0, 1e-3)")));
    }
    let bo = BranchOptions { rho, flow: FlowOptions::with_tol(tol), ..Default::default() };
    let r = branch_count(&g, &bo)?;
    let status = if r.agrees {
        Ok(())
    } else {
        Err(inconsistent(format!("integration gives {} loops, the series rotation {}", r.n, r.predicted)))
    };
    let v = json!({
        "family": id,
        "params": g.kappa,
        "rho": rho,
        "k_detected": r.n,
        "return_error": r.return_error,
        "return_errors": r.return_errors,
        "predicted": r.predicted,
        "oracle_error": r.oracle_error,
        "agrees": r.agrees,
        "order": g.order,
    });
    Ok((v, status))
}

/// A point of `S(theta)` with `x_j, x_k` drawn from the seeded generator.
fn seeded_surface_point(rng: &mut ChaCha8Rng, j: usize, th: &Theta) -> [Complex64; 3] {
    let (i, jj, kk) = triple(j);
    let mut draw = || Complex64::new(rng.random_range(-1.8..1.8), rng.random_range(-0.3..0.3));
    let (xj, xk) = (draw(), draw());
    // x_i^2 + (x_j x_k - theta_i) x_i + rest = 0
    let b = xj * xk - th.th(i);
    let c = xj * xj + xk * xk - th.th(jj) * xj - th.th(kk) * xk + th.t[3];
    let mut x = [Complex64::default(); 3];
    x[i - 1] = (-b + (b * b - 4.0 * c).sqrt()) / 2.0;
    x[jj - 1] = xj;
    x[kk - 1] = xk;
    x
}

fn orbit(opts: &Opts) -> Res<Dispatched> {
    let k = kappa(opts)?;
    let th = theta_of(&k);
    let j = j_of(opts);
    let steps = opts.n.unwrap_or(50) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
    let x = seeded_surface_point(&mut rng, j, &th);
    let pred = orbit_closed_form(j, &x, &th, steps)?;
    let mut y = x;
    let mut dev: f64 = 0.0;
    let mut iterated = Vec::with_capacity(steps + 1);
    for p in &pred {
        let scale = 1.0 + y.iter().map(|v| v.norm()).fold(0.0, f64::max);
        dev = dev.max((0..3).map(|l| (p[l] - y[l]).norm()).fold(0.0, f64::max) / scale);
        iterated.push(y);
        y = g_sq(j, &y, &th);
    }
    let status = if dev < 1e-8 { Ok(()) } else { Err(inconsistent(format!("closed form deviates by {dev:e}"))) };
    Ok((json!({ "j": j, "start": x, "steps": steps, "iterated": iterated, "max_relative_deviation": dev }), status))
}

fn lines(opts: &Opts) -> Res<Value> {
    let k = kappa(opts)?;
    Ok(to_value(&lines27(&b_vec(&k))))
}

fn report(opts: &Opts) -> Res<Dispatched> {
    let k = kappa(opts)?;
    let s = classify_stratum(&k)?;
    let nf = s.normal_form.clone();
    let th = theta_of(&nf);
    let mut problems = Vec::new();
    // Independent sub-analyses; results are assembled in a fixed order.
    let (fixed, periodic, exhaust) = std::thread::scope(|sc| {
        let f = sc.spawn(|| {
            (1..=3)
                .map(|j| fixed_point_report(j, &nf).map_err(Failure::from))
                .collect::<Res<Vec<_>>>()
        });
        let p = sc.spawn(|| {
            (2..=REPORT_MAX_PERIOD)
                .map(|n| periodic_payload(1, &th, n))
                .collect::<Res<Vec<_>>>()
        });
        let e = exhaustiveness_count(&s).map_err(Failure::from);
        (f.join().expect("fixed-point job"), p.join().expect("periodic job"), e)
    });
    let (fixed, periodic, exhaust) = (fixed?, periodic?, exhaust?);
    let fixed_json: Vec<Value> = fixed
        .iter()
        .map(|r| {
            if !r.routes_agree {
                problems.push(format!("fixed-point routes disagree for j = {}", r.j));
            }
            json!({
                "j": r.j,
                "smooth": r.count("smooth"),
                "singular": r.count("singular"),
                "lines": r.lines(),
                "smooth_labels": r.smooth_labels(),
                "routes_agree": r.routes_agree,
            })
        })
        .collect();
    let periodic_json: Vec<Value> = periodic
        .into_iter()
        .map(|(v, good)| {
            if !good {
                problems.push(format!("period-{} sample failed", v["n"]));
            }
            json!({ "n": v["n"], "count": v["count"], "checked": good })
        })
        .collect();
    if !exhaust.matches {
        problems.push(format!("exhaustiveness mismatch on {}", exhaust.label));
    }
    let v = json!({
        "classify": { "label": s.label, "normal_form": s.normal_form, "word": s.word },
        "theta": th.t,
        "fixed": fixed_json,
        "periodic": periodic_json,
        "exhaustiveness": exhaust,
    });
    let status = if problems.is_empty() { Ok(()) } else { Err(inconsistent(problems.join("; "))) };
    Ok((v, status))
}

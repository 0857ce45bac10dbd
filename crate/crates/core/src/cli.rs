//! Command-line front end: `compute`, `check`, `fit` and `oracle`.

use std::ffi::OsString;
use std::io::Read;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{fmt_rat, parse_rat, rat, Rat, Series};
use crate::checks::{run_suite, Suite, SuiteOptions, SuiteReport, CONJECTURAL};
use crate::error::{Error, Result};
use crate::geometry::cobordism::cobordism_series;
use crate::geometry::pg0::{pg0_series, Pg0Input};
use crate::geometry::rank1::rank1_series;
use crate::geometry::sv::{segre_series, verlinde_series};
use crate::geometry::{ktheory_series, ClosedForm, Decomposition, KClassNumbers, SurfaceNumbers};
use crate::oracle::{f_symmetry, lagrange_oracle, partitions, w_star_check, with_retries, EvalPoint};
use crate::rationality::{fit_rational, FitRequest, DEFAULT_SURPLUS};

#[derive(Parser, Debug)]
#[command(name = "quotk", version, about = "Exact q-series for virtual invariants of Quot schemes on surfaces")]
pub struct Cli {
    /// Exclusive upper bound of the q-powers reported.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    pub trunc: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for pseudorandom evaluation points and inputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// File of `key=value` lines; flags given on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute an invariant series.
    Compute(Box<ComputeArgs>),
    /// Run an identity suite.
    Check(CheckArgs),
    /// Fit a rational function to a series.
    Fit(FitArgs),
    /// Evaluate a partition-sum oracle.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ktheory,
    Verlinde,
    Segre,
    Cobordism,
    Closed,
    Pg0,
    Rank1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    /// `beta = 0`.
    Zero,
    /// One part carries `beta`.
    Single,
    /// `N` equal parts.
    Uniform,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
    /// Ranks of the classes, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub ranks: Vec<i64>,
    /// Wedge orders, one per class.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<u32>,
    #[arg(long = "K2", default_value_t = 0, allow_hyphen_values = true)]
    pub k2: i64,
    /// `chi(O_X)`.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub chi: i64,
    /// `c1(alpha_s).K`, one per class.
    #[arg(long = "c1K", value_delimiter = ',', allow_hyphen_values = true)]
    pub c1k: Vec<i64>,
    #[arg(long = "c1sq", default_value_t = 0, allow_hyphen_values = true)]
    pub c1sq: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub c2: i64,
    #[arg(long, value_enum, default_value_t = Shape::Zero)]
    pub shape: Shape,
    /// `beta_i.K` of each active part.
    #[arg(long = "beta-K", default_value_t = 0, allow_hyphen_values = true)]
    pub beta_k: i64,
    /// `beta_i.c1(alpha_s)` of each active part, one per class.
    #[arg(long = "beta-c1", value_delimiter = ',', allow_hyphen_values = true)]
    pub beta_c1: Vec<i64>,
    /// `beta^2`, for the `p_g = 0` family.
    #[arg(long = "beta2", default_value_t = 0, allow_hyphen_values = true)]
    pub beta2: i64,
    /// Seiberg-Witten weight of the decomposition.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sw: i64,
    /// `beta_i.beta_j` for `i != j` in a uniform decomposition.
    #[arg(long = "beta-pair", default_value_t = 0, allow_hyphen_values = true)]
    pub beta_pair: i64,
    /// Value of the Pontryagin parameter for the cobordism family.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Closed form name for the `closed` family.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<i64>,
    #[arg(long = "chi-alpha", allow_hyphen_values = true)]
    pub chi_alpha: Option<String>,
    #[arg(long = "chi-kinv-alpha", allow_hyphen_values = true)]
    pub chi_kinv_alpha: Option<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long = "max-N")]
    pub max_n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// JSON series file, or `-` for standard input.
    #[arg(long = "in")]
    pub input: String,
    /// Degree bounds of numerator and denominator.
    #[arg(long, num_args = 2, value_names = ["DN", "DD"])]
    pub deg: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_SURPLUS)]
    pub surplus: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    FSymmetry,
    WStar,
    Lagrange,
    Partitions,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub kind: OracleKind,
    /// Order in `q` and `v` for the symmetry check, or the size for partitions.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// `t1,t2,u,y,m,a`; defaults to the standard point, or a seeded point with `--seed`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Vec<String>,
    /// Coefficients of `phi` for the Lagrange oracle.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phi: Vec<String>,
}

/// Result of one invocation: text for standard output and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn err(code: i32, msg: String) -> Self {
        Outcome { stdout: String::new(), stderr: msg, code }
    }
}

/// Exit code for an engine error: hypothesis and input problems are usage errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolation(_)
        | Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::UnsupportedGenus(_)
        | Error::UnsupportedPattern(_)
        | Error::InsufficientJetCap { .. } => 2,
        _ => 1,
    }
}

/// Parse arguments (after merging a config file) and run.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<String> = args.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(msg) => return Outcome::err(2, format!("error: {msg}\n")),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome::err(2, text) };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Compute(a) => compute(cli, a),
        Command::Check(a) => return check(cli, a),
        Command::Fit(a) => fit(cli, a),
        Command::Oracle(a) => oracle(cli, a),
    };
    match res {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::err(exit_code(&e), format!("error: {e}\n")),
    }
}

/// Merge `key=value` lines of `--config` into the argument list for every long flag
/// of the selected subcommand not already given. `command=` selects the subcommand
/// when none is on the command line.
fn merge_config(mut argv: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let Some(path) = config_path(&argv) else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("--config {path}: {e}"))?;
    let cmd = Cli::command();
    let sub_names: Vec<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("--config {path} line {}: expected key=value", i + 1))?;
        entries.push((k.trim().to_string(), v.trim().to_string(), i + 1));
    }
    let mut sub_pos = argv.iter().position(|a| sub_names.contains(a));
    if let Some((_, v, _)) = entries.iter().find(|(k, _, _)| k == "command") {
        if sub_pos.is_none() {
            if !sub_names.contains(v) {
                return Err(format!("--config {path}: unknown command `{v}`"));
            }
            argv.push(v.clone());
            sub_pos = Some(argv.len() - 1);
        }
    }
    let sub = sub_pos.map(|p| argv[p].clone());
    let mut known: Vec<String> = cmd.get_arguments().filter_map(|a| a.get_long().map(String::from)).collect();
    if let Some(s) = &sub {
        let sc = cmd.find_subcommand(s).expect("listed");
        known.extend(sc.get_arguments().filter_map(|a| a.get_long().map(String::from)));
    }
    for (k, v, line) in entries {
        if k == "command" {
            continue;
        }
        if k == "config" || !known.contains(&k) {
            return Err(format!("--config {path} line {line}: unknown key `{k}`"));
        }
        let flag = format!("--{k}");
        let present = argv.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}=")));
        if !present {
            argv.push(flag);
            argv.extend(v.split_whitespace().map(String::from));
        }
    }
    Ok(argv)
}

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn series_text(s: &Series<Rat>) -> String {
    let mut out = String::new();
    let start = s.valuation().min(0);
    for n in start..s.trunc() {
        out += &format!("{}^{}: {}\n", s.var(), n, fmt_rat(&s.coeff(n)));
    }
    out += &format!("O({}^{})\n", s.var(), s.trunc());
    out
}

/// Series JSON with nonnegative-valuation series reported from `q^0`.
fn series_json(s: &Series<Rat>) -> Value {
    let mut v = s.to_json();
    if s.valuation() > 0 {
        let mut c: Vec<String> = vec!["0".into(); s.valuation() as usize];
        c.extend(s.rats().iter().map(fmt_rat));
        v["coeffs"] = json!(c);
        v["valuation"] = json!(0);
    }
    v
}

fn emit_series(cli: &Cli, s: &Series<Rat>, label: Option<&str>) -> String {
    match cli.format {
        Format::Json => {
            let mut v = series_json(s);
            if let Some(l) = label {
                v["label"] = json!(l);
            }
            format!("{v}\n")
        }
        Format::Text => {
            let mut out = series_text(s);
            if let Some(l) = label {
                out += &format!("label: {l}\n");
            }
            out
        }
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::InvalidInput(format!("--{flag} is required for --family {family}")))
}

fn decomposition(a: &ComputeArgs, classes: usize) -> Result<Decomposition> {
    let bc1 = if a.beta_c1.is_empty() { vec![0; classes] } else { a.beta_c1.clone() };
    if bc1.len() != classes {
        return Err(Error::InvalidInput(format!("--beta-c1 needs {classes} values, got {}", bc1.len())));
    }
    Ok(match a.shape {
        Shape::Zero => Decomposition::zero(a.n, classes),
        Shape::Single => Decomposition::single(a.n, a.sw, a.beta_k, bc1),
        Shape::Uniform => Decomposition::uniform(a.n, a.sw, a.beta_k, bc1, a.beta_pair),
    })
}

fn single_rank(a: &ComputeArgs) -> Result<(i64, i64)> {
    match (a.ranks.as_slice(), a.c1k.as_slice()) {
        ([r], [c]) => Ok((*r, *c)),
        ([r], []) => Ok((*r, 0)),
        _ => Err(Error::InvalidInput("this family takes one --ranks value and one --c1K value".into())),
    }
}

fn compute(cli: &Cli, a: &ComputeArgs) -> Result<String> {
    let trunc = cli.trunc.unwrap_or(10);
    if a.n == 0 {
        return Err(Error::InvalidInput("--N must be at least 1".into()));
    }
    let surface = SurfaceNumbers { k2: a.k2, chi_o: a.chi };
    // rationality is proven for beta = 0, and for N = 1; other runs only test instances
    let label = (a.n > 1 && a.shape != Shape::Zero).then_some(CONJECTURAL);
    let s = match a.family {
        Family::Ktheory => {
            if a.ranks.is_empty() {
                return Err(Error::InvalidInput("--ranks is required for --family ktheory".into()));
            }
            let ks = if a.k.is_empty() { vec![1; a.ranks.len()] } else { a.k.clone() };
            let c1k = if a.c1k.is_empty() { vec![0; a.ranks.len()] } else { a.c1k.clone() };
            let dec = decomposition(a, a.ranks.len())?;
            ktheory_series(&a.ranks, &ks, a.n, &surface, &c1k, &[dec], trunc)?
        }
        Family::Verlinde | Family::Segre => {
            let (r, c1k) = single_rank(a)?;
            let dec = decomposition(a, 1)?;
            if a.family == Family::Verlinde {
                verlinde_series(a.n, r, &surface, c1k, &[dec], trunc)?
            } else {
                segre_series(a.n, r, &surface, c1k, &[dec], trunc)?
            }
        }
        Family::Cobordism => {
            if a.n != 1 {
                return Err(Error::UnsupportedGenus("cobordism series are only supported for N = 1".into()));
            }
            let y = parse_rat(&need(&a.y, "y", "cobordism")?)?;
            let g = Series::from_rats(&(), &[rat(1), rat(0), y], trunc + a.beta_k.max(0) + 4).with_var("x");
            cobordism_series(&g, a.k2, a.beta_k, a.sw, trunc)?.truncate(trunc)
        }
        Family::Closed => closed(a, trunc)?,
        Family::Pg0 => {
            let (r, c1k) = single_rank(a)?;
            let inp = Pg0Input {
                surface,
                alpha: KClassNumbers { rank: r, c1k, c1sq: a.c1sq, c2: a.c2 },
                beta2: a.beta2,
                beta_k: a.beta_k,
                beta_c1: a.beta_c1.first().copied().unwrap_or(0),
            };
            pg0_series(&inp, trunc)?
        }
        Family::Rank1 => rank1_series(a.chi, a.k2, trunc)?,
    };
    let label = if matches!(a.family, Family::Ktheory | Family::Verlinde | Family::Segre) { label } else { None };
    Ok(emit_series(cli, &s, label))
}

fn opt_rat(v: &Option<String>, flag: &str) -> Result<Rat> {
    parse_rat(&need(v, flag, "closed")?)
}

fn closed(a: &ComputeArgs, trunc: i64) -> Result<Series<Rat>> {
    let name = need(&a.name, "name", "closed")?;
    let r = a.ranks.first().copied().unwrap_or(0);
    let c1k = a.c1k.first().copied().unwrap_or(0);
    let n = a.n as i64;
    let form = match name.as_str() {
        "taut0" => ClosedForm::Taut0,
        "taut1" => ClosedForm::Taut1 { k2: a.k2, c1k, rank: r },
        "taut2" => ClosedForm::Taut2 { n, k2: a.k2, c1k, rank: r },
        "taut3" => ClosedForm::Taut3 {
            n,
            sw_beta: a.sw,
            c1k,
            beta_c1: a.beta_c1.first().copied().unwrap_or(0),
        },
        "taut4" => ClosedForm::Taut4 { n: a.n, k2: a.k2, sw: a.sw, c1k },
        "ee" => ClosedForm::Ee { k2: a.k2, c1k, rank: r },
        "eef" => ClosedForm::Eef { c1k },
        "zbarpg" => ClosedForm::Zbarpg {
            nu: need(&a.nu, "nu", "closed")?,
            chi_alpha: opt_rat(&a.chi_alpha, "chi-alpha")?,
            chi_kinv_alpha: opt_rat(&a.chi_kinv_alpha, "chi-kinv-alpha")?,
        },
        "egl" => ClosedForm::EglNonvirtual { chi_alpha: opt_rat(&a.chi_alpha, "chi-alpha")?, chi_o: a.chi },
        "rank1-chi0" => ClosedForm::Rank1Chi0 { k2: a.k2 },
        "rank1-chi1" => ClosedForm::Rank1Chi1 { k2: a.k2 },
        other => return Err(Error::InvalidInput(format!("--name: unknown closed form `{other}`"))),
    };
    form.evaluate(trunc)
}

fn check(cli: &Cli, a: &CheckArgs) -> Outcome {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::from_name(&a.suite) {
            Some(s) => vec![s],
            None => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Outcome::err(
                    2,
                    format!("error: --suite: unknown suite `{}` (expected one of: all, {})\n", a.suite, names.join(", ")),
                );
            }
        }
    };
    let opts = SuiteOptions { trunc: cli.trunc, max_n: a.max_n, seed: cli.seed };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        match run_suite(s, &opts) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::err(exit_code(&e), format!("error: suite {}: {e}\n", s.name())),
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    let stdout = match cli.format {
        Format::Json => {
            let v: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
            format!("{}\n", json!({"passed": passed, "suites": v}))
        }
        Format::Text => reports.iter().map(|r| r.to_text()).collect(),
    };
    let mut stderr = String::new();
    if let Some((r, (c, m))) = reports.iter().find_map(|r| r.first_mismatch().map(|x| (r, x))) {
        let at = m.power.map(|p| format!("q^{p}")).unwrap_or_else(|| "value".into());
        stderr = format!(
            "first discrepancy: suite {} check `{}` case {} at {at}: expected {}, got {} (expected from {}; {})\n",
            r.suite, c.name, m.case, m.expected, m.got, m.provenance, c.anchor
        );
    }
    Outcome { stdout, stderr, code: if passed { 0 } else { 1 } }
}

fn fit(cli: &Cli, a: &FitArgs) -> Result<String> {
    let text = if a.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&a.input).map_err(|e| Error::InvalidInput(format!("--in {}: {e}", a.input)))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("--in: {e}")))?;
    let mut s = Series::<Rat>::from_json(&v)?;
    if let Some(t) = cli.trunc {
        s = s.truncate(t.min(s.trunc()));
    }
    let mut req = FitRequest::new(&s, a.deg[0], a.deg[1]);
    req.surplus = a.surplus;
    let out = fit_rational(&req)?;
    Ok(match cli.format {
        Format::Json => format!("{}\n", out.to_json()),
        Format::Text => match out.fit() {
            Some(f) => {
                let (k, all) = f.pole_order_at_one();
                let p = |c: &[Rat]| c.iter().map(fmt_rat).collect::<Vec<_>>().join(" ");
                format!(
                    "num: {}\nden: {}\nshift: {}\npoleAtOne: {k}\nallPolesAtOne: {all}\n",
                    p(f.num.coeffs()),
                    p(f.den.coeffs()),
                    f.shift
                )
            }
            None => format!("noFit: bounds {} {}\n", a.deg[0], a.deg[1]),
        },
    })
}

fn eval_point(cli: &Cli, a: &OracleArgs) -> Result<Option<EvalPoint>> {
    if a.point.is_empty() {
        return Ok(if cli.seed.is_some() { None } else { Some(EvalPoint::standard()) });
    }
    if a.point.len() != 6 {
        return Err(Error::InvalidInput("--point takes six values t1,t2,u,y,m,a".into()));
    }
    let v = a.point.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
    Ok(Some(EvalPoint {
        t1: v[0].clone(),
        t2: v[1].clone(),
        u: v[2].clone(),
        y: v[3].clone(),
        m: v[4].clone(),
        a: v[5].clone(),
    }))
}

/// Run `f` at the explicit point, or at seeded points with retries.
fn at_point<T>(cli: &Cli, a: &OracleArgs, f: impl FnMut(&EvalPoint) -> Result<T>) -> Result<T> {
    let mut f = f;
    match eval_point(cli, a)? {
        Some(p) => f(&p),
        None => Ok(with_retries(cli.seed.unwrap_or(0), f)?.0),
    }
}

fn oracle(cli: &Cli, a: &OracleArgs) -> Result<String> {
    let v = match a.kind {
        OracleKind::FSymmetry => {
            let r = at_point(cli, a, |p| f_symmetry(a.order, p))?;
            serde_json::to_value(&r).expect("plain data")
        }
        OracleKind::WStar => {
            let trunc = cli.trunc.unwrap_or(4);
            let r = at_point(cli, a, |p| w_star_check(p, trunc))?;
            let opt = |s: &Option<Series<Rat>>| s.as_ref().map(series_json).unwrap_or(Value::Null);
            json!({
                "point": serde_json::to_value(&r.point).expect("plain data"),
                "holds": r.holds(),
                "direct": series_json(&r.direct),
                "viaF": opt(&r.via_f),
                "switched": opt(&r.switched),
                "closed": series_json(&r.closed),
            })
        }
        OracleKind::Lagrange => {
            if a.phi.is_empty() {
                return Err(Error::InvalidInput("--phi is required for --kind lagrange".into()));
            }
            let trunc = cli.trunc.unwrap_or(10);
            let c = a.phi.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
            series_json(&lagrange_oracle(&Series::from_rats(&(), &c, trunc), trunc)?)
        }
        OracleKind::Partitions => {
            let ps: Vec<Value> = partitions(a.order)
                .iter()
                .map(|l| json!({"parts": l.0, "tangentWeights": l.tangent_weights()}))
                .collect();
            json!({"n": a.order, "count": ps.len(), "partitions": ps})
        }
    };
    Ok(match cli.format {
        Format::Json => format!("{v}\n"),
        Format::Text => format!("{}\n", serde_json::to_string_pretty(&v).expect("plain data")),
    })
}

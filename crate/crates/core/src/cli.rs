//! Command-line front end: `verify`, `expand`, `check` and `datum`.
//!
//! Exit codes: 0 on success, 1 when an asserting suite or a `check` fails,
//! 2 on usage, configuration or parse errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cartan::{CartanDatum, NodeClass};
use crate::drinfeld::{verify_classical_suite, ClassicalGrid};
use crate::exprdsl::{eval, infer_target, parse, parse_equation, Evaluator, ParseError, Target, Value};
use crate::iqg::{
    check_braid_experimental, verify_recursion, verify_serre_minimal, verify_support_lemmas, verify_vanishing, BraidGrid,
    RecursionGrid, SerreMinimalGrid, SupportGrid, VanishingGrid,
};
use crate::qidentities::{verify_appb_suite, verify_g_suite, verify_t_suite, AppBGrid, GGrid, Span, TGrid};
use crate::qscalar::{parse_scalar, Parity, QScalar};
use crate::report::Report;
use crate::udot::{verify_idp_expansion, UdotGrid};
use crate::SuiteOptions;

/// Every suite known to `verify`, in run order.
pub const SUITES: [&str; 10] = [
    "qcomb-G",
    "qcomb-T",
    "qcomb-appB",
    "classical",
    "serre-minimal",
    "recursion",
    "vanishing",
    "support",
    "udot-idp",
    "braid-experimental",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite `{0}` (known: {known})", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("bad range `{0}`: expected `a..b` or a single integer")]
    BadRange(String),
    #[error("{0}")]
    Config(String),
    #[error("cannot read {}: {}", .0.display(), .1)]
    Io(PathBuf, std::io::Error),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    /// The documented default ranges.
    #[default]
    Default,
    /// Small ranges for smoke runs.
    Quick,
}

/// Parameter overrides from the command line. `None` keeps the grid's own value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub n: Option<Span>,
    pub m: Option<Span>,
    pub t: Option<Span>,
    pub e: Option<Vec<i64>>,
    pub parity: Option<Vec<Parity>>,
}

#[derive(Clone, Debug, Default)]
pub struct RunSpec {
    pub grid: GridKind,
    pub overrides: Overrides,
    pub datum: Option<CartanDatum>,
    pub opts: SuiteOptions,
}

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_span(s: &str) -> Result<Span, CliError> {
    let bad = || CliError::BadRange(s.to_string());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(Span::new(lo, hi))
}

fn warn(flag: &str, suite: &str) {
    eprintln!("warning: {flag} does not apply to suite {suite}; ignored");
}

fn nonneg(flag: &str, s: Span) -> Result<(), CliError> {
    if s.lo < 0 {
        return Err(CliError::Config(format!("{flag} must be nonnegative, got {}..{}", s.lo, s.hi)));
    }
    Ok(())
}

/// `(a12, a21)` of a split rank-two datum, if that is what we have.
fn rank2_split(d: &CartanDatum) -> Option<(i64, i64)> {
    if d.rank() == 2 && d.node_class(0) == NodeClass::Split && d.node_class(1) == NodeClass::Split {
        Some((d.a(0, 1), d.a(1, 0)))
    } else {
        None
    }
}

fn datum_a12(d: &CartanDatum, suite: &str) -> Result<i64, CliError> {
    match rank2_split(d) {
        Some((a12, -1)) if a12 < 0 => Ok(a12),
        _ => Err(CliError::Config(format!(
            "suite {suite} needs a split rank-2 datum with a_21 = -1 and a_12 < 0"
        ))),
    }
}

/// Runs one suite with the given grid size, overrides and optional datum.
pub fn run_suite(name: &str, spec: &RunSpec) -> Result<Report, CliError> {
    let o = &spec.overrides;
    let quick = spec.grid == GridKind::Quick;
    if let Some(n) = o.n {
        nonneg("--n", n)?;
    }
    if let Some(t) = o.t {
        nonneg("--t", t)?;
    }
    let opts = &spec.opts;
    let report = match name {
        "qcomb-G" => {
            let mut g = GGrid::default();
            if quick {
                g = GGrid { w: Span::new(-2, 2), u: Span::new(0, 2), ell: Span::new(0, 2), p: Span::new(-1, 1), k: Span::new(-1, 1) };
            }
            unused(o, spec, name, &[]);
            verify_g_suite(&g, opts)
        }
        "qcomb-T" => {
            let mut g = TGrid::default();
            if quick {
                g.w = Span::new(-1, 1);
                g.u = Span::new(0, 2);
                g.l = Span::new(0, 2);
                g.mu = Span::new(0, 1);
                g.alpha = vec![1, 2];
            }
            unused(o, spec, name, &[]);
            verify_t_suite(&g, opts)
        }
        "qcomb-appB" => {
            let mut g = AppBGrid::default();
            if quick {
                g.m = Span::new(0, 4);
                g.a = Span::new(-2, 0);
                g.n = Span::new(0, 2);
            }
            if let Some(n) = o.n {
                g.n = n;
            }
            if let Some(m) = o.m {
                nonneg("--m", m)?;
                g.m = m;
            }
            if let Some(e) = &o.e {
                g.e = e.clone();
            }
            unused(o, spec, name, &["n", "m", "e"]);
            verify_appb_suite(&g, opts)
        }
        "classical" => {
            let mut g = ClassicalGrid::default();
            if quick {
                g = ClassicalGrid { a12: vec![-1, -2], n: vec![1, 2], m_extra: 1, e: g.e, t_max: 1 };
            }
            if let Some(n) = o.n {
                g.n = n.iter().filter(|&n| n >= 1).collect();
                if g.n.is_empty() {
                    return Err(CliError::Config("--n for classical must include some n >= 1".into()));
                }
            }
            if let Some(t) = o.t {
                g.t_max = t.hi;
            }
            if let Some(e) = &o.e {
                g.e = e.clone();
            }
            if let Some(d) = &spec.datum {
                g.a12 = vec![datum_a12(d, name)?];
            }
            unused(o, spec, name, &["n", "t", "e", "datum"]);
            verify_classical_suite(&g, opts)
        }
        "serre-minimal" => {
            let mut g = SerreMinimalGrid::default();
            if quick {
                g = SerreMinimalGrid { split: vec![(-1, 2)], t_max: 1, swapped_n_max: 1, mixed_n_max: 1, ..g };
            }
            if let Some(d) = &spec.datum {
                let a = datum_a12(d, name)?;
                g.split = vec![(a, match a { -1 => 3, -2 => 2, _ => 1 })];
            }
            if let Some(n) = o.n {
                g.n_min = n.lo;
                for s in &mut g.split {
                    s.1 = n.hi;
                }
                g.swapped_n_max = n.hi;
                g.mixed_n_max = n.hi;
            }
            if let Some(t) = o.t {
                g.t_max = t.hi;
            }
            if let Some(p) = &o.parity {
                g.pbar = p.clone();
            }
            unused(o, spec, name, &["n", "t", "parity", "datum"]);
            verify_serre_minimal(&g, opts)
        }
        "recursion" => {
            let mut g = RecursionGrid::default();
            if quick {
                g = RecursionGrid { a12: vec![-1], n_max: 1, m_extra: 1, ..g };
            }
            if let Some(d) = &spec.datum {
                g.a12 = vec![datum_a12(d, name)?];
            }
            if let Some(n) = o.n {
                g.n_min = n.lo;
                g.n_max = n.hi;
            }
            if let Some(m) = o.m {
                g.m = Some(m);
            }
            if let Some(e) = &o.e {
                g.e = e.clone();
            }
            if let Some(p) = &o.parity {
                g.pbar = p.clone();
            }
            unused(o, spec, name, &["n", "m", "e", "parity", "datum"]);
            verify_recursion(&g, opts)
        }
        "vanishing" => {
            let mut g = VanishingGrid::default();
            if quick {
                g = VanishingGrid { a12: vec![-1], n_max: 1, m_extra: 1, ..g };
            }
            if let Some(d) = &spec.datum {
                g.a12 = vec![datum_a12(d, name)?];
            }
            if let Some(n) = o.n {
                g.n_min = n.lo;
                g.n_max = n.hi;
            }
            if let Some(m) = o.m {
                g.m = Some(m);
            }
            if let Some(e) = &o.e {
                g.e = e.clone();
            }
            if let Some(p) = &o.parity {
                g.pbar = p.clone();
            }
            unused(o, spec, name, &["n", "m", "e", "parity", "datum"]);
            verify_vanishing(&g, opts)
        }
        "support" => {
            let mut g = SupportGrid::default();
            if quick {
                g = SupportGrid { b2r_max: 3, dp_max: 4, szz_m_max: 2, hos_n_max: 1, span_n_max: 3 };
            }
            unused(o, spec, name, &[]);
            verify_support_lemmas(&g, opts)
        }
        "udot-idp" => {
            let mut g = UdotGrid::default();
            if quick {
                g = UdotGrid { eps: vec![1], m_max: 2, lambda: (-2, 2), pbw_max: 2, label_max: 3, recursion_r_max: 3 };
            }
            if let Some(m) = o.m {
                nonneg("--m", m)?;
                g.m_max = m.hi;
            }
            unused(o, spec, name, &["m"]);
            verify_idp_expansion(&g, opts)
        }
        "braid-experimental" => {
            let mut g = BraidGrid::default();
            if quick {
                g = BraidGrid { cases: vec![(0, 0, 0), (-1, -1, 0)], e: vec![1], ..g };
            }
            if let Some(d) = &spec.datum {
                let (a12, a21) = rank2_split(d)
                    .ok_or_else(|| CliError::Config("suite braid-experimental needs a split rank-2 datum".into()))?;
                g.cases = vec![(a12, a21, 0), (a12, a21, 1)];
            }
            if let Some(e) = &o.e {
                g.e = e.clone();
            }
            if let Some(p) = &o.parity {
                g.pbar = p.clone();
            }
            unused(o, spec, name, &["e", "parity", "datum"]);
            check_braid_experimental(&g, opts)
        }
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };
    Ok(report)
}

fn unused(o: &Overrides, spec: &RunSpec, suite: &str, used: &[&str]) {
    let set = [
        ("n", o.n.is_some()),
        ("m", o.m.is_some()),
        ("t", o.t.is_some()),
        ("e", o.e.is_some()),
        ("parity", o.parity.is_some()),
        ("datum", spec.datum.is_some()),
    ];
    for (flag, given) in set {
        if given && !used.contains(&flag) {
            warn(&format!("--{flag}"), suite);
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "iquantum", version, about = "Exact verification of Serre type relations in quantum and iquantum groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate an expression and print its canonical form.
    Expand(ExprArgs),
    /// Check `lhs = rhs` (or `expr`, meaning `expr = 0`).
    Check(ExprArgs),
    /// Validate a Cartan datum file.
    Datum {
        file: PathBuf,
        /// Print the normalized JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Suite to run (repeatable).
    #[arg(long = "suite", value_name = "NAME", required_unless_present_any = ["all", "list"])]
    suites: Vec<String>,
    /// Run every suite.
    #[arg(long, conflicts_with = "suites")]
    all: bool,
    /// Print the suite registry and exit.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = GridKind::Default)]
    grid: GridKind,
    /// Split rank-2 datum replacing the built-in data of the rank-2 suites.
    #[arg(long)]
    datum: Option<PathBuf>,
    /// Range `a..b` for n (divided-power degree).
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    t: Option<String>,
    /// +1, -1 or both.
    #[arg(long, allow_hyphen_values = true)]
    e: Option<String>,
    /// even, odd or both.
    #[arg(long)]
    parity: Option<String>,
    /// Evaluate the mutated formulas instead (every asserting suite should then fail).
    #[arg(long)]
    mutate: bool,
    /// One JSON document per suite, then a summary document.
    #[arg(long)]
    json: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(clap::Args, Debug)]
struct ExprArgs {
    #[arg(long)]
    datum: PathBuf,
    /// Force the target algebra: `double` or `iquantum`. Inferred when omitted.
    #[arg(long)]
    target: Option<String>,
    /// JSON table `{"node": "scalar", ...}` specializing the Cartan part.
    #[arg(long)]
    varsigma: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    expr: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn load_datum(path: &Path) -> Result<CartanDatum, CliError> {
    CartanDatum::from_json(&read(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Reads a `{"node": "scalar"}` table. Keys are node names or 1-based positions.
fn load_varsigma(path: &Path, d: &CartanDatum) -> Result<BTreeMap<usize, QScalar>, CliError> {
    let raw: BTreeMap<String, String> = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (k, v) in raw {
        let idx = match d.nodes().iter().position(|n| *n == k) {
            Some(i) => i,
            None => match k.parse::<usize>() {
                Ok(i) if i >= 1 && i <= d.rank() => i - 1,
                _ => return Err(CliError::Config(format!("varsigma: unknown node `{k}`"))),
            },
        };
        let s = parse_scalar(&v).map_err(|e| CliError::Config(format!("varsigma `{k}`: {e}")))?;
        if s.is_zero() {
            return Err(CliError::Config(format!("varsigma `{k}` must be nonzero")));
        }
        out.insert(idx, s);
    }
    Ok(out)
}

fn overrides(a: &VerifyArgs) -> Result<Overrides, CliError> {
    let span = |s: &Option<String>| s.as_deref().map(parse_span).transpose();
    let e = match a.e.as_deref() {
        None => None,
        Some("both") => Some(vec![1, -1]),
        Some("+1") | Some("1") => Some(vec![1]),
        Some("-1") => Some(vec![-1]),
        Some(x) => return Err(CliError::Config(format!("--e expects +1, -1 or both, got `{x}`"))),
    };
    let parity = match a.parity.as_deref() {
        None => None,
        Some("both") => Some(Parity::both().to_vec()),
        Some(x) => Some(vec![Parity::parse(x).ok_or_else(|| {
            CliError::Config(format!("--parity expects even, odd or both, got `{x}`"))
        })?]),
    };
    Ok(Overrides { n: span(&a.n)?, m: span(&a.m)?, t: span(&a.t)?, e, parity })
}

fn verify(a: VerifyArgs) -> Result<i32, CliError> {
    if a.list {
        for s in SUITES {
            println!("{s}");
        }
        return Ok(0);
    }
    let names: Vec<String> = if a.all { SUITES.iter().map(|s| s.to_string()).collect() } else { a.suites.clone() };
    for n in &names {
        if !SUITES.contains(&n.as_str()) {
            return Err(CliError::UnknownSuite(n.clone()));
        }
    }
    if a.jobs == 0 {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }
    let spec = RunSpec {
        grid: a.grid,
        overrides: overrides(&a)?,
        datum: a.datum.as_deref().map(load_datum).transpose()?,
        opts: SuiteOptions { jobs: a.jobs, mutate: a.mutate },
    };
    let mut summary = Vec::new();
    let mut ok = true;
    let out = std::io::stdout();
    for n in &names {
        let r = run_suite(n, &spec)?;
        {
            let mut lock = out.lock();
            if a.json {
                let _ = writeln!(lock, "{}", serde_json::to_string(&r).expect("report serialization"));
            } else {
                let _ = write!(lock, "{}", r.render_text());
            }
            let _ = lock.flush();
        }
        if r.gating && !r.passed() {
            ok = false;
        }
        summary.push(serde_json::json!({
            "suite": r.suite, "checked": r.checked, "failed": r.failed,
            "gating": r.gating, "passed": r.passed(), "elapsed_ms": r.elapsed_ms,
        }));
    }
    let mut lock = out.lock();
    if a.json {
        let _ = writeln!(lock, "{}", serde_json::json!({ "summary": summary, "passed": ok }));
    } else {
        let _ = writeln!(lock, "overall: {}", if ok { "pass" } else { "FAIL" });
    }
    Ok(if ok { 0 } else { 1 })
}

fn caret(src: &str, e: &ParseError) -> String {
    format!("{e}\n  {src}\n  {}^", " ".repeat(src[..e.offset.min(src.len())].chars().count()))
}

fn target_of(a: &ExprArgs, inferred: Target) -> Result<Target, CliError> {
    match a.target.as_deref() {
        None => Ok(inferred),
        Some("double") | Some("dd") => Ok(Target::Double),
        Some("iquantum") | Some("i") => Ok(Target::Iquantum),
        Some(x) => Err(CliError::Config(format!("--target expects double or iquantum, got `{x}`"))),
    }
}

fn specialize(ev: &Evaluator, v: Value, vs: &BTreeMap<usize, QScalar>) -> Result<Value, CliError> {
    if vs.is_empty() {
        return Ok(v);
    }
    Ok(match v {
        Value::Iquantum(x) => {
            Value::Iquantum(ev.iquantum().specialize(&x, vs).map_err(|e| CliError::Config(e.to_string()))?)
        }
        Value::Double(x) => Value::Double(ev.double().specialize_cartan(&x, vs)),
    })
}

fn target_name(v: &Value) -> &'static str {
    match v {
        Value::Double(_) => "double",
        Value::Iquantum(_) => "iquantum",
    }
}

fn expand(a: ExprArgs) -> Result<i32, CliError> {
    let d = load_datum(&a.datum)?;
    let vs = a.varsigma.as_deref().map(|p| load_varsigma(p, &d)).transpose()?.unwrap_or_default();
    let ast = parse(&a.expr).map_err(|e| CliError::Config(caret(&a.expr, &e)))?;
    let target = target_of(&a, infer_target(&ast))?;
    let ev = Evaluator::new(&d);
    let v = eval(&ast, &ev, target).map_err(|e| CliError::Config(e.to_string()))?;
    let v = specialize(&ev, v, &vs)?;
    let text = ev.render(&v);
    if a.json {
        println!("{}", serde_json::json!({ "input": ast.render(), "target": target_name(&v), "value": text }));
    } else {
        println!("{text}");
    }
    Ok(0)
}

fn check(a: ExprArgs) -> Result<i32, CliError> {
    let d = load_datum(&a.datum)?;
    let vs = a.varsigma.as_deref().map(|p| load_varsigma(p, &d)).transpose()?.unwrap_or_default();
    let (lhs, rhs) = parse_equation(&a.expr).map_err(|e| CliError::Config(caret(&a.expr, &e)))?;
    let inferred = match (infer_target(&lhs), infer_target(&rhs)) {
        (Target::Iquantum, Target::Iquantum) => Target::Iquantum,
        _ => Target::Double,
    };
    let target = target_of(&a, inferred)?;
    let ev = Evaluator::new(&d);
    let l = eval(&lhs, &ev, target).map_err(|e| CliError::Config(e.to_string()))?;
    let r = eval(&rhs, &ev, target).map_err(|e| CliError::Config(e.to_string()))?;
    let mut diff = ev.sub(&l, &r);
    if !vs.is_empty() {
        // The Cartan quotient is taken in the double, where it is a plain substitution.
        if let Value::Iquantum(x) = &diff {
            diff = Value::Double(ev.iquantum().embed(x));
        }
        diff = specialize(&ev, diff, &vs)?;
    }
    let pass = ev.is_zero(&diff);
    if a.json {
        println!(
            "{}",
            serde_json::json!({
                "lhs": lhs.render(), "rhs": rhs.render(), "target": target_name(&diff),
                "passed": pass, "difference": if pass { String::new() } else { ev.render(&diff) },
            })
        );
    } else if pass {
        println!("pass: {} = {}", lhs.render(), rhs.render());
    } else {
        println!("FAIL: {} = {}", lhs.render(), rhs.render());
        println!("  difference = {}", ev.render(&diff));
    }
    Ok(if pass { 0 } else { 1 })
}

fn datum(file: &Path, json: bool) -> Result<i32, CliError> {
    let d = load_datum(file)?;
    if json {
        println!("{}", d.to_json());
    } else {
        let classes: Vec<String> = (0..d.rank())
            .map(|j| {
                let c = match d.node_class(j) {
                    NodeClass::Split => "split".to_string(),
                    NodeClass::Swapped => format!("swapped with {}", d.nodes()[d.tau(j)]),
                };
                format!("  {} (eps {}): {}", d.nodes()[j], d.eps(j), c)
            })
            .collect();
        println!("ok: rank {} datum", d.rank());
        for row in d.matrix() {
            println!("  {:?}", row);
        }
        println!("{}", classes.join("\n"));
    }
    Ok(0)
}

/// Entry point. Returns the process exit code instead of exiting.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let res = match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Expand(a) => expand(a),
        Cmd::Check(a) => check(a),
        Cmd::Datum { file, json } => datum(&file, json),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

//! Command-line front end for the `richardson` crate.
//!
//! [`run`] takes the full argument vector and returns the exit code with
//! whatever should go to standard output and standard error, so the whole
//! CLI can be driven from tests without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use richardson::multiplicity::{
    mult_all, mult_oracle, mult_product, mult_recursive, mult_richardson_det, GradedChainCounter,
};
use richardson::plucker::{plucker, random_matrix, MatrixPoint};
use richardson::poset::{self, Side};
use richardson::selftest::{default_contexts, run_selftest, SelftestReport, DEFAULT_SEED};
use richardson::smt::{self, count_standard, count_union, enumerate_standard, hilbert_polynomial};
use richardson::straighten::{straighten, Monomial};
use richardson::tangent::{smooth_product_check, tangent_basis};
use richardson::{Error, GrassContext, PluckerIndex, RichardsonId};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "richardson", version, about = "Exact invariants of Richardson varieties in G(d,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for the random-matrix oracles.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Ctx {
    /// Grassmannian as "d,n".
    #[arg(long = "grassmannian", value_name = "D,N")]
    grassmannian: String,
}

#[derive(Debug, Args)]
struct Variety {
    #[command(flatten)]
    ctx: Ctx,
    #[arg(long, value_name = "INDEX")]
    w: Option<String>,
    #[arg(long, value_name = "INDEX")]
    v: Option<String>,
}

#[derive(Debug, Args)]
struct AtPoint {
    #[command(flatten)]
    variety: Variety,
    #[arg(long, value_name = "INDEX")]
    tau: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bruhat order queries.
    Poset {
        #[arg(value_enum)]
        op: PosetOp,
        #[command(flatten)]
        variety: Variety,
        #[arg(long, value_name = "INDEX")]
        a: Option<String>,
        #[arg(long, value_name = "INDEX")]
        b: Option<String>,
        #[arg(long, value_name = "INDEX")]
        tau: Option<String>,
        #[arg(long, value_enum, default_value_t = SideArg::Plus)]
        side: SideArg,
    },
    /// Plücker coordinates of a matrix read from a file (a seeded random
    /// matrix when no file is given).
    Eval {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, value_name = "FILE")]
        matrix: Option<String>,
        #[arg(long, value_name = "INDEX")]
        theta: Option<String>,
    },
    /// Straighten a monomial such as "1,4;2,3".
    Straighten {
        monomial: String,
        #[command(flatten)]
        ctx: Ctx,
    },
    /// Standard monomials of degree m.
    Smt {
        #[arg(value_enum)]
        op: SmtOp,
        #[command(flatten)]
        variety: Variety,
        #[arg(long)]
        m: usize,
        /// Union component "w:v"; repeat for each component.
        #[arg(long = "part", value_name = "W:V")]
        parts: Vec<String>,
    },
    /// Hilbert polynomial and degree.
    Hilbert {
        #[command(flatten)]
        variety: Variety,
    },
    /// Zariski tangent space at e_tau.
    Tangent {
        #[command(flatten)]
        point: AtPoint,
    },
    /// Smoothness at e_tau of X_w^v, X_w and X^v.
    Smooth {
        #[command(flatten)]
        point: AtPoint,
    },
    /// Multiplicity at e_tau.
    Mult {
        #[command(flatten)]
        point: AtPoint,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Hilbert function of the tangent cone at e_tau for r = 0..=r-max.
    Cone {
        #[command(flatten)]
        point: AtPoint,
        #[arg(long, default_value_t = 8)]
        r_max: usize,
    },
    /// Exhaustive cross-verification, on G(2,4) and G(2,5) unless a
    /// Grassmannian is given.
    Selftest {
        #[arg(long = "grassmannian", value_name = "D,N")]
        grassmannian: Option<String>,
        /// Add G(3,6) to the default set.
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetOp {
    Enumerate,
    Leq,
    Meet,
    Join,
    Interval,
    Boundary,
    Length,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SmtOp {
    Count,
    Enum,
    Union,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Product,
    Determinant,
    Oracle,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Recursive => "recursive",
            Method::Product => "product",
            Method::Determinant => "determinant",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidIndex { .. }
            | Error::InvalidContext { .. }
            | Error::ContextMismatch
            | Error::MatrixShape { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Response {
    context: Option<GrassContext>,
    query: Value,
    result: Value,
    method: &'static str,
    text: String,
    code: i32,
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                };
            }
            let text = args
                .windows(2)
                .any(|w| w[0] == "--format" && w[1] == "text")
                || args.iter().any(|a| a == "--format=text");
            let stdout = if text {
                String::new()
            } else {
                let first = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
                format!("{}\n", json!({ "error": first, "code": EXIT_USAGE }))
            };
            return Outcome {
                code: EXIT_USAGE,
                stdout,
                stderr: rendered,
            };
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(r) => {
            let stdout = match format {
                Format::Json => {
                    let body = json!({
                        "context": r.context.map(|c| c.to_string()),
                        "query": r.query,
                        "result": r.result,
                        "method": r.method,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&body).expect("json"))
                }
                Format::Text => r.text,
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let (code, message) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Domain(m) => (EXIT_DOMAIN, m),
            };
            match format {
                Format::Json => Outcome {
                    code,
                    stdout: format!("{}\n", json!({ "error": message, "code": code })),
                    stderr: String::new(),
                },
                Format::Text => Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {message}\n"),
                },
            }
        }
    }
}

fn dispatch(cli: Cli) -> Res<Response> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match cli.command {
        Command::Poset {
            op,
            variety,
            a,
            b,
            tau,
            side,
        } => poset_cmd(op, &variety, a, b, tau, side),
        Command::Eval { ctx, matrix, theta } => eval_cmd(&ctx, matrix, theta, seed),
        Command::Straighten { monomial, ctx } => straighten_cmd(&ctx, &monomial),
        Command::Smt {
            op,
            variety,
            m,
            parts,
        } => smt_cmd(op, &variety, m, &parts),
        Command::Hilbert { variety } => hilbert_cmd(&variety),
        Command::Tangent { point } => tangent_cmd(&point),
        Command::Smooth { point } => smooth_cmd(&point),
        Command::Mult { point, method } => mult_cmd(&point, method),
        Command::Cone { point, r_max } => cone_cmd(&point, r_max),
        Command::Selftest { grassmannian, deep } => selftest_cmd(grassmannian, deep, seed),
    }
}

fn context(c: &Ctx) -> Res<GrassContext> {
    Ok(GrassContext::parse(&c.grassmannian)?)
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> Res<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

/// X_w^v with w defaulting to the top and v to the bottom.
fn variety(v: &Variety) -> Res<(GrassContext, RichardsonId)> {
    let ctx = context(&v.ctx)?;
    let w = match &v.w {
        Some(s) => ctx.parse_index(s)?,
        None => ctx.top(),
    };
    let low = match &v.v {
        Some(s) => ctx.parse_index(s)?,
        None => ctx.bottom(),
    };
    Ok((ctx, RichardsonId::new(w, low)?))
}

fn at_point(p: &AtPoint) -> Res<(GrassContext, RichardsonId, PluckerIndex)> {
    let (ctx, x) = variety(&p.variety)?;
    let tau = ctx.parse_index(&p.tau)?;
    Ok((ctx, x, tau))
}

fn variety_query(x: &RichardsonId) -> Value {
    json!({ "w": x.w().to_string(), "v": x.v().to_string() })
}

fn point_query(x: &RichardsonId, tau: &PluckerIndex) -> Value {
    json!({ "w": x.w().to_string(), "v": x.v().to_string(), "tau": tau.to_string() })
}

/// Integers that fit in i64 become JSON numbers, larger ones strings.
pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn index_list(xs: &[PluckerIndex]) -> Value {
    Value::Array(xs.iter().map(|t| json!(t.to_string())).collect())
}

fn lines(xs: &[PluckerIndex]) -> String {
    xs.iter().map(|t| format!("{t}\n")).collect()
}

fn response(ctx: GrassContext, query: Value, result: Value, method: &'static str, text: String) -> Response {
    Response {
        context: Some(ctx),
        query,
        result,
        method,
        text,
        code: EXIT_OK,
    }
}

fn poset_cmd(
    op: PosetOp,
    variety_args: &Variety,
    a: Option<String>,
    b: Option<String>,
    tau: Option<String>,
    side: SideArg,
) -> Res<Response> {
    let ctx = context(&variety_args.ctx)?;
    let pair = || -> Res<(PluckerIndex, PluckerIndex)> {
        Ok((
            ctx.parse_index(required(&a, "a")?)?,
            ctx.parse_index(required(&b, "b")?)?,
        ))
    };
    let r = match op {
        PosetOp::Enumerate => {
            let all = poset::enumerate_indices(ctx);
            response(ctx, json!({}), index_list(&all), "lexicographic", lines(&all))
        }
        PosetOp::Leq => {
            let (a, b) = pair()?;
            let le = a.leq(&b)?;
            response(ctx, json!({"a": a.to_string(), "b": b.to_string()}), json!(le), "componentwise", format!("{le}\n"))
        }
        PosetOp::Meet | PosetOp::Join => {
            let (a, b) = pair()?;
            let (c, method) = if op == PosetOp::Meet {
                (poset::meet(&a, &b)?, "componentwise-min")
            } else {
                (poset::join(&a, &b)?, "componentwise-max")
            };
            response(ctx, json!({"a": a.to_string(), "b": b.to_string()}), json!(c.to_string()), method, format!("{c}\n"))
        }
        PosetOp::Length => {
            let a = ctx.parse_index(required(&a, "a")?)?;
            let l = poset::length(&a);
            response(ctx, json!({"a": a.to_string()}), json!(l), "sum-of-shifts", format!("{l}\n"))
        }
        PosetOp::Interval => {
            let (_, x) = variety(variety_args)?;
            let elems = poset::interval(&x);
            let covers: Vec<Value> = elems
                .iter()
                .flat_map(|hi| {
                    poset::lower_covers(hi)
                        .into_iter()
                        .filter(|lo| x.contains(lo))
                        .map(move |lo| json!([hi.to_string(), lo.to_string()]))
                })
                .collect();
            let result = json!({
                "dim": poset::dim_richardson(&x),
                "elements": index_list(&elems),
                "covers": covers,
            });
            response(ctx, variety_query(&x), result, "bruhat-interval", lines(&elems))
        }
        PosetOp::Boundary => {
            let (_, x) = variety(variety_args)?;
            let tau = ctx.parse_index(required(&tau, "tau")?)?;
            let (s, name) = match side {
                SideArg::Plus => (Side::Plus, "plus"),
                SideArg::Minus => (Side::Minus, "minus"),
            };
            let parts = poset::boundary(&x, &tau, s)?;
            let mut query = point_query(&x, &tau);
            query["side"] = json!(name);
            response(ctx, query, index_list(&parts), "covers", lines(&parts))
        }
    };
    Ok(r)
}

fn eval_cmd(c: &Ctx, matrix: Option<String>, theta: Option<String>, seed: u64) -> Res<Response> {
    let ctx = context(c)?;
    let (point, source) = match &matrix {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            (MatrixPoint::parse(ctx, &text)?, json!(path))
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (random_matrix(ctx, &mut rng), json!({ "random_seed": seed }))
        }
    };
    let thetas = match &theta {
        Some(t) => vec![ctx.parse_index(t)?],
        None => poset::enumerate_indices(ctx),
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    for t in &thetas {
        let value = plucker(&point, t)?;
        writeln!(text, "p[{t}] = {value}").unwrap();
        rows.push(json!({ "theta": t.to_string(), "value": value.to_string() }));
    }
    let matrix_rows: Vec<Value> = point
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect()))
        .collect();
    let query = json!({ "matrix": source, "theta": theta, "rows": matrix_rows });
    Ok(response(ctx, query, Value::Array(rows), "exact-minors", text))
}

fn straighten_cmd(c: &Ctx, text: &str) -> Res<Response> {
    let ctx = context(c)?;
    let m = Monomial::parse(ctx, text)?;
    let combo = straighten(&m)?;
    let terms: Vec<Value> = combo
        .terms()
        .map(|(mono, coef)| {
            json!({
                "coefficient": big_json(coef),
                "factors": mono.factors().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let out = format!("{m} = {combo}\n");
    Ok(response(ctx, json!({ "monomial": m.to_string() }), Value::Array(terms), "shuffle-relations", out))
}

fn parse_part(ctx: GrassContext, s: &str) -> Res<RichardsonId> {
    let (w, v) = s
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("component {s:?} is not of the form w:v")))?;
    Ok(RichardsonId::new(ctx.parse_index(w)?, ctx.parse_index(v)?)?)
}

fn smt_cmd(op: SmtOp, variety_args: &Variety, m: usize, parts: &[String]) -> Res<Response> {
    if op == SmtOp::Union {
        let ctx = context(&variety_args.ctx)?;
        let xs = parts
            .iter()
            .map(|p| parse_part(ctx, p))
            .collect::<Res<Vec<_>>>()?;
        let count = count_union(&xs, m)?;
        let names: Vec<String> = xs.iter().map(|x| format!("{}:{}", x.w(), x.v())).collect();
        let kept: Vec<String> = smt::prune_components(&xs)
            .iter()
            .map(|x| format!("{}:{}", x.w(), x.v()))
            .collect();
        let result = json!({ "m": m, "count": big_json(&count), "components": kept });
        return Ok(response(ctx, json!({ "parts": names, "m": m }), result, "union-chain-dp", format!("{count}\n")));
    }
    let (ctx, x) = variety(variety_args)?;
    let mut query = variety_query(&x);
    query["m"] = json!(m);
    match op {
        SmtOp::Count => {
            let count = count_standard(&x, m);
            let result = json!({ "m": m, "count": big_json(&count) });
            Ok(response(ctx, query, result, "chain-dp", format!("{count}\n")))
        }
        _ => {
            let chains = enumerate_standard(&x, m);
            let mut text = String::new();
            let listed: Vec<Value> = chains
                .iter()
                .map(|c| {
                    let names: Vec<String> = c.chain.iter().map(|t| t.to_string()).collect();
                    writeln!(text, "{}", names.join(" >= ")).unwrap();
                    json!(names)
                })
                .collect();
            let result = json!({ "m": m, "count": chains.len(), "chains": listed });
            Ok(response(ctx, query, result, "enumeration", text))
        }
    }
}

fn hilbert_cmd(variety_args: &Variety) -> Res<Response> {
    let (ctx, x) = variety(variety_args)?;
    let h = hilbert_polynomial(&x)?;
    let deg = smt::degree_of_variety(&x)?;
    let coefficients: Vec<String> = h.coefficients().iter().map(|c| c.to_string()).collect();
    let result = json!({
        "coefficients": coefficients,
        "degree": h.degree(),
        "variety_degree": big_json(&deg),
    });
    let text = format!("P(m) = {}\ndegree {}\nvariety degree {deg}\n", h.poly, h.degree());
    Ok(response(ctx, variety_query(&x), result, "newton-interpolation", text))
}

fn tangent_cmd(p: &AtPoint) -> Res<Response> {
    let (ctx, x, tau) = at_point(p)?;
    let basis = tangent_basis(&x, &tau)?;
    let mut text = format!("dim {} (variety dim {})\n", basis.dim(), poset::dim_richardson(&x));
    let rows: Vec<Value> = basis
        .reflections()
        .iter()
        .map(|(r, t)| {
            writeln!(text, "{} -> {}  {t}", r.removed, r.added).unwrap();
            json!({ "removed": r.removed, "added": r.added, "reflected": t.to_string() })
        })
        .collect();
    Ok(response(ctx, point_query(&x, &tau), Value::Array(rows), "root-exchanges", text))
}

fn smooth_cmd(p: &AtPoint) -> Res<Response> {
    let (ctx, x, tau) = at_point(p)?;
    let r = smooth_product_check(&x, &tau)?;
    let result = json!({
        "richardson": r.richardson,
        "schubert": r.schubert,
        "opposite": r.opposite,
        "conjunction_holds": r.conjunction_holds(),
    });
    let text = format!(
        "richardson {}\nschubert {}\nopposite {}\n",
        r.richardson, r.schubert, r.opposite
    );
    Ok(response(ctx, point_query(&x, &tau), result, "tangent-dimension", text))
}

fn mult_cmd(p: &AtPoint, method: Method) -> Res<Response> {
    let (ctx, x, tau) = at_point(p)?;
    let mut query = point_query(&x, &tau);
    query["method"] = json!(method.name());
    let single = |m: BigInt| -> Res<Response> {
        Ok(response(ctx, query.clone(), big_json(&m), method.name(), format!("{m}\n")))
    };
    match method {
        Method::Recursive => single(mult_recursive(&x, &tau)?),
        Method::Product => single(mult_product(&x, &tau)?),
        Method::Determinant => single(mult_richardson_det(&x, &tau)?),
        Method::Oracle => single(mult_oracle(&x, &tau)?),
        Method::All => {
            let r = mult_all(&x, &tau)?;
            let result = json!({
                "recursive": big_json(&r.recursive),
                "product": big_json(&r.product),
                "determinantal": big_json(&r.determinantal),
                "oracle": big_json(&r.oracle),
                "agree": r.agree,
                "combined_recursion": r.combined_recursion,
            });
            let text = format!(
                "recursive {}\nproduct {}\ndeterminantal {}\noracle {}\nagree {}\n",
                r.recursive, r.product, r.determinantal, r.oracle, r.agree
            );
            let mut resp = response(ctx, query, result, "all", text);
            if !r.agree || r.combined_recursion == Some(false) {
                resp.code = EXIT_DOMAIN;
            }
            Ok(resp)
        }
    }
}

fn cone_cmd(p: &AtPoint, r_max: usize) -> Res<Response> {
    let (ctx, x, tau) = at_point(p)?;
    let mut counter = GradedChainCounter::new(&x, &tau)?;
    let mut text = String::new();
    let series: Vec<Value> = (0..=r_max)
        .map(|r| {
            let h = counter.hilbert(r);
            writeln!(text, "{r} {h}").unwrap();
            big_json(&h)
        })
        .collect();
    let mut query = point_query(&x, &tau);
    query["r_max"] = json!(r_max);
    Ok(response(ctx, query, json!({ "series": series }), "graded-chains", text))
}

fn selftest_json(report: &SelftestReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "context": c.context.to_string(),
                "name": c.name,
                "cases": c.cases,
                "passed": c.passed(),
                "failure_count": c.failure_count,
                "failures": c.failures,
                "note": c.note,
            })
        })
        .collect();
    json!({ "seed": report.seed, "passed": report.passed(), "checks": checks })
}

fn selftest_cmd(grassmannian: Option<String>, deep: bool, seed: u64) -> Res<Response> {
    let contexts = match &grassmannian {
        Some(g) => vec![GrassContext::parse(g)?],
        None => default_contexts(deep),
    };
    let report = run_selftest(&contexts, seed);
    let names: Vec<String> = contexts.iter().map(|c| c.to_string()).collect();
    Ok(Response {
        context: grassmannian.as_ref().map(|_| contexts[0]),
        query: json!({ "contexts": names, "deep": deep, "seed": seed }),
        result: selftest_json(&report),
        method: "exhaustive",
        text: report.render_text(),
        code: if report.passed() { EXIT_OK } else { EXIT_SELFTEST },
    })
}

//! Command-line front end.
//!
//! Every command writes deterministic output to stdout. Exit codes: 0 on
//! success, 1 when a verification or conjecture check fails, 2 on a usage
//! error, 3 when the oracle node cap is exceeded.

pub mod cache;

use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, UniPoly};
use crate::genfun::GenFunReport;
use crate::morris::{ct_morris, MorrisParams};
use crate::oracle::{assemble_hn, count_magic_squares, ct_weak_composition, dn_point, hn_point, DEFAULT_MAX_NODES};
use crate::reconstruct::{format_factored, VerifyReport};
use crate::recursion::{check_detc, det_c, RecursionForm};
use crate::Error;

pub use cache::TOOL_VERSION;

#[derive(Debug, Parser)]
#[command(name = "birkhoff-hn", version, about = "Exact h_n(t) for the Birkhoff polytope constant term")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, default_value = "cache", global = true)]
    pub cache_dir: PathBuf,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Node cap for constant-term extraction.
    #[arg(long, default_value_t = DEFAULT_MAX_NODES, global = true)]
    pub max_nodes: u64,
    /// Worker threads for range commands.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Suppress the version header line.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h_n(t) in factored form.
    Hn(NArg),
    /// The recursion satisfied by h_n(t).
    Recursion(NArg),
    /// The Morris constant term M(n; k1, k2, k3).
    Morris {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        #[arg(long)]
        k3: u32,
    },
    /// h*_n(y) and its shape properties.
    Genfun(NArg),
    /// det C for one n or a range, optionally checked against its conjectured factorization.
    Detc {
        #[command(flatten)]
        sel: NSelect,
        #[arg(long)]
        check: bool,
    },
    /// Structural checks on h_n and h*_n over a range of n.
    Verify {
        #[command(flatten)]
        sel: NSelect,
    },
    /// Direct constant-term and counting oracles.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        ell: Option<i64>,
        #[arg(long)]
        k1: Option<u32>,
        #[arg(long)]
        k2: Option<u32>,
        #[arg(long)]
        k3: Option<u32>,
        /// Weak composition for `composition`, e.g. 2,1,0.
        #[arg(long, value_delimiter = ',')]
        m: Vec<u32>,
    },
}

#[derive(Debug, Args)]
pub struct NArg {
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct NSelect {
    #[arg(long, conflicts_with = "range")]
    pub n: Option<u32>,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<(u32, u32)>,
}

impl NSelect {
    fn values(&self) -> Result<Vec<u32>, Error> {
        match (self.n, self.range) {
            (Some(n), None) => Ok(vec![n]),
            (None, Some((a, b))) => Ok((a..=b).collect()),
            _ => Err(Error::invalid("n", "one of --n or --range is required")),
        }
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    /// h_n(t) by constant-term extraction
    Hn,
    /// D_n(ell, t, k1, k2, k3)
    Dn,
    /// CT of the composition term H^m at t
    Composition,
    /// H_n(t) assembled from all composition terms
    Ehrhart,
    /// n x n magic squares with line sum t
    Magic,
}

/// JSON document: version, `n`, kind tag, then the payload fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub tool_version: String,
    pub n: u32,
    pub result_kind: String,
    #[serde(flatten)]
    pub payload: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnPayload {
    #[serde(rename = "N")]
    pub big_n: i64,
    #[serde(with = "crate::serde_rational::poly")]
    pub p: UniPoly,
    #[serde(with = "crate::serde_rational::points")]
    pub values_used: Vec<(i64, Rational)>,
    pub factored: String,
    pub report: VerifyReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionPayload {
    pub form: RecursionForm,
    #[serde(with = "crate::serde_rational::poly_vec")]
    pub c: Vec<UniPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFunPayload {
    pub report: GenFunReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorrisPayload {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetcPayload {
    #[serde(with = "crate::serde_rational::poly")]
    pub det: UniPoly,
    pub factored: String,
    pub conjecture: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub report: VerifyReport,
    pub genfun: GenFunReport,
    pub detc: Option<bool>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePayload {
    pub kind: OracleKind,
    pub t: i64,
    #[serde(with = "crate::serde_rational::rational")]
    pub value: Rational,
}

pub fn envelope<T>(n: u32, kind: &str, payload: T) -> Envelope<T> {
    Envelope {
        tool_version: TOOL_VERSION.to_string(),
        n,
        result_kind: kind.to_string(),
        payload,
    }
}

/// A failure mapped to an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceExhausted { .. } => 3,
            Error::InvalidArgument { .. } | Error::Hypothesis(_) | Error::Domain(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn cache_dir(&self) -> Option<&std::path::Path> {
        (!self.opts.no_cache).then_some(self.opts.cache_dir.as_path())
    }

    fn json<T: Serialize>(&mut self, doc: &T) -> Result<(), Failure> {
        let s = serde_json::to_string(doc).map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })?;
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn text(&self) -> bool {
        self.opts.format == Format::Text
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    if cli.global.format == Format::Text && !cli.global.quiet {
        let _ = writeln!(out, "# birkhoff-hn {TOOL_VERSION}");
    }
    let mut ctx = Ctx {
        opts: &cli.global,
        out,
    };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn need_n(n: u32, min: u32) -> Result<(), Failure> {
    if n < min {
        return Err(Error::invalid("n", format!("n >= {min} required, got {n}")).into());
    }
    Ok(())
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<i32, Failure> {
    match cmd {
        Command::Hn(NArg { n }) => cmd_hn(*n, ctx),
        Command::Recursion(NArg { n }) => cmd_recursion(*n, ctx),
        Command::Morris { n, k1, k2, k3 } => cmd_morris(MorrisParams::new(*n, *k1, *k2, *k3), ctx),
        Command::Genfun(NArg { n }) => cmd_genfun(*n, ctx),
        Command::Detc { sel, check } => cmd_detc(&sel.values()?, *check, ctx),
        Command::Verify { sel } => cmd_verify(&sel.values()?, ctx),
        Command::Oracle {
            kind,
            n,
            t,
            ell,
            k1,
            k2,
            k3,
            m,
        } => {
            let q = OracleQuery {
                kind: *kind,
                n: *n,
                t: *t,
                ell: *ell,
                k: (*k1, *k2, *k3),
                m: m.clone(),
            };
            cmd_oracle(&q, ctx)
        }
    }
}

fn cmd_hn(n: u32, ctx: &mut Ctx) -> Result<i32, Failure> {
    need_n(n, 2)?;
    let p = cache::get_or_compute(ctx.cache_dir(), n, ctx.opts.max_nodes)?;
    let factored = format_factored(&p.hn.polynomial());
    if ctx.text() {
        writeln!(ctx.out, "h_{n}(t) = {factored}")?;
    } else {
        let payload = HnPayload {
            big_n: p.hn.big_n,
            p: p.hn.p,
            values_used: p.hn.values_used,
            factored,
            report: p.report,
        };
        ctx.json(&envelope(n, "hn", payload))?;
    }
    Ok(0)
}

fn cmd_recursion(n: u32, ctx: &mut Ctx) -> Result<i32, Failure> {
    need_n(n, 3)?;
    let rec = cache::get_or_compute(ctx.cache_dir(), n, ctx.opts.max_nodes)?
        .recursion
        .expect("recursion present for n >= 3");
    if ctx.text() {
        writeln!(ctx.out, "sum_{{i=0}}^{} c_i(t) h_{n}(t-i) = 0", n - 1)?;
        for (i, c) in rec.c.iter().enumerate() {
            writeln!(ctx.out, "c_{i}(t) = {}", format_factored(c))?;
        }
    } else {
        let payload = RecursionPayload {
            form: rec.form,
            c: rec.c,
        };
        ctx.json(&envelope(n, "recursion", payload))?;
    }
    Ok(0)
}

fn cmd_morris(p: MorrisParams, ctx: &mut Ctx) -> Result<i32, Failure> {
    let v = ct_morris(p)?;
    if ctx.text() {
        writeln!(ctx.out, "{v}")?;
    } else {
        let payload = MorrisPayload {
            k1: p.k1,
            k2: p.k2,
            k3: p.k3,
            value: v.to_string(),
        };
        ctx.json(&envelope(p.n, "morris", payload))?;
    }
    Ok(0)
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_genfun(n: u32, ctx: &mut Ctx) -> Result<i32, Failure> {
    need_n(n, 2)?;
    let g = cache::get_or_compute(ctx.cache_dir(), n, ctx.opts.max_nodes)?.genfun;
    let ok = g.all_hold();
    if ctx.text() {
        writeln!(ctx.out, "h*_{n}(y) = {}", format_factored(&g.hstar_poly()))?;
        writeln!(ctx.out, "support: [{}, {}] {}", g.big_n, g.big_n + g.nhat, yes(g.support_ok))?;
        writeln!(ctx.out, "palindromic: {}", yes(g.flags.palindromic))?;
        writeln!(ctx.out, "positive integral: {}", yes(g.flags.positive_integral))?;
        writeln!(ctx.out, "unimodal: {}", yes(g.flags.unimodal))?;
        writeln!(ctx.out, "strongly log-concave: {}", yes(g.flags.strongly_log_concave))?;
        writeln!(ctx.out, "real-rooted: {} ({} distinct real roots)", yes(g.real_rooted), g.real_root_count)?;
        for f in &g.findings {
            writeln!(ctx.out, "finding: {} {:?} {}", f.property, f.index, f.detail)?;
        }
        writeln!(ctx.out, "conjecture: {}", pass(ok))?;
    } else {
        ctx.json(&envelope(n, "genfun", GenFunPayload { report: g }))?;
    }
    Ok(if ok { 0 } else { 1 })
}

/// Runs `f` over `items` on up to `jobs` threads; results keep input order.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

fn cmd_detc(ns: &[u32], check: bool, ctx: &mut Ctx) -> Result<i32, Failure> {
    for &n in ns {
        need_n(n, 3)?;
    }
    let results = par_map(ns, ctx.opts.jobs, |&n| (det_c(n), check.then(|| check_detc(n))));
    let mut code = 0;
    for (&n, (det, ok)) in ns.iter().zip(results) {
        let factored = format_factored(&det);
        if ok == Some(false) {
            code = 1;
        }
        if ctx.text() {
            writeln!(ctx.out, "det C_{n}(t) = {factored}")?;
            if let Some(ok) = ok {
                writeln!(ctx.out, "conjecture: {}", pass(ok))?;
            }
        } else {
            let payload = DetcPayload {
                det,
                factored,
                conjecture: ok,
            };
            ctx.json(&envelope(n, "detc", payload))?;
        }
    }
    Ok(code)
}

fn cmd_verify(ns: &[u32], ctx: &mut Ctx) -> Result<i32, Failure> {
    for &n in ns {
        need_n(n, 2)?;
    }
    let dir = ctx.cache_dir().map(|d| d.to_path_buf());
    let cap = ctx.opts.max_nodes;
    let results = par_map(ns, ctx.opts.jobs, |&n| cache::get_or_compute(dir.as_deref(), n, cap));
    let mut code = 0;
    for (&n, r) in ns.iter().zip(results) {
        let p = r?;
        let detc = (n >= 3).then(|| check_detc(n));
        let passed = p.report.passed() && p.genfun.all_hold() && detc != Some(false);
        if !passed {
            code = 1;
        }
        if ctx.text() {
            let r = &p.report;
            let g = &p.genfun;
            writeln!(
                ctx.out,
                "n={n} degree={} symmetry={} leading={} window={} square={} t(t+n)|P={} oracle={} hstar={} detc={} : {}",
                yes(r.degree),
                yes(r.symmetry),
                yes(r.leading_coefficient),
                yes(r.root_window),
                yes(r.square_identity),
                r.divisible_by_t_t_plus_n.map_or("n/a", yes),
                r.oracle_spot.map_or("n/a", yes),
                yes(g.all_hold()),
                detc.map_or("n/a", yes),
                pass(passed)
            )?;
        } else {
            let payload = VerifyPayload {
                report: p.report,
                genfun: p.genfun,
                detc,
                passed,
            };
            ctx.json(&envelope(n, "verify", payload))?;
        }
    }
    Ok(code)
}

struct OracleQuery {
    kind: OracleKind,
    n: Option<u32>,
    t: i64,
    ell: Option<i64>,
    k: (Option<u32>, Option<u32>, Option<u32>),
    m: Vec<u32>,
}

fn cmd_oracle(q: &OracleQuery, ctx: &mut Ctx) -> Result<i32, Failure> {
    let cap = ctx.opts.max_nodes;
    let need = |v: Option<u32>, name: &'static str| v.ok_or_else(|| Failure::from(Error::invalid(name, "required for this oracle")));
    let t = q.t;
    let nonneg = || -> Result<u32, Failure> {
        u32::try_from(t).map_err(|_| Error::invalid("t", format!("t >= 0 required, got {t}")).into())
    };
    let (n, value) = match q.kind {
        OracleKind::Hn => {
            let n = need(q.n, "n")?;
            need_n(n, 2)?;
            (n, hn_point(n, t, cap)?)
        }
        OracleKind::Dn => {
            let n = need(q.n, "n")?;
            need_n(n, 2)?;
            let ell = q.ell.ok_or_else(|| Failure::from(Error::invalid("ell", "required for this oracle")))?;
            let k1 = q.k.0.unwrap_or(n - 2);
            let k2 = q.k.1.unwrap_or(1);
            let k3 = q.k.2.unwrap_or(2);
            (n, dn_point(n, ell, t, k1, k2, k3, cap)?)
        }
        OracleKind::Composition => {
            if q.m.is_empty() {
                return Err(Error::invalid("m", "required for this oracle").into());
            }
            (q.m.len() as u32, ct_weak_composition(&q.m, t, cap)?)
        }
        OracleKind::Ehrhart => {
            let n = need(q.n, "n")?;
            nonneg()?;
            (n, Rational::from_integer(assemble_hn(n, t, cap)?))
        }
        OracleKind::Magic => {
            let n = need(q.n, "n")?;
            (n, Rational::from_integer(count_magic_squares(n as usize, nonneg()?)))
        }
    };
    if ctx.text() {
        writeln!(ctx.out, "{value}")?;
    } else {
        let payload = OraclePayload { kind: q.kind, t, value };
        ctx.json(&envelope(n, "oracle", payload))?;
    }
    Ok(0)
}

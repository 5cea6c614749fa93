//! The `oslab` command line: one subcommand per identity or generating
//! function, with text, JSON and markdown renderings.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oslab_core::braid::{homfly, homfly_skein_tree, torus_braid};
use oslab_core::hilbseries::{
    global_top_series, gv_expand, local_series_from_histogram, local_top_series, motivic_compact_series, os_verify,
    refined_local_series,
};
use oslab_core::quiver::audit_grid;
use oslab_core::ring::{Subst, Var};
use oslab_core::semimodule::{enumeration_subtrees, fit_polynomial, histogram, module_invariants, pointcount_oracle};
use oslab_core::wallcross::{
    conifold_series, exp_identity_check, factorization_check, resummed_jump, small_b_table, wall_by_wall,
};
use oslab_core::{
    Backend, BraidError, BraidWord, Caps, CheckReport, CompactCurveData, CurveGerm, HilbError, HomflyValue,
    MonomialKey, QuiverError, Rat, RingError, SemimoduleError, Series, WallError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "oslab/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Germ(#[from] SemimoduleError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Hilb(#[from] HilbError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Hecke,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendArg {
    Euler,
    Pointcount,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Euler => Backend::Euler,
            BackendArg::Pointcount => Backend::Pointcount,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "oslab", version, about = "Exact checks for plane curve singularities, HOMFLY and stable pairs")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized suites; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumeration-heavy commands (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct GermArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub p: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub q: u32,
}

impl GermArgs {
    fn germ(&self) -> Result<CurveGerm, CliError> {
        Ok(CurveGerm::new(self.p, self.q)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// HOMFLY polynomial of a braid closure.
    Homfly {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        strands: Option<u32>,
        /// Comma-separated generator indices, negative for inverses.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "torus")]
        word: Option<String>,
        /// Torus link `P,Q`.
        #[arg(long, value_parser = parse_pair)]
        torus: Option<(i64, i64)>,
        #[arg(long, value_enum, default_value_t = Engine::Hecke)]
        engine: Engine,
        /// Also print the expansion around q = 0 through this power.
        #[arg(long)]
        expand: Option<i64>,
        /// Random conjugations and stabilizations to check invariance on.
        #[arg(long, default_value_t = 0)]
        markov_samples: u32,
    },
    /// Euler-characteristic local series from the semigroup module census.
    LocalSeries {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
    },
    /// Refined local series and its y = -1 specialization check.
    RefinedSeries {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = BackendArg::Euler)]
        backend: BackendArg,
    },
    /// Compares the HOMFLY q-expansion of the torus knot with the local series.
    VerifyOs {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
    },
    /// Hilbert series of a compact curve with one singular point.
    GlobalSeries {
        #[command(flatten)]
        germ: GermArgs,
        /// Topological Euler characteristic of the curve (default: rational model).
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
        /// Motivic series of the rational model instead.
        #[arg(long)]
        motivic: bool,
    },
    /// Conifold product and its exponential resummation check.
    Conifold {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        tmax: i64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        umax: i64,
    },
    /// Wallcrossing factorization plus per-wall against resummed jumps.
    WallcrossCheck {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        rmax: i64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(1..))]
        nmax: i64,
    },
    /// Exponent audit of the local P2 quiver dimension counts.
    QuiverAudit {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        kmax: i64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        rmax: i64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(1..))]
        nmax: i64,
        #[arg(long = "Nmax", default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
        twist_max: i64,
    },
    /// Gopakumar-Vafa style table of the small-b series.
    GvExpand {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        rmax: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        umax: i64,
    },
    /// Ideal counts over prime fields, optionally fitted to a polynomial.
    OraclePointcount {
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        l: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u32>,
        #[arg(long)]
        fit: bool,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("expected P,Q, got {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Result of one subcommand, rendered later.
struct Outcome {
    command: &'static str,
    config: Value,
    result: Value,
    text: String,
    markdown: Option<String>,
    passed: bool,
}

fn report_text(r: &CheckReport) -> String {
    let mut s = format!("{r}\n");
    if r.mismatches.len() > 10 {
        s.push_str(&format!("  ... {} more mismatches\n", r.mismatches.len() - 10));
    }
    s
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn series_value(s: &Series) -> Value {
    to_value(&s.to_json())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t as usize);
    }
    let outcome = builder
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))
        .and_then(|pool| pool.install(|| dispatch(&cli)));
    match outcome {
        Ok(o) => {
            let _ = render(&cli, &o, out);
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn render(cli: &Cli, o: &Outcome, out: &mut dyn Write) -> std::io::Result<()> {
    match cli.format {
        Format::Json => {
            let env = json!({
                "schema": SCHEMA,
                "command": o.command,
                "seed": cli.seed,
                "config": o.config,
                "result": o.result,
                "passed": o.passed,
            });
            let s = serde_json::to_string_pretty(&env).expect("json value serializes");
            writeln!(out, "{s}")
        }
        Format::Markdown => match &o.markdown {
            Some(md) => out.write_all(md.as_bytes()),
            None => {
                writeln!(out, "# oslab {}\n\nseed: {}\n\n```text\n{}```\n", o.command, cli.seed, o.text)?;
                writeln!(out, "**{}**", if o.passed { "PASS" } else { "FAIL" })
            }
        },
        Format::Text => {
            writeln!(out, "oslab {} (seed {})", o.command, cli.seed)?;
            out.write_all(o.text.as_bytes())?;
            writeln!(out, "{}", if o.passed { "PASS" } else { "FAIL" })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Homfly { strands, word, torus, engine, expand, markov_samples } => {
            cmd_homfly(cli.seed, *strands, word.as_deref(), *torus, *engine, *expand, *markov_samples)
        }
        Command::LocalSeries { germ, nmax } => cmd_local_series(*germ, *nmax),
        Command::RefinedSeries { germ, nmax, backend } => cmd_refined(*germ, *nmax, *backend),
        Command::VerifyOs { germ, order } => {
            let g = germ.germ()?;
            let report = os_verify(g.p(), g.q(), *order)?;
            Ok(Outcome {
                command: "verify-os",
                config: json!({ "p": g.p(), "q": g.q(), "order": order }),
                text: report_text(&report),
                passed: report.passed(),
                result: to_value(&report),
                markdown: None,
            })
        }
        Command::GlobalSeries { germ, chi, nmax, motivic } => cmd_global(*germ, *chi, *nmax, *motivic),
        Command::Conifold { tmax, umax } => {
            let series = conifold_series(*tmax, *umax);
            let report = exp_identity_check(*tmax, *umax);
            Ok(Outcome {
                command: "conifold",
                config: json!({ "tmax": tmax, "umax": umax }),
                text: format!("{series}\n{}", report_text(&report)),
                passed: report.passed(),
                result: json!({ "series": series_value(&series), "check": to_value(&report) }),
                markdown: None,
            })
        }
        Command::WallcrossCheck { germ, rmax, nmax } => cmd_wallcross(*germ, *rmax, *nmax),
        Command::QuiverAudit { kmax, rmax, nmax, twist_max } => {
            let audit = audit_grid(*kmax, *rmax, *nmax, *twist_max);
            let md = audit.to_markdown();
            let holding: Vec<String> = audit.identically_matching().iter().map(|r| format!("{r:?}")).collect();
            Ok(Outcome {
                command: "quiver-audit",
                config: json!({ "kmax": kmax, "rmax": rmax, "nmax": nmax, "Nmax": twist_max }),
                text: md.clone(),
                passed: audit.split_holds,
                result: json!({ "audit": to_value(&audit), "holding_readings": holding }),
                markdown: Some(md),
            })
        }
        Command::GvExpand { germ, rmax, umax } => {
            let g = germ.germ()?;
            let curve = CompactCurveData::rational_model(g)?;
            let table = gv_expand(&oslab_core::hilbseries::small_b_top_series(&curve, g, *rmax, *umax));
            Ok(Outcome {
                command: "gv-expand",
                config: json!({ "p": g.p(), "q": g.q(), "rmax": rmax, "umax": umax, "degree": curve.degree }),
                text: format!("{table}all columns polynomial: {}\n", table.all_polynomial()),
                passed: true,
                result: json!({ "table": to_value(&table), "all_polynomial": table.all_polynomial() }),
                markdown: None,
            })
        }
        Command::OraclePointcount { germ, l, primes, fit } => cmd_pointcount(*germ, *l, primes, *fit),
    }
}

fn cmd_homfly(
    seed: u64,
    strands: Option<u32>,
    word: Option<&str>,
    torus: Option<(i64, i64)>,
    engine: Engine,
    expand: Option<i64>,
    samples: u32,
) -> Result<Outcome, CliError> {
    let braid = match (torus, word) {
        (Some((p, q)), _) => torus_braid(p, q)?,
        (None, Some(w)) => {
            let n = strands.ok_or_else(|| CliError::Usage("--word needs --strands".into()))?;
            BraidWord::parse(n as usize, w)?
        }
        (None, None) => return Err(CliError::Usage("give --word with --strands, or --torus P,Q".into())),
    };
    let eval = |b: &BraidWord| -> Result<HomflyValue, BraidError> {
        match engine {
            Engine::Hecke => homfly(b),
            Engine::Oracle => homfly_skein_tree(b),
        }
    };
    let value = eval(&braid)?;
    let mut text = format!("braid: {braid}\nP = {value}\n");
    let mut result = json!({ "braid": braid.to_string(), "value": value.to_json() });
    if let Some(order) = expand {
        let e = value.q_expansion(order);
        text.push_str(&format!("q-expansion: {e}\n"));
        result["expansion"] = series_value(&e);
    }
    let mut report = CheckReport::new("markov-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..samples {
        let moved = if rng.gen_bool(0.5) && braid.strands() > 1 {
            let g = rng.gen_range(1..braid.strands() as i32) * if rng.gen_bool(0.5) { 1 } else { -1 };
            braid.conjugate(g)?
        } else {
            braid.stabilize(rng.gen_bool(0.5))
        };
        let v = eval(&moved)?;
        if v == value {
            report.pass_one();
        } else {
            report.fail(moved.to_string(), &v, &value);
        }
        cases.push(moved.to_string());
    }
    if samples > 0 {
        text.push_str(&report_text(&report));
        result["markov"] = json!({ "report": to_value(&report), "cases": cases });
    }
    Ok(Outcome {
        command: "homfly",
        config: json!({
            "strands": braid.strands(),
            "word": braid.letters(),
            "engine": engine,
            "expand": expand,
            "markov_samples": samples,
        }),
        passed: report.passed(),
        result,
        text,
        markdown: None,
    })
}

/// Module census split over enumeration subtrees; merging is order independent.
fn parallel_histogram(germ: CurveGerm, nmax: u32) -> BTreeMap<(u32, u32), u64> {
    enumeration_subtrees(germ, nmax)
        .into_par_iter()
        .map(|it| {
            let mut h = BTreeMap::new();
            for d in it {
                *h.entry(module_invariants(&d)).or_insert(0u64) += 1;
            }
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

fn cmd_local_series(germ: GermArgs, nmax: u32) -> Result<Outcome, CliError> {
    let g = germ.germ()?;
    let hist = parallel_histogram(g, nmax);
    let series = local_series_from_histogram(&hist, nmax);
    let census: Vec<Value> = hist.iter().map(|(&(n, m), &c)| json!({ "n": n, "m": m, "count": c })).collect();
    Ok(Outcome {
        command: "local-series",
        config: json!({ "p": g.p(), "q": g.q(), "nmax": nmax }),
        text: format!("{series}\n"),
        passed: true,
        result: json!({ "series": series_value(&series), "census": census }),
        markdown: None,
    })
}

fn cmd_refined(germ: GermArgs, nmax: u32, backend: BackendArg) -> Result<Outcome, CliError> {
    let g = germ.germ()?;
    let refined = refined_local_series(g, nmax, backend.into())?;
    let at_minus_one = match backend {
        BackendArg::Euler => refined.clone(),
        BackendArg::Pointcount => {
            let s = Subst::new().rule(Var::Y, true, MonomialKey::var(Var::Y, 0));
            refined.substitute(&s, &Caps::none().with(Var::Q, 2 * nmax as i64))?
        }
    };
    let report = CheckReport::compare("refined-specialization", &at_minus_one, &local_top_series(g, nmax));
    Ok(Outcome {
        command: "refined-series",
        config: json!({ "p": g.p(), "q": g.q(), "nmax": nmax, "backend": backend }),
        text: format!("{refined}\n{}", report_text(&report)),
        passed: report.passed(),
        result: json!({ "series": series_value(&refined), "check": to_value(&report) }),
        markdown: None,
    })
}

fn cmd_global(germ: GermArgs, chi: Option<i64>, nmax: u32, motivic: bool) -> Result<Outcome, CliError> {
    let g = germ.germ()?;
    let (series, chi_used) = if motivic {
        if chi.is_some() {
            return Err(CliError::Usage("--motivic uses the rational model; drop --chi".into()));
        }
        let curve = CompactCurveData::rational_model(g)?;
        (motivic_compact_series(&curve, g, nmax, Backend::Pointcount)?, curve.chi_top)
    } else {
        let chi = match chi {
            Some(c) => c,
            None => CompactCurveData::rational_model(g)?.chi_top,
        };
        (global_top_series(g, chi, nmax), chi)
    };
    Ok(Outcome {
        command: "global-series",
        config: json!({ "p": g.p(), "q": g.q(), "chi": chi_used, "nmax": nmax, "motivic": motivic }),
        text: format!("{series}\n"),
        passed: true,
        result: json!({ "series": series_value(&series) }),
        markdown: None,
    })
}

fn cmd_wallcross(germ: GermArgs, rmax: i64, nmax: i64) -> Result<Outcome, CliError> {
    let g = germ.germ()?;
    let curve = CompactCurveData::rational_model(g)?;
    let factor = factorization_check(g, rmax, nmax)?;

    let small_b = small_b_table(&curve, g, rmax, nmax);
    let resummed = resummed_jump(&small_b, rmax, nmax)?;
    let per_wall = wall_by_wall(&small_b, rmax, nmax)?;
    let mut walls = CheckReport::compare("per-wall-vs-resummed", &per_wall.to_series(), &resummed.to_series());
    match resummed.assert_integral() {
        Ok(()) => walls.note("all entries integral"),
        Err(e) => walls.fail("integrality", e, "integer"),
    }
    let text = format!("{}{}", report_text(&factor), report_text(&walls));
    Ok(Outcome {
        command: "wallcross-check",
        config: json!({ "p": g.p(), "q": g.q(), "rmax": rmax, "nmax": nmax, "degree": curve.degree }),
        passed: factor.passed() && walls.passed(),
        result: json!({
            "factorization": to_value(&factor),
            "walls": to_value(&walls),
            "p_minus_infinity": resummed.to_json(),
        }),
        text,
        markdown: None,
    })
}

fn cmd_pointcount(germ: GermArgs, l: u32, primes: &[u32], fit: bool) -> Result<Outcome, CliError> {
    let g = germ.germ()?;
    if primes.is_empty() {
        return Err(CliError::Usage("--primes must list at least one prime".into()));
    }
    let counts: Vec<u64> = primes
        .par_iter()
        .map(|&p| pointcount_oracle(g, l, p))
        .collect::<Result<_, _>>()?;
    let mut text = String::new();
    for (p, c) in primes.iter().zip(&counts) {
        text.push_str(&format!("F_{p}: {c} ideals of colength {l}\n"));
    }
    let mut result = json!({
        "counts": primes.iter().zip(&counts).map(|(p, c)| json!({ "prime": p, "count": c })).collect::<Vec<_>>(),
    });
    let mut report = CheckReport::new("pointcount-at-one");
    if fit {
        let pts: Vec<(i64, i64)> = primes.iter().zip(&counts).map(|(&p, &c)| (p as i64, c as i64)).collect();
        let poly = fit_polynomial(&pts)?;
        let at_one = poly.eval(1);
        let modules: u64 = histogram(g, l).iter().filter(|((n, _), _)| *n == l).map(|(_, c)| c).sum();
        let expect = Rat::from_integer((modules as i64).into());
        if poly.is_integral() && at_one == expect {
            report.pass_one();
        } else {
            report.fail(format!("value at 1 of {poly}"), &at_one, &expect);
        }
        text.push_str(&format!("fit: {poly}\nvalue at 1: {at_one}, semigroup modules: {modules}\n"));
        text.push_str(&report_text(&report));
        result["fit"] = poly.to_json();
        result["check"] = to_value(&report);
    }
    Ok(Outcome {
        command: "oracle-pointcount",
        config: json!({ "p": g.p(), "q": g.q(), "l": l, "primes": primes, "fit": fit }),
        passed: report.passed(),
        result,
        text,
        markdown: None,
    })
}

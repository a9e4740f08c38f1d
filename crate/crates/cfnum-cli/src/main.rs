//! Command-line front door for the exact central-factorial stack: print
//! number triangles, compute the triangles associated with a polynomial
//! sequence, convert polynomial coefficients between bases, transport delta
//! series through the central logarithm/exponential, and run the identity
//! verification suite.
//!
//! Conventions shared by every subcommand:
//!
//! * stdout carries only the data payload; everything diagnostic goes to
//!   stderr;
//! * rationals cross the boundary as exact strings `p/q` (or `p` when the
//!   denominator is 1), never as decimals;
//! * output is deterministic given the flags (and `--seed` where one
//!   applies);
//! * exit codes: 0 success (and all checks passing, for `verify`),
//!   1 verification failure, 2 usage error, 3 internal cross-check failure.
//!
//! Series-backed computations truncate at `2·n_max + 2` terms unless
//! `--order` or the `CFNUM_ORDER` environment variable says otherwise
//! (`--order` wins over the environment).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cfnum::error::{Error, Result};
use cfnum::identity::{run_suite, SuiteFilter};
use cfnum::poly::{change_basis, Basis};
use cfnum::rational::{parse_rational, Rational};
use cfnum::triangles::{triangle, triangle_cross_checked, TriangleFamily};
use cfnum::umbral::{
    assoc_t1, assoc_t2, catalog, central_exp, central_log, AssocKind, AssocTriangle,
    CatalogParams, T1Route, T2Route, CATALOG,
};

/// Truncation order for `series` when neither `--order` nor `CFNUM_ORDER`
/// is given; the other commands derive their default from `--n` instead.
const SERIES_DEFAULT_ORDER: usize = 16;

#[derive(Parser)]
#[command(
    name = "cfnum",
    version,
    about = "Exact central factorial numbers, connection triangles, and identity verification",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a classical or degenerate number triangle.
    Triangle(TriangleArgs),
    /// Print the central factorial numbers associated with a catalog sequence.
    Assoc(AssocArgs),
    /// Convert polynomial coefficients between bases.
    Convert(ConvertArgs),
    /// Transport a catalog sequence's delta series through the central
    /// logarithm and exponential.
    Series(SeriesArgs),
    /// Run the identity verification suite and print its JSON report.
    Verify(VerifyArgs),
    /// List the catalog sequences and the parameters each one requires.
    ListSequences(ListArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Sequence/family parameters, accepted as exact rationals ("1/3", "-2", …).
#[derive(Args)]
struct ParamArgs {
    /// Deformation parameter λ (required by the λ-deformed families).
    #[arg(long)]
    lambda: Option<String>,
    /// First Gould-Hopper parameter.
    #[arg(long)]
    r: Option<String>,
    /// Second Gould-Hopper parameter.
    #[arg(long)]
    s: Option<String>,
    /// Poisson-Charlier parameter.
    #[arg(long)]
    a: Option<String>,
}

impl ParamArgs {
    fn parsed(field: &Option<String>) -> Result<Option<Rational>> {
        field.as_deref().map(parse_rational).transpose()
    }

    /// Catalog parameters with any flags the user set overriding the
    /// defaults (λ = 1/3, r = 2, s = 1, a = 1/2).
    fn catalog_params(&self) -> Result<CatalogParams> {
        let mut params = CatalogParams::default();
        if let Some(lambda) = Self::parsed(&self.lambda)? {
            params.lambda = lambda;
        }
        if let Some(r) = Self::parsed(&self.r)? {
            params.r = r;
        }
        if let Some(s) = Self::parsed(&self.s)? {
            params.s = s;
        }
        if let Some(a) = Self::parsed(&self.a)? {
            params.a = a;
        }
        Ok(params)
    }
}

#[derive(Args)]
struct TriangleArgs {
    /// Family id: s1, s2, s1l, s2l, t1, t2, t1l, t2l, r1l, r2l, lah, l1c,
    /// l2c, tl1, tl2, gh.
    #[arg(long)]
    family: String,
    /// Largest row index.
    #[arg(long = "n")]
    n_max: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Skip the independent two-route cross-check (faster, less paranoid).
    #[arg(long)]
    no_crosscheck: bool,
}

#[derive(Args)]
struct AssocArgs {
    /// Which triangle: t2 (sequence → central factorials) or t1 (central
    /// factorials → sequence).
    #[arg(long)]
    kind: String,
    /// Catalog sequence name (see `list-sequences`).
    #[arg(long = "seq")]
    sequence: String,
    /// Largest row index.
    #[arg(long = "n")]
    n_max: usize,
    /// Computation route: explicit, derivative, or genfunc for t2;
    /// solve, functional, or genfunc for t1. Defaults per kind.
    #[arg(long)]
    route: Option<String>,
    /// Series truncation order override.
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ConvertArgs {
    /// Source basis: monomial, falling, rising, central, falling_lambda,
    /// rising_lambda, central_lambda.
    #[arg(long)]
    from: String,
    /// Target basis (same names).
    #[arg(long)]
    to: String,
    /// Deformation parameter λ for the λ-deformed bases.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Comma-separated coefficients in the source basis, ascending degree.
    coeffs: String,
}

#[derive(Args)]
struct SeriesArgs {
    /// Catalog sequence whose delta series to transport (Sheffer entries
    /// only; tlb1, tlb2 and bernoulli_product have no single delta series).
    #[arg(long)]
    name: String,
    /// Series truncation order (default 16).
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check groups to run: "all", "none", or a comma-separated subset of
    /// orthogonality, inverse, closed_forms, recurrences, sum_rule,
    /// quad_sums.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest row index checked.
    #[arg(long = "n", default_value_t = 8)]
    n_max: usize,
    /// Seed for the randomized inverse-relation trials.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random vectors per sequence in the inverse-relation checks.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Worker threads for the suite (1 = single-threaded, 0 = all cores).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Serialize)]
struct TriangleDoc {
    family: String,
    params: BTreeMap<String, String>,
    n_max: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct AssocDoc {
    sequence: String,
    kind: String,
    route: String,
    params: BTreeMap<String, String>,
    n_max: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ConvertDoc {
    from: String,
    to: String,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct SeriesDoc {
    name: String,
    params: BTreeMap<String, String>,
    order: usize,
    f: Vec<String>,
    fbar: Vec<String>,
    lc: Vec<String>,
    ec: Vec<String>,
}

#[derive(Serialize)]
struct SequenceDoc {
    name: String,
    params: Vec<String>,
}

fn param_map(params: &[(&'static str, Rational)]) -> BTreeMap<String, String> {
    params
        .iter()
        .map(|(name, value)| (name.to_string(), value.to_string()))
        .collect()
}

fn string_rows(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|row| row.iter().map(Rational::to_string).collect())
        .collect()
}

/// Writes one payload to stdout. A closed pipe (`cfnum … | head`) is a
/// normal early exit, not an error; any other write failure is fatal.
fn emit(payload: &str) {
    let mut out = io::stdout().lock();
    let result = out
        .write_all(payload.as_bytes())
        .and_then(|_| out.write_all(b"\n"))
        .and_then(|_| out.flush());
    if let Err(err) = result {
        if err.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {err}");
        std::process::exit(2);
    }
}

fn print_json<T: Serialize>(doc: &T) {
    emit(&serde_json::to_string_pretty(doc).expect("report types serialize infallibly"));
}

fn print_table_csv(rows: &[Vec<Rational>]) {
    let mut payload = String::from("n,k,value");
    for (n, row) in rows.iter().enumerate() {
        for (k, value) in row.iter().enumerate() {
            write!(payload, "\n{n},{k},\"{value}\"").expect("string writes cannot fail");
        }
    }
    emit(&payload);
}

/// `--order` wins, then `CFNUM_ORDER`, then the caller's default.
fn order_override(explicit: Option<usize>) -> Result<Option<usize>> {
    if explicit.is_some() {
        return Ok(explicit);
    }
    match std::env::var("CFNUM_ORDER") {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(value) => Ok(Some(value)),
            Err(_) => Err(Error::InvalidParam {
                name: "CFNUM_ORDER",
                value: text,
                reason: "must be a nonnegative integer",
            }),
        },
        Err(_) => Ok(None),
    }
}

fn cmd_triangle(args: &TriangleArgs) -> Result<i32> {
    let family = TriangleFamily::by_name(
        &args.family,
        ParamArgs::parsed(&args.params.lambda)?.as_ref(),
        ParamArgs::parsed(&args.params.r)?.as_ref(),
        ParamArgs::parsed(&args.params.s)?.as_ref(),
    )?;
    let tri = if args.no_crosscheck {
        triangle(&family, args.n_max)?
    } else {
        triangle_cross_checked(&family, args.n_max)?
    };
    match args.format {
        Format::Json => print_json(&TriangleDoc {
            family: family.id().to_string(),
            params: param_map(&family.params()),
            n_max: args.n_max,
            rows: string_rows(tri.rows()),
        }),
        Format::Csv => print_table_csv(tri.rows()),
    }
    Ok(0)
}

fn parse_kind(text: &str) -> Result<AssocKind> {
    match text {
        "t1" => Ok(AssocKind::FirstKind),
        "t2" => Ok(AssocKind::SecondKind),
        _ => Err(Error::UnknownName {
            kind: "triangle kind",
            name: text.to_string(),
        }),
    }
}

fn cmd_assoc(args: &AssocArgs) -> Result<i32> {
    let kind = parse_kind(&args.kind)?;
    let spec = catalog(&args.sequence, &args.params.catalog_params()?)?;
    let order = order_override(args.order)?;
    let tri: AssocTriangle = match kind {
        AssocKind::SecondKind => {
            let route = match args.route.as_deref() {
                Some(name) => T2Route::by_name(name)?,
                None => T2Route::default(),
            };
            assoc_t2(&spec, args.n_max, route, order)?
        }
        AssocKind::FirstKind => {
            let route = match args.route.as_deref() {
                Some(name) => T1Route::by_name(name)?,
                None => T1Route::default(),
            };
            assoc_t1(&spec, args.n_max, route, order)?
        }
    };
    match args.format {
        Format::Json => print_json(&AssocDoc {
            sequence: spec.name().to_string(),
            kind: kind.id().to_string(),
            route: tri.route().to_string(),
            params: param_map(spec.params()),
            n_max: args.n_max,
            rows: string_rows(tri.rows()),
        }),
        Format::Csv => print_table_csv(tri.rows()),
    }
    Ok(0)
}

fn cmd_convert(args: &ConvertArgs) -> Result<i32> {
    let lambda = ParamArgs::parsed(&args.lambda)?;
    let from = Basis::by_name(&args.from, lambda.as_ref())?;
    let to = Basis::by_name(&args.to, lambda.as_ref())?;
    let coeffs = args
        .coeffs
        .split(',')
        .map(|part| parse_rational(part.trim()))
        .collect::<Result<Vec<_>>>()?;
    let converted: Vec<String> = change_basis(&coeffs, &from, &to)
        .iter()
        .map(Rational::to_string)
        .collect();
    match args.format {
        Format::Csv => emit(&converted.join(",")),
        Format::Json => print_json(&ConvertDoc {
            from: args.from.clone(),
            to: args.to.clone(),
            coeffs: converted,
        }),
    }
    Ok(0)
}

fn cmd_series(args: &SeriesArgs) -> Result<i32> {
    let spec = catalog(&args.name, &args.params.catalog_params()?)?;
    let order = order_override(args.order)?.unwrap_or(SERIES_DEFAULT_ORDER);
    let pair = spec.pair(order)?.ok_or(Error::RouteUnavailable {
        route: "series",
        sequence: spec.to_string(),
        reason: "only generating-function pairs carry a delta series to transport",
    })?;
    let f = pair.f();
    let fbar = f.comp_inverse()?;
    let lc = central_log(f)?;
    let ec = central_exp(f)?;
    let coeffs = |series: &cfnum::series::TruncatedSeries| -> Vec<String> {
        series.coeffs().iter().map(Rational::to_string).collect()
    };
    match args.format {
        Format::Json => print_json(&SeriesDoc {
            name: spec.name().to_string(),
            params: param_map(spec.params()),
            order,
            f: coeffs(f),
            fbar: coeffs(&fbar),
            lc: coeffs(&lc),
            ec: coeffs(&ec),
        }),
        Format::Csv => {
            let mut payload = String::from("k,f,fbar,lc,ec");
            for k in 0..=order {
                write!(
                    payload,
                    "\n{k},\"{}\",\"{}\",\"{}\",\"{}\"",
                    f.coeff(k),
                    fbar.coeff(k),
                    lc.coeff(k),
                    ec.coeff(k)
                )
                .expect("string writes cannot fail");
            }
            emit(&payload);
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let filter = SuiteFilter::parse(&args.suite)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|_| Error::InvalidParam {
            name: "jobs",
            value: args.jobs.to_string(),
            reason: "could not build a worker pool of this size",
        })?;
    let report = pool.install(|| run_suite(&filter, args.n_max, args.trials, args.seed))?;
    print_json(&report);
    let failed = report.checks.iter().filter(|c| c.status == "fail").count();
    eprintln!("{} checks, {} failed", report.checks.len(), failed);
    Ok(if report.all_pass { 0 } else { 1 })
}

fn cmd_list(args: &ListArgs) -> Result<i32> {
    match args.format {
        Format::Json => {
            let docs: Vec<SequenceDoc> = CATALOG
                .iter()
                .map(|(name, params)| SequenceDoc {
                    name: name.to_string(),
                    params: params.iter().map(|p| p.to_string()).collect(),
                })
                .collect();
            print_json(&docs);
        }
        Format::Csv => {
            let mut payload = String::from("name,params");
            for (name, params) in CATALOG {
                write!(payload, "\n{name},\"{}\"", params.join(" "))
                    .expect("string writes cannot fail");
            }
            emit(&payload);
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Triangle(args) => cmd_triangle(args),
        Command::Assoc(args) => cmd_assoc(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Series(args) => cmd_series(args),
        Command::Verify(args) => cmd_verify(args),
        Command::ListSequences(args) => cmd_list(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::CrossCheckMismatch { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

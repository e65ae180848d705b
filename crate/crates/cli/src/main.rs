//! `apoly`: compute and verify A-polynomials of the knots `C(2n, 4)`.
//!
//! `--n` is the index `n` of the knot `C(2n, 4)`, not `2n`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apoly_core::apoly::{a_polynomial, APolyRecord, ApolyError, Route};
use apoly_core::cache::Cache;
use apoly_core::golden::{GoldenError, Goldens};
use apoly_core::json::canonical_json;
use apoly_core::poly::{Poly, Var};
use apoly_core::render::{to_latex, to_text};
use apoly_core::riley::rm_recursive;
use apoly_core::verify::full_battery;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 1;
const EXIT_COMPUTE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "apoly",
    version,
    about = "A-polynomials of the two-bridge knots C(2n, 4)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute A_{2n}(L, M).
    Compute {
        /// Knot index n of C(2n, 4) (nonzero, may be negative).
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = RouteArg::RecursiveSubst)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Result cache directory; APOLY_CACHE_DIR takes precedence.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Ignore a cached result and compute again (the new hash must match).
        #[arg(long)]
        recompute: bool,
    },
    /// Run the identity battery; the JSON report goes to stdout.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: i64,
        /// Also run the representation oracle.
        #[arg(long)]
        oracle: bool,
        /// Read reference data from this directory instead of the built-in copy.
        #[arg(long)]
        goldens: Option<PathBuf>,
    },
    /// Print the Riley polynomial P_{2n}(x, M).
    Rm {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Closed,
    RecursiveSubst,
    ClosedSubst,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Closed => Route::Closed,
            RouteArg::RecursiveSubst => Route::RecursiveSubst,
            RouteArg::ClosedSubst => Route::ClosedSubst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

fn render(p: &Poly, format: Format) -> String {
    match format {
        Format::Text => to_text(p),
        Format::Latex => to_latex(p),
        Format::Json => canonical_json(p),
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, format!("{body}\n")).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{body}").map_err(|e| e.to_string())
        }
    }
}

fn summary(p: &Poly) -> String {
    let deg = |v| p.degree(v).map_or("-".to_string(), |d| d.to_string());
    format!(
        "{} terms, L-degree {}, M-degree {}",
        p.len(),
        deg(Var::L),
        deg(Var::M)
    )
}

fn fail(code: u8, msg: impl AsRef<str>) -> ExitCode {
    eprintln!("apoly: {}", msg.as_ref());
    ExitCode::from(code)
}

fn compute(
    n: i64,
    route: Route,
    format: Format,
    out: Option<&Path>,
    cache_dir: Option<PathBuf>,
    recompute: bool,
) -> ExitCode {
    if n == 0 {
        return fail(EXIT_USAGE, "--n must be nonzero");
    }
    let cache_dir = std::env::var_os("APOLY_CACHE_DIR")
        .map(PathBuf::from)
        .or(cache_dir);
    let cache = cache_dir.map(Cache::new);
    let mut record: Option<APolyRecord> = None;
    if let (Some(c), false) = (&cache, recompute) {
        match c.load(n, route) {
            Ok(r) => record = r,
            Err(e) => return fail(EXIT_USAGE, e.to_string()),
        }
    }
    let record = match record {
        Some(r) => {
            eprintln!(
                "cached: {}",
                cache.as_ref().unwrap().path(n, route).display()
            );
            r
        }
        None => match a_polynomial(n, route) {
            Ok(r) => {
                if let Some(c) = &cache {
                    if let Err(e) = c.store(&r) {
                        return fail(EXIT_USAGE, e.to_string());
                    }
                }
                r
            }
            Err(e) => return compute_failure(e),
        },
    };
    eprintln!("A_{}: {}; hash {}", 2 * n, summary(&record.a), record.hash);
    match emit(&render(&record.a, format), out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn compute_failure(e: ApolyError) -> ExitCode {
    eprintln!("apoly: {e}");
    match &e {
        ApolyError::NotPolynomial { residual, .. } => {
            eprintln!(
                "residual: {}",
                serde_json::to_string(residual).unwrap_or_default()
            );
        }
        ApolyError::RedundantFactor { residual, .. } => {
            eprintln!("residual: {}", canonical_json(residual));
        }
        _ => {}
    }
    match e {
        ApolyError::ZeroIndex => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_COMPUTE),
    }
}

fn verify(max_n: i64, oracle: bool, goldens: Option<&Path>) -> ExitCode {
    if max_n < 2 {
        return fail(EXIT_USAGE, "--max-n must be at least 2");
    }
    let loaded;
    let g = match goldens {
        None => Goldens::embedded(),
        Some(dir) => match Goldens::load_dir(dir) {
            Ok(g) => {
                loaded = g;
                &loaded
            }
            Err(e @ GoldenError::Io { .. }) => return fail(EXIT_USAGE, e.to_string()),
            Err(e @ GoldenError::Parse { .. }) => {
                return fail(EXIT_VERIFY, format!("golden unreadable: {e}"))
            }
        },
    };
    let report = full_battery(g, max_n, oracle);
    let body = serde_json::json!({
        "passed": report.all_passed(),
        "checks": report.checks,
    });
    if let Err(e) = emit(&body.to_string(), None) {
        return fail(EXIT_USAGE, e);
    }
    let total = report.checks.len();
    match report.first_failure() {
        None => {
            eprintln!("all {total} checks passed");
            ExitCode::SUCCESS
        }
        Some(c) => {
            let failed = report.failures().count();
            fail(
                EXIT_VERIFY,
                format!("{failed} of {total} checks failed; first: {}", c.name),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Compute {
            n,
            route,
            format,
            out,
            cache_dir,
            recompute,
        } => compute(
            n,
            route.into(),
            format,
            out.as_deref(),
            cache_dir,
            recompute,
        ),
        Command::Verify {
            max_n,
            oracle,
            goldens,
        } => verify(max_n, oracle, goldens.as_deref()),
        Command::Rm { n, format } => match emit(&render(&rm_recursive(n).poly, format), None) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(EXIT_USAGE, e),
        },
    }
}

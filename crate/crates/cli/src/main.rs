use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::Value;
use whitlab::verify::{self, Status, Suite, VerifyOptions};
use whitlab::{polyfit, AtomSet, Error, RestrictionGeometry, UniPolyQ};

mod compute;
mod record;
mod table;

use compute::{AlphaArg, BetaArg, GammaMethod, WhitneyMethod};
use record::{params, Cache, ResultRecord};
use table::{Format, Grid, TableKind};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "whitlab",
    version,
    about = "Exact Whitney numbers and subspace distributions of higher-weight Dowling lattices"
)]
struct Cli {
    /// Print a JSON record instead of the plain line.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock runtimes (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Hw {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Whitney numbers of the first kind w_i(q,n,d).
    Whitney {
        #[command(flatten)]
        p: Hw,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        method: WhitneyMethod,
    },
    /// Characteristic polynomial of H(q,n,d).
    Charpoly {
        #[command(flatten)]
        p: Hw,
        /// Divide out λ - q^i for i = 0, 1, ... while each is a root.
        #[arg(long)]
        deflate_powers: bool,
        #[arg(long, value_enum, default_value = "exact")]
        method: WhitneyMethod,
    },
    /// Number of k-dimensional codes with minimum distance greater than d.
    Alpha {
        #[command(flatten)]
        p: Hw,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "transform")]
        method: AlphaArg,
    },
    /// Number of k-dimensional codes with minimum distance at most d.
    Beta {
        #[command(flatten)]
        p: Hw,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "complement")]
        method: BetaArg,
    },
    /// Agreement number gamma_a(b,c,nu).
    Gamma {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        nu: i64,
        #[arg(long, value_enum, default_value = "recursion")]
        method: GammaMethod,
    },
    /// Critical exponent of H(q,n,d).
    Crit {
        #[command(flatten)]
        p: Hw,
        #[arg(long, value_enum, default_value = "exact")]
        method: WhitneyMethod,
    },
    /// Invariants of an explicit restriction geometry read from a file.
    Geometry {
        #[arg(long)]
        atoms: PathBuf,
        #[arg(long)]
        whitney: bool,
        #[arg(long)]
        charpoly: bool,
        #[arg(long)]
        crit: bool,
    },
    /// Interpolate w_i(q,n,d) in q and validate on held-out q.
    Fit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7")]
        samples: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "8,9")]
        validate: Vec<u64>,
    },
    /// Emit a grid of results as CSV or JSON.
    Table {
        #[arg(long, value_enum, default_value = "whitney")]
        kind: TableKind,
        #[arg(long, value_enum, default_value = "exact")]
        method: WhitneyMethod,
        #[arg(long, value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        #[arg(long, value_parser = table::parse_range)]
        n_range: std::ops::RangeInclusive<usize>,
        #[arg(long, value_parser = table::parse_range)]
        d_range: std::ops::RangeInclusive<usize>,
        /// Output file; `-` for stdout.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Cache directory (defaults to $WHITLAB_CACHE when set).
        #[arg(long, env = "WHITLAB_CACHE")]
        cache: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget_sec: Option<f64>,
    },
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Inconsistent(_) => EXIT_FAIL,
            _ => EXIT_INVALID,
        };
        Fail(code, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(EXIT_INVALID, msg.into())
}

fn hw_params(p: Hw) -> serde_json::Map<String, Value> {
    params([("q", p.q), ("n", p.n as u64), ("d", p.d as u64)])
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

struct Out<'a> {
    json: bool,
    started: Option<Instant>,
    stdout: &'a mut dyn Write,
}

impl Out<'_> {
    fn emit(&mut self, mut rec: ResultRecord, line: &str) -> Result<(), Fail> {
        rec.runtime_ms = self.started.map(|t| t.elapsed().as_millis() as u64);
        let text =
            if self.json { serde_json::to_string_pretty(&rec).expect("record serializes") } else { line.to_string() };
        writeln!(self.stdout, "{text}").map_err(|e| Fail(EXIT_FAIL, e.to_string()))
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Whitney { p, i, method } => {
            let idx: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..=p.n).collect(),
            };
            let w = compute::whitney(p.q, p.n, p.d, &idx, method)?;
            let mut prm = hw_params(p);
            if let Some(i) = i {
                prm.insert("i".into(), i.into());
            }
            let rec = ResultRecord::new(
                "whitney",
                prm,
                w.iter().map(ToString::to_string).collect(),
                &compute::method_name(method),
            );
            out.emit(rec, &join(&w))?;
        }
        Cmd::Charpoly { p, deflate_powers, method } => {
            let chi = compute::charpoly(p.q, p.n, p.d, method)?;
            let mut prm = hw_params(p);
            let shown: UniPolyQ = if deflate_powers {
                let (quot, removed) = compute::deflate_powers(&chi, p.q);
                prm.insert("deflated_exponents".into(), removed.into());
                quot
            } else {
                chi
            };
            let coeffs = shown.int_coeffs().ok_or_else(|| Fail(EXIT_FAIL, "non-integral coefficients".into()))?;
            let values = coeffs.iter().rev().map(ToString::to_string).collect();
            let rec = ResultRecord::new("charpoly", prm, values, &compute::method_name(method));
            out.emit(rec, &shown.display_var("λ"))?;
        }
        Cmd::Alpha { p, k, method } => {
            let v = compute::alpha(p.q, p.n, p.d, k, method)?;
            let mut prm = hw_params(p);
            prm.insert("k".into(), k.into());
            out.emit(
                ResultRecord::new("alpha", prm, vec![v.to_string()], &compute::method_name(method)),
                &v.to_string(),
            )?;
        }
        Cmd::Beta { p, k, method } => {
            let v = compute::beta(p.q, p.n, p.d, k, method)?;
            let mut prm = hw_params(p);
            prm.insert("k".into(), k.into());
            out.emit(
                ResultRecord::new("beta", prm, vec![v.to_string()], &compute::method_name(method)),
                &v.to_string(),
            )?;
        }
        Cmd::Gamma { a, b, c, nu, method } => {
            if b < 0 || c < 0 || nu < 0 {
                return Err(invalid("b, c and nu must be non-negative"));
            }
            let v = compute::gamma(a, b, c, nu, method)?;
            let prm = params([("a", a), ("b", b as u64), ("c", c as u64), ("nu", nu as u64)]);
            out.emit(
                ResultRecord::new("gamma", prm, vec![v.to_string()], &compute::method_name(method)),
                &v.to_string(),
            )?;
        }
        Cmd::Crit { p, method } => {
            let c = compute::crit(p.q, p.n, p.d, method)?;
            out.emit(
                ResultRecord::new("crit", hw_params(p), vec![c.to_string()], &compute::method_name(method)),
                &c.to_string(),
            )?;
        }
        Cmd::Geometry { atoms, whitney, charpoly, crit } => {
            let text = fs::read_to_string(&atoms).map_err(|e| invalid(format!("{}: {e}", atoms.display())))?;
            let (f, set) = AtomSet::parse(&text)?;
            let g = RestrictionGeometry::build(&f, &set)?;
            let prm = params([("q", f.q()), ("n", set.ambient() as u64), ("atoms", set.len() as u64)]);
            let show_whitney = whitney || !(charpoly || crit);
            if show_whitney {
                let w = g.whitney();
                out.emit(
                    ResultRecord::new("whitney", prm.clone(), w.iter().map(ToString::to_string).collect(), "brute"),
                    &join(&w),
                )?;
            }
            if charpoly {
                let chi = g.charpoly()?;
                let values = g.whitney().iter().map(ToString::to_string).collect();
                out.emit(ResultRecord::new("charpoly", prm.clone(), values, "brute"), &chi.display_var("λ"))?;
            }
            if crit {
                let c = g.critical_exponent()?;
                out.emit(ResultRecord::new("crit", prm, vec![c.to_string()], "brute"), &c.to_string())?;
            }
        }
        Cmd::Fit { n, d, i, samples, validate } => {
            let rep = polyfit::fit_in_q(
                &format!("w_{i}(q,{n},{d})"),
                |q| whitlab::hwdl::whitney_exact(q, n, d, i),
                &samples,
                &validate,
                None,
                polyfit::Status::Evidence,
            )?;
            let poly = rep.fitted.as_ref().map(|p| p.display_var("q")).unwrap_or_default();
            let line = format!("{poly}  ({})", if rep.is_fit() { "validated" } else { "validation failed" });
            if out.json {
                let text = serde_json::to_string_pretty(&rep).expect("report serializes");
                writeln!(out.stdout, "{text}").map_err(|e| Fail(EXIT_FAIL, e.to_string()))?;
            } else {
                writeln!(out.stdout, "{line}").map_err(|e| Fail(EXIT_FAIL, e.to_string()))?;
            }
            return Ok(if rep.is_fit() { 0 } else { EXIT_FAIL });
        }
        Cmd::Table { kind, method, q_list, n_range, d_range, out: path, format, cache, jobs } => {
            if q_list.is_empty() {
                return Err(invalid("--q-list is empty"));
            }
            let grid = Grid { kind, method, qs: q_list, ns: n_range, ds: d_range };
            let cache = match cache {
                Some(dir) => Some(Cache::open(&dir).map_err(|e| invalid(format!("cache {}: {e}", dir.display())))?),
                None => None,
            };
            let started = Instant::now();
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| invalid(e.to_string()))?;
            let (records, hits) = pool.install(|| grid.run(cache.as_ref()))?;
            let text = table::render(&records, format)?;
            if path.as_os_str() == "-" {
                out.stdout.write_all(text.as_bytes()).map_err(|e| Fail(EXIT_FAIL, e.to_string()))?;
            } else {
                fs::write(&path, text).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            if cli.timings {
                eprintln!("{} cells, {hits} from cache, {} ms", records.len(), started.elapsed().as_millis());
            }
        }
        Cmd::Verify { suite, seed, budget_sec } => {
            let suite: Suite = suite.parse()?;
            let budget = match budget_sec {
                Some(s) if !(s >= 0.0 && s.is_finite()) => return Err(invalid("--budget-sec must be non-negative")),
                s => s.map(Duration::from_secs_f64),
            };
            let rep = verify::run(suite, &VerifyOptions { seed, budget });
            let w = &mut out.stdout;
            let io = |e: io::Error| Fail(EXIT_FAIL, e.to_string());
            if out.json {
                writeln!(w, "{}", serde_json::to_string_pretty(&rep).expect("report serializes")).map_err(io)?;
            } else {
                for c in &rep.checks {
                    let tag = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Note => "NOTE",
                        Status::Skipped => "SKIP",
                    };
                    writeln!(w, "{tag} [{}] {}", c.suite, c.name).map_err(io)?;
                    if let Some(d) = &c.detail {
                        writeln!(w, "     {d}").map_err(io)?;
                    }
                }
                writeln!(
                    w,
                    "{} passed, {} failed, {} notes, {} skipped",
                    rep.count(Status::Pass),
                    rep.count(Status::Fail),
                    rep.count(Status::Note),
                    rep.count(Status::Skipped)
                )
                .map_err(io)?;
            }
            return Ok(if rep.count(Status::Fail) > 0 {
                EXIT_FAIL
            } else if rep.budget_exhausted {
                eprintln!("time budget exhausted");
                EXIT_CAP
            } else {
                0
            });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let mut out = Out { json: cli.json, started: cli.timings.then(Instant::now), stdout: &mut lock };
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

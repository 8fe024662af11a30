//! The `extalg` command line. Every verb calls one library entry point.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage and input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{QAlgebra, SymAlgebra};
use crate::catalog::{Catalog, CatalogEntry};
use crate::cohomology::{central_extension, cohomology, BilinearForm};
use crate::degeneration::{
    closed_set_basis_search, verify_degeneration_row, BasisSearch, DegenerationRow,
    ParametricBasis, RowVerdict, VerificationMode,
};
use crate::error::{Error, Result};
use crate::identity::{check_closed_set, parse_rational, Identity, IdentityCheck};
use crate::invariants::{ff_iso_evidence, invariant_vector, FfEvidence, InvariantVector};
use crate::scalar::{Rational, RationalFunction};
use crate::verify::{verify_catalog, Report, VerifyOptions};

#[derive(Parser, Debug)]
#[command(
    name = "extalg",
    version,
    about = "Exact checks for nilpotent right alternative algebras"
)]
struct Cli {
    /// Catalog directory (default: $EXTALG_CATALOG, else the shipped one).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an identity on every tuple of basis vectors.
    CheckIdentity {
        #[arg(long)]
        algebra: String,
        /// A built-in name or a file holding the identity text.
        #[arg(long)]
        identity: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Print the invariant vector.
    Invariants {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Print Z2, B2 and representatives of H2.
    Cohomology {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "right-alternative")]
        identity: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Build the central extension by the cocycles in a file, one per line.
    Extend {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Verify a catalogued degeneration row or a basis given in a file.
    Degenerate(DegenerateArgs),
    /// Check a closed set in the stored basis, or search for a basis.
    ClosedSet {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        set: String,
        /// Number of random bases to try.
        #[arg(long)]
        search: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Exhaustive isomorphism search over a prime field.
    IsoEvidence {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        alpha_a: Option<String>,
        #[arg(long)]
        alpha_b: Option<String>,
    },
    /// Run the full check suite; exit 1 if any check fails.
    VerifyAll {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the full check suite and print the report whatever its outcome.
    Report {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct DegenerateArgs {
    #[arg(long, conflicts_with_all = ["source", "target", "basis"])]
    row: Option<String>,
    #[arg(long, requires_all = ["target", "basis"])]
    source: Option<String>,
    #[arg(long)]
    target: Option<String>,
    /// JSON array of basis rows, entries in the scalar grammar.
    #[arg(long)]
    basis: Option<PathBuf>,
    /// Sample values of `a` for the fallback comparison; repeatable.
    #[arg(long)]
    alpha: Vec<String>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Overrides the seeds stored in the catalog.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Parses `argv` (program name first) and runs the verb.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p),
        None => Catalog::load_default(),
    }
}

fn alpha_arg(text: Option<&str>) -> Result<Option<Rational>> {
    text.map(parse_rational).transpose()
}

/// A rational instance of a catalog name, specialising `a` when given.
fn instance(entry: &CatalogEntry, alpha: Option<&Rational>) -> Result<QAlgebra> {
    match (alpha, entry.is_parametric()) {
        (Some(a), true) => entry.at_alpha(a),
        (None, true) => Err(Error::Precondition(format!(
            "{} depends on a; pass --alpha",
            entry.name
        ))),
        (Some(_), false) => Err(Error::Precondition(format!(
            "{} has no parameter; drop --alpha",
            entry.name
        ))),
        (None, false) => Ok(entry.instances()?.remove(0).1),
    }
}

fn load_identity(spec: &str) -> Result<Identity> {
    match Identity::named(spec) {
        Ok(id) => Ok(id),
        Err(named_err) => {
            let path = Path::new(spec);
            if path.is_file() {
                Identity::parse(read(path)?.trim())
            } else {
                Err(named_err)
            }
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let catalog_path = cli.catalog.as_deref();
    let w = |out: &mut dyn Write, s: String| -> Result<()> {
        out.write_all(s.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e))
    };
    match cli.command {
        Command::CheckIdentity {
            algebra,
            identity,
            alpha,
        } => {
            let cat = load_catalog(catalog_path)?;
            let alg = instance(&cat.entry(&algebra)?, alpha_arg(alpha.as_deref())?.as_ref())?;
            let id = load_identity(&identity)?;
            match id.check(&alg) {
                IdentityCheck::Holds => {
                    w(out, "Holds\n".into())?;
                    Ok(0)
                }
                IdentityCheck::Counterexample { args, value } => {
                    let args: Vec<String> = args.iter().map(|a| format!("e{}", a + 1)).collect();
                    let value: Vec<String> = value.iter().map(|v| v.to_string()).collect();
                    w(
                        out,
                        format!(
                            "Counterexample at ({}): value ({})\n",
                            args.join(","),
                            value.join(",")
                        ),
                    )?;
                    Ok(1)
                }
            }
        }
        Command::Invariants { algebra, alpha } => {
            let cat = load_catalog(catalog_path)?;
            let alg = instance(&cat.entry(&algebra)?, alpha_arg(alpha.as_deref())?.as_ref())?;
            w(out, render_invariants(&invariant_vector(&alg)))?;
            Ok(0)
        }
        Command::Cohomology {
            algebra,
            identity,
            alpha,
        } => {
            let cat = load_catalog(catalog_path)?;
            let alg = instance(&cat.entry(&algebra)?, alpha_arg(alpha.as_deref())?.as_ref())?;
            let id = load_identity(&identity)?;
            match cohomology(&alg, &id) {
                Ok(r) => {
                    let n = alg.dim();
                    let forms = |s: &crate::linalg::Subspace<Rational>| -> Result<String> {
                        Ok(s.basis_vectors()
                            .map(|v| BilinearForm::from_vector(n, v).map(|f| f.to_string()))
                            .collect::<Result<Vec<_>>>()?
                            .join(", "))
                    };
                    let reps: Vec<String> =
                        r.h2_representatives.iter().map(|f| f.to_string()).collect();
                    w(
                        out,
                        format!(
                            "Z2 (dim {}): {}\nB2 (dim {}): {}\nh2_dim = {}\nH2 representatives: {}\n",
                            r.z2.dim(),
                            forms(&r.z2)?,
                            r.b2.dim(),
                            forms(&r.b2)?,
                            r.h2_dim,
                            reps.join(", ")
                        ),
                    )?;
                    Ok(0)
                }
                Err(e @ Error::Precondition(_)) => {
                    w(out, format!("{e}\n"))?;
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Extend {
            algebra,
            cocycle,
            out: target,
            alpha,
        } => {
            let cat = load_catalog(catalog_path)?;
            let entry = cat.entry(&algebra)?;
            let alpha = alpha_arg(alpha.as_deref())?;
            let base: SymAlgebra = match &alpha {
                Some(a) => instance(&entry, Some(a))?.to_symbolic(),
                None => entry.algebra.clone(),
            };
            let n = base.dim();
            let thetas: Vec<BilinearForm<RationalFunction>> = read(&cocycle)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| BilinearForm::parse(l, n))
                .collect::<Result<_>>()?;
            match central_extension(&base, &Identity::right_alternative(), &thetas) {
                Ok(ext) => {
                    let text = algebra_json(&ext);
                    match target {
                        Some(p) => fs::write(&p, text).map_err(|e| io_err(&p, e))?,
                        None => w(out, text)?,
                    }
                    Ok(0)
                }
                Err(e @ Error::Cocycle { .. }) => {
                    w(out, format!("{e}\n"))?;
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Command::Degenerate(args) => {
            let cat = load_catalog(catalog_path)?;
            let row = match (&args.row, &args.source, &args.target, &args.basis) {
                (Some(name), ..) => cat.degeneration(name)?.clone(),
                (None, Some(source), Some(target), Some(basis)) => {
                    let rows: Vec<Vec<String>> = serde_json::from_str(&read(basis)?)
                        .map_err(|e| Error::Malformed(format!("{}: {e}", basis.display())))?;
                    let rows: Vec<Vec<&str>> = rows
                        .iter()
                        .map(|r| r.iter().map(String::as_str).collect())
                        .collect();
                    DegenerationRow {
                        name: format!("{source}_to_{target}"),
                        source: source.clone(),
                        target: target.clone(),
                        basis: ParametricBasis::parse(&rows)?,
                        alpha_samples: Vec::new(),
                        excluded_alpha: Vec::new(),
                    }
                }
                _ => {
                    return Err(Error::Precondition(
                        "give --row, or --source, --target and --basis".into(),
                    ))
                }
            };
            let mut row = row;
            if !args.alpha.is_empty() {
                row.alpha_samples = args
                    .alpha
                    .iter()
                    .map(|a| parse_rational(a))
                    .collect::<Result<_>>()?;
            }
            let source = cat.algebra(&row.source)?;
            let target = cat.algebra(&row.target)?;
            match verify_degeneration_row(&row, &source, &target)? {
                RowVerdict::Verified(mode) => {
                    let how = match mode {
                        VerificationMode::Symbolic => "symbolic".to_string(),
                        VerificationMode::Sampled(v) => format!("at a = {}", v.join(", ")),
                    };
                    w(out, format!("{}: Verified ({how})\n", row.name))?;
                    Ok(0)
                }
                RowVerdict::Failed(ms) => {
                    let mut text = format!("{}: Failed\n", row.name);
                    for m in ms {
                        let at = m.alpha.map_or(String::new(), |a| format!(" at a = {a}"));
                        text.push_str(&format!(
                            "  {}{at}: limit {} expected {}\n",
                            m.constant, m.limit, m.expected
                        ));
                    }
                    w(out, text)?;
                    Ok(1)
                }
            }
        }
        Command::ClosedSet {
            algebra,
            set,
            search,
            seed,
            alpha,
        } => {
            let cat = load_catalog(catalog_path)?;
            let alg = instance(&cat.entry(&algebra)?, alpha_arg(alpha.as_deref())?.as_ref())?;
            let rec = cat.closed_set(&set)?;
            match search {
                None => {
                    let holds = check_closed_set(&alg, &rec.conditions)?;
                    let verdict = if holds { "Holds" } else { "Fails" };
                    w(out, format!("{verdict} in the stored basis\n"))?;
                    Ok(if holds { 0 } else { 1 })
                }
                Some(trials) => match closed_set_basis_search(&alg, &rec.conditions, trials, seed)?
                {
                    BasisSearch::BasisFound { trial, basis } => {
                        w(out, format!("BasisFound at trial {trial}\n{basis}\n"))?;
                        Ok(0)
                    }
                    BasisSearch::NoBasisFound { trials, seed } => {
                        w(
                            out,
                            format!("NoBasisFound in {trials} trials, seed {seed} (evidence, not proof)\n"),
                        )?;
                        Ok(1)
                    }
                },
            }
        }
        Command::IsoEvidence {
            a,
            b,
            prime,
            alpha_a,
            alpha_b,
        } => {
            let cat = load_catalog(catalog_path)?;
            let qa = instance(&cat.entry(&a)?, alpha_arg(alpha_a.as_deref())?.as_ref())?;
            let qb = instance(&cat.entry(&b)?, alpha_arg(alpha_b.as_deref())?.as_ref())?;
            match ff_iso_evidence(&qa, &qb, prime)? {
                FfEvidence::IsoWitness(rows) => {
                    let mut text = format!("IsoWitness mod {prime} (rows are the new basis)\n");
                    for r in rows {
                        let r: Vec<String> = r.iter().map(u32::to_string).collect();
                        text.push_str(&format!("  [{}]\n", r.join(" ")));
                    }
                    w(out, text)?;
                }
                FfEvidence::NoneFoundModP { group_order } => {
                    w(
                        out,
                        format!(
                            "NoneFoundModP: none of the {group_order} matrices in GL_{}(F_{prime}) works (evidence, not proof)\n",
                            qa.dim()
                        ),
                    )?;
                }
            }
            Ok(0)
        }
        Command::VerifyAll { run, format } => {
            let report = run_report(catalog_path, &run)?;
            w(out, render(&report, format))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Report { run, format } => {
            let report = run_report(catalog_path, &run)?;
            w(out, render(&report, format))?;
            Ok(0)
        }
    }
}

fn run_report(catalog: Option<&Path>, args: &RunArgs) -> Result<Report> {
    let cat = load_catalog(catalog)?;
    let opts = VerifyOptions {
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(|| verify_catalog(&cat, &opts)))
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

fn render_invariants(v: &InvariantVector) -> String {
    let nil = v.nil_index.map_or("inf".to_string(), |k| k.to_string());
    format!(
        "dim = {}\ndim_A2 = {}\ndim_A3 = {}\nnil_index = {nil}\ndim_ann = {}\ndim_der = {}\ncommutative = {}\nassociative = {}\nright_alternative = {}\n",
        v.dim, v.dim_a2, v.dim_a3, v.dim_ann, v.dim_der, v.commutative, v.associative, v.right_alternative
    )
}

/// A single-algebra catalog file for `alg`.
fn algebra_json(alg: &SymAlgebra) -> String {
    let constants: Vec<_> = alg
        .nonzero_constants()
        .map(|(i, j, k, v)| json!({"i": i + 1, "j": j + 1, "k": k + 1, "value": v.to_string()}))
        .collect();
    let doc = json!({"algebras": [{
        "name": alg.name(),
        "dim": alg.dim(),
        "constants": constants,
    }]});
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

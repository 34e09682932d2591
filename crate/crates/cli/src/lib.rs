//! Command-line front end for the Severi degree engine.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! process exit code, so the binary and the tests drive the same code path.
//!
//! Exit codes: 0 success, 1 invalid parameters, 2 verification or
//! cross-check failure (or an internal integrity error), 3 cache problems.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use severi::gold;
use severi::irreducible::irr_degree_with;
use severi::severi::{degree_with, genus, EvalOptions};
use severi::{
    cache, expand, kontsevich_genus0, table, MemoStore, RecursionTerm, SeveriKey, TangencySeq,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_CACHE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "severi",
    version,
    about = "Degrees of generalized Severi varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree N^{d,δ}(α,β) of the full variety.
    Compute(KeyArgs),
    /// Degree N_{d,δ}(α,β) of the irreducible part.
    Irreducible(KeyArgs),
    /// Degrees of V^{d,δ} for every δ.
    Table(TableArgs),
    /// One step of the recursion with the contribution of each component.
    Expand(KeyArgs),
    /// Check every built-in reference value.
    Verify(Common),
    /// Compare rational irreducible degrees with the genus-zero recursion.
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Args)]
struct KeyArgs {
    /// Curve degree.
    #[arg(long)]
    d: u32,
    /// Number of nodes.
    #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
    delta: Option<u32>,
    /// Geometric genus, converted to δ = C(d-1, 2) - g.
    #[arg(long, allow_hyphen_values = true)]
    genus: Option<i64>,
    /// Assigned contacts, e.g. "1,0,2"; "0" or "" for none.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    alpha: String,
    /// Free contacts; defaults to d - Iα simple contacts.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    d: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CrosscheckArgs {
    /// Largest degree to compare.
    #[arg(long, default_value_t = 5)]
    max_d: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// CH-MEMO file to load before and save after the computation.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Evaluate independent subtrees on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

/// A failure mapped to an exit code and a diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<severi::Error> for Failure {
    fn from(e: severi::Error) -> Self {
        let code = match e {
            severi::Error::Corruption { .. } | severi::Error::Io { .. } => EXIT_CACHE,
            severi::Error::Integrity(_) => EXIT_CHECK_FAILED,
            _ => EXIT_INVALID,
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
            code: EXIT_INVALID,
            message: format!("write failed: {e}"),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one command line; results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Compute(args) => with_cache(&args.common, |memo, opts| {
            let key = parse_key(&args)?;
            let n = degree_with(&key, memo, opts);
            write_value(out, args.common.format, &key, &n)?;
            Ok(EXIT_OK)
        }),
        Command::Irreducible(args) => with_cache(&args.common, |memo, opts| {
            let key = parse_key(&args)?;
            let n = irr_degree_with(&key, memo, opts)?;
            write_value(out, args.common.format, &key, &n)?;
            Ok(EXIT_OK)
        }),
        Command::Table(args) => with_cache(&args.common, |memo, opts| {
            if args.d == 0 {
                return Err(Failure::invalid("degree must be positive"));
            }
            write_table(out, args.common.format, args.d, memo, opts)?;
            Ok(EXIT_OK)
        }),
        Command::Expand(args) => with_cache(&args.common, |memo, opts| {
            let key = parse_key(&args)?;
            if key.d < 2 {
                return Err(Failure::invalid(
                    "expand needs d >= 2: lines are the base case",
                ));
            }
            write_expansion(out, args.common.format, &key, memo, opts)?;
            Ok(EXIT_OK)
        }),
        Command::Verify(common) => with_cache(&common, |memo, _| {
            let checks = gold::check_all(memo)?;
            let passed = checks.iter().filter(|c| c.passed()).count();
            for c in &checks {
                if c.passed() {
                    writeln!(out, "PASS {} = {}", c.name, c.actual)?;
                } else {
                    writeln!(
                        out,
                        "FAIL {}: expected {}, got {}",
                        c.name, c.expected, c.actual
                    )?;
                }
            }
            writeln!(out, "{passed}/{} reference values passed", checks.len())?;
            Ok(if passed == checks.len() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }),
        Command::Crosscheck(args) => with_cache(&args.common, |memo, opts| {
            if args.max_d < 1 {
                return Err(Failure::invalid("--max-d must be at least 1"));
            }
            let mut ok = true;
            for d in 1..=args.max_d {
                let key = SeveriKey::classical(d, (d - 1) * d.saturating_sub(2) / 2);
                let irr = irr_degree_with(&key, memo, opts)?;
                let oracle = kontsevich_genus0(d);
                let verdict = if irr == oracle { "PASS" } else { "FAIL" };
                ok &= irr == oracle;
                writeln!(
                    out,
                    "{verdict} d={d} irreducible{key}={irr} genus0={oracle}"
                )?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }),
    }
}

fn with_cache(common: &Common, body: impl FnOnce(&MemoStore, EvalOptions) -> Outcome) -> Outcome {
    let memo = match &common.cache {
        Some(path) if path.exists() => cache::load(path)?,
        _ => MemoStore::new(),
    };
    let opts = if common.parallel {
        EvalOptions::parallel()
    } else {
        EvalOptions::default()
    };
    let code = body(&memo, opts)?;
    if let Some(path) = &common.cache {
        cache::save(&memo, path)?;
    }
    Ok(code)
}

fn parse_key(args: &KeyArgs) -> Result<SeveriKey, Failure> {
    let d = args.d;
    if d == 0 {
        return Err(Failure::invalid("degree must be positive"));
    }
    let delta = match (args.delta, args.genus) {
        (Some(delta), _) => delta,
        (None, Some(g)) => {
            let delta = genus(d, 0) - g;
            u32::try_from(delta).map_err(|_| {
                Failure::invalid(format!(
                    "genus {g} is too large for degree {d}: gives δ = {delta} < 0"
                ))
            })?
        }
        (None, None) => return Err(Failure::invalid("one of --delta or --genus is required")),
    };
    let alpha: TangencySeq = args
        .alpha
        .parse()
        .map_err(|e: severi::Error| Failure::invalid(format!("--alpha: {e}")))?;
    let beta: TangencySeq = match &args.beta {
        Some(text) => text
            .parse()
            .map_err(|e: severi::Error| Failure::invalid(format!("--beta: {e}")))?,
        None => {
            let rest = u64::from(d).checked_sub(alpha.weight()).ok_or_else(|| {
                Failure::invalid(format!("Iα = {} exceeds d = {d}", alpha.weight()))
            })?;
            TangencySeq::ones(rest as u32)
        }
    };
    let key = SeveriKey::new(d, delta, alpha, beta);
    key.validate()
        .map_err(|e| Failure::invalid(format!("invalid parameters {key}: {e}")))?;
    Ok(key)
}

#[derive(Serialize)]
struct ValueRecord<'a> {
    d: u32,
    delta: u32,
    alpha: &'a [u32],
    beta: &'a [u32],
    #[serde(rename = "N")]
    n: String,
}

#[derive(Serialize)]
struct TableRecord<'a> {
    d: u32,
    delta: u32,
    genus: i64,
    alpha: &'a [u32],
    beta: &'a [u32],
    #[serde(rename = "N")]
    n: String,
}

#[derive(Serialize)]
struct TermRecord<'a> {
    kind: &'static str,
    d: u32,
    delta: u32,
    alpha: &'a [u32],
    beta: &'a [u32],
    coefficient: String,
    branch_count: String,
    branch_multiplicity: u64,
    #[serde(rename = "N")]
    n: String,
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    let text = serde_json::to_string(value).expect("plain records serialize");
    writeln!(out, "{text}")
}

fn write_value(
    out: &mut dyn Write,
    format: Format,
    key: &SeveriKey,
    n: &BigUint,
) -> std::io::Result<()> {
    match format {
        Format::Plain => writeln!(out, "{n}"),
        Format::Csv => {
            writeln!(out, "d,delta,alpha,beta,N")?;
            writeln!(
                out,
                "{},{},\"{}\",\"{}\",{n}",
                key.d, key.delta, key.alpha, key.beta
            )
        }
        Format::Json => json_line(
            out,
            &ValueRecord {
                d: key.d,
                delta: key.delta,
                alpha: key.alpha.entries(),
                beta: key.beta.entries(),
                n: n.to_string(),
            },
        ),
    }
}

fn write_table(
    out: &mut dyn Write,
    format: Format,
    d: u32,
    memo: &MemoStore,
    opts: EvalOptions,
) -> std::io::Result<()> {
    let rows = table(d, memo, opts);
    match format {
        Format::Plain => {
            writeln!(out, "{:>5} {:>5} {:>12}", "delta", "genus", "N")?;
            for r in &rows {
                writeln!(out, "{:>5} {:>5} {:>12}", r.delta, r.genus, r.degree)?;
            }
        }
        Format::Csv => {
            writeln!(out, "delta,genus,N")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.delta, r.genus, r.degree)?;
            }
        }
        Format::Json => {
            let beta = TangencySeq::ones(d);
            for r in &rows {
                json_line(
                    out,
                    &TableRecord {
                        d,
                        delta: r.delta,
                        genus: r.genus,
                        alpha: &[],
                        beta: beta.entries(),
                        n: r.degree.to_string(),
                    },
                )?;
            }
        }
    }
    Ok(())
}

fn write_expansion(
    out: &mut dyn Write,
    format: Format,
    key: &SeveriKey,
    memo: &MemoStore,
    opts: EvalOptions,
) -> Outcome {
    let terms = expand(key)?;
    let total = degree_with(key, memo, opts);
    match format {
        Format::Plain => writeln!(out, "{key} = {total}")?,
        Format::Csv => writeln!(
            out,
            "kind,d,delta,alpha,beta,coefficient,branch_count,branch_multiplicity,N"
        )?,
        Format::Json => {}
    }
    for (i, t) in terms.iter().enumerate() {
        let child = t.child();
        let n = degree_with(child, memo, opts);
        let coefficient = t.coefficient();
        let kind = if t.is_contact() {
            "contact"
        } else {
            "degenerate"
        };
        match format {
            Format::Plain => {
                let lead = if i == 0 { " " } else { "+" };
                let detail = match t {
                    RecursionTerm::Contact { k, .. } => format!("contact k={k}"),
                    RecursionTerm::Degenerate {
                        omega_choices,
                        branch_count,
                        branch_multiplicity,
                        ..
                    } => format!(
                        "degenerate choices={omega_choices} branches={branch_count} multiplicity={branch_multiplicity}"
                    ),
                };
                writeln!(
                    out,
                    "{lead} {coefficient} {child}  [{detail}]  <{coefficient} x {n} = {}>",
                    &coefficient * &n
                )?;
            }
            Format::Csv => writeln!(
                out,
                "{kind},{},{},\"{}\",\"{}\",{coefficient},{},{},{n}",
                child.d,
                child.delta,
                child.alpha,
                child.beta,
                t.branch_count(),
                t.branch_multiplicity()
            )?,
            Format::Json => json_line(
                out,
                &TermRecord {
                    kind,
                    d: child.d,
                    delta: child.delta,
                    alpha: child.alpha.entries(),
                    beta: child.beta.entries(),
                    coefficient: coefficient.to_string(),
                    branch_count: t.branch_count().to_string(),
                    branch_multiplicity: t.branch_multiplicity(),
                    n: n.to_string(),
                },
            )?,
        }
    }
    Ok(EXIT_OK)
}

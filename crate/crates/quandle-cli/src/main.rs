//! Command-line front end for the quandles toolkit.
//!
//! Every command is a pure function of its file inputs and flags: rerunning
//! produces byte-identical output. Payloads go to stdout, diagnostics to
//! stderr; exit codes are 0 (ok), 1 (semantically invalid input), and
//! 2 (I/O or parse failure). JSON object keys are emitted in sorted order,
//! and integers of magnitude ≥ 2⁵³ are emitted as decimal strings.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use quandles::fp::MAX_BUILD_SIZE;
use quandles::{
    are_isomorphic, build_fp_quandle, canonical_parameters, enumerate_abelian_quandles,
    enumerate_quandles, extract_parameters, family_graphic, family_u, family_u_star,
    family_u_starstar, homology_h1, homology_h2, integer_value,
    structure_group_is_free_abelian, Error, FpParameters, ParametersJson, QuandleJson,
    QuandleTable,
};

#[derive(Parser)]
#[command(
    name = "quandle",
    version,
    about = "Finite quandle toolkit: validation, construction, structure-group analysis, homology, enumeration"
)]
struct Cli {
    /// Payload format printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Accepted for script compatibility; every command is deterministic
    /// and the value is never read.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a table file; report orbits and the abelianity flags.
    Check {
        /// Table document: {"size": n, "table": [[...], ...]}.
        file: PathBuf,
    },
    /// Construct a table from a named family or a parameters file.
    Build {
        #[command(subcommand)]
        family: Family,
    },
    /// Extract the per-orbit triangular parameters of an abelian table.
    Params {
        file: PathBuf,
        /// Normalise under orbit reordering, making the output a complete
        /// isomorphism invariant.
        #[arg(long)]
        canonical: bool,
    },
    /// Structure-group analysis: parameter group, relation matrix, and the
    /// free-abelianity criteria.
    Group { file: PathBuf },
    /// First and second integral homology, with per-orbit torsion.
    Homology { file: PathBuf },
    /// Decide whether two table files present isomorphic quandles.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// List quandles of a given size.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Restrict to abelian quandles, listed as canonical parameter data
        /// (one item per isomorphism class).
        #[arg(long)]
        abelian: bool,
        /// Deduplicate tables under relabelling (implied by --abelian).
        #[arg(long)]
        up_to_iso: bool,
        /// Keep only quandles with exactly this many orbits.
        #[arg(long, value_name = "R")]
        orbits: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Two cyclic orbits of sizes M and N; each orbit fixes itself and
    /// steps the other cyclically.
    U { m: u64, n: u64 },
    /// The two-orbit family extended by one fixed element.
    Ustar { m: u64, n: u64 },
    /// The two-orbit family extended by a swapped pair.
    Ustarstar { m: u64, n: u64 },
    /// One cyclic orbit per size; elements fix their own orbit and step
    /// every other orbit by one (at least two sizes).
    Graphic {
        #[arg(required = true, num_args = 1..)]
        sizes: Vec<u64>,
    },
    /// The table with a ◁ b = a throughout.
    Trivial { n: usize },
    /// Rebuild from a parameters document: {"r": r, "collections": [...]}.
    Fp { file: PathBuf },
}

/// A failed run: what to print on stderr and which code to exit with.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::semantic(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Check { file } => cmd_check(file, cli.format),
        Command::Build { family } => cmd_build(family, cli.format),
        Command::Params { file, canonical } => cmd_params(file, *canonical, cli.format),
        Command::Group { file } => cmd_group(file, cli.format),
        Command::Homology { file } => cmd_homology(file, cli.format),
        Command::Isomorphic { first, second } => cmd_isomorphic(first, second, cli.format),
        Command::Enumerate {
            size,
            abelian,
            up_to_iso,
            orbits,
        } => cmd_enumerate(*size, *abelian, *up_to_iso, *orbits, cli.format),
    }
}

// ---------------------------------------------------------------------------
// file loading

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn parse_table_document(path: &Path) -> Result<QuandleJson, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::io(format!("{}: not a table document: {e}", path.display())))
}

/// Reads and fully validates a table file; axiom violations are semantic
/// failures (exit 1), unreadable or malformed files I/O failures (exit 2).
fn load_table(path: &Path) -> Result<QuandleTable, Failure> {
    parse_table_document(path)?
        .into_table()
        .map_err(|e| Failure::semantic(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// shared rendering

fn emit(format: Format, payload: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(payload).expect("valid payload")),
        Format::Text => println!("{text}"),
    }
}

/// Structured form of a validation failure: the variant name, its witness
/// fields, and the human-readable description.
fn error_value(e: &Error) -> Value {
    let (kind, fields): (&str, Vec<(&str, Value)>) = match e {
        Error::BadShape { rows, row, len } => (
            "BadShape",
            vec![
                ("rows", json!(rows)),
                ("row", json!(row)),
                ("len", json!(len)),
            ],
        ),
        Error::EntryOutOfRange { row, col, value } => (
            "EntryOutOfRange",
            vec![
                ("row", json!(row)),
                ("col", json!(col)),
                ("value", json!(value)),
            ],
        ),
        Error::NotAPermutation { column } => {
            ("NotAPermutation", vec![("column", json!(column))])
        }
        Error::NotIdempotent { element } => ("NotIdempotent", vec![("element", json!(element))]),
        Error::NotSelfDistributive { a, b, c } => (
            "NotSelfDistributive",
            vec![("a", json!(a)), ("b", json!(b)), ("c", json!(c))],
        ),
        Error::NotTwoReductive { a, b, c } => (
            "NotTwoReductive",
            vec![("a", json!(a)), ("b", json!(b)), ("c", json!(c))],
        ),
        Error::NotAbelian { a, b, c } => (
            "NotAbelian",
            vec![("a", json!(a)), ("b", json!(b)), ("c", json!(c))],
        ),
        Error::FreenessViolated { orbit } => ("FreenessViolated", vec![("orbit", json!(orbit))]),
        Error::SizeTooLarge { size, max } => (
            "SizeTooLarge",
            vec![("size", json!(size)), ("max", json!(max))],
        ),
        Error::WrongOrbitCount { expected, got } => (
            "WrongOrbitCount",
            vec![("expected", json!(expected)), ("got", json!(got))],
        ),
        Error::NotDiagonal => ("NotDiagonal", vec![]),
        Error::InvalidParameters { reason } => {
            ("InvalidParameters", vec![("reason", json!(reason))])
        }
        Error::BadIndex { index, bound } => (
            "BadIndex",
            vec![("index", json!(index)), ("bound", json!(bound))],
        ),
    };
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(kind));
    for (key, value) in fields {
        obj.insert(key.into(), value);
    }
    obj.insert("detail".into(), json!(e.to_string()));
    Value::Object(obj)
}

fn torsion_values(factors: &[num_bigint::BigInt]) -> Value {
    Value::Array(factors.iter().map(integer_value).collect())
}

fn torsion_text(factors: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn table_text(q: &QuandleTable) -> String {
    let mut out = format!("size: {}", q.size());
    for row in q.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = write!(out, "\n{}", cells.join(" "));
    }
    out
}

// ---------------------------------------------------------------------------
// commands

fn cmd_check(file: &Path, format: Format) -> Result<ExitCode, Failure> {
    match parse_table_document(file)?.into_table() {
        Ok(q) => {
            let orbits = q.orbits();
            let sizes: Vec<usize> = orbits.orbits.iter().map(|o| o.len()).collect();
            let payload = json!({
                "status": "ok",
                "size": q.size(),
                "orbit_count": orbits.count(),
                "orbit_sizes": sizes,
                "abelian": q.is_abelian(),
                "two_reductive": q.is_two_reductive(),
            });
            let sizes_text: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            let text = format!(
                "size: {}\norbits: {} (sizes: {})\nabelian: {}\ntwo-reductive: {}",
                q.size(),
                orbits.count(),
                sizes_text.join(" "),
                q.is_abelian(),
                q.is_two_reductive(),
            );
            emit(format, &payload, &text);
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            let payload = json!({
                "status": "error",
                "error": error_value(&e),
            });
            emit(format, &payload, &format!("invalid: {e}"));
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_build(family: &Family, format: Format) -> Result<ExitCode, Failure> {
    let table = match family {
        Family::U { m, n } => family_u(*m, *n)?.table,
        Family::Ustar { m, n } => family_u_star(*m, *n)?.table,
        Family::Ustarstar { m, n } => family_u_starstar(*m, *n)?.table,
        Family::Graphic { sizes } => family_graphic(sizes)?.table,
        Family::Trivial { n } => {
            if *n == 0 {
                return Err(Failure::semantic("size must be at least 1"));
            }
            if *n as u128 > MAX_BUILD_SIZE {
                return Err(Error::SizeTooLarge {
                    size: *n,
                    max: MAX_BUILD_SIZE as usize,
                }
                .into());
            }
            QuandleTable::trivial(*n)
        }
        Family::Fp { file } => {
            let text = read_file(file)?;
            let parsed: ParametersJson = serde_json::from_str(&text).map_err(|e| {
                Failure::io(format!("{}: not a parameters document: {e}", file.display()))
            })?;
            let params = parsed
                .into_parameters()
                .map_err(|e| Failure::semantic(format!("{}: {e}", file.display())))?;
            build_fp_quandle(&params)?
        }
    };
    let payload = serde_json::to_value(QuandleJson::from_table(&table)).expect("plain struct");
    emit(format, &payload, &table_text(&table));
    Ok(ExitCode::SUCCESS)
}

fn cmd_params(file: &Path, canonical: bool, format: Format) -> Result<ExitCode, Failure> {
    let q = load_table(file)?;
    let params = if canonical {
        canonical_parameters(&q)?
    } else {
        extract_parameters(&q)?
    };
    let payload =
        serde_json::to_value(ParametersJson::from_parameters(&params)).expect("plain struct");
    emit(format, &payload, &params.to_string());
    Ok(ExitCode::SUCCESS)
}

fn cmd_group(file: &Path, format: Format) -> Result<ExitCode, Failure> {
    let q = load_table(file)?;
    let cert = structure_group_is_free_abelian(&q);
    let r = q.orbits().count();

    let criteria: Map<String, Value> = cert
        .criteria
        .iter()
        .map(|(name, value)| (name.clone(), json!(value)))
        .collect();
    let group_value = match &cert.parameter_group {
        Some(g) => Value::Array(g.invariant_factors.iter().map(integer_value).collect()),
        None => Value::Null,
    };
    let matrix_value = match &cert.parameter_matrix {
        Some(pm) => Value::Array(
            (0..pm.matrix.rows())
                .map(|i| {
                    Value::Array(
                        (0..pm.matrix.cols())
                            .map(|j| Value::String(pm.matrix.get(i, j).to_string()))
                            .collect(),
                    )
                })
                .collect(),
        ),
        None => Value::Null,
    };
    let payload = json!({
        "abelian_quandle": cert.abelian,
        "r": r,
        "parameter_group": group_value,
        "structure_group_free_abelian": cert.free_abelian,
        "criteria": Value::Object(criteria),
        "parameter_matrix": matrix_value,
    });

    let mut text = format!(
        "abelian quandle: {}\norbits: {}\nfree abelian structure group: {}",
        cert.abelian, r, cert.free_abelian
    );
    if let Some(g) = &cert.parameter_group {
        let _ = write!(text, "\nparameter group: {g}");
    }
    if !cert.criteria.is_empty() {
        let _ = write!(text, "\ncriteria:");
        for (name, value) in &cert.criteria {
            let _ = write!(text, "\n  {name}: {value}");
        }
    }
    if let Some(pm) = &cert.parameter_matrix {
        let _ = write!(text, "\nparameter matrix rows:");
        for i in 0..pm.matrix.rows() {
            let cells: Vec<String> = (0..pm.matrix.cols())
                .map(|j| pm.matrix.get(i, j).to_string())
                .collect();
            let _ = write!(text, "\n  [{}]", cells.join(", "));
        }
    }
    emit(format, &payload, &text);
    Ok(ExitCode::SUCCESS)
}

fn cmd_homology(file: &Path, format: Format) -> Result<ExitCode, Failure> {
    let q = load_table(file)?;
    let h1 = homology_h1(&q);
    let h2 = homology_h2(&q)?;

    let per_orbit: Vec<Value> = h2
        .per_orbit
        .iter()
        .map(|o| {
            json!({
                "free_rank": o.free_rank,
                "torsion": torsion_values(&o.torsion),
            })
        })
        .collect();
    let payload = json!({
        "h1_rank": h1.free_rank(),
        "h2": {
            "free_rank": h2.total_free_rank,
            "torsion": torsion_values(&h2.total_torsion),
            "per_orbit": per_orbit,
        },
    });

    let mut text = format!(
        "H1: free of rank {}\nH2: free rank {}, torsion {}",
        h1.free_rank(),
        h2.total_free_rank,
        torsion_text(&h2.total_torsion),
    );
    for o in &h2.per_orbit {
        let _ = write!(
            text,
            "\n  orbit {}: free rank {}, torsion {}",
            o.orbit,
            o.free_rank,
            torsion_text(&o.torsion)
        );
    }
    emit(format, &payload, &text);
    Ok(ExitCode::SUCCESS)
}

/// Parameter extraction that treats "not abelian" as a negative answer and
/// every other failure (e.g. a size guard) as a hard error.
fn try_canonical_parameters(q: &QuandleTable) -> Result<Option<FpParameters>, Failure> {
    match canonical_parameters(q) {
        Ok(p) => Ok(Some(p)),
        Err(Error::NotTwoReductive { .. }) | Err(Error::NotAbelian { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn cmd_isomorphic(first: &Path, second: &Path, format: Format) -> Result<ExitCode, Failure> {
    let a = load_table(first)?;
    let b = load_table(second)?;
    // Canonical parameters are a complete invariant for abelian quandles of
    // any size; the relabelling search is only needed when both sides are
    // non-abelian (abelianity itself is invariant, so a mixed pair differs).
    let answer = match (try_canonical_parameters(&a)?, try_canonical_parameters(&b)?) {
        (Some(pa), Some(pb)) => pa == pb,
        (Some(_), None) | (None, Some(_)) => false,
        (None, None) => are_isomorphic(&a, &b)?,
    };
    emit(format, &json!({ "isomorphic": answer }), &answer.to_string());
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    size: usize,
    abelian: bool,
    up_to_iso: bool,
    orbit_filter: Option<usize>,
    format: Format,
) -> Result<ExitCode, Failure> {
    if abelian {
        let mut items = enumerate_abelian_quandles(size as u64)?;
        if let Some(r) = orbit_filter {
            items.retain(|p| p.orbit_count() == r);
        }
        let values: Vec<Value> = items
            .iter()
            .map(|p| {
                serde_json::to_value(ParametersJson::from_parameters(p)).expect("plain struct")
            })
            .collect();
        let payload = json!({
            "size": size,
            "abelian": true,
            "up_to_iso": true,
            "count": items.len(),
            "items": values,
        });
        let mut text = format!("count: {}", items.len());
        for p in &items {
            let _ = write!(text, "\n{p}");
        }
        emit(format, &payload, &text);
    } else {
        let mut tables = enumerate_quandles(size, up_to_iso)?;
        if let Some(r) = orbit_filter {
            tables.retain(|q| q.orbits().count() == r);
        }
        let values: Vec<Value> = tables
            .iter()
            .map(|q| serde_json::to_value(QuandleJson::from_table(q)).expect("plain struct"))
            .collect();
        let payload = json!({
            "size": size,
            "abelian": false,
            "up_to_iso": up_to_iso,
            "count": tables.len(),
            "items": values,
        });
        emit(format, &payload, &format!("count: {}", tables.len()));
    }
    Ok(ExitCode::SUCCESS)
}

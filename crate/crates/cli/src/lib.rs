//! The `kg` command line. Every command reads files, calls the library and
//! writes machine-readable results to stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 input parse error,
//! 3 inconsistent knowledge base, 4 query or validation error.

mod embed;
mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use kg_core::io::{parse_ntriples, parse_turtle, read_csv, reify_table, serialize_ntriples, TableSpec};
use kg_core::query::{parse_competency, parse_query_with, query, Regime};
use kg_core::reason::{saturate, InconsistencyReport, Profile};
use kg_core::{Graph, PrefixMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_QUERY: i32 = 4;

/// A command that could not complete, with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn query(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_QUERY,
            message: message.into(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

#[derive(Debug, Parser)]
#[command(name = "kg", version, about = "Knowledge graph toolkit: parse, reason, query, reify and embed")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Nt,
    Ttl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Rdfs,
    Owl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    None,
    Rdfs,
    Owl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a graph and print it as canonical N-Triples.
    Parse {
        input: PathBuf,
        /// Input syntax; guessed from the extension when omitted.
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Saturate a graph under RDFS or OWL rules.
    Infer {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "rdfs")]
        profile: ProfileArg,
        /// Print only the derived triples.
        #[arg(long)]
        derived_only: bool,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check consistency and, optionally, competency questions.
    Check {
        input: PathBuf,
        /// File of `QUESTION name text` blocks, each followed by a query.
        #[arg(long)]
        competency: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Answer a graph pattern query.
    Query {
        input: PathBuf,
        query: PathBuf,
        /// Overrides the REGIME line of the query.
        #[arg(long, value_enum)]
        regime: Option<RegimeArg>,
        #[arg(long, conflicts_with = "tsv")]
        json: bool,
        #[arg(long)]
        tsv: bool,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Turn table rows into n-ary relation instances.
    Reify {
        csv: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// TransE embeddings.
    #[command(subcommand)]
    Embed(embed::EmbedCommand),
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Parse { input, format, out: dest } => cmd_parse(&input, format, dest.as_deref(), out, err),
        Command::Infer {
            input,
            profile,
            derived_only,
            format,
            out: dest,
        } => cmd_infer(&input, format, profile, derived_only, dest.as_deref(), out, err),
        Command::Check {
            input,
            competency,
            format,
        } => cmd_check(&input, format, competency.as_deref(), out, err),
        Command::Query {
            input,
            query,
            regime,
            json,
            tsv: _,
            format,
        } => cmd_query(&input, format, &query, regime, json, out, err),
        Command::Reify { csv, spec, out: dest } => cmd_reify(&csv, &spec, dest.as_deref(), out),
        Command::Embed(cmd) => embed::run(cmd, out, err),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, dest: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match dest {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}"))),
    }
}

/// Reads a graph, as N-Triples for `.nt` files and Turtle otherwise unless
/// `format` says which. Turtle warnings go to `err`.
pub(crate) fn load_graph(
    path: &Path,
    format: Option<InputFormat>,
    err: &mut dyn Write,
) -> Result<(Graph, PrefixMap), Failure> {
    let text = read(path)?;
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("nt") => InputFormat::Nt,
        _ => InputFormat::Ttl,
    });
    let located = |e: kg_core::io::ParseError| Failure::parse(format!("{}: {e}", path.display()));
    match format {
        InputFormat::Nt => Ok((parse_ntriples(&text).map_err(located)?, PrefixMap::with_standard())),
        InputFormat::Ttl => {
            let report = parse_turtle(&text).map_err(located)?;
            for (line, w) in &report.warnings {
                let _ = writeln!(err, "warning: {}: line {line}: {w}", path.display());
            }
            Ok((report.graph, report.prefixes))
        }
    }
}

fn report_violations(report: &InconsistencyReport, err: &mut dyn Write) {
    for v in report.iter() {
        let _ = writeln!(err, "violation: {v}");
    }
}

pub fn cmd_parse(
    input: &Path,
    format: Option<InputFormat>,
    dest: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (g, _) = load_graph(input, format, err)?;
    emit(&serialize_ntriples(&g), dest, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_infer(
    input: &Path,
    format: Option<InputFormat>,
    profile: ProfileArg,
    derived_only: bool,
    dest: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (g, _) = load_graph(input, format, err)?;
    let profile = match profile {
        ProfileArg::Rdfs => Profile::Rdfs,
        ProfileArg::Owl => Profile::Owl,
    };
    let closure = saturate(&g, profile);
    let text = if derived_only {
        serialize_ntriples(&closure.derived_graph())
    } else {
        serialize_ntriples(closure.graph())
    };
    emit(&text, dest, out)?;
    if closure.is_consistent() {
        Ok(EXIT_OK)
    } else {
        report_violations(closure.report(), err);
        let _ = writeln!(err, "error: knowledge base is inconsistent ({} violations)", closure.report().len());
        Ok(EXIT_INCONSISTENT)
    }
}

pub fn cmd_check(
    input: &Path,
    format: Option<InputFormat>,
    competency: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (g, prefixes) = load_graph(input, format, err)?;
    let closure = saturate(&g, Profile::Owl);
    let w = |out: &mut dyn Write, line: String| {
        out.write_all(line.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}")))
    };
    if !closure.is_consistent() {
        w(out, "inconsistent\n".into())?;
        for v in closure.report().iter() {
            w(out, format!("violation\t{v}\n"))?;
        }
        return Ok(EXIT_INCONSISTENT);
    }
    w(out, "consistent\n".into())?;
    if let Some(path) = competency {
        let text = read(path)?;
        let questions = parse_competency(&text, &prefixes)
            .map_err(|e| Failure::query(format!("{}: {e}", path.display())))?;
        for q in questions {
            let regime = q.query.regime.unwrap_or_default();
            let (status, detail) = match query(&g, &q.query, regime) {
                Ok(rows) if rows.is_empty() => ("FAIL", "0".to_string()),
                Ok(rows) => ("PASS", rows.len().to_string()),
                Err(e) => ("FAIL", e.to_string()),
            };
            w(out, format!("{status}\t{}\t{detail}\t{}\n", q.name, q.text))?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_query(
    input: &Path,
    format: Option<InputFormat>,
    query_path: &Path,
    regime: Option<RegimeArg>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (g, prefixes) = load_graph(input, format, err)?;
    let text = read(query_path)?;
    let q = parse_query_with(&text, &prefixes).map_err(|e| Failure::query(format!("{}: {e}", query_path.display())))?;
    let regime = match regime {
        Some(RegimeArg::None) => Regime::None,
        Some(RegimeArg::Rdfs) => Regime::Rdfs,
        Some(RegimeArg::Owl) => Regime::Owl,
        None => q.regime.unwrap_or_default(),
    };
    let rows = query(&g, &q, regime).map_err(|e| Failure::query(e.to_string()))?;
    let vars = q.output_variables();
    let text = if json {
        format::bindings_json(&vars, &rows)
    } else {
        format::bindings_tsv(&vars, &rows)
    };
    emit(&text, None, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_reify(csv: &Path, spec: &Path, dest: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    use kg_core::io::ReifyError;
    let spec_text = read(spec)?;
    let spec = TableSpec::parse(&spec_text).map_err(|e| Failure::usage(format!("{}: {e}", spec.display())))?;
    let text = read(csv)?;
    let (_, rows) = read_csv(&text).map_err(|e| Failure::parse(format!("{}: {e}", csv.display())))?;
    let g = reify_table(&rows, &spec).map_err(|e| match e {
        ReifyError::Csv(_) => Failure::parse(format!("{}: {e}", csv.display())),
        _ => Failure::usage(format!("{}: {e}", csv.display())),
    })?;
    emit(&serialize_ntriples(&g), dest, out)?;
    Ok(EXIT_OK)
}

//! The `shacl-dl` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::import::{import_shapes_graph_with_prefixes, PrefixMap};
use crate::model::{Graph, Name, NodeName, PropName, ShapeSchema, Vocabulary};
use crate::natural::{eval_on_graph_with, validate_with};
use crate::reference::{check_theorem1_with, diff_semantics_with};
use crate::report::{render_answers, render_conformance, render_diffs, render_theorem1, Names, ReportFormat};
use crate::text::{parse_graph, parse_schema, parse_shape_expr, serialize_schema, GraphFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "shacl-dl", version, about = "Validate RDF graphs against SHACL shapes under the natural semantics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether a graph conforms to a shape schema.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        report: Report,
    },
    /// Evaluate one shape on a graph and list which nodes satisfy it.
    Eval {
        #[command(flatten)]
        graph: GraphInput,
        /// Schema whose definitions are in force (optional).
        #[arg(long)]
        schema: Option<PathBuf>,
        #[arg(long, value_enum)]
        schema_format: Option<SchemaFormat>,
        /// Shape in DSL syntax.
        #[arg(long)]
        shape: String,
        /// Comma-separated node names to query.
        #[arg(long, value_delimiter = ',', required = true)]
        nodes: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        report: Report,
    },
    /// Translate a SHACL shapes graph (Turtle) into the DSL.
    ImportShacl {
        input: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List targets on which the natural and active-domain semantics disagree.
    DiffSemantics {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        report: Report,
    },
    /// Compare the star interpretation with enlarged finite domains.
    CheckTheorem1 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        max_fresh: u32,
        #[arg(long, value_enum, default_value = "text")]
        report: Report,
    },
}

#[derive(Args, Debug)]
struct GraphInput {
    #[arg(long)]
    graph: PathBuf,
    /// Inferred from the extension (.nt, .facts) when omitted.
    #[arg(long, value_enum)]
    graph_format: Option<GraphFormatArg>,
    /// Extra property name for `closed` to rule out (repeatable).
    #[arg(long = "extra-property")]
    extra_property: Vec<String>,
}

#[derive(Args, Debug)]
struct Input {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long)]
    schema: PathBuf,
    /// Inferred from the extension (.shql, .ttl) when omitted.
    #[arg(long, value_enum)]
    schema_format: Option<SchemaFormat>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphFormatArg {
    Ntriples,
    Facts,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SchemaFormat {
    Dsl,
    ShaclTurtle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Report {
    Text,
    Json,
}

impl From<Report> for ReportFormat {
    fn from(r: Report) -> Self {
        match r {
            Report::Text => ReportFormat::Text,
            Report::Json => ReportFormat::Json,
        }
    }
}

/// Names of the subcommands, in declaration order.
pub fn command_names() -> Vec<String> {
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_owned())
        .filter(|n| n != "help")
        .collect()
}

/// A failure that ends the run with exit code 2.
struct Failure(String);

impl Failure {
    fn at(path: &Path, err: Error) -> Self {
        Failure(format!("{}: {err}", path.display()))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn extension(path: &Path) -> Option<&str> {
    path.extension().and_then(|e| e.to_str())
}

fn load_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let format = match input.graph_format {
        Some(GraphFormatArg::Ntriples) => GraphFormat::NTriples,
        Some(GraphFormatArg::Facts) => GraphFormat::SimpleFacts,
        None => extension(&input.graph).and_then(GraphFormat::from_extension).ok_or_else(|| {
            Failure(format!(
                "{}: cannot infer the graph format; pass --graph-format ntriples|facts",
                input.graph.display()
            ))
        })?,
    };
    parse_graph(&read(&input.graph)?, format).map_err(|e| Failure::at(&input.graph, e))
}

fn load_schema(path: &Path, format: Option<SchemaFormat>) -> Result<(ShapeSchema, PrefixMap), Failure> {
    let format = match format {
        Some(f) => f,
        None => match extension(path) {
            Some("shql") => SchemaFormat::Dsl,
            Some("ttl") => SchemaFormat::ShaclTurtle,
            _ => {
                return Err(Failure(format!(
                    "{}: cannot infer the schema format; pass --schema-format dsl|shacl-turtle",
                    path.display()
                )))
            }
        },
    };
    let text = read(path)?;
    match format {
        SchemaFormat::Dsl => parse_schema(&text).map(|s| (s, PrefixMap::default())),
        SchemaFormat::ShaclTurtle => import_shapes_graph_with_prefixes(&text),
    }
    .map_err(|e| Failure::at(path, e))
}

fn extra_vocabulary(input: &GraphInput) -> Vocabulary {
    let mut v = Vocabulary::new();
    for p in &input.extra_property {
        v.insert(Name::Property(PropName::new(p)));
    }
    v
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Reports go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let mut emit = |text: String| -> Result<(), Failure> {
        stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure(format!("cannot write output: {e}")))
    };
    let engine = |e: Error| Failure(e.to_string());
    match command {
        Command::Validate { input, report } => {
            let graph = load_graph(&input.graph)?;
            let (schema, prefixes) = load_schema(&input.schema, input.schema_format)?;
            let result = validate_with(&graph, &schema, &extra_vocabulary(&input.graph)).map_err(engine)?;
            emit(render_conformance(&result, report.into(), &Names::new(prefixes)))?;
            Ok(if result.conforms() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Eval {
            graph,
            schema,
            schema_format,
            shape,
            nodes,
            report,
        } => {
            let g = load_graph(&graph)?;
            let (schema, prefixes) = match &schema {
                Some(path) => load_schema(path, schema_format)?,
                None => (ShapeSchema::empty(), PrefixMap::default()),
            };
            let shape = parse_shape_expr(&shape).map_err(|e| Failure(format!("--shape: {e}")))?;
            let query: Vec<NodeName> = nodes.iter().map(NodeName::new).collect();
            let answers =
                eval_on_graph_with(&shape, &g, &schema, &query, &extra_vocabulary(&graph)).map_err(engine)?;
            let mut order = query;
            let mut seen = std::collections::BTreeSet::new();
            order.retain(|n| seen.insert(n.clone()));
            emit(render_answers(&answers, &order, report.into(), &Names::new(prefixes)))?;
            Ok(EXIT_OK)
        }
        Command::ImportShacl { input, output } => {
            let text = read(&input)?;
            let (schema, _) = import_shapes_graph_with_prefixes(&text).map_err(|e| Failure::at(&input, e))?;
            let dsl = serialize_schema(&schema);
            match output {
                Some(path) => std::fs::write(&path, dsl)
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                None => emit(dsl)?,
            }
            Ok(EXIT_OK)
        }
        Command::DiffSemantics { input, report } => {
            let graph = load_graph(&input.graph)?;
            let (schema, prefixes) = load_schema(&input.schema, input.schema_format)?;
            let diffs = diff_semantics_with(&graph, &schema, &extra_vocabulary(&input.graph)).map_err(engine)?;
            emit(render_diffs(&diffs, report.into(), &Names::new(prefixes)))?;
            Ok(if diffs.is_empty() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::CheckTheorem1 {
            input,
            max_fresh,
            report,
        } => {
            let graph = load_graph(&input.graph)?;
            let (schema, prefixes) = load_schema(&input.schema, input.schema_format)?;
            let outcome = check_theorem1_with(&graph, &schema, max_fresh as usize, &extra_vocabulary(&input.graph))
                .map_err(engine)?;
            emit(render_theorem1(&outcome, report.into(), &Names::new(prefixes)))?;
            Ok(if outcome.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exactly_five_commands() {
        assert_eq!(
            command_names(),
            ["validate", "eval", "import-shacl", "diff-semantics", "check-theorem1"]
        );
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["shacl-dl", "bogus"], &mut out, &mut err), EXIT_ERROR);
        assert!(!err.is_empty());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["shacl-dl", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("validate"));
    }
}

//! `dg` — weighted dual-graph calculus on the command line.
//!
//! Graphs come in as `.dg` text (`chain [...]`, `cycle (...)`,
//! `graph { ... }`) from a file or stdin; results go out as text, JSON, or
//! DOT. Exit codes: 0 success, 1 classification rejection, 2 input errors.

mod dsl;
mod output;
mod script;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dualgraph::batch::classify_all;
use dualgraph::normal_form::{
    branch_decomposition, fibration_markers, minimalize, standardize_circular,
    standardize_linear,
};
use dualgraph::{classify, explain, DualGraph, GraphShape};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report
    Text,
    /// One compact JSON object (stable key order)
    Json,
    /// DOT graph layout with weights as labels
    Dot,
}

#[derive(Parser)]
#[command(
    name = "dg",
    version,
    about = "Weighted dual-graph calculus: birational moves, normal forms, and boundary classification",
    long_about = "Weighted dual-graph calculus: birational moves, normal forms, and boundary \
                  classification.\n\nGraphs are written as `chain [0, 0, -2]`, `cycle (0, 0, -1, -1)`, or \
                  `graph { E: -1  A: -2  E--A }`. Every transformation is reported as a replayable \
                  move trace.\n\nExit codes: 0 = success, 1 = the graph is not in the classified list, \
                  2 = input error."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Input `.dg` file, or `-` for stdin
    #[arg(long = "in", value_name = "FILE", default_value = "-")]
    input: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide which of the six boundary families the graph normalizes into
    Classify {
        #[command(flatten)]
        io: InputArgs,
        /// Classify every `.dg` file in DIR; streams one JSON record per
        /// file (newline-delimited), classifying in parallel
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
        /// Include the witness move sequence in the output
        #[arg(long)]
        trace: bool,
    },
    /// Contract removable (-1)-vertices until the graph is minimal
    Minimalize {
        #[command(flatten)]
        io: InputArgs,
        /// Include the applied move sequence in the output
        #[arg(long)]
        trace: bool,
    },
    /// Rewrite a linear or circular graph into its standard form
    Standardize {
        #[command(flatten)]
        io: InputArgs,
        /// Include the applied move sequence in the output
        #[arg(long)]
        trace: bool,
    },
    /// Apply a move script (one move per line) to the graph
    Apply {
        #[command(flatten)]
        io: InputArgs,
        /// Script file, or `-` for stdin (graph and script cannot both be stdin)
        #[arg(long, value_name = "FILE")]
        script: String,
        /// Echo the applied move sequence in the output
        #[arg(long)]
        trace: bool,
    },
    /// Print the intersection matrix and its exact determinant
    Matrix {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Exact negative-definiteness test for the intersection form
    Negdef {
        #[command(flatten)]
        io: InputArgs,
    },
    /// List the fibration markers visible in the graph
    Markers {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Minimalize, then split branch points into recognized forks and the rest
    Decompose {
        #[command(flatten)]
        io: InputArgs,
    },
}

/// An error that already knows its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| fail(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| fail(format!("reading {path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<DualGraph, Failure> {
    let text = read_source(path)?;
    let doc = dsl::parse_graph(&text).map_err(|e| {
        let name = if path == "-" { "<stdin>" } else { path };
        if e.span.is_some() {
            fail(format!("{name}:{e}"))
        } else {
            fail(format!("{name}: {e}"))
        }
    })?;
    Ok(doc.graph)
}

fn print_value(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("records are plain JSON"));
}

fn trace_section(trace: &dualgraph::moves::MoveTrace) -> String {
    if trace.is_empty() {
        "trace: (no moves)".to_string()
    } else {
        let body = script::trace_to_script(trace)
            .lines()
            .map(|l| format!("  {l}"))
            .collect::<Vec<_>>()
            .join("\n");
        format!("trace:\n{body}")
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Classify { io, batch, trace } => match batch {
            Some(dir) => batch_classify(&dir, trace),
            None => {
                let g = load_graph(&io.input)?;
                let v = classify(&g).map_err(|e| fail(e.to_string()))?;
                match io.format {
                    Format::Text => {
                        println!("{}", explain(&v));
                        if trace {
                            println!("{}", trace_section(&v.witness));
                        }
                    }
                    Format::Json => print_value(&output::verdict_value(&v, trace)),
                    Format::Dot => print!("{}", output::dot(&v.normalized)),
                }
                Ok(if v.is_in_list() { 0 } else { 1 })
            }
        },
        Cmd::Minimalize { io, trace } => {
            let g = load_graph(&io.input)?;
            let (m, t) = minimalize(&g);
            match io.format {
                Format::Text => {
                    println!("{}", dsl::print_presentation(&m));
                    if trace {
                        println!("{}", trace_section(&t));
                    }
                }
                Format::Json => {
                    let mut map = Map::new();
                    map.insert("minimal".into(), json!(dsl::print_presentation(&m)));
                    map.insert(
                        "trace".into(),
                        if trace {
                            output::trace_value(&t)
                        } else {
                            Value::Array(Vec::new())
                        },
                    );
                    print_value(&Value::Object(map));
                }
                Format::Dot => print!("{}", output::dot(&m)),
            }
            Ok(0)
        }
        Cmd::Standardize { io, trace } => {
            let g = load_graph(&io.input)?;
            let std = match g.shape().map_err(|e| fail(e.to_string()))? {
                GraphShape::SingleVertex | GraphShape::Linear => standardize_linear(&g),
                GraphShape::Circular => standardize_circular(&g),
                GraphShape::Branched => {
                    return Err(fail(
                        "standardize handles linear and circular graphs; run classify for branched ones",
                    ))
                }
            }
            .map_err(|e| fail(e.to_string()))?;
            match io.format {
                Format::Text => {
                    println!("{}", dsl::print_presentation(&std.graph));
                    for d in &std.diagnostics {
                        println!("diagnostic: {d}");
                    }
                    if trace {
                        println!("{}", trace_section(&std.trace));
                    }
                }
                Format::Json => {
                    let mut map = Map::new();
                    map.insert(
                        "standard".into(),
                        json!(dsl::print_presentation(&std.graph)),
                    );
                    map.insert(
                        "diagnostics".into(),
                        Value::Array(
                            std.diagnostics
                                .iter()
                                .map(|d| json!(d.to_string()))
                                .collect(),
                        ),
                    );
                    map.insert(
                        "trace".into(),
                        if trace {
                            output::trace_value(&std.trace)
                        } else {
                            Value::Array(Vec::new())
                        },
                    );
                    print_value(&Value::Object(map));
                }
                Format::Dot => print!("{}", output::dot(&std.graph)),
            }
            Ok(0)
        }
        Cmd::Apply { io, script: script_path, trace } => {
            if io.input == "-" && script_path == "-" {
                return Err(fail("the graph and the script cannot both come from stdin"));
            }
            let g = load_graph(&io.input)?;
            let script_text = read_source(&script_path)?;
            let moves = script::parse_script(&script_text)
                .map_err(|e| fail(format!("script: {e}")))?;
            let (result, t) =
                script::run_script(&g, &moves).map_err(|e| fail(format!("script: {e}")))?;
            match io.format {
                Format::Text => {
                    println!("{}", dsl::print_graph(&result));
                    if trace {
                        println!("{}", trace_section(&t));
                    }
                }
                Format::Json => {
                    let mut map = Map::new();
                    map.insert("graph".into(), json!(dsl::print_graph(&result)));
                    map.insert(
                        "trace".into(),
                        if trace {
                            output::trace_value(&t)
                        } else {
                            Value::Array(Vec::new())
                        },
                    );
                    print_value(&Value::Object(map));
                }
                Format::Dot => print!("{}", output::dot(&result)),
            }
            Ok(0)
        }
        Cmd::Matrix { io } => {
            let g = load_graph(&io.input)?;
            match io.format {
                Format::Text => println!("{}", output::matrix_text(&g)),
                Format::Json => print_value(&output::matrix_value(&g)),
                Format::Dot => return Err(fail("matrix has no DOT form; use text or json")),
            }
            Ok(0)
        }
        Cmd::Negdef { io } => {
            let g = load_graph(&io.input)?;
            let negdef = g.intersection_matrix().is_negative_definite();
            match io.format {
                Format::Text => println!("{negdef}"),
                Format::Json => print_value(&json!({ "negative_definite": negdef })),
                Format::Dot => return Err(fail("negdef has no DOT form; use text or json")),
            }
            Ok(0)
        }
        Cmd::Markers { io } => {
            let g = load_graph(&io.input)?;
            let markers = fibration_markers(&g);
            match io.format {
                Format::Text => {
                    if markers.is_empty() {
                        println!("no fibration markers");
                    } else {
                        for m in &markers {
                            println!("{}", output::marker_text(m));
                        }
                    }
                }
                Format::Json => {
                    let items: Vec<Value> = markers.iter().map(output::marker_value).collect();
                    print_value(&json!({ "markers": items }));
                }
                Format::Dot => return Err(fail("markers have no DOT form; use text or json")),
            }
            Ok(0)
        }
        Cmd::Decompose { io } => {
            let g = load_graph(&io.input)?;
            let (m, _) = minimalize(&g);
            let d = branch_decomposition(&m).map_err(|e| fail(e.to_string()))?;
            match io.format {
                Format::Text => println!("{}", output::decomposition_text(&m, &d)),
                Format::Json => print_value(&output::decomposition_value(&m, &d)),
                Format::Dot => return Err(fail("decompose has no DOT form; use text or json")),
            }
            Ok(0)
        }
    }
}

/// Classify every `.dg` file in `dir` (sorted by name), streaming one JSON
/// record per line. Parsing failures become `{"file", "error"}` records.
/// Classification runs in parallel; this single writer keeps the stream
/// well-formed.
fn batch_classify(dir: &Path, with_trace: bool) -> Result<i32, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| fail(format!("reading {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dg"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(fail(format!("no .dg files in {}", dir.display())));
    }

    let mut parsed: Vec<(String, Result<DualGraph, String>)> = Vec::with_capacity(files.len());
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let item = fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| {
                dsl::parse_graph(&text)
                    .map(|doc| doc.graph)
                    .map_err(|e| e.to_string())
            });
        parsed.push((name, item));
    }

    let graphs: Vec<DualGraph> = parsed
        .iter()
        .filter_map(|(_, r)| r.as_ref().ok().cloned())
        .collect();
    let verdicts = classify_all(&graphs);

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut verdict_iter = verdicts.into_iter();
    let mut any_error = false;
    let mut any_rejection = false;
    for (name, item) in &parsed {
        let mut record = Map::new();
        record.insert("file".into(), json!(name));
        match item {
            Ok(_) => {
                let v = verdict_iter
                    .next()
                    .expect("one verdict per parsed graph")
                    .map_err(|e| fail(e.to_string()))?;
                if !v.is_in_list() {
                    any_rejection = true;
                }
                if let Value::Object(fields) = output::verdict_value(&v, with_trace) {
                    record.extend(fields);
                }
            }
            Err(message) => {
                any_error = true;
                record.insert("error".into(), json!(message));
            }
        }
        writeln!(
            out,
            "{}",
            serde_json::to_string(&Value::Object(record)).expect("records are plain JSON")
        )
        .map_err(|e| fail(format!("writing output: {e}")))?;
    }
    Ok(if any_error {
        2
    } else if any_rejection {
        1
    } else {
        0
    })
}

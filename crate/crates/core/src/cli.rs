//! Command-line front end used by the `termbridge` binary.
//!
//! Exit codes: 0 success, 1 goal failed or runtime error, 2 usage error or
//! missing input.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig};
use crate::convert::term_to_host;
use crate::engine::Engine;
use crate::error::Result;
use crate::logger::{Level, Logger};
use crate::query::{Bindings, Query};

#[derive(Debug, Parser)]
#[command(name = "termbridge", version, about = "Logic programming engine with a host-language bridge")]
struct Cli {
    /// trace, debug, info, warn or error
    #[arg(long, global = true, value_name = "LEVEL")]
    log_level: Option<Level>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interactive top level: `?- Goal.` runs a goal, other text adds clauses.
    Repl {
        /// Program loaded before the prompt.
        #[arg(short, long)]
        consult: Option<PathBuf>,
    },
    /// Load a program file and report what it defines.
    Consult { file: PathBuf },
    /// Run a goal and print its bindings.
    Query {
        goal: String,
        /// Print every solution.
        #[arg(long, conflicts_with = "n")]
        all: bool,
        /// Print up to N solutions.
        #[arg(short, value_name = "N")]
        n: Option<usize>,
        /// Print bindings converted to host values.
        #[arg(long)]
        host: bool,
        /// Program loaded before the goal runs.
        #[arg(short, long)]
        consult: Option<PathBuf>,
    },
    /// Run the micro-benchmark suite.
    Bench {
        /// Comma-separated benchmark names; default is the whole suite.
        #[arg(long, value_delimiter = ',')]
        names: Vec<String>,
        #[arg(long, default_value_t = bench::DEFAULT_ITERATIONS)]
        iterations: usize,
        #[arg(long, default_value_t = bench::DEFAULT_WARMUP)]
        warmup: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Disable first-argument indexing.
        #[arg(long)]
        no_index: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, S>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let logger = Logger::default();
    if let Some(level) = cli.log_level {
        logger.set_level(level);
    }
    let engine = Engine::with_logger(logger);
    let outcome = match cli.command {
        Command::Repl { consult } => load(engine, consult.as_ref(), err)
            .map(|engine| repl(engine, input, out, err)),
        Command::Consult { file } => consult_report(engine, &file, out, err),
        Command::Query {
            goal,
            all,
            n,
            host,
            consult,
        } => load(engine, consult.as_ref(), err).map(|engine| {
            let limit = if all { None } else { Some(n.unwrap_or(1)) };
            run_query(&engine, &goal, limit, host, out, err)
        }),
        Command::Bench {
            names,
            iterations,
            warmup,
            format,
            no_index,
        } => Ok(run_bench(&names, iterations, warmup, format, !no_index, out, err)),
    };
    outcome.unwrap_or_else(|code| code)
}

/// Consults `file` when given; a missing file is a usage error.
fn load(
    mut engine: Engine,
    file: Option<&PathBuf>,
    err: &mut dyn Write,
) -> std::result::Result<Engine, i32> {
    let Some(file) = file else {
        return Ok(engine);
    };
    if !file.exists() {
        let _ = writeln!(err, "error: no such file: {}", file.display());
        return Err(2);
    }
    match engine.consult(file) {
        Ok(()) => Ok(engine),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Err(1)
        }
    }
}

fn consult_report(
    engine: Engine,
    file: &PathBuf,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<i32, i32> {
    let engine = load(engine, Some(file), err)?;
    let map = engine.program_map();
    let _ = writeln!(
        out,
        "% {}: {} clauses, {} predicates",
        file.display(),
        engine.program_size(),
        map.len()
    );
    for (indicator, clauses) in &map {
        let _ = writeln!(out, "{indicator}: {}", clauses.len());
    }
    Ok(0)
}

fn binding_lines(engine: &Engine, row: &Bindings, host: bool) -> Vec<String> {
    row.iter()
        .filter(|(name, _)| !name.starts_with('_'))
        .map(|(name, term)| {
            if host {
                match term_to_host(term) {
                    Ok(value) => format!("{name} = {value}"),
                    Err(_) => format!("{name} = {}", engine.format_term(term)),
                }
            } else {
                format!("{name} = {}", engine.format_term(term))
            }
        })
        .collect()
}

fn print_row(engine: &Engine, row: &Bindings, host: bool, out: &mut dyn Write) {
    let lines = binding_lines(engine, row, host);
    if lines.is_empty() {
        let _ = writeln!(out, "true.");
    } else {
        for line in lines {
            let _ = writeln!(out, "{line}");
        }
    }
}

fn run_query(
    engine: &Engine,
    goal: &str,
    limit: Option<usize>,
    host: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let rows = engine.query(goal).and_then(|mut q| match limit {
        Some(n) => q.n_variables_solutions(n),
        None => q.all_variables_solutions(),
    });
    match rows {
        Ok(rows) if rows.is_empty() => {
            let _ = writeln!(out, "false.");
            1
        }
        Ok(rows) => {
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(out, ";");
                }
                print_row(engine, row, host, out);
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn run_bench(
    names: &[String],
    iterations: usize,
    warmup: usize,
    format: Format,
    indexing: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if let Err(e) = bench::select(names) {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    let config = BenchConfig {
        iterations,
        warmup,
        indexing,
    };
    match bench::run_suite(names, &config) {
        Ok(results) => {
            let text = match format {
                Format::Table => bench::format_table(&results),
                Format::Csv => bench::format_csv(&results),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Reads one clause or goal, which may span lines, up to a terminating `.`.
fn read_sentence(input: &mut dyn BufRead) -> Option<String> {
    let mut text = String::new();
    loop {
        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => {
                return (!text.trim().is_empty()).then_some(text);
            }
            Ok(_) => {
                text.push_str(&line);
                if text.trim_end().ends_with('.') {
                    return Some(text);
                }
            }
        }
    }
}

fn answer(query: &mut Query) -> Result<Option<Bindings>> {
    if query.has_more_solutions()? {
        query.next_variables_solution().map(Some)
    } else {
        Ok(None)
    }
}

fn repl(mut engine: Engine, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    loop {
        let _ = write!(out, "?- ");
        let _ = out.flush();
        let Some(text) = read_sentence(input) else {
            let _ = writeln!(out);
            return 0;
        };
        let trimmed = text.trim();
        if trimmed == "halt." {
            return 0;
        }
        if let Some(goal) = trimmed.strip_prefix("?-") {
            repl_goal(&engine, goal, input, out, err);
        } else if let Err(e) = engine.include_str(trimmed) {
            let _ = writeln!(err, "error: {e}");
        } else {
            let _ = writeln!(out, "true.");
        }
    }
}

/// Prints solutions one at a time; `;` asks for the next one.
fn repl_goal(engine: &Engine, goal: &str, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) {
    let mut query = match engine.query(goal) {
        Ok(q) => q,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return;
        }
    };
    loop {
        match answer(&mut query) {
            Ok(None) => {
                let _ = writeln!(out, "false.");
                return;
            }
            Ok(Some(row)) => {
                let lines = binding_lines(engine, &row, false);
                let more = matches!(query.has_more_solutions(), Ok(true));
                if lines.is_empty() {
                    let _ = writeln!(out, "{}", if more { "true" } else { "true." });
                } else {
                    let _ = write!(out, "{}", lines.join(",\n"));
                    let _ = writeln!(out, "{}", if more { "" } else { "." });
                }
                if !more {
                    return;
                }
                let mut reply = String::new();
                if input.read_line(&mut reply).unwrap_or(0) == 0 || reply.trim() != ";" {
                    return;
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["termbridge"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn query_prints_bindings() {
        let (code, out, _) = call(&["query", "X = f(a), Y is 1+2"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "X = f(a)\nY = 3\n");
        let (code, out, _) = call(&["query", "fail"], "");
        assert_eq!((code, out.as_str()), (1, "false.\n"));
        let (code, out, _) = call(&["query", "--all", "member_(X)"], "");
        assert_eq!(code, 1, "{out}");
    }

    #[test]
    fn repl_session() {
        let (code, out, _) = call(&["repl"], "p(1).\np(2).\n?- p(X).\n;\n?- true.\nhalt.\n");
        assert_eq!(code, 0);
        assert_eq!(out, "?- true.\n?- true.\n?- X = 1\nX = 2.\n?- true.\n?- ");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["consult", "/no/such/file.pl"], "").0, 2);
        assert_eq!(call(&["bench", "--names", "nope"], "").0, 2);
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["--help"], "").0, 0);
    }
}

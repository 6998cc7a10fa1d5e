use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::corpus::{corpus_csv, run_corpus, CorpusConfig};
use super::emit::{decomposition_json, decomposition_text, emit_checks, emit_tables, TableFormat};
use super::json::{parse_bicomplex_file, to_json, Loaded};
use super::render::{render_diagram, RenderFormat};
use crate::checkers::run_all_checks;
use crate::cohomology::all_tables;
use crate::error::{Error, Result};
use crate::models::{preset, preset_equations, write_structure_equations};
use crate::zigzag::decompose;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_THEOREM: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bicomplex-lab", version, about = "Cohomology, zigzags and checks for double complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Named model, e.g. iwasawa, kodaira-surface, torus-3
    #[arg(long)]
    preset: Option<String>,
    /// A .json bicomplex or .bba structure-equation file
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write files here instead of printing them
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate an input
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// All five cohomology tables
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "text", value_parser = ["text", "csv", "json"])]
        format: String,
    },
    /// Squares and zigzags
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
    /// Run every checker; exit 3 if one fails
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "text", value_parser = ["text", "csv", "json"])]
        format: String,
    },
    /// Draw the decomposition
    Render {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "tikz", value_parser = ["tikz", "dot", "svg"])]
        format: String,
        /// Collapse squares to a count per bidegree (the default)
        #[arg(long, overrides_with = "show_squares")]
        hide_squares: bool,
        /// Draw squares as well
        #[arg(long, overrides_with = "hide_squares")]
        show_squares: bool,
    },
    /// Seeded random complexes through every checker, summarized as CSV
    Corpus {
        #[command(flatten)]
        output: Output,
        /// First seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "n-corpus", default_value_t = 500)]
        n_corpus: u64,
        /// Draw only squares and dots
        #[arg(long)]
        squares_and_dots: bool,
    },
    /// Re-emit an input as JSON, or as structure equations when it has them
    Convert {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value = "json", value_parser = ["json", "bba"])]
        format: String,
    },
}

fn load(input: &Input) -> Result<Loaded> {
    match (&input.preset, &input.input) {
        (Some(name), _) => Ok(Loaded { complex: preset(name)?, equations: preset_equations(name) }),
        (None, Some(path)) => parse_bicomplex_file(path),
        (None, None) => unreachable!("clap requires one input"),
    }
}

/// Writes through a temporary file so readers never see half a file.
fn write_atomic(dir: &Path, name: &str, body: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, body).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))
}

fn deliver(files: &[(String, String)], output: &Output, stdout: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(dir) => {
            for (name, body) in files {
                write_atomic(dir, name, body)?;
            }
            Ok(())
        }
        None => {
            let many = files.len() > 1;
            for (name, body) in files {
                if many {
                    let _ = writeln!(stdout, "==> {name} <==");
                }
                let _ = stdout.write_all(body.as_bytes());
            }
            Ok(())
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate { input } => {
            let k = load(&input)?.complex;
            let real = match k.check_real_structure() {
                Ok(true) => "valid real structure",
                Ok(false) => "real structure fails",
                Err(_) => "no real structure",
            };
            let _ = writeln!(
                stdout,
                "ok: {} (total dimension {}, {} bidegrees, {real})",
                k.label(),
                k.total_dim(),
                k.dims().len()
            );
            Ok(EXIT_OK)
        }
        Command::Cohomology { input, output, format } => {
            let k = load(&input)?.complex;
            let tables = all_tables(&k)?;
            deliver(&emit_tables(&tables, &k, format.parse()?), &output, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Decompose { input, output, format } => {
            let k = load(&input)?.complex;
            let d = decompose(&k)?;
            let file = if format == "json" {
                (format!("{}.decomposition.json", k.label()), decomposition_json(&d, k.label()))
            } else {
                (format!("{}.decomposition.txt", k.label()), decomposition_text(&d, k.label()))
            };
            deliver(&[file], &output, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Check { input, output, format } => {
            let k = load(&input)?.complex;
            let reports = run_all_checks(&k)?;
            let format: TableFormat = format.parse()?;
            deliver(&[emit_checks(k.label(), &reports, format)], &output, stdout)?;
            Ok(if reports.iter().any(|r| r.fails()) { EXIT_THEOREM } else { EXIT_OK })
        }
        Command::Render { input, output, format, show_squares, .. } => {
            let k = load(&input)?.complex;
            let d = decompose(&k)?;
            let format: RenderFormat = format.parse()?;
            let body = render_diagram(&d, k.label(), format, show_squares);
            deliver(&[(format!("{}.{}", k.label(), format.extension()), body)], &output, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Corpus { output, seed, n_corpus, squares_and_dots } => {
            let config = CorpusConfig { count: n_corpus, first_seed: seed, squares_and_dots, threads: None };
            let rows = run_corpus(&config)?;
            deliver(&[("corpus.csv".to_string(), corpus_csv(&rows))], &output, stdout)?;
            Ok(if rows.iter().any(|r| r.failed()) { EXIT_THEOREM } else { EXIT_OK })
        }
        Command::Convert { input, output, format } => {
            let loaded = load(&input)?;
            let label = loaded.complex.label().to_string();
            let file = match format.as_str() {
                "bba" => {
                    let eqs = loaded.equations.ok_or(Error::StructureAbsent("structure-equation"))?;
                    (format!("{label}.bba"), write_structure_equations(&eqs))
                }
                _ => (format!("{label}.json"), to_json(&loaded.complex)),
            };
            deliver(&[file], &output, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

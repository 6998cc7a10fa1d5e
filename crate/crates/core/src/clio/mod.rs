//! File formats, report emitters, diagram export and the command line.

mod cli;
mod corpus;
mod emit;
mod json;
mod render;

pub use cli::{run, EXIT_INPUT, EXIT_OK, EXIT_THEOREM, EXIT_USAGE};
pub use corpus::{corpus_csv, run_corpus, CorpusConfig, CorpusRow, THREADS_VAR};
pub use emit::{csv_grid, decomposition_json, decomposition_text, emit_checks, emit_tables, TableFormat};
pub use json::{from_json, parse_bicomplex_file, to_json, BicomplexJson, Loaded};
pub use render::{layout, render_diagram, Diagram, Edge, Node, RenderFormat};

//! All five cohomologies of a named model, plus Frolicher pages.

use bicomplex_lab::clio::{emit_tables, TableFormat};
use bicomplex_lab::cohomology::all_tables;
use bicomplex_lab::models::preset;

fn main() -> bicomplex_lab::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "iwasawa".to_string());
    let k = preset(&name)?;
    let t = all_tables(&k)?;
    for (_, body) in emit_tables(&t, &k, TableFormat::Text) {
        print!("{body}");
    }
    println!("Frolicher degenerates at page {}", t.frolicher.stabilization());
    Ok(())
}

//! Writes a model as JSON, reads it back and checks nothing was lost.

use bicomplex_lab::clio::{from_json, to_json};
use bicomplex_lab::cohomology::all_tables;
use bicomplex_lab::models::kodaira_surface;

fn main() -> bicomplex_lab::Result<()> {
    let k = kodaira_surface();
    let text = to_json(&k);
    println!("{} bytes of JSON", text.len());
    let back = from_json(&text)?;
    assert!(back.validate().is_empty());
    assert_eq!(all_tables(&back)?.dims(), all_tables(&k)?.dims());
    println!("{}", text.lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}

//! Scrambles a sum of zigzags, decomposes it again and draws the result.

use bicomplex_lab::clio::{decomposition_text, render_diagram, RenderFormat};
use bicomplex_lab::models::two_diagrams_b_parts;
use bicomplex_lab::zigzag::{
    count_cohomology_from_zigzags, decompose, synthesize, verify_decomposition, Indecomposable,
};
use bicomplex_lab::Bidegree;

fn main() -> bicomplex_lab::Result<()> {
    let mut parts = two_diagrams_b_parts();
    parts.push(Indecomposable::square(Bidegree::new(0, 0)));
    let k = synthesize(&parts, Some(17))?;
    let d = decompose(&k)?;
    assert!(verify_decomposition(&d, &k));
    print!("{}", decomposition_text(&d, "example"));
    let dims = count_cohomology_from_zigzags(&d)?;
    for (b, h) in &dims.bott_chern {
        println!("h_BC at ({b}) = {h}");
    }
    print!("{}", render_diagram(&d, "example", RenderFormat::Dot, true));
    Ok(())
}

//! Builds a nilmanifold model from structure equations written in the
//! text format and prints its Betti and Hodge numbers.

use bicomplex_lab::cohomology::all_tables;
use bicomplex_lab::models::{from_structure_equations, parse_structure_equations, write_structure_equations};
use bicomplex_lab::Bidegree;

const EQUATIONS: &str = "n = 3
d w1 = 0
d w2 = 0
d w3 = -1* w1^w2
";

fn main() -> bicomplex_lab::Result<()> {
    let eqs = parse_structure_equations(EQUATIONS, "inline")?;
    print!("{}", write_structure_equations(&eqs));
    let k = from_structure_equations(&eqs, "iwasawa")?;
    println!("total dimension {}", k.total_dim());
    let t = all_tables(&k)?;
    let betti: Vec<usize> = (0..=6).map(|d| t.betti(d)).collect();
    println!("betti {betti:?}");
    for p in 0..=3 {
        let row: Vec<usize> = (0..=3).map(|q| t.dolbeault.dim(Bidegree::new(p, q))).collect();
        println!("h^{p},* = {row:?}");
    }
    Ok(())
}

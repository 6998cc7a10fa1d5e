//! Runs every inequality and duality check on the shipped models.

use bicomplex_lab::checkers::Analysis;
use bicomplex_lab::models::preset;

fn main() -> bicomplex_lab::Result<()> {
    for name in ["torus-2", "kodaira-surface", "iwasawa", "long-zigzag-3"] {
        let k = preset(name)?;
        let a = Analysis::new(&k)?;
        println!("== {name} (lemma: {:?})", a.lemma());
        for report in a.run_all() {
            println!("{report}");
        }
    }
    Ok(())
}

//! Seeded random complexes and the corpus summary.

use bicomplex_lab::clio::{corpus_csv, run_corpus, CorpusConfig};
use bicomplex_lab::models::{random_bicomplex, PartKinds, RandomConfig};

fn main() -> bicomplex_lab::Result<()> {
    let config = RandomConfig { max_parts: 4, kinds: PartKinds::All, real: true, ..RandomConfig::default() };
    let r = random_bicomplex(7, &config);
    println!("seed 7: {} parts, total dimension {}", r.parts.len(), r.complex.total_dim());

    let rows = run_corpus(&CorpusConfig { count: 20, ..CorpusConfig::default() })?;
    print!("{}", corpus_csv(&rows));
    Ok(())
}

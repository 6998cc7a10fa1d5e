use std::fmt::Write as _;

use rayon::prelude::*;

use crate::checkers::{Analysis, Check, Verdict};
use crate::error::Result;
use crate::models::{corpus_config, random_bicomplex, PartKinds};
use crate::zigzag::{count_cohomology_from_zigzags, verify_decomposition};

pub const THREADS_VAR: &str = "BICOMPLEX_LAB_THREADS";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CorpusConfig {
    pub count: u64,
    pub first_seed: u64,
    /// Draw only squares and dots.
    pub squares_and_dots: bool,
    /// Worker cap; `None` reads [`THREADS_VAR`], falling back to all cores.
    pub threads: Option<usize>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { count: 500, first_seed: 0, squares_and_dots: false, threads: None }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CorpusRow {
    pub seed: u64,
    pub real: bool,
    pub total_dim: usize,
    pub parts: usize,
    pub squares: usize,
    /// Decomposition recovered the generating parts and verified.
    pub round_trip: bool,
    /// Zigzag counts equal the linear-algebra tables.
    pub oracle: bool,
    pub verdicts: Vec<(Check, Verdict)>,
    pub lemma: Option<bool>,
}

impl CorpusRow {
    /// Any theorem-as-test failure, including the two engine cross-checks.
    pub fn failed(&self) -> bool {
        !self.round_trip || !self.oracle || self.verdicts.iter().any(|(_, v)| *v == Verdict::Fails)
    }
}

fn run_one(seed: u64, config: &CorpusConfig) -> Result<CorpusRow> {
    let mut rc = corpus_config(seed);
    if config.squares_and_dots {
        rc.kinds = PartKinds::SquaresAndDots;
    }
    let r = random_bicomplex(seed, &rc);
    let analysis = Analysis::new(&r.complex)?;
    let d = analysis.decomposition();
    let round_trip = d.parts == r.parts && verify_decomposition(d, &r.complex);
    let oracle = count_cohomology_from_zigzags(d)? == analysis.tables().dims();
    Ok(CorpusRow {
        seed,
        real: rc.real,
        total_dim: r.complex.total_dim(),
        parts: r.parts.len(),
        squares: d.squares(),
        round_trip,
        oracle,
        verdicts: analysis.run_all().into_iter().map(|rep| (rep.check, rep.verdict)).collect(),
        lemma: analysis.lemma(),
    })
}

fn thread_count(config: &CorpusConfig) -> Option<usize> {
    config.threads.or_else(|| std::env::var(THREADS_VAR).ok()?.trim().parse().ok()).filter(|&n| n > 0)
}

/// Rows in seed order; the result does not depend on the thread count.
pub fn run_corpus(config: &CorpusConfig) -> Result<Vec<CorpusRow>> {
    let seeds: Vec<u64> = (config.first_seed..config.first_seed + config.count).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(config) {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    pool.install(|| seeds.par_iter().map(|&s| run_one(s, config)).collect())
}

pub fn corpus_csv(rows: &[CorpusRow]) -> String {
    let mut out = String::from("seed,real,totalDim,parts,squares,roundTrip,oracle");
    for c in Check::ALL {
        let _ = write!(out, ",{c}");
    }
    out.push_str(",lemma\n");
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            r.seed, r.real, r.total_dim, r.parts, r.squares, r.round_trip, r.oracle
        );
        for (_, v) in &r.verdicts {
            let _ = write!(out, ",{v}");
        }
        let lemma = r.lemma.map_or("disagree".to_string(), |l| l.to_string());
        let _ = writeln!(out, ",{lemma}");
    }
    out
}

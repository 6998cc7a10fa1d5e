//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use bicomplex_lab::checkers::{Analysis, Check, CheckReport, Verdict};
use bicomplex_lab::clio::{corpus_csv, run, run_corpus, to_json, CorpusConfig};
use bicomplex_lab::cohomology::CohomologyDims;
use bicomplex_lab::models::{
    corpus_config, from_structure_equations, long_zigzag, preset, preset_equations, random_bicomplex, PRESETS,
};
use bicomplex_lab::zigzag::{count_cohomology_from_zigzags, verify_decomposition};
use bicomplex_lab::Bicomplex;
use common::oracle_dims;
use rayon::prelude::*;

const SEEDS: u64 = 500;
const STRUCTURE_MODELS: [&str; 6] = ["torus-1", "torus-2", "torus-3", "torus-4", "iwasawa", "kodaira-surface"];

struct Row {
    name: String,
    total_dim: usize,
    random: bool,
    structure: bool,
    scrambled_round_trip: Option<bool>,
    zigzag_counts: bool,
    mod_p: bool,
    reports: Vec<CheckReport>,
    lemma: Option<bool>,
}

impl Row {
    fn report(&self, check: Check) -> &CheckReport {
        self.reports.iter().find(|r| r.check == check).expect("all checks run")
    }
}

fn analyse(name: String, k: &Bicomplex, truth: Option<&[bicomplex_lab::zigzag::Indecomposable]>) -> Row {
    let a = Analysis::new(k).unwrap_or_else(|e| panic!("{name}: {e}"));
    let d = a.decomposition();
    let dims: CohomologyDims = a.tables().dims();
    let scrambled_round_trip = truth.map(|parts| {
        let mut got = d.parts.clone();
        got.sort();
        let mut want = parts.to_vec();
        want.sort();
        got == want && verify_decomposition(d, k)
    });
    Row {
        total_dim: k.total_dim(),
        random: truth.is_some(),
        structure: k.product().is_some(),
        scrambled_round_trip,
        zigzag_counts: count_cohomology_from_zigzags(d).is_ok_and(|c| c == dims),
        mod_p: oracle_dims(k) == dims,
        reports: a.run_all(),
        lemma: a.lemma(),
        name,
    }
}

fn find<'a>(rows: &'a [Row], name: &str) -> &'a Row {
    rows.iter().find(|r| r.name == name).unwrap_or_else(|| panic!("no row {name}"))
}

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn line(&mut self, n: usize, title: &str, problems: Vec<String>, detail: String) {
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status}  {title}: {detail}");
        for p in problems.iter().take(5) {
            println!("              {p}");
        }
        if !problems.is_empty() {
            self.failures += 1;
        }
    }
}

fn failing(rows: &[Row], check: Check) -> Vec<String> {
    rows.iter().filter(|r| r.report(check).fails()).map(|r| format!("{} fails {check}", r.name)).collect()
}

fn cli_bytes(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("bicomplex-lab").chain(args.iter().copied()), &mut out, &mut err);
    assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&err));
    out
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut rows: Vec<Row> = (0..SEEDS)
        .into_par_iter()
        .map(|seed| {
            let r = random_bicomplex(seed, &corpus_config(seed));
            analyse(format!("seed {seed}"), &r.complex, Some(&r.parts))
        })
        .collect();
    for name in PRESETS {
        rows.push(analyse(name.to_string(), &preset(name).unwrap(), None));
    }
    for name in STRUCTURE_MODELS {
        let eqs = preset_equations(name).unwrap();
        rows.push(analyse(format!("{name} model"), &from_structure_equations(&eqs, name).unwrap(), None));
    }
    let random: Vec<&Row> = rows.iter().filter(|r| r.random).collect();
    let max_dim = random.iter().map(|r| r.total_dim).max().unwrap_or(0);
    let mut out = Outcome { failures: 0 };

    let mut problems: Vec<String> = rows
        .iter()
        .filter(|r| !r.zigzag_counts || !r.mod_p)
        .map(|r| format!("{}: zigzag counts {}, mod-p oracle {}", r.name, r.zigzag_counts, r.mod_p))
        .collect();
    if max_dim > 150 {
        problems.push(format!("corpus total dimension {max_dim} exceeds 150"));
    }
    out.line(
        1,
        "zigzag counts equal linear algebra",
        problems,
        format!("{} random complexes (max dim {max_dim}) and {} named models", random.len(), rows.len() - random.len()),
    );

    let problems = random
        .iter()
        .filter(|r| r.scrambled_round_trip != Some(true))
        .map(|r| format!("{}: parts not recovered", r.name))
        .collect();
    out.line(2, "decomposition recovers synthesized parts", problems, format!("{} scrambled instances", random.len()));

    let mut problems = failing(&rows, Check::Frolicher);
    let iw_gap = find(&rows, "iwasawa").report(Check::Frolicher).series("gap", "1");
    if iw_gap != Some(1) {
        problems.push(format!("iwasawa gap in degree 1 is {iw_gap:?}"));
    }
    out.line(3, "Frolicher inequality", problems, format!("iwasawa h1_dbar - b1 = {}", iw_gap.unwrap_or(-1)));

    let mut problems = failing(&rows, Check::NonDdbarDegrees);
    for row in rows.iter().filter(|r| r.name.starts_with("torus")) {
        if row.report(Check::NonDdbarDegrees).int("sum") != Some(0) {
            problems.push(format!("{} has nonzero Delta", row.name));
        }
    }
    let delta = |name: &str, k: &str| find(&rows, name).report(Check::NonDdbarDegrees).series("Delta", k);
    let iw = delta("iwasawa", "1");
    let (kd1, kd2) = (delta("kodaira-surface", "1"), delta("kodaira-surface", "2"));
    if iw != Some(2) {
        problems.push(format!("iwasawa Delta1 = {iw:?}"));
    }
    if (kd1, kd2) != (Some(0), Some(2)) {
        problems.push(format!("kodaira Delta1, Delta2 = {kd1:?}, {kd2:?}"));
    }
    out.line(
        4,
        "non-ddbar degrees",
        problems,
        format!(
            "iwasawa Delta1 = {}, kodaira Delta1 = {}, Delta2 = {}",
            iw.unwrap_or(-1),
            kd1.unwrap_or(-1),
            kd2.unwrap_or(-1)
        ),
    );

    let mut problems = failing(&rows, Check::UpperBound);
    let applicable = rows.iter().filter(|r| r.report(Check::UpperBound).verdict != Verdict::NotApplicable).count();
    let mut ratios = Vec::new();
    for n in 1..=6 {
        let k = long_zigzag(n);
        let a = Analysis::new(&k).unwrap();
        let t = a.tables();
        let (ha, b) = (t.aeppli.total_degree(n as i32), t.betti(n as i32));
        if ha != n + 1 || b != 1 {
            problems.push(format!("long zigzag {n}: h_A = {ha}, b = {b}"));
        }
        if !a.upper_bound().holds() {
            problems.push(format!("long zigzag {n} violates the bound"));
        }
        ratios.push(ha / b.max(1));
    }
    if !ratios.windows(2).all(|w| w[1] > w[0]) {
        problems.push(format!("h_A / b_n not increasing: {ratios:?}"));
    }
    out.line(
        5,
        "Aeppli and Bott-Chern upper bounds",
        problems,
        format!("{applicable} complexes checked; long zigzag h_A/b_n = {ratios:?}"),
    );

    let mut problems = failing(&rows, Check::CharMinus);
    for r in &rows {
        let zero = r.report(Check::CharMinus).flag("sumZero");
        if r.lemma.is_some() && zero != r.lemma {
            problems.push(format!("{}: sum zero {zero:?}, lemma {:?}", r.name, r.lemma));
        }
    }
    out.line(6, "BC - A characterisation", problems, format!("{} complexes", rows.len()));

    let mut problems = failing(&rows, Check::DdbarLemma);
    problems.extend(rows.iter().filter(|r| r.lemma.is_none()).map(|r| format!("{}: predicates disagree", r.name)));
    let holding = rows.iter().filter(|r| r.lemma == Some(true)).count();
    out.line(7, "ddbar-lemma predicates agree", problems, format!("{holding} of {} satisfy the lemma", rows.len()));

    let paired: Vec<&Row> = rows.iter().filter(|r| r.structure).collect();
    let mut problems = failing(&rows, Check::SchweitzerPairing);
    let nondeg = |name: &str| find(&rows, name).report(Check::SchweitzerPairing).flag("nondegenerate");
    for (name, want) in [("torus-3", true), ("torus-4 model", true), ("iwasawa", false), ("kodaira-surface", false)] {
        if nondeg(name) != Some(want) {
            problems.push(format!("{name}: nondegenerate = {:?}", nondeg(name)));
        }
    }
    out.line(
        8,
        "Schweitzer pairing implies the lemma",
        problems,
        format!("{} complexes with products; torus nondegenerate, iwasawa and kodaira degenerate", paired.len()),
    );

    let mut problems = Vec::new();
    for r in &paired {
        let rep = r.report(Check::Duality);
        for name in ["betti", "serre", "schweitzer", "conjugateDolbeault", "conjugateBottChern", "conjugateAeppli"] {
            if rep.flag(name) != Some(true) {
                problems.push(format!("{}: {name} = {:?}", r.name, rep.flag(name)));
            }
        }
    }
    problems.extend(failing(&rows, Check::Duality));
    out.line(9, "dualities on structure models", problems, format!("{} models", paired.len()));

    let mut problems = Vec::new();
    let corpus = |threads| {
        corpus_csv(
            &run_corpus(&CorpusConfig { count: 40, first_seed: 7, threads: Some(threads), ..CorpusConfig::default() })
                .unwrap(),
        )
    };
    if corpus(1) != corpus(4) {
        problems.push("corpus depends on thread count".to_string());
    }
    for seed in [3, 58, 211] {
        let c = corpus_config(seed);
        if to_json(&random_bicomplex(seed, &c).complex) != to_json(&random_bicomplex(seed, &c).complex) {
            problems.push(format!("seed {seed} not reproducible"));
        }
    }
    let commands: [&[&str]; 6] = [
        &["cohomology", "--preset", "iwasawa", "--format", "json"],
        &["decompose", "--preset", "two-diagrams-b", "--format", "json"],
        &["check", "--preset", "kodaira-surface", "--format", "json"],
        &["render", "--preset", "iwasawa", "--format", "tikz"],
        &["render", "--preset", "long-zigzag-3", "--format", "svg"],
        &["corpus", "--n-corpus", "12", "--seed", "90"],
    ];
    for args in commands {
        if cli_bytes(args) != cli_bytes(args) {
            problems.push(format!("{args:?} differs between runs"));
        }
    }
    out.line(10, "byte-identical reruns", problems, format!("{} commands, corpus at 1 and 4 threads", commands.len()));

    println!("{} of 10 criteria pass in {:.1}s", 10 - out.failures, start.elapsed().as_secs_f64());
    if out.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

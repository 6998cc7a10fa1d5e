use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::bicomplex::{Bicomplex, Bidegree, Differential};
use crate::checkers::CheckReport;
use crate::cohomology::{AllTables, CohomologyTable, Theory};
use crate::error::Error;
use crate::zigzag::Decomposition;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Text => "txt",
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        }
    }
}

const CONVENTION: &str = "rows p, columns q, p increasing downwards";

/// `(pmin, pmax, qmin, qmax)`; `[0,n]²` for complexes declaring `n`, a
/// single cell at the origin for the empty complex.
fn grid(k: &Bicomplex) -> (i32, i32, i32, i32) {
    match (k.complex_dim(), k.bounds()) {
        (Some(n), Some((p0, p1, q0, q1))) => (p0.min(0), p1.max(n as i32), q0.min(0), q1.max(n as i32)),
        (Some(n), None) => (0, n as i32, 0, n as i32),
        (None, Some(b)) => b,
        (None, None) => (0, 0, 0, 0),
    }
}

fn bigraded(t: &AllTables) -> [(Theory, &CohomologyTable<Bidegree>); 4] {
    [
        (Theory::Dolbeault, &t.dolbeault),
        (Theory::ConjDolbeault, &t.conj_dolbeault),
        (Theory::BottChern, &t.bott_chern),
        (Theory::Aeppli, &t.aeppli),
    ]
}

fn degrees(k: &Bicomplex) -> Vec<i32> {
    let (p0, p1, q0, q1) = grid(k);
    (p0 + q0..=p1 + q1).collect()
}

fn text_grid(out: &mut String, name: &str, table: &CohomologyTable<Bidegree>, g: (i32, i32, i32, i32)) {
    let (p0, p1, q0, q1) = g;
    let width = table.dims().values().map(|d| d.to_string().len()).max().unwrap_or(1).max(2);
    let _ = writeln!(out, "{name} ({CONVENTION})");
    let _ = write!(out, "{:>4} |", "p\\q");
    for q in q0..=q1 {
        let _ = write!(out, " {q:>width$}");
    }
    out.push('\n');
    for p in p0..=p1 {
        let _ = write!(out, "{p:>4} |");
        for q in q0..=q1 {
            let _ = write!(out, " {:>width$}", table.dim(Bidegree::new(p, q)));
        }
        out.push('\n');
    }
    out.push('\n');
}

/// One CSV grid, header row `p\q,q0,q1,…`.
pub fn csv_grid(table: &CohomologyTable<Bidegree>, k: &Bicomplex) -> String {
    let (p0, p1, q0, q1) = grid(k);
    let mut out = String::from("p\\q");
    for q in q0..=q1 {
        let _ = write!(out, ",{q}");
    }
    out.push('\n');
    for p in p0..=p1 {
        let _ = write!(out, "{p}");
        for q in q0..=q1 {
            let _ = write!(out, ",{}", table.dim(Bidegree::new(p, q)));
        }
        out.push('\n');
    }
    out
}

fn de_rham_csv(t: &AllTables, k: &Bicomplex) -> String {
    let mut out = String::from("k,b\n");
    for d in degrees(k) {
        let _ = writeln!(out, "{d},{}", t.betti(d));
    }
    out
}

fn bigraded_json(table: &CohomologyTable<Bidegree>) -> Value {
    Value::Object(table.dims().iter().map(|(b, d)| (b.to_string(), json!(d))).collect())
}

fn tables_json(t: &AllTables, k: &Bicomplex) -> Value {
    let mut obj = Map::new();
    obj.insert("label".into(), json!(k.label()));
    obj.insert("convention".into(), json!("keys \"p,q\"; omitted keys are zero"));
    obj.insert(
        "deRham".into(),
        Value::Object(degrees(k).iter().map(|d| (d.to_string(), json!(t.betti(*d)))).collect()),
    );
    for (theory, table) in bigraded(t) {
        obj.insert(theory.name().into(), bigraded_json(table));
    }
    let pages: Vec<Value> = t
        .frolicher
        .pages()
        .iter()
        .map(|page| {
            Value::Object(page.iter().filter(|(_, d)| **d > 0).map(|(b, d)| (b.to_string(), json!(d))).collect())
        })
        .collect();
    obj.insert("frolicher".into(), json!({ "stabilization": t.frolicher.stabilization(), "pages": pages }));
    let ranks = |m: &BTreeMap<Bidegree, usize>| -> Value {
        Value::Object(m.iter().filter(|(_, r)| **r > 0).map(|(b, r)| (b.to_string(), json!(r))).collect())
    };
    let m = &t.maps;
    obj.insert(
        "naturalMaps".into(),
        json!({
            "bottChernToDolbeault": ranks(&m.bc_to_delbar),
            "bottChernToConjDolbeault": ranks(&m.bc_to_del),
            "bottChernToAeppli": ranks(&m.bc_to_aeppli),
            "dolbeaultToAeppli": ranks(&m.delbar_to_aeppli),
            "conjDolbeaultToAeppli": ranks(&m.del_to_aeppli),
            "bottChernToDeRham": m.bc_to_de_rham.iter().map(|(k, r)| (k.to_string(), json!(r))).collect::<Map<_, _>>(),
            "deRhamToAeppli": m.de_rham_to_aeppli.iter().map(|(k, r)| (k.to_string(), json!(r))).collect::<Map<_, _>>(),
        }),
    );
    Value::Object(obj)
}

/// Renders the tables as named files: one file for text and JSON, one per
/// theory for CSV.
pub fn emit_tables(t: &AllTables, k: &Bicomplex, format: TableFormat) -> Vec<(String, String)> {
    let label = k.label();
    match format {
        TableFormat::Text => {
            let mut out = format!("model cohomology of {label}\n\n");
            let _ = writeln!(out, "deRham (k: b_k)");
            for d in degrees(k) {
                let _ = writeln!(out, "{d:>4} : {}", t.betti(d));
            }
            out.push('\n');
            for (theory, table) in bigraded(t) {
                text_grid(&mut out, theory.name(), table, grid(k));
            }
            let _ = writeln!(out, "frolicher pages: stabilizes at r = {}", t.frolicher.stabilization());
            vec![(format!("{label}.tables.txt"), out)]
        }
        TableFormat::Csv => {
            let mut files = vec![(format!("{label}.deRham.csv"), de_rham_csv(t, k))];
            for (theory, table) in bigraded(t) {
                files.push((format!("{label}.{}.csv", theory.name()), csv_grid(table, k)));
            }
            files
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(&tables_json(t, k)).expect("serializable");
            s.push('\n');
            vec![(format!("{label}.tables.json"), s)]
        }
    }
}

pub fn emit_checks(label: &str, reports: &[CheckReport], format: TableFormat) -> (String, String) {
    match format {
        TableFormat::Json => {
            let checks: Map<String, Value> = reports
                .iter()
                .map(|r| {
                    let value = json!({ "verdict": r.verdict, "witnesses": r.witnesses });
                    (r.check.name().to_string(), value)
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&json!({ "label": label, "checks": checks })).expect("serializable");
            s.push('\n');
            (format!("{label}.checks.json"), s)
        }
        TableFormat::Csv => {
            let mut out = String::from("check,verdict\n");
            for r in reports {
                let _ = writeln!(out, "{},{}", r.check, r.verdict);
            }
            (format!("{label}.checks.csv"), out)
        }
        TableFormat::Text => {
            let mut out = format!("checks for {label}\n");
            for r in reports {
                let _ = writeln!(out, "{r}");
            }
            (format!("{label}.checks.txt"), out)
        }
    }
}

/// Parts with their bidegree paths and labelled arrows.
pub fn decomposition_json(d: &Decomposition, label: &str) -> String {
    let parts: Vec<Value> = d
        .parts
        .iter()
        .map(|part| {
            let arrows: Vec<Value> = part
                .arrows()
                .iter()
                .map(|a| {
                    let map = match a.map {
                        Differential::Del => "del",
                        Differential::Delbar => "delbar",
                    };
                    json!({ "from": a.from.to_string(), "to": a.to.to_string(), "map": map })
                })
                .collect();
            let kind = if part.is_square() { "square" } else { "zigzag" };
            let dots: Vec<String> = part.dots().iter().map(ToString::to_string).collect();
            json!({ "kind": kind, "dots": dots, "arrows": arrows })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({
        "label": label,
        "squares": d.squares(),
        "zigzags": d.zigzags().count(),
        "parts": parts,
    }))
    .expect("serializable");
    s.push('\n');
    s
}

/// One line per part.
pub fn decomposition_text(d: &Decomposition, label: &str) -> String {
    let mut out = format!("{label}: {} squares, {} zigzags\n", d.squares(), d.zigzags().count());
    for part in &d.parts {
        let _ = writeln!(out, "{part}");
    }
    out
}

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Bidegree, ConjugationStructure};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::models::{from_structure_equations, parse_structure_equations, StructureEquations};

type Blocks = BTreeMap<String, Vec<Vec<String>>>;

/// On-disk form of a bicomplex: dimensions keyed by `"p,q"` and row-major
/// blocks of scalar strings. `conj` is optional and carries a real structure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicomplexJson {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub spaces: BTreeMap<String, usize>,
    #[serde(default)]
    pub del: Blocks,
    #[serde(default)]
    pub delbar: Blocks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conj: Option<Blocks>,
}

fn key_order(blocks: &BTreeMap<Bidegree, Matrix>) -> Blocks {
    blocks
        .iter()
        .map(|(b, m)| {
            (b.to_string(), (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect())
        })
        .collect()
}

impl BicomplexJson {
    /// Zero blocks are omitted.
    pub fn from_bicomplex(k: &Bicomplex) -> Self {
        let nonzero = |blocks: &BTreeMap<Bidegree, Matrix>| -> BTreeMap<Bidegree, Matrix> {
            blocks.iter().filter(|(_, m)| !m.is_zero()).map(|(b, m)| (*b, m.clone())).collect()
        };
        BicomplexJson {
            label: k.label().to_string(),
            n: k.complex_dim(),
            spaces: k.dims().iter().map(|(b, d)| (b.to_string(), *d)).collect(),
            del: key_order(&nonzero(k.blocks(crate::Differential::Del))),
            delbar: key_order(&nonzero(k.blocks(crate::Differential::Delbar))),
            conj: k.conjugation().map(|c| key_order(c.maps())),
        }
    }

    pub fn to_bicomplex(&self) -> Result<Bicomplex> {
        let bidegree = |s: &str| -> Result<Bidegree> {
            s.parse().map_err(|_| Error::Equations(format!("bad bidegree key {s:?}")))
        };
        let mut dims = BTreeMap::new();
        for (key, &d) in &self.spaces {
            dims.insert(bidegree(key)?, d);
        }
        let matrices = |blocks: &Blocks| -> Result<BTreeMap<Bidegree, Matrix>> {
            let mut out = BTreeMap::new();
            for (key, rows) in blocks {
                let b = bidegree(key)?;
                let parsed: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|row| row.iter().map(|s| s.parse()).collect::<Result<Vec<Scalar>>>())
                    .collect::<Result<_>>()?;
                let width = parsed.first().map_or(0, Vec::len);
                if parsed.iter().any(|r| r.len() != width) {
                    return Err(Error::Equations(format!("block at ({b}) has rows of different lengths")));
                }
                let m = if parsed.is_empty() {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_rows(parsed).expect("rectangular")
                };
                out.insert(b, m);
            }
            Ok(out)
        };
        let k = Bicomplex::new(self.label.clone(), self.n, dims, matrices(&self.del)?, matrices(&self.delbar)?)?;
        let k = match &self.conj {
            Some(c) => k.with_conjugation(ConjugationStructure::new(matrices(c)?)),
            None => k,
        };
        k.ensure_valid()?;
        Ok(k)
    }
}

pub fn to_json(k: &Bicomplex) -> String {
    let mut s = serde_json::to_string_pretty(&BicomplexJson::from_bicomplex(k)).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Bicomplex> {
    let parsed: BicomplexJson = serde_json::from_str(text)?;
    parsed.to_bicomplex()
}

/// A parsed input: the complex and, for structure-equation sources, the
/// equations it came from.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub complex: Bicomplex,
    pub equations: Option<StructureEquations>,
}

/// Reads a `.json` bicomplex or a `.bba` structure-equation file.
pub fn parse_bicomplex_file(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let source = path.display().to_string();
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            if text.trim().is_empty() {
                return Err(Error::Parse { path: source, line: 1, message: "empty file".into() });
            }
            let parsed: BicomplexJson = serde_json::from_str(&text).map_err(|e| Error::Parse {
                path: source,
                line: e.line(),
                message: e.to_string(),
            })?;
            Ok(Loaded { complex: parsed.to_bicomplex()?, equations: None })
        }
        Some("bba") => {
            let equations = parse_structure_equations(&text, &source)?;
            let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("model");
            let complex = from_structure_equations(&equations, label)?;
            Ok(Loaded { complex, equations: Some(equations) })
        }
        other => Err(Error::UnknownFormat(other.unwrap_or("").to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{iwasawa, kodaira_surface};

    #[test]
    fn round_trip() {
        for k in [iwasawa(), kodaira_surface(), Bicomplex::empty("nothing")] {
            let text = to_json(&k);
            let back = from_json(&text).unwrap();
            assert_eq!(back.dims(), k.dims());
            assert_eq!(back.conjugation(), k.conjugation());
            assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn transposed_block_names_the_bidegree() {
        let text = r#"{"label":"bad","spaces":{"0,0":3,"1,0":2},"del":{"0,0":[["1","0"],["0","1"],["0","0"]]}}"#;
        let err = from_json(text).unwrap_err();
        assert!(err.to_string().contains("(0,0)"), "{err}");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(from_json(r#"{"label":"x","spaces":{},"extra":1}"#).is_err());
        assert!(from_json("").is_err());
    }
}

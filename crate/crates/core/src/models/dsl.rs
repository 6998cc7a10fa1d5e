//! Text format for structure equations:
//!
//! ```text
//! # Iwasawa manifold
//! n = 3
//! d w1 = 0
//! d w2 = 0
//! d w3 = -1* w1^w2
//! ```
//!
//! Terms are `<scalar>* a^b` with `a`, `b` among `w<k>` and `cw<k>` (the
//! conjugate generator). The scalar may be omitted, or be a bare sign.
//! Generators without a `d` line are closed.

use super::structure::{Generator, StructureEquations};
use crate::error::{Error, Result};
use crate::exactla::Scalar;

fn parse_error(source: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: source.to_string(), line, message: message.into() }
}

/// Parses `c?w<digits>` starting at byte `i`; returns the generator and the
/// next byte offset.
fn generator(s: &str, i: usize) -> Option<(Generator, usize)> {
    let bytes = s.as_bytes();
    let mut j = i;
    let anti = bytes.get(j) == Some(&b'c');
    if anti {
        j += 1;
    }
    if bytes.get(j) != Some(&b'w') {
        return None;
    }
    j += 1;
    let start = j;
    while bytes.get(j).is_some_and(u8::is_ascii_digit) {
        j += 1;
    }
    let k: usize = s[start..j].parse().ok()?;
    Some((if anti { Generator::Anti(k) } else { Generator::Hol(k) }, j))
}

fn skip_ws(s: &str, mut i: usize) -> usize {
    while s.as_bytes().get(i).is_some_and(u8::is_ascii_whitespace) {
        i += 1;
    }
    i
}

fn coefficient(text: &str) -> std::result::Result<Scalar, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.strip_suffix('*').unwrap_or(&compact);
    let compact = compact.strip_prefix('+').unwrap_or(compact);
    match compact {
        "" => Ok(Scalar::one()),
        "-" => Ok(Scalar::from(-1)),
        other => other.parse().map_err(|_| format!("bad coefficient {text:?}")),
    }
}

type Term = (Scalar, Generator, Generator);

fn expression(expr: &str) -> std::result::Result<Vec<Term>, String> {
    let trimmed = expr.trim();
    if trimmed == "0" {
        return Ok(Vec::new());
    }
    if trimmed.is_empty() {
        return Err("empty expression".into());
    }
    let mut terms = Vec::new();
    let mut cursor = 0;
    while cursor < expr.len() {
        let Some(offset) = expr[cursor..].find(['c', 'w']) else {
            if expr[cursor..].trim().is_empty() {
                break;
            }
            return Err(format!("trailing text {:?}", expr[cursor..].trim()));
        };
        let start = cursor + offset;
        let coeff = coefficient(&expr[cursor..start])?;
        let (a, j) = generator(expr, start).ok_or_else(|| format!("bad generator near {:?}", &expr[start..]))?;
        let j = skip_ws(expr, j);
        if expr.as_bytes().get(j) != Some(&b'^') {
            return Err(format!("expected '^' after {a}"));
        }
        let j = skip_ws(expr, j + 1);
        let (b, j) = generator(expr, j).ok_or_else(|| format!("bad generator after {a}^"))?;
        terms.push((coeff, a, b));
        cursor = j;
    }
    Ok(terms)
}

/// Parses structure equations; `source` names the input in error messages.
pub fn parse_structure_equations(text: &str, source: &str) -> Result<StructureEquations> {
    let mut spec: Option<StructureEquations> = None;
    let mut seen = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| parse_error(source, line_no, "expected '='"))?;
        let lhs = lhs.trim();
        if lhs == "n" {
            if spec.is_some() {
                return Err(parse_error(source, line_no, "n declared twice"));
            }
            let n: usize = rhs.trim().parse().map_err(|_| parse_error(source, line_no, "n must be an integer"))?;
            spec = Some(StructureEquations::new(n));
            continue;
        }
        let Some(current) = spec.as_mut() else {
            return Err(parse_error(source, line_no, "n must be declared first"));
        };
        let target = lhs.strip_prefix('d').map(str::trim).and_then(|g| generator(g, 0).filter(|&(_, e)| e == g.len()));
        let Some((Generator::Hol(k), _)) = target else {
            return Err(parse_error(source, line_no, format!("expected 'd w<k>', found {lhs:?}")));
        };
        if k == 0 || k > current.complex_dim() {
            return Err(parse_error(source, line_no, format!("generator w{k} outside 1..={}", current.complex_dim())));
        }
        if seen.contains(&k) {
            return Err(parse_error(source, line_no, format!("d w{k} given twice")));
        }
        seen.push(k);
        for (c, a, b) in expression(rhs).map_err(|m| parse_error(source, line_no, m))? {
            current.add_term(k, c, a, b).map_err(|e| parse_error(source, line_no, e.to_string()))?;
        }
    }
    spec.ok_or_else(|| parse_error(source, 0, "no 'n = ...' line"))
}

/// Canonical text form; parsing it gives back the same equations.
pub fn write_structure_equations(spec: &StructureEquations) -> String {
    let mut out = format!("n = {}\n", spec.complex_dim());
    for k in 1..=spec.complex_dim() {
        let terms = spec.terms(k);
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.iter().map(|(c, a, b)| format!("{c}* {a}^{b}")).collect::<Vec<_>>().join(" + ")
        };
        out.push_str(&format!("d w{k} = {rhs}\n"));
    }
    out
}

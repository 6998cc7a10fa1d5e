use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::bicomplex::{Bidegree, Differential};
use crate::error::Error;
use crate::zigzag::Decomposition;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RenderFormat {
    Tikz,
    Dot,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tikz" => Ok(RenderFormat::Tikz),
            "dot" => Ok(RenderFormat::Dot),
            "svg" => Ok(RenderFormat::Svg),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl RenderFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RenderFormat::Tikz => "tex",
            RenderFormat::Dot => "dot",
            RenderFormat::Svg => "svg",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Node {
    pub id: usize,
    pub bidegree: Bidegree,
    /// Grid position, origin bottom-left, `y` upwards.
    pub x: i32,
    pub y: i32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub map: Differential,
}

/// Node placement: bidegree `(p,q)` owns an `s × s` block of grid points
/// at `((s+1)p, (s+1)q)`, `s` large enough for the busiest bidegree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    /// Hidden squares, counted at their lower-left corner.
    pub hidden_squares: BTreeMap<Bidegree, usize>,
    pub cell: i32,
}

pub fn layout(d: &Decomposition, show_squares: bool) -> Diagram {
    let mut hidden_squares = BTreeMap::new();
    let mut per_bidegree: BTreeMap<Bidegree, usize> = BTreeMap::new();
    let mut placed: Vec<Vec<(Bidegree, usize)>> = Vec::new();
    let mut shown = Vec::new();
    for part in &d.parts {
        if part.is_square() && !show_squares {
            *hidden_squares.entry(part.dots()[0]).or_insert(0) += 1;
            continue;
        }
        let slots = part
            .dots()
            .into_iter()
            .map(|b| {
                let c = per_bidegree.entry(b).or_insert(0);
                *c += 1;
                (b, *c - 1)
            })
            .collect();
        placed.push(slots);
        shown.push(part);
    }
    let busiest = per_bidegree.values().copied().max().unwrap_or(1);
    let side = (1..).find(|s| s * s >= busiest).unwrap_or(1) as i32;
    let cell = side + 1;

    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (part, slots) in shown.iter().zip(&placed) {
        let first = nodes.len();
        for &(b, i) in slots {
            let i = i as i32;
            nodes.push(Node { id: nodes.len(), bidegree: b, x: b.p * cell + i % side, y: b.q * cell + i / side });
        }
        let index = |b: Bidegree| first + slots.iter().position(|(x, _)| *x == b).expect("dot of the part");
        for arrow in part.arrows() {
            edges.push(Edge { from: index(arrow.from), to: index(arrow.to), map: arrow.map });
        }
    }
    Diagram { nodes, edges, hidden_squares, cell }
}

fn squares_note(diagram: &Diagram) -> Vec<(Bidegree, String)> {
    diagram.hidden_squares.iter().map(|(b, n)| (*b, format!("{n} sq"))).collect()
}

fn tikz(diagram: &Diagram, label: &str) -> String {
    let mut out = format!("% {label}: p horizontal, q vertical, origin bottom-left\n");
    out.push_str("\\begin{tikzpicture}[scale=0.6]\n");
    for n in &diagram.nodes {
        let _ = writeln!(out, "  \\node[circle,fill,inner sep=1.5pt] (n{}) at ({},{}) {{}};", n.id, n.x, n.y);
    }
    for e in &diagram.edges {
        let label = match e.map {
            Differential::Del => "$\\partial$",
            Differential::Delbar => "$\\bar\\partial$",
        };
        let _ = writeln!(out, "  \\draw[->] (n{}) -- node[midway,auto,font=\\tiny] {{{label}}} (n{});", e.from, e.to);
    }
    for (b, note) in squares_note(diagram) {
        let _ =
            writeln!(out, "  \\node[font=\\tiny] at ({},{}) {{{note}}};", b.p * diagram.cell, b.q * diagram.cell - 1);
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

fn graphviz(diagram: &Diagram, label: &str) -> String {
    let mut out = format!("digraph \"{label}\" {{\n  // p horizontal, q vertical, origin bottom-left\n");
    out.push_str("  node [shape=point];\n");
    for n in &diagram.nodes {
        let _ = writeln!(out, "  n{} [pos=\"{},{}!\", xlabel=\"{}\"];", n.id, n.x, n.y, n.bidegree);
    }
    for e in &diagram.edges {
        let label = match e.map {
            Differential::Del => "del",
            Differential::Delbar => "delbar",
        };
        let _ = writeln!(out, "  n{} -> n{} [label=\"{label}\"];", e.from, e.to);
    }
    for (i, (b, note)) in squares_note(diagram).into_iter().enumerate() {
        let _ = writeln!(
            out,
            "  sq{i} [shape=plaintext, label=\"{note}\", pos=\"{},{}!\"];",
            b.p * diagram.cell,
            b.q * diagram.cell - 1
        );
    }
    out.push_str("}\n");
    out
}

fn svg(diagram: &Diagram, label: &str) -> String {
    const UNIT: i32 = 30;
    let max_x =
        diagram.nodes.iter().map(|n| n.x).chain(diagram.hidden_squares.keys().map(|b| b.p * diagram.cell)).max();
    let max_y =
        diagram.nodes.iter().map(|n| n.y).chain(diagram.hidden_squares.keys().map(|b| b.q * diagram.cell)).max();
    let (w, h) = ((max_x.unwrap_or(0) + 2) * UNIT, (max_y.unwrap_or(0) + 2) * UNIT);
    let px = |x: i32| (x + 1) * UNIT;
    let py = |y: i32| h - (y + 1) * UNIT;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n  <title>{label}</title>\n"
    );
    out.push_str(
        "  <defs><marker id=\"tip\" markerWidth=\"6\" markerHeight=\"6\" refX=\"6\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n",
    );
    for e in &diagram.edges {
        let (a, b) = (&diagram.nodes[e.from], &diagram.nodes[e.to]);
        let label = match e.map {
            Differential::Del => "\u{2202}",
            Differential::Delbar => "\u{2202}\u{304}",
        };
        let _ = writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" marker-end=\"url(#tip)\"/>",
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y)
        );
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"10\">{label}</text>",
            (px(a.x) + px(b.x)) / 2 + 3,
            (py(a.y) + py(b.y)) / 2 - 3
        );
    }
    for n in &diagram.nodes {
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\"><title>{}</title></circle>",
            px(n.x),
            py(n.y),
            n.bidegree
        );
    }
    for (b, note) in squares_note(diagram) {
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-size=\"9\">{note}</text>",
            px(b.p * diagram.cell),
            py(b.q * diagram.cell) + 14
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_diagram(d: &Decomposition, label: &str, format: RenderFormat, show_squares: bool) -> String {
    let diagram = layout(d, show_squares);
    match format {
        RenderFormat::Tikz => tikz(&diagram, label),
        RenderFormat::Dot => graphviz(&diagram, label),
        RenderFormat::Svg => svg(&diagram, label),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{iwasawa, two_diagrams};
    use crate::zigzag::decompose;
    use std::collections::HashSet;

    #[test]
    fn two_diagrams_shapes() {
        let (a, b) = two_diagrams();
        let da = layout(&decompose(&a).unwrap(), false);
        let db = layout(&decompose(&b).unwrap(), false);
        assert_eq!((da.nodes.len(), da.edges.len()), (2, 0));
        assert_eq!((db.nodes.len(), db.edges.len()), (6, 4));
    }

    #[test]
    fn iwasawa_has_no_overlaps() {
        let d = decompose(&iwasawa()).unwrap();
        for show in [false, true] {
            let diagram = layout(&d, show);
            let spots: HashSet<(i32, i32)> = diagram.nodes.iter().map(|n| (n.x, n.y)).collect();
            assert_eq!(spots.len(), diagram.nodes.len());
            let cells: HashSet<Bidegree> = diagram.nodes.iter().map(|n| n.bidegree).collect();
            if show {
                assert_eq!(cells.len(), 16);
                assert_eq!(diagram.nodes.len(), 64);
            }
        }
    }

    #[test]
    fn formats_are_deterministic() {
        let d = decompose(&iwasawa()).unwrap();
        for format in [RenderFormat::Tikz, RenderFormat::Dot, RenderFormat::Svg] {
            assert_eq!(render_diagram(&d, "iwasawa", format, false), render_diagram(&d, "iwasawa", format, false));
        }
        assert!(render_diagram(&d, "iwasawa", RenderFormat::Dot, false).contains("label=\"delbar\""));
    }
}

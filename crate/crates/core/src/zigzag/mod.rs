//! Squares and zigzags: the indecomposable double complexes.
//!
//! A zigzag lives on two adjacent anti-diagonals `k` and `k+1`; every arrow
//! goes from a dot on `k` (a source) to a dot on `k+1` (a sink), and moving
//! along the path increases `p` by one every second step. A square is the
//! four-dimensional complex with all four arrows isomorphisms.

mod count;
mod decompose;
mod synth;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bidegree, Differential};
use crate::error::{Error, Result};

pub use count::count_cohomology_from_zigzags;
pub use decompose::{decompose, verify_decomposition, Decomposition};
pub use synth::{scramble, synthesize, synthesize_real};

/// An arrow of an indecomposable, from the lower anti-diagonal upwards.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub from: Bidegree,
    pub to: Bidegree,
    pub map: Differential,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Indecomposable {
    /// Corners `anchor`, `anchor+(1,0)`, `anchor+(0,1)`, `anchor+(1,1)`.
    Square { anchor: Bidegree },
    /// Dots in canonical orientation; a single dot has no arrows.
    Zigzag { dots: Vec<Bidegree> },
}

fn step_kind(a: Bidegree, b: Bidegree) -> Option<(i32, i32)> {
    let d = (b.p - a.p, b.q - a.q);
    matches!(d, (1, 0) | (0, 1) | (-1, 0) | (0, -1)).then_some(d)
}

/// True when the steps alternate `(0,-1)`/`(1,0)` (or the reverse path,
/// `(0,1)`/`(-1,0)`).
fn is_alternating(dots: &[Bidegree]) -> bool {
    let steps: Option<Vec<(i32, i32)>> = dots.windows(2).map(|w| step_kind(w[0], w[1])).collect();
    let Some(steps) = steps else { return false };
    let forward = |s: (i32, i32)| s == (1, 0) || s == (0, -1);
    let all_forward = steps.iter().all(|&s| forward(s));
    let all_backward = steps.iter().all(|&s| !forward(s));
    (all_forward || all_backward) && steps.windows(2).all(|w| w[0] != w[1])
}

impl Indecomposable {
    pub fn dot(b: Bidegree) -> Self {
        Indecomposable::Zigzag { dots: vec![b] }
    }

    pub fn square(anchor: Bidegree) -> Self {
        Indecomposable::Square { anchor }
    }

    /// A zigzag through `dots` in path order, stored in canonical
    /// orientation: of the two ends, the one with the smaller
    /// `(total degree, p)` comes first.
    pub fn zigzag(mut dots: Vec<Bidegree>) -> Result<Self> {
        if dots.is_empty() {
            return Err(Error::MalformedPart("zigzag without dots".into()));
        }
        if !is_alternating(&dots) {
            let path = dots.iter().map(|b| format!("({b})")).collect::<Vec<_>>().join(" ");
            return Err(Error::MalformedPart(format!("{path} is not an alternating path")));
        }
        let last = *dots.last().expect("nonempty");
        if last.diagonal_key() < dots[0].diagonal_key() {
            dots.reverse();
        }
        Ok(Indecomposable::Zigzag { dots })
    }

    /// Re-checks the invariants of a value built directly from its fields.
    pub fn validate(&self) -> Result<()> {
        match self {
            Indecomposable::Square { .. } => Ok(()),
            Indecomposable::Zigzag { dots } => {
                let canonical = Indecomposable::zigzag(dots.clone())?;
                if &canonical != self {
                    return Err(Error::MalformedPart("zigzag not in canonical orientation".into()));
                }
                Ok(())
            }
        }
    }

    pub fn is_square(&self) -> bool {
        matches!(self, Indecomposable::Square { .. })
    }

    pub fn is_dot(&self) -> bool {
        matches!(self, Indecomposable::Zigzag { dots } if dots.len() == 1)
    }

    /// Bidegrees occupied, one per basis vector. For a square: anchor, then
    /// `+(1,0)`, `+(0,1)`, `+(1,1)`.
    pub fn dots(&self) -> Vec<Bidegree> {
        match self {
            Indecomposable::Square { anchor } => {
                vec![*anchor, anchor.shift(1, 0), anchor.shift(0, 1), anchor.shift(1, 1)]
            }
            Indecomposable::Zigzag { dots } => dots.clone(),
        }
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        match self {
            Indecomposable::Square { anchor } => {
                let a = *anchor;
                vec![
                    Arrow { from: a, to: a.shift(1, 0), map: Differential::Del },
                    Arrow { from: a, to: a.shift(0, 1), map: Differential::Delbar },
                    Arrow { from: a.shift(0, 1), to: a.shift(1, 1), map: Differential::Del },
                    Arrow { from: a.shift(1, 0), to: a.shift(1, 1), map: Differential::Delbar },
                ]
            }
            Indecomposable::Zigzag { dots } => dots
                .windows(2)
                .map(|w| {
                    let (from, to) = if w[0].total() < w[1].total() { (w[0], w[1]) } else { (w[1], w[0]) };
                    let map = if to.p != from.p { Differential::Del } else { Differential::Delbar };
                    Arrow { from, to, map }
                })
                .collect(),
        }
    }

    /// Image under conjugation, `(p,q) ↦ (q,p)`.
    pub fn mirror(&self) -> Self {
        match self {
            Indecomposable::Square { anchor } => Indecomposable::Square { anchor: anchor.mirror() },
            Indecomposable::Zigzag { dots } => {
                Indecomposable::zigzag(dots.iter().map(|b| b.mirror()).collect()).expect("mirror of a zigzag")
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dots().len()
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::Square { anchor } => write!(f, "square@({anchor})"),
            Indecomposable::Zigzag { dots } if dots.len() == 1 => write!(f, "dot@({})", dots[0]),
            Indecomposable::Zigzag { dots } => {
                write!(f, "zigzag")?;
                for b in dots {
                    write!(f, " ({b})")?;
                }
                Ok(())
            }
        }
    }
}

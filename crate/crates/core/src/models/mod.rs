//! Builders for double complexes: exterior-algebra models of complex
//! structure equations, named presets, and seeded random complexes.

mod dsl;
mod random;
mod structure;

pub use dsl::{parse_structure_equations, write_structure_equations};
pub use random::{corpus_config, random_bicomplex, PartKinds, RandomComplex, RandomConfig};
pub use structure::{from_structure_equations, Generator, StructureEquations};

use crate::bicomplex::{Bicomplex, Bidegree};
use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::zigzag::{synthesize, synthesize_real, Indecomposable};

/// Equations of the Iwasawa manifold: `dω³ = -ω¹∧ω²`.
pub fn iwasawa_equations() -> StructureEquations {
    StructureEquations::new(3).with_term(3, Scalar::from(-1), Generator::Hol(1), Generator::Hol(2)).expect("valid term")
}

/// Equations of the primary Kodaira surface: `dω² = ω¹∧ω̄¹`.
pub fn kodaira_surface_equations() -> StructureEquations {
    StructureEquations::new(2).with_term(2, Scalar::one(), Generator::Hol(1), Generator::Anti(1)).expect("valid term")
}

/// The flat torus of complex dimension `n`: all differentials vanish.
/// `n = 0` is the point.
pub fn torus(n: usize) -> Bicomplex {
    from_structure_equations(&StructureEquations::new(n), &format!("torus-{n}")).expect("torus model")
}

pub fn iwasawa() -> Bicomplex {
    from_structure_equations(&iwasawa_equations(), "iwasawa").expect("iwasawa model")
}

pub fn kodaira_surface() -> Bicomplex {
    from_structure_equations(&kodaira_surface_equations(), "kodaira-surface").expect("kodaira model")
}

fn bd(p: i32, q: i32) -> Bidegree {
    Bidegree::new(p, q)
}

/// Two complexes with equal Dolbeault and de Rham numbers but different
/// Bott-Chern numbers: dots at (1,2) and (2,1), versus two length-three
/// zigzags, one with its sink at (2,2), the other with its source at (1,1).
pub fn two_diagrams() -> (Bicomplex, Bicomplex) {
    let a = synthesize(&[Indecomposable::dot(bd(1, 2)), Indecomposable::dot(bd(2, 1))], None)
        .expect("dots")
        .with_label("two-diagrams-a");
    let b = synthesize(&two_diagrams_b_parts(), None).expect("zigzags").with_label("two-diagrams-b");
    (a, b)
}

pub fn two_diagrams_b_parts() -> Vec<Indecomposable> {
    vec![
        Indecomposable::zigzag(vec![bd(1, 2), bd(2, 2), bd(2, 1)]).expect("sink zigzag"),
        Indecomposable::zigzag(vec![bd(1, 2), bd(1, 1), bd(2, 1)]).expect("source zigzag"),
    ]
}

/// A zigzag with sources `(p, n-p)`, `p = 0..n`, and sinks `(p+1, n-p)`,
/// `p = 0..n-1`, with its real structure. Its Aeppli number in degree `n`
/// is `n+1` while `b_n = 1`.
pub fn long_zigzag(n: usize) -> Bicomplex {
    let ni = n as i32;
    let mut dots = Vec::new();
    for p in 0..=ni {
        dots.push(bd(p, ni - p));
        if p < ni {
            dots.push(bd(p + 1, ni - p));
        }
    }
    let part = Indecomposable::zigzag(dots).expect("alternating path");
    synthesize_real(&[part], n, None).expect("self-conjugate").with_label(format!("long-zigzag-{n}"))
}

/// Structure equations behind a named model, for the presets that have them.
pub fn preset_equations(name: &str) -> Option<StructureEquations> {
    if let Some(n) = name.strip_prefix("torus-").and_then(|s| s.parse::<usize>().ok()) {
        return (n <= 6).then(|| StructureEquations::new(n));
    }
    match name {
        "torus" => Some(StructureEquations::new(3)),
        "iwasawa" => Some(iwasawa_equations()),
        "kodaira" | "kodaira-surface" => Some(kodaira_surface_equations()),
        _ => None,
    }
}

/// Names accepted by [`preset`].
pub const PRESETS: &[&str] = &[
    "torus-1",
    "torus-2",
    "torus-3",
    "iwasawa",
    "kodaira-surface",
    "two-diagrams-a",
    "two-diagrams-b",
    "square",
    "dot",
    "long-zigzag-3",
];

/// Looks up a named model. `torus-N` and `long-zigzag-N` accept any `N`.
pub fn preset(name: &str) -> Result<Bicomplex> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = numbered("torus-") {
        if n > 6 {
            return Err(Error::UnknownPreset(name.to_string()));
        }
        return Ok(torus(n));
    }
    if let Some(n) = numbered("long-zigzag-") {
        if n == 0 || n > 20 {
            return Err(Error::UnknownPreset(name.to_string()));
        }
        return Ok(long_zigzag(n));
    }
    Ok(match name {
        "torus" => torus(3),
        "iwasawa" => iwasawa(),
        "kodaira" | "kodaira-surface" => kodaira_surface(),
        "two-diagrams-a" => two_diagrams().0,
        "two-diagrams-b" => two_diagrams().1,
        "square" => synthesize(&[Indecomposable::square(bd(0, 0))], None)?.with_label("square"),
        "dot" => synthesize(&[Indecomposable::dot(bd(0, 0))], None)?.with_label("dot"),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::all_tables;

    #[test]
    fn presets_validate() {
        for name in PRESETS {
            let k = preset(name).unwrap();
            assert!(k.validate().is_empty(), "{name}");
        }
        assert!(matches!(preset("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn iwasawa_differentials() {
        let k = iwasawa();
        // ω³ is the third basis vector of A^{1,0}; ω¹∧ω² is the first of A^{2,0}
        let del = k.del(bd(1, 0));
        assert_eq!(del[(0, 2)], Scalar::from(-1));
        assert!(k.delbar(bd(1, 0)).is_zero());
        assert_eq!(k.total_dim(), 64);
        assert!(k.check_real_structure().unwrap());
    }

    #[test]
    fn flipped_signs() {
        use crate::bicomplex::{Differential, Violation};
        let k = iwasawa();
        let del = k.del(bd(1, 0)).neg();
        assert!(k.clone().with_block(Differential::Del, bd(1, 0), del).unwrap().validate().is_empty());

        let mut del = k.del(bd(1, 2)).into_owned();
        let (r, c) = (0..del.rows())
            .flat_map(|r| (0..del.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !del[(r, c)].is_zero())
            .unwrap();
        del[(r, c)] = -del[(r, c)].clone();
        let bad = k.with_block(Differential::Del, bd(1, 2), del).unwrap();
        assert_eq!(bad.validate(), vec![Violation::Anticommutation(bd(1, 1))]);
    }

    #[test]
    fn kodaira_differentials() {
        let k = kodaira_surface();
        assert!(k.del(bd(1, 0)).is_zero());
        let delbar = k.delbar(bd(1, 0));
        // ω² ↦ ω¹∧ω̄¹, the first basis vector of A^{1,1}
        assert_eq!(delbar[(0, 1)], Scalar::one());
        assert!(k.check_real_structure().unwrap());
    }

    #[test]
    fn fundamental_class_kills_exact_top_forms() {
        for k in [torus(2), iwasawa(), kodaira_surface()] {
            let n = k.complex_dim().unwrap() as i32;
            assert!(k.del(bd(n - 1, n)).is_zero());
            assert!(k.delbar(bd(n, n - 1)).is_zero());
        }
    }

    #[test]
    fn torus_tables() {
        let t = all_tables(&torus(2)).unwrap();
        assert_eq!(t.dolbeault.dim(bd(1, 1)), 4);
        assert_eq!(torus(1).dims().len(), 4);
        assert_eq!(torus(0).total_dim(), 1);
    }
}

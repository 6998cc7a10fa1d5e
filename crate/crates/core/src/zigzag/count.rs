use std::collections::BTreeMap;

use super::{synthesize, Decomposition, Indecomposable};
use crate::bicomplex::Differential;
use crate::cohomology::{de_rham, CohomologyDims};
use crate::error::Result;

fn bump<K: Ord>(map: &mut BTreeMap<K, usize>, key: K) {
    *map.entry(key).or_insert(0) += 1;
}

/// Cohomology dimensions read off the shape of the parts: squares
/// contribute nothing; a zigzag dot counts for Dolbeault unless it touches a
/// `∂̄` arrow, for conjugate Dolbeault unless it touches a `∂` arrow, for
/// Bott-Chern if no arrow leaves it, for Aeppli if no arrow enters it; a
/// zigzag with an even number of arrows carries one de Rham class, placed
/// by totalizing the part on its own.
pub fn count_cohomology_from_zigzags(d: &Decomposition) -> Result<CohomologyDims> {
    let mut out = CohomologyDims::default();
    let mut de_rham_cache: BTreeMap<Indecomposable, BTreeMap<i32, usize>> = BTreeMap::new();
    for part in &d.parts {
        part.validate()?;
        if part.is_square() {
            continue;
        }
        let arrows = part.arrows();
        for dot in part.dots() {
            let touches = |m: Differential| arrows.iter().any(|a| a.map == m && (a.from == dot || a.to == dot));
            if !touches(Differential::Delbar) {
                bump(&mut out.dolbeault, dot);
            }
            if !touches(Differential::Del) {
                bump(&mut out.conj_dolbeault, dot);
            }
            if !arrows.iter().any(|a| a.from == dot) {
                bump(&mut out.bott_chern, dot);
            }
            if !arrows.iter().any(|a| a.to == dot) {
                bump(&mut out.aeppli, dot);
            }
        }
        if arrows.len() % 2 == 0 {
            if !de_rham_cache.contains_key(part) {
                let single = synthesize(std::slice::from_ref(part), None)?;
                de_rham_cache.insert(part.clone(), de_rham(&single)?.dims().clone());
            }
            for (&k, &n) in &de_rham_cache[part] {
                *out.de_rham.entry(k).or_insert(0) += n;
            }
        }
    }
    Ok(out)
}

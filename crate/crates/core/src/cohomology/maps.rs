use std::collections::BTreeMap;

use super::Quotient;
use crate::bicomplex::{Bicomplex, Bidegree, TotalComplex};
use crate::error::Result;
use crate::exactla::{Matrix, Scalar, Subspace};

/// Ranks of the maps induced by the identity between the cohomologies, per
/// bidegree (or per total degree for maps through de Rham). Every support
/// bidegree and total degree is present, including zero ranks.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NaturalMapRanks {
    pub bc_to_del: BTreeMap<Bidegree, usize>,
    pub bc_to_delbar: BTreeMap<Bidegree, usize>,
    pub bc_to_aeppli: BTreeMap<Bidegree, usize>,
    pub del_to_aeppli: BTreeMap<Bidegree, usize>,
    pub delbar_to_aeppli: BTreeMap<Bidegree, usize>,
    pub bc_to_de_rham: BTreeMap<i32, usize>,
    pub de_rham_to_aeppli: BTreeMap<i32, usize>,
}

impl NaturalMapRanks {
    /// Bidegrees where `H_BC → H_A` has a kernel.
    pub fn non_injective_bc_to_aeppli(&self, bott_chern: &BTreeMap<Bidegree, usize>) -> Vec<Bidegree> {
        self.bc_to_aeppli
            .iter()
            .filter(|(b, &r)| r < bott_chern.get(b).copied().unwrap_or(0))
            .map(|(&b, _)| b)
            .collect()
    }
}

pub fn natural_maps(k: &Bicomplex) -> Result<NaturalMapRanks> {
    Ok(super::all_tables(k)?.maps)
}

/// Rank of `span(reps) → ambient / boundaries`.
fn induced_rank(reps: &Matrix, boundaries: &Subspace) -> usize {
    if reps.cols() == 0 {
        return 0;
    }
    Subspace::span(&boundaries.basis().hstack(reps)).dim() - boundaries.dim()
}

/// Direct sum over a total degree of per-bidegree pieces, embedded in the
/// total space.
fn embed_columns(t: &TotalComplex, b: Bidegree, m: &Matrix) -> Vec<Vec<Scalar>> {
    m.columns().iter().map(|c| t.embed(b, c)).collect()
}

pub(super) fn ranks(
    k: &Bicomplex,
    t: &TotalComplex,
    bc: &BTreeMap<Bidegree, Quotient>,
    dol: &BTreeMap<Bidegree, Quotient>,
    conj: &BTreeMap<Bidegree, Quotient>,
    ae: &BTreeMap<Bidegree, Quotient>,
    dr: &BTreeMap<i32, Quotient>,
) -> NaturalMapRanks {
    let mut out = NaturalMapRanks::default();
    for b in k.support() {
        let reps = &bc[&b].reps;
        out.bc_to_del.insert(b, induced_rank(reps, &conj[&b].boundaries));
        out.bc_to_delbar.insert(b, induced_rank(reps, &dol[&b].boundaries));
        out.bc_to_aeppli.insert(b, induced_rank(reps, &ae[&b].boundaries));
        out.del_to_aeppli.insert(b, induced_rank(&conj[&b].reps, &ae[&b].boundaries));
        out.delbar_to_aeppli.insert(b, induced_rank(&dol[&b].reps, &ae[&b].boundaries));
    }
    for degree in t.degrees() {
        let n = t.dim(degree);
        let blocks = t.degree(degree).blocks.clone();

        let mut bc_reps = Vec::new();
        let mut ae_bounds = Vec::new();
        for blk in &blocks {
            bc_reps.extend(embed_columns(t, blk.bidegree, &bc[&blk.bidegree].reps));
            ae_bounds.extend(embed_columns(t, blk.bidegree, ae[&blk.bidegree].boundaries.basis()));
        }
        let bc_reps = Matrix::from_columns(n, &bc_reps);
        out.bc_to_de_rham.insert(degree, induced_rank(&bc_reps, &dr[&degree].boundaries));
        let ae_bounds = Subspace::span_vectors(n, &ae_bounds);
        out.de_rham_to_aeppli.insert(degree, induced_rank(&dr[&degree].reps, &ae_bounds));
    }
    out
}

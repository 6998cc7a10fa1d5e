//! The five cohomologies of a double complex, the Frölicher spectral
//! sequence, and the ranks of the maps induced by the identity.
//!
//! Each table stores, next to its dimensions, a matrix of representative
//! cocycles whose classes form a basis of the quotient.

mod frolicher;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Bidegree, TotalComplex};
use crate::error::Result;
use crate::exactla::{kernel_basis, Matrix, Subspace};

pub use frolicher::{frolicher_pages, FrolicherPages};
pub use maps::{natural_maps, NaturalMapRanks};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Theory {
    DeRham,
    Dolbeault,
    ConjDolbeault,
    BottChern,
    Aeppli,
}

impl Theory {
    pub const ALL: [Theory; 5] =
        [Theory::DeRham, Theory::Dolbeault, Theory::ConjDolbeault, Theory::BottChern, Theory::Aeppli];

    pub fn name(self) -> &'static str {
        match self {
            Theory::DeRham => "deRham",
            Theory::Dolbeault => "dolbeault",
            Theory::ConjDolbeault => "conjDolbeault",
            Theory::BottChern => "bottChern",
            Theory::Aeppli => "aeppli",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cocycle space, its coboundaries, and representatives of a quotient basis.
#[derive(Clone, Debug)]
pub(crate) struct Quotient {
    pub boundaries: Subspace,
    pub reps: Matrix,
}

impl Quotient {
    fn new(cycles: Subspace, boundaries: Subspace) -> Self {
        let reps = cycles.complement_basis(&boundaries).expect("boundaries lie in cycles");
        Quotient { boundaries, reps }
    }

    fn dim(&self) -> usize {
        self.reps.cols()
    }
}

/// Dimensions and representatives of one theory, keyed by bidegree or, for
/// de Rham, by total degree. Keys with zero dimension are omitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyTable<K: Ord> {
    theory: Theory,
    dims: BTreeMap<K, usize>,
    representatives: BTreeMap<K, Matrix>,
}

impl<K: Ord + Copy> CohomologyTable<K> {
    fn from_quotients(theory: Theory, quotients: &BTreeMap<K, Quotient>) -> Self {
        let mut dims = BTreeMap::new();
        let mut representatives = BTreeMap::new();
        for (&k, q) in quotients {
            if q.dim() > 0 {
                dims.insert(k, q.dim());
                representatives.insert(k, q.reps.clone());
            }
        }
        CohomologyTable { theory, dims, representatives }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn dim(&self, k: K) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero dimensions.
    pub fn dims(&self) -> &BTreeMap<K, usize> {
        &self.dims
    }

    /// Columns are cocycles whose classes form a basis of the quotient.
    pub fn representatives(&self, k: K) -> Option<&Matrix> {
        self.representatives.get(&k)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

impl CohomologyTable<Bidegree> {
    /// `h^k = Σ_{p+q=k} h^{p,q}`, nonzero entries only.
    pub fn by_total_degree(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (b, &d) in &self.dims {
            *out.entry(b.total()).or_insert(0) += d;
        }
        out
    }

    pub fn total_degree(&self, k: i32) -> usize {
        self.dims.iter().filter(|(b, _)| b.total() == k).map(|(_, &d)| d).sum()
    }
}

fn range_space(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

pub(crate) fn dolbeault_quotient(k: &Bicomplex, b: Bidegree) -> Quotient {
    Quotient::new(kernel_basis(&k.delbar(b)), range_space(&k.delbar(b.shift(0, -1))))
}

pub(crate) fn conj_dolbeault_quotient(k: &Bicomplex, b: Bidegree) -> Quotient {
    Quotient::new(kernel_basis(&k.del(b)), range_space(&k.del(b.shift(-1, 0))))
}

pub(crate) fn bott_chern_quotient(k: &Bicomplex, b: Bidegree) -> Quotient {
    let both = k.del(b).vstack(&k.delbar(b));
    Quotient::new(kernel_basis(&both), range_space(&k.del_delbar(b.shift(-1, -1))))
}

pub(crate) fn aeppli_quotient(k: &Bicomplex, b: Bidegree) -> Quotient {
    let images = k.del(b.shift(-1, 0)).hstack(&k.delbar(b.shift(0, -1)));
    Quotient::new(kernel_basis(&k.del_delbar(b)), range_space(&images))
}

pub(crate) fn de_rham_quotient(t: &TotalComplex, degree: i32) -> Quotient {
    Quotient::new(kernel_basis(&t.d(degree)), range_space(&t.d(degree - 1)))
}

fn per_bidegree(k: &Bicomplex, f: fn(&Bicomplex, Bidegree) -> Quotient) -> BTreeMap<Bidegree, Quotient> {
    k.support().map(|b| (b, f(k, b))).collect()
}

fn de_rham_quotients(t: &TotalComplex) -> BTreeMap<i32, Quotient> {
    t.degrees().map(|d| (d, de_rham_quotient(t, d))).collect()
}

/// `H_∂̄ = ker ∂̄ / im ∂̄`.
pub fn dolbeault(k: &Bicomplex) -> Result<CohomologyTable<Bidegree>> {
    k.ensure_valid()?;
    Ok(CohomologyTable::from_quotients(Theory::Dolbeault, &per_bidegree(k, dolbeault_quotient)))
}

/// `H_∂ = ker ∂ / im ∂`.
pub fn conj_dolbeault(k: &Bicomplex) -> Result<CohomologyTable<Bidegree>> {
    k.ensure_valid()?;
    Ok(CohomologyTable::from_quotients(Theory::ConjDolbeault, &per_bidegree(k, conj_dolbeault_quotient)))
}

/// `H_BC = (ker ∂ ∩ ker ∂̄) / im ∂∂̄`.
pub fn bott_chern(k: &Bicomplex) -> Result<CohomologyTable<Bidegree>> {
    k.ensure_valid()?;
    Ok(CohomologyTable::from_quotients(Theory::BottChern, &per_bidegree(k, bott_chern_quotient)))
}

/// `H_A = ker ∂∂̄ / (im ∂ + im ∂̄)`.
pub fn aeppli(k: &Bicomplex) -> Result<CohomologyTable<Bidegree>> {
    k.ensure_valid()?;
    Ok(CohomologyTable::from_quotients(Theory::Aeppli, &per_bidegree(k, aeppli_quotient)))
}

/// Cohomology of the total complex, by total degree.
pub fn de_rham(k: &Bicomplex) -> Result<CohomologyTable<i32>> {
    let t = k.totalize()?;
    Ok(CohomologyTable::from_quotients(Theory::DeRham, &de_rham_quotients(&t)))
}

/// Nonzero dimensions of all five theories; the common currency for
/// comparing the linear-algebra tables with zigzag counts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CohomologyDims {
    pub de_rham: BTreeMap<i32, usize>,
    pub dolbeault: BTreeMap<Bidegree, usize>,
    pub conj_dolbeault: BTreeMap<Bidegree, usize>,
    pub bott_chern: BTreeMap<Bidegree, usize>,
    pub aeppli: BTreeMap<Bidegree, usize>,
}

impl CohomologyDims {
    pub fn bigraded(&self, theory: Theory) -> Option<&BTreeMap<Bidegree, usize>> {
        match theory {
            Theory::DeRham => None,
            Theory::Dolbeault => Some(&self.dolbeault),
            Theory::ConjDolbeault => Some(&self.conj_dolbeault),
            Theory::BottChern => Some(&self.bott_chern),
            Theory::Aeppli => Some(&self.aeppli),
        }
    }

    /// Theories on which the two sets of numbers disagree.
    pub fn differences(&self, other: &CohomologyDims) -> Vec<Theory> {
        let mut out = Vec::new();
        if self.de_rham != other.de_rham {
            out.push(Theory::DeRham);
        }
        for t in &Theory::ALL[1..] {
            if self.bigraded(*t) != other.bigraded(*t) {
                out.push(*t);
            }
        }
        out
    }
}

/// Everything computed from a single complex in one pass.
#[derive(Clone, Debug)]
pub struct AllTables {
    pub de_rham: CohomologyTable<i32>,
    pub dolbeault: CohomologyTable<Bidegree>,
    pub conj_dolbeault: CohomologyTable<Bidegree>,
    pub bott_chern: CohomologyTable<Bidegree>,
    pub aeppli: CohomologyTable<Bidegree>,
    pub frolicher: FrolicherPages,
    pub maps: NaturalMapRanks,
}

impl AllTables {
    pub fn dims(&self) -> CohomologyDims {
        CohomologyDims {
            de_rham: self.de_rham.dims().clone(),
            dolbeault: self.dolbeault.dims().clone(),
            conj_dolbeault: self.conj_dolbeault.dims().clone(),
            bott_chern: self.bott_chern.dims().clone(),
            aeppli: self.aeppli.dims().clone(),
        }
    }

    pub fn betti(&self, k: i32) -> usize {
        self.de_rham.dim(k)
    }

    pub fn table(&self, theory: Theory) -> Option<&CohomologyTable<Bidegree>> {
        match theory {
            Theory::DeRham => None,
            Theory::Dolbeault => Some(&self.dolbeault),
            Theory::ConjDolbeault => Some(&self.conj_dolbeault),
            Theory::BottChern => Some(&self.bott_chern),
            Theory::Aeppli => Some(&self.aeppli),
        }
    }
}

/// All five tables, the Frölicher pages up to stabilization, and the
/// natural-map ranks.
pub fn all_tables(k: &Bicomplex) -> Result<AllTables> {
    let t = k.totalize()?;
    let dol = per_bidegree(k, dolbeault_quotient);
    let conj = per_bidegree(k, conj_dolbeault_quotient);
    let bc = per_bidegree(k, bott_chern_quotient);
    let ae = per_bidegree(k, aeppli_quotient);
    let dr = de_rham_quotients(&t);
    let maps = maps::ranks(k, &t, &bc, &dol, &conj, &ae, &dr);
    let frolicher = frolicher::pages(k, &t, usize::MAX);
    Ok(AllTables {
        de_rham: CohomologyTable::from_quotients(Theory::DeRham, &dr),
        dolbeault: CohomologyTable::from_quotients(Theory::Dolbeault, &dol),
        conj_dolbeault: CohomologyTable::from_quotients(Theory::ConjDolbeault, &conj),
        bott_chern: CohomologyTable::from_quotients(Theory::BottChern, &bc),
        aeppli: CohomologyTable::from_quotients(Theory::Aeppli, &ae),
        frolicher,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::Differential;

    fn bd(p: i32, q: i32) -> Bidegree {
        Bidegree::new(p, q)
    }

    fn arrow(from: Bidegree, which: Differential) -> Bicomplex {
        let to = match which {
            Differential::Del => from.del_target(),
            Differential::Delbar => from.delbar_target(),
        };
        let dims = [(from, 1), (to, 1)].into_iter().collect();
        let block: BTreeMap<_, _> = [(from, Matrix::identity(1))].into_iter().collect();
        let (del, delbar) = match which {
            Differential::Del => (block, BTreeMap::new()),
            Differential::Delbar => (BTreeMap::new(), block),
        };
        Bicomplex::new("arrow", None, dims, del, delbar).unwrap()
    }

    #[test]
    fn vertical_arrow() {
        let k = arrow(bd(0, 0), Differential::Delbar);
        let t = all_tables(&k).unwrap();
        assert!(t.dolbeault.dims().is_empty());
        assert_eq!(t.conj_dolbeault.dims(), &[(bd(0, 0), 1), (bd(0, 1), 1)].into_iter().collect());
        assert_eq!(t.bott_chern.dims(), &[(bd(0, 1), 1)].into_iter().collect());
        assert_eq!(t.aeppli.dims(), &[(bd(0, 0), 1)].into_iter().collect());
        assert!(t.de_rham.dims().is_empty());
        let reps = t.bott_chern.representatives(bd(0, 1)).unwrap();
        assert_eq!(reps.shape(), (1, 1));
    }

    #[test]
    fn horizontal_arrow_pages() {
        let k = arrow(bd(0, 0), Differential::Del);
        let pages = frolicher_pages(&k, 10).unwrap();
        assert_eq!(pages.page(1).unwrap(), &[(bd(0, 0), 1), (bd(1, 0), 1)].into_iter().collect());
        assert!(pages.page(2).unwrap().is_empty());
        assert_eq!(pages.stabilization(), 2);
        assert!(matches!(frolicher_pages(&k, 0), Err(crate::Error::PageLimit)));
    }

    #[test]
    fn invalid_input_is_rejected() {
        let dims = [(bd(0, 0), 1), (bd(1, 0), 1), (bd(0, 1), 1), (bd(1, 1), 1)].into_iter().collect();
        let one = || Matrix::identity(1);
        let del = [(bd(0, 0), one()), (bd(0, 1), one())].into_iter().collect();
        let delbar = [(bd(0, 0), one()), (bd(1, 0), one())].into_iter().collect();
        let k = Bicomplex::new("commuting", None, dims, del, delbar).unwrap();
        assert!(dolbeault(&k).is_err());
        assert!(all_tables(&k).is_err());
    }
}

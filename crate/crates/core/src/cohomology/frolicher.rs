use std::collections::BTreeMap;

use crate::bicomplex::{Bicomplex, Bidegree, TotalComplex};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Scalar, Subspace};

/// Pages `E_1 … E_{r_stab}` of the spectral sequence of the column filtration
/// `F^p = ⊕_{p' ≥ p} A^{p', •}`, truncated at the requested maximum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrolicherPages {
    pages: Vec<BTreeMap<Bidegree, usize>>,
    limit: BTreeMap<Bidegree, usize>,
    stabilization: usize,
}

impl FrolicherPages {
    /// Nonzero dimensions of page `r`, if it was kept.
    pub fn page(&self, r: usize) -> Option<&BTreeMap<Bidegree, usize>> {
        r.checked_sub(1).and_then(|i| self.pages.get(i))
    }

    pub fn pages(&self) -> &[BTreeMap<Bidegree, usize>] {
        &self.pages
    }

    /// First page equal to every later page.
    pub fn stabilization(&self) -> usize {
        self.stabilization
    }

    /// `E_∞`, independent of the truncation.
    pub fn limit(&self) -> &BTreeMap<Bidegree, usize> {
        &self.limit
    }

    /// `Σ_{p+q=k} E_∞^{p,q}`.
    pub fn limit_total(&self, k: i32) -> usize {
        self.limit.iter().filter(|(b, _)| b.total() == k).map(|(_, &d)| d).sum()
    }
}

pub fn frolicher_pages(k: &Bicomplex, r_max: usize) -> Result<FrolicherPages> {
    if r_max < 1 {
        return Err(Error::PageLimit);
    }
    let t = k.totalize()?;
    Ok(pages(k, &t, r_max))
}

struct Filtered<'a> {
    t: &'a TotalComplex,
}

impl Filtered<'_> {
    /// First coordinate of `F^p` inside degree `k`.
    fn start(&self, k: i32, p: i32) -> usize {
        let deg = self.t.degree(k);
        deg.blocks.iter().find(|b| b.bidegree.p >= p).map_or(deg.dim, |b| b.offset)
    }

    /// `F^p A^k` as a subspace.
    fn filt(&self, k: i32, p: i32) -> Subspace {
        let n = self.t.dim(k);
        let s = self.start(k, p);
        let vectors: Vec<Vec<Scalar>> = (s..n).map(|i| unit(n, i)).collect();
        Subspace::span_vectors(n, &vectors)
    }

    /// `Z_r^p = { x ∈ F^p A^k : d x ∈ F^{p+r} }`.
    fn z(&self, k: i32, p: i32, r: i32) -> Subspace {
        let n = self.t.dim(k);
        let s = self.start(k, p);
        let d = self.t.d(k);
        let cut = self.start(k + 1, p + r);
        let rows: Vec<usize> = (0..cut).collect();
        let cols: Vec<usize> = (s..n).collect();
        let restricted = d.select_rows(&rows).select_columns(&cols);
        let kernel = kernel_basis(&restricted);
        let vectors: Vec<Vec<Scalar>> = kernel
            .basis()
            .columns()
            .into_iter()
            .map(|v| {
                let mut full = vec![Scalar::zero(); n];
                full[s..].clone_from_slice(&v);
                full
            })
            .collect();
        Subspace::span_vectors(n, &vectors)
    }

    /// `dim E_r^{p, k-p} = dim Z_r^p − dim (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})`.
    fn page_dim(&self, k: i32, p: i32, r: i32) -> usize {
        let z = self.z(k, p, r);
        let lower = if r == 1 { self.filt(k, p + 1) } else { self.z(k, p + 1, r - 1) };
        let source = self.z(k - 1, p - r + 1, r - 1);
        let image = source.image_under(&self.t.d(k - 1));
        let den = lower.sum(&image).expect("same ambient");
        z.dim() - den.dim()
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::zero(); n];
    e[i] = Scalar::one();
    e
}

pub(super) fn pages(k: &Bicomplex, t: &TotalComplex, r_max: usize) -> FrolicherPages {
    let Some((pmin, pmax, _, _)) = k.bounds() else {
        return FrolicherPages { pages: vec![BTreeMap::new()], limit: BTreeMap::new(), stabilization: 1 };
    };
    let f = Filtered { t };
    let last = (pmax - pmin + 2) as usize;
    let compute = |r: usize| -> BTreeMap<Bidegree, usize> {
        k.support()
            .filter_map(|b| {
                let d = f.page_dim(b.total(), b.p, r as i32);
                (d > 0).then_some((b, d))
            })
            .collect()
    };
    let all: Vec<BTreeMap<Bidegree, usize>> = (1..=last).map(compute).collect();
    let limit = all[last - 1].clone();
    let stabilization = (1..=last).find(|&r| all[r - 1] == limit).unwrap_or(last);
    let keep = stabilization.min(r_max);
    FrolicherPages { pages: all.into_iter().take(keep).collect(), limit, stabilization }
}

//! Bounded double complexes: bigraded spaces `A^{p,q}` with `∂` of bidegree
//! (1,0) and `∂̄` of bidegree (0,1), optionally carrying a wedge product, a
//! real structure and a complex dimension.
//!
//! Sign convention: `∂∂̄ = -∂̄∂`, so that `d = ∂ + ∂̄` squares to zero on the
//! total complex.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i32,
    pub q: i32,
}

impl Bidegree {
    pub const fn new(p: i32, q: i32) -> Self {
        Bidegree { p, q }
    }

    /// Total degree `p + q`, the anti-diagonal index.
    pub fn total(self) -> i32 {
        self.p + self.q
    }

    pub fn shift(self, dp: i32, dq: i32) -> Self {
        Bidegree::new(self.p + dp, self.q + dq)
    }

    /// Target of `∂`.
    pub fn del_target(self) -> Self {
        self.shift(1, 0)
    }

    /// Target of `∂̄`.
    pub fn delbar_target(self) -> Self {
        self.shift(0, 1)
    }

    /// `(q, p)`, the bidegree related by conjugation.
    pub fn mirror(self) -> Self {
        Bidegree::new(self.q, self.p)
    }

    /// `(n-p, n-q)`, the bidegree related by Serre-type duality.
    pub fn dual(self, n: usize) -> Self {
        Bidegree::new(n as i32 - self.p, n as i32 - self.q)
    }

    /// Ordering along anti-diagonals: total degree first, then `p`.
    pub fn diagonal_key(self) -> (i32, i32) {
        (self.total(), self.p)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for Bidegree {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (p, q) = s.split_once(',').ok_or_else(|| format!("bidegree {s:?} is not of the form \"p,q\""))?;
        let p = p.trim().parse().map_err(|_| format!("bad p in bidegree {s:?}"))?;
        let q = q.trim().parse().map_err(|_| format!("bad q in bidegree {s:?}"))?;
        Ok(Bidegree::new(p, q))
    }
}

/// Which of the two differentials.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Differential {
    #[serde(rename = "del")]
    Del,
    #[serde(rename = "delbar")]
    Delbar,
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Differential::Del => "del",
            Differential::Delbar => "delbar",
        })
    }
}

/// A failed structural identity, located at the source bidegree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    Shape { bidegree: Bidegree, map: Differential, expected: (usize, usize), found: (usize, usize) },
    OutsideSupport { bidegree: Bidegree, n: usize },
    DelSquared(Bidegree),
    DelbarSquared(Bidegree),
    Anticommutation(Bidegree),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { bidegree, map, expected, found } => write!(
                f,
                "{map} at ({bidegree}): expected a {}x{} block, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Violation::OutsideSupport { bidegree, n } => {
                write!(f, "space at ({bidegree}) lies outside [0,{n}]^2")
            }
            Violation::DelSquared(b) => write!(f, "del o del != 0 at ({b})"),
            Violation::DelbarSquared(b) => write!(f, "delbar o delbar != 0 at ({b})"),
            Violation::Anticommutation(b) => write!(f, "del delbar + delbar del != 0 at ({b})"),
        }
    }
}

/// Exterior algebra on holomorphic generators `ω^1..ω^n` and their conjugates,
/// with monomial bases. A monomial is a bit mask: bit `i-1` is `ω^i`, bit
/// `n+i-1` is `ω̄^i`; products pick up the sign of the merge permutation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductStructure {
    n: usize,
    basis: BTreeMap<Bidegree, Vec<u64>>,
    index: HashMap<u64, (Bidegree, usize)>,
    fundamental: Vec<Scalar>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl ProductStructure {
    /// The exterior algebra with `A^{p,q}` spanned by `ω^I ∧ ω̄^J`, `|I| = p`,
    /// `|J| = q`, ordered lexicographically in `(I, J)`. The fundamental-class
    /// functional reads the coefficient of `ω^1…ω^n ω̄^1…ω̄^n`.
    pub fn exterior(n: usize) -> Self {
        assert!(n <= 31, "too many generators");
        let mut basis = BTreeMap::new();
        let mut index = HashMap::new();
        for p in 0..=n {
            let hol = combinations(n, p);
            for q in 0..=n {
                let anti = combinations(n, q);
                let b = Bidegree::new(p as i32, q as i32);
                let mut masks = Vec::with_capacity(hol.len() * anti.len());
                for i in &hol {
                    for j in &anti {
                        let mask =
                            i.iter().fold(0u64, |m, &x| m | 1 << x) | j.iter().fold(0u64, |m, &x| m | 1 << (n + x));
                        index.insert(mask, (b, masks.len()));
                        masks.push(mask);
                    }
                }
                basis.insert(b, masks);
            }
        }
        ProductStructure { n, basis, index, fundamental: vec![Scalar::one()] }
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self, b: Bidegree) -> &[u64] {
        self.basis.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn locate(&self, mask: u64) -> Option<(Bidegree, usize)> {
        self.index.get(&mask).copied()
    }

    pub fn top(&self) -> Bidegree {
        Bidegree::new(self.n as i32, self.n as i32)
    }

    pub fn fundamental_class(&self) -> &[Scalar] {
        &self.fundamental
    }

    pub fn unit(&self) -> (Bidegree, Vec<Scalar>) {
        (Bidegree::new(0, 0), vec![Scalar::one()])
    }

    /// Sign and mask of `a ∧ b`, or `None` when they share a generator.
    pub fn monomial_product(a: u64, b: u64) -> Option<(i64, u64)> {
        if a & b != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = b;
        while rest != 0 {
            let bit = rest.trailing_zeros();
            swaps += (a >> (bit + 1)).count_ones();
            rest &= rest - 1;
        }
        Some((if swaps.is_multiple_of(2) { 1 } else { -1 }, a | b))
    }

    /// `x ∧ y` for `x ∈ A^{b1}`, `y ∈ A^{b2}`, as a vector in `A^{b1+b2}`.
    pub fn multiply(&self, b1: Bidegree, x: &[Scalar], b2: Bidegree, y: &[Scalar]) -> Vec<Scalar> {
        let target = b1.shift(b2.p, b2.q);
        let mut out = vec![Scalar::zero(); self.basis(target).len()];
        for (xi, &ma) in x.iter().zip(self.basis(b1)) {
            if xi.is_zero() {
                continue;
            }
            for (yj, &mb) in y.iter().zip(self.basis(b2)) {
                if yj.is_zero() {
                    continue;
                }
                if let Some((sign, m)) = Self::monomial_product(ma, mb) {
                    let (_, k) = self.index[&m];
                    let term = xi * yj;
                    if sign > 0 {
                        out[k] += &term;
                    } else {
                        out[k] -= &term;
                    }
                }
            }
        }
        out
    }

    /// `∫ x`: the fundamental-class functional, zero outside the top bidegree.
    pub fn integrate(&self, b: Bidegree, x: &[Scalar]) -> Scalar {
        if b != self.top() {
            return Scalar::zero();
        }
        let mut acc = Scalar::zero();
        for (a, f) in x.iter().zip(&self.fundamental) {
            acc += &(a * f);
        }
        acc
    }
}

/// Antilinear involution `x ↦ C_{p,q} · x̄` from `A^{p,q}` to `A^{q,p}`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConjugationStructure {
    maps: BTreeMap<Bidegree, Matrix>,
}

impl ConjugationStructure {
    pub fn new(maps: BTreeMap<Bidegree, Matrix>) -> Self {
        ConjugationStructure { maps }
    }

    pub fn get(&self, b: Bidegree) -> Option<&Matrix> {
        self.maps.get(&b)
    }

    pub fn maps(&self) -> &BTreeMap<Bidegree, Matrix> {
        &self.maps
    }

    pub fn with_block(mut self, b: Bidegree, m: Matrix) -> Self {
        self.maps.insert(b, m);
        self
    }

    /// Applies the antilinear map to `x ∈ A^b`.
    pub fn apply(&self, b: Bidegree, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let xbar: Vec<Scalar> = x.iter().map(Scalar::conj).collect();
        self.maps.get(&b).map(|c| c.mul_vec(&xbar))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bicomplex {
    label: String,
    n: Option<usize>,
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, Matrix>,
    delbar: BTreeMap<Bidegree, Matrix>,
    product: Option<ProductStructure>,
    conj: Option<ConjugationStructure>,
}

impl Bicomplex {
    /// Builds a complex from its spaces and nonzero differential blocks, keyed
    /// by source bidegree. Absent blocks are zero. Blocks whose shape does not
    /// match the spaces are rejected with one violation per block.
    pub fn new(
        label: impl Into<String>,
        n: Option<usize>,
        dims: BTreeMap<Bidegree, usize>,
        del: BTreeMap<Bidegree, Matrix>,
        delbar: BTreeMap<Bidegree, Matrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<Bidegree, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |b: &Bidegree| dims.get(b).copied().unwrap_or(0);
        let mut violations = Vec::new();
        let mut check = |map: Differential, blocks: BTreeMap<Bidegree, Matrix>, shift: (i32, i32)| {
            let mut kept = BTreeMap::new();
            for (b, m) in blocks {
                let expected = (dim(&b.shift(shift.0, shift.1)), dim(&b));
                if m.shape() != expected {
                    violations.push(Violation::Shape { bidegree: b, map, expected, found: m.shape() });
                } else if !m.is_zero() {
                    kept.insert(b, m);
                }
            }
            kept
        };
        let del = check(Differential::Del, del, (1, 0));
        let delbar = check(Differential::Delbar, delbar, (0, 1));
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(Bicomplex { label: label.into(), n, dims, del, delbar, product: None, conj: None })
    }

    /// The zero complex.
    pub fn empty(label: impl Into<String>) -> Self {
        Bicomplex::new(label, None, BTreeMap::new(), BTreeMap::new(), BTreeMap::new()).expect("empty complex")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn complex_dim(&self) -> Option<usize> {
        self.n
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.dims.get(&b).copied().unwrap_or(0)
    }

    /// Bidegrees with nonzero spaces, in `(p, q)` order.
    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// `(p_min, p_max, q_min, q_max)` of the support.
    pub fn bounds(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.support();
        let first = it.next()?;
        Some(it.fold((first.p, first.p, first.q, first.q), |(a, b, c, d), x| {
            (a.min(x.p), b.max(x.p), c.min(x.q), d.max(x.q))
        }))
    }

    pub fn total_degrees(&self) -> Option<(i32, i32)> {
        let lo = self.support().map(Bidegree::total).min()?;
        let hi = self.support().map(Bidegree::total).max()?;
        Some((lo, hi))
    }

    /// True when `n` is declared and the support lies in `[0,n]²`.
    pub fn has_manifold_support(&self) -> bool {
        match self.n {
            Some(n) => self.support().all(|b| b.p >= 0 && b.q >= 0 && b.p <= n as i32 && b.q <= n as i32),
            None => false,
        }
    }

    fn block<'a>(&'a self, map: &'a BTreeMap<Bidegree, Matrix>, b: Bidegree, target: Bidegree) -> Cow<'a, Matrix> {
        match map.get(&b) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim(target), self.dim(b))),
        }
    }

    /// `∂: A^{p,q} → A^{p+1,q}`.
    pub fn del(&self, b: Bidegree) -> Cow<'_, Matrix> {
        self.block(&self.del, b, b.del_target())
    }

    /// `∂̄: A^{p,q} → A^{p,q+1}`.
    pub fn delbar(&self, b: Bidegree) -> Cow<'_, Matrix> {
        self.block(&self.delbar, b, b.delbar_target())
    }

    /// `∂∂̄: A^{p,q} → A^{p+1,q+1}`.
    pub fn del_delbar(&self, b: Bidegree) -> Matrix {
        self.del(b.delbar_target()).mul(&self.delbar(b))
    }

    pub fn differential(&self, which: Differential, b: Bidegree) -> Cow<'_, Matrix> {
        match which {
            Differential::Del => self.del(b),
            Differential::Delbar => self.delbar(b),
        }
    }

    /// Nonzero blocks of one differential, keyed by source bidegree.
    pub fn blocks(&self, which: Differential) -> &BTreeMap<Bidegree, Matrix> {
        match which {
            Differential::Del => &self.del,
            Differential::Delbar => &self.delbar,
        }
    }

    pub fn product(&self) -> Option<&ProductStructure> {
        self.product.as_ref()
    }

    pub fn conjugation(&self) -> Option<&ConjugationStructure> {
        self.conj.as_ref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_complex_dim(mut self, n: Option<usize>) -> Self {
        self.n = n;
        self
    }

    pub fn with_product(mut self, product: ProductStructure) -> Self {
        self.product = Some(product);
        self
    }

    pub fn with_conjugation(mut self, conj: ConjugationStructure) -> Self {
        self.conj = Some(conj);
        self
    }

    /// Replaces one differential block, keeping everything else.
    pub fn with_block(self, which: Differential, b: Bidegree, m: Matrix) -> Result<Self> {
        let Bicomplex { label, n, dims, mut del, mut delbar, product, conj } = self;
        match which {
            Differential::Del => del.insert(b, m),
            Differential::Delbar => delbar.insert(b, m),
        };
        let mut out = Bicomplex::new(label, n, dims, del, delbar)?;
        out.product = product;
        out.conj = conj;
        Ok(out)
    }

    /// Lists every failed identity: `∂² = 0`, `∂̄² = 0`, `∂∂̄ + ∂̄∂ = 0`, and
    /// the `[0,n]²` support bound when `n` is declared. Block shapes are
    /// checked at construction.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Some(n) = self.n {
            for b in self.support() {
                if b.p < 0 || b.q < 0 || b.p > n as i32 || b.q > n as i32 {
                    out.push(Violation::OutsideSupport { bidegree: b, n });
                }
            }
        }
        for b in self.support() {
            let dd = self.del(b.del_target()).mul(&self.del(b));
            if !dd.is_zero() {
                out.push(Violation::DelSquared(b));
            }
            let bb = self.delbar(b.delbar_target()).mul(&self.delbar(b));
            if !bb.is_zero() {
                out.push(Violation::DelbarSquared(b));
            }
            let mixed = self.del_delbar(b).add(&self.delbar(b.del_target()).mul(&self.del(b)));
            if !mixed.is_zero() {
                out.push(Violation::Anticommutation(b));
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// The total complex `(⊕_{p+q=k} A^{p,q}, ∂ + ∂̄)`.
    pub fn totalize(&self) -> Result<TotalComplex> {
        self.ensure_valid()?;
        Ok(TotalComplex::build(self))
    }

    /// Checks that the conjugation is an antilinear involution exchanging `∂`
    /// and `∂̄`: `C_{q,p} · conj(C_{p,q}) = I` and
    /// `C_{p+1,q} · conj(∂) = ∂̄ · C_{p,q}` (and the same with roles swapped).
    pub fn check_real_structure(&self) -> Result<bool> {
        let conj = self.conj.as_ref().ok_or(Error::StructureAbsent("conjugation"))?;
        let block = |b: Bidegree| -> Option<Cow<'_, Matrix>> {
            match conj.get(b) {
                Some(m) if m.shape() == (self.dim(b.mirror()), self.dim(b)) => Some(Cow::Borrowed(m)),
                Some(_) => None,
                None if self.dim(b) == 0 && self.dim(b.mirror()) == 0 => Some(Cow::Owned(Matrix::zeros(0, 0))),
                None => None,
            }
        };
        for b in self.support() {
            if self.dim(b) != self.dim(b.mirror()) {
                return Ok(false);
            }
        }
        for b in self.support() {
            let (Some(c), Some(c_back)) = (block(b), block(b.mirror())) else {
                return Ok(false);
            };
            if c_back.mul(&c.conj()) != Matrix::identity(self.dim(b)) {
                return Ok(false);
            }
            let m = b.mirror();
            let (Some(c_del), Some(c_delbar)) = (block(b.del_target()), block(b.delbar_target())) else {
                return Ok(false);
            };
            if c_del.mul(&self.del(b).conj()) != self.delbar(m).mul(&c) {
                return Ok(false);
            }
            if c_delbar.mul(&self.delbar(b).conj()) != self.del(m).mul(&c) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One bidegree's slot inside a total-degree space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Block {
    pub bidegree: Bidegree,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TotalDegree {
    pub blocks: Vec<Block>,
    pub dim: usize,
}

/// Single-graded complex with `d = ∂ + ∂̄`; coordinates within a degree are
/// ordered by ascending `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TotalComplex {
    degrees: BTreeMap<i32, TotalDegree>,
    d: BTreeMap<i32, Matrix>,
}

impl TotalComplex {
    fn build(k: &Bicomplex) -> Self {
        let mut degrees: BTreeMap<i32, TotalDegree> = BTreeMap::new();
        for b in k.support() {
            let deg = degrees.entry(b.total()).or_default();
            deg.blocks.push(Block { bidegree: b, offset: 0, dim: k.dim(b) });
        }
        for deg in degrees.values_mut() {
            deg.blocks.sort_by_key(|blk| blk.bidegree.p);
            let mut off = 0;
            for blk in &mut deg.blocks {
                blk.offset = off;
                off += blk.dim;
            }
            deg.dim = off;
        }
        let mut d = BTreeMap::new();
        for (&t, deg) in &degrees {
            let Some(next) = degrees.get(&(t + 1)) else { continue };
            let mut m = Matrix::zeros(next.dim, deg.dim);
            for blk in &deg.blocks {
                for (map, target) in [
                    (k.del(blk.bidegree), blk.bidegree.del_target()),
                    (k.delbar(blk.bidegree), blk.bidegree.delbar_target()),
                ] {
                    let Some(tb) = next.blocks.iter().find(|x| x.bidegree == target) else { continue };
                    for r in 0..tb.dim {
                        for c in 0..blk.dim {
                            m[(tb.offset + r, blk.offset + c)] = map[(r, c)].clone();
                        }
                    }
                }
            }
            d.insert(t, m);
        }
        TotalComplex { degrees, d }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.degrees.keys().copied()
    }

    pub fn degree(&self, k: i32) -> Cow<'_, TotalDegree> {
        match self.degrees.get(&k) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(TotalDegree::default()),
        }
    }

    pub fn dim(&self, k: i32) -> usize {
        self.degrees.get(&k).map_or(0, |d| d.dim)
    }

    /// `d_k : A^k → A^{k+1}`.
    pub fn d(&self, k: i32) -> Cow<'_, Matrix> {
        match self.d.get(&k) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(self.dim(k + 1), self.dim(k))),
        }
    }

    /// Embeds `x ∈ A^b` into the total space of degree `p + q`.
    pub fn embed(&self, b: Bidegree, x: &[Scalar]) -> Vec<Scalar> {
        let deg = self.degree(b.total());
        let mut out = vec![Scalar::zero(); deg.dim];
        if let Some(blk) = deg.blocks.iter().find(|blk| blk.bidegree == b) {
            out[blk.offset..blk.offset + blk.dim].clone_from_slice(x);
        }
        out
    }

    /// The `A^b` component of a total-degree vector.
    pub fn project(&self, b: Bidegree, x: &[Scalar]) -> Vec<Scalar> {
        let deg = self.degree(b.total());
        match deg.blocks.iter().find(|blk| blk.bidegree == b) {
            Some(blk) => x[blk.offset..blk.offset + blk.dim].to_vec(),
            None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bd(p: i32, q: i32) -> Bidegree {
        Bidegree::new(p, q)
    }

    fn one() -> Matrix {
        Matrix::identity(1)
    }

    /// Square anchored at (0,0) with `∂̄` on the right edge carrying the sign.
    fn square() -> Bicomplex {
        let dims = [(bd(0, 0), 1), (bd(1, 0), 1), (bd(0, 1), 1), (bd(1, 1), 1)].into_iter().collect();
        let del = [(bd(0, 0), one()), (bd(0, 1), one())].into_iter().collect();
        let delbar = [(bd(0, 0), one()), (bd(1, 0), one().neg())].into_iter().collect();
        Bicomplex::new("square", None, dims, del, delbar).unwrap()
    }

    #[test]
    fn dot_totalizes_to_a_line() {
        let k = Bicomplex::new("dot", None, [(bd(0, 0), 1)].into_iter().collect(), BTreeMap::new(), BTreeMap::new())
            .unwrap();
        assert!(k.validate().is_empty());
        let t = k.totalize().unwrap();
        assert_eq!(t.dim(0), 1);
        assert!(t.d(0).is_zero());
    }

    #[test]
    fn square_totalizes_exactly() {
        let k = square();
        assert!(k.validate().is_empty());
        let t = k.totalize().unwrap();
        assert_eq!((t.dim(0), t.dim(1), t.dim(2)), (1, 2, 1));
        assert_eq!(t.d(0).rank(), 1);
        assert_eq!(t.d(1).rank(), 1);
        assert!(t.d(1).mul(&t.d(0)).is_zero());
    }

    #[test]
    fn commuting_square_is_rejected() {
        let k = square().with_block(Differential::Delbar, bd(1, 0), one()).unwrap();
        assert_eq!(k.validate(), vec![Violation::Anticommutation(bd(0, 0))]);
        assert!(matches!(k.totalize(), Err(Error::Invalid(_))));
    }

    #[test]
    fn shape_errors_name_the_bidegree() {
        let dims = [(bd(0, 0), 2), (bd(1, 0), 3)].into_iter().collect();
        let del = [(bd(0, 0), Matrix::zeros(2, 3))].into_iter().collect();
        let err = Bicomplex::new("bad", None, dims, del, BTreeMap::new()).unwrap_err();
        match err {
            Error::Invalid(v) => assert_eq!(
                v,
                vec![Violation::Shape { bidegree: bd(0, 0), map: Differential::Del, expected: (3, 2), found: (2, 3) }]
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monomial_signs() {
        // ω1 ∧ ω2 = +, ω2 ∧ ω1 = -
        assert_eq!(ProductStructure::monomial_product(0b01, 0b10), Some((1, 0b11)));
        assert_eq!(ProductStructure::monomial_product(0b10, 0b01), Some((-1, 0b11)));
        assert_eq!(ProductStructure::monomial_product(0b10, 0b10), None);
        // (ω1∧ω3) ∧ ω2 = -ω1∧ω2∧ω3
        assert_eq!(ProductStructure::monomial_product(0b101, 0b010), Some((-1, 0b111)));
    }

    #[test]
    fn exterior_dims_are_binomial() {
        let p = ProductStructure::exterior(3);
        assert_eq!(p.basis(bd(1, 2)).len(), 9);
        assert_eq!(p.basis(bd(3, 3)).len(), 1);
        let total: usize =
            (0..=3).flat_map(|a| (0..=3).map(move |b| (a, b))).map(|(a, b)| p.basis(bd(a, b)).len()).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn bidegree_text() {
        assert_eq!("2, -1".parse::<Bidegree>().unwrap(), bd(2, -1));
        assert_eq!(bd(1, 2).to_string(), "1,2");
        assert!("12".parse::<Bidegree>().is_err());
    }
}

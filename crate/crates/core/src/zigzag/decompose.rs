//! Decomposition into squares and zigzags.
//!
//! Squares come first: at each bidegree `b` a complement `S_b` of
//! `ker ∂∂̄` generates squares `s, ∂s, ∂̄s, ∂∂̄s`; their span `Sq` is a
//! subcomplex, and the kernel of a chain retraction onto it is a
//! complementary subcomplex `C` on which `∂∂̄ = 0`. On `C`, split each space
//! as `Z ⊕ U` with `Z = ker ∂ ∩ ker ∂̄`; then `∂` and `∂̄` map `U` into `Z`,
//! and for each pair of anti-diagonals `(k, k+1)` the spaces
//! `… Z_{p,k+1-p} ← U_{p,k-p} → Z_{p+1,k-p} ← …` form a zigzag-shaped
//! quiver representation. Its interval decomposition gives the zigzags.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::synth::layout;
use super::{synthesize, Indecomposable};
use crate::bicomplex::{Bicomplex, Bidegree};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, standard_complement, Matrix, Scalar, Subspace};

/// Parts in canonical order plus, per bidegree, the matrix whose columns
/// are the adapted basis vectors in the input basis, ordered by part.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Indecomposable>,
    #[serde(skip)]
    pub basis_change: BTreeMap<Bidegree, Matrix>,
}

impl Decomposition {
    pub fn squares(&self) -> usize {
        self.parts.iter().filter(|p| p.is_square()).count()
    }

    pub fn zigzags(&self) -> impl Iterator<Item = &Indecomposable> {
        self.parts.iter().filter(|p| !p.is_square())
    }

    /// True when every part is a square or a dot.
    pub fn squares_and_dots_only(&self) -> bool {
        self.parts.iter().all(|p| p.is_square() || p.is_dot())
    }
}

/// Checks that the parts account for every dimension and that the basis
/// change conjugates `∂` and `∂̄` into the normal form of the parts.
pub fn verify_decomposition(d: &Decomposition, k: &Bicomplex) -> bool {
    if d.parts.iter().any(|p| p.validate().is_err()) {
        return false;
    }
    let Ok(normal) = synthesize(&d.parts, None) else { return false };
    if normal.dims() != k.dims() {
        return false;
    }
    if d.basis_change.keys().any(|b| k.dim(*b) == 0) {
        return false;
    }
    let p = |b: Bidegree| -> Option<Matrix> {
        match d.basis_change.get(&b) {
            Some(m) if m.shape() == (k.dim(b), k.dim(b)) => Some(m.clone()),
            Some(_) => None,
            None if k.dim(b) == 0 => Some(Matrix::zeros(0, 0)),
            None => None,
        }
    };
    for b in k.support() {
        let Some(pb) = p(b) else { return false };
        if !pb.is_invertible() {
            return false;
        }
        for (target, ours, theirs) in
            [(b.del_target(), k.del(b), normal.del(b)), (b.delbar_target(), k.delbar(b), normal.delbar(b))]
        {
            let Some(pt) = p(target) else { return false };
            if ours.mul(&pb) != pt.mul(&theirs) {
                return false;
            }
        }
    }
    true
}

/// A basis vector of some bidegree in input coordinates.
type Vector = Vec<Scalar>;

struct Squares {
    /// `(anchor, [s, ∂s, ∂̄s, ∂∂̄s])` in ambient coordinates.
    found: Vec<(Bidegree, [Vector; 4])>,
    /// Basis of the complementary subcomplex, per bidegree.
    complement: BTreeMap<Bidegree, Subspace>,
}

fn unit(n: usize, i: usize) -> Vector {
    let mut e = vec![Scalar::zero(); n];
    e[i] = Scalar::one();
    e
}

fn split_squares(k: &Bicomplex) -> Result<Squares> {
    let mut found = Vec::new();
    for b in k.support() {
        let m = k.del_delbar(b);
        if m.is_zero() {
            continue;
        }
        let complement = standard_complement(&kernel_basis(&m));
        let top = b.delbar_target();
        for s in complement.columns() {
            let a = k.del(b).mul_vec(&s);
            let bb = k.delbar(b).mul_vec(&s);
            let t = k.del(top).mul_vec(&bb);
            found.push((b, [s, a, bb, t]));
        }
    }

    // Corners of squares per bidegree; `top[c]` lists the indices of the
    // `∂∂̄s` corners lying at `c` within `corners[c]`.
    let mut corners: BTreeMap<Bidegree, Vec<Vector>> = BTreeMap::new();
    let mut tops: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
    for (anchor, vs) in &found {
        for (i, (dp, dq)) in [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().enumerate() {
            let c = anchor.shift(dp, dq);
            let list = corners.entry(c).or_default();
            if i == 3 {
                tops.entry(c).or_default().push(list.len());
            }
            list.push(vs[i].clone());
        }
    }

    // Φ^c: coordinate functionals of the top corners at c, read from the
    // inverse of [corners | standard extension].
    let mut phi: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    for (c, vs) in &corners {
        let n = k.dim(*c);
        let span = Subspace::span_vectors(n, vs);
        if span.dim() != vs.len() {
            return Err(Error::Decomposition(format!("square corners at ({c}) are dependent")));
        }
        let ext = standard_complement(&span);
        let full = Matrix::from_columns(n, vs).hstack(&ext);
        let inv = full.inverse().ok_or_else(|| Error::Decomposition(format!("no basis at ({c})")))?;
        if let Some(rows) = tops.get(c) {
            phi.insert(*c, inv.select_rows(rows));
        }
    }

    let mut complement = BTreeMap::new();
    for b in k.support() {
        let n = k.dim(b);
        let functional = |c: Bidegree| phi.get(&c).cloned().unwrap_or_else(|| Matrix::zeros(0, k.dim(c)));
        let conditions = functional(b.shift(1, 1))
            .mul(&k.del_delbar(b))
            .vstack(&functional(b.delbar_target()).mul(&k.delbar(b)))
            .vstack(&functional(b.del_target()).mul(&k.del(b)))
            .vstack(&functional(b));
        let c = kernel_basis(&conditions);
        let sq = corners.get(&b).map_or(0, Vec::len);
        if c.dim() + sq != n {
            return Err(Error::Decomposition(format!("square complement at ({b}) has the wrong dimension")));
        }
        complement.insert(b, c);
    }
    Ok(Squares { found, complement })
}

/// Key deciding which retroactive basis changes keep a prefix decomposition
/// valid: interval `l` may be added into interval `i` iff `key(l) >= key(i)`.
fn birth_key(start: usize, forward_born: bool) -> (u8, i64) {
    if forward_born {
        (0, -(start as i64))
    } else {
        (1, start as i64)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Edge {
    /// `f: V_j → V_{j+1}`
    Forward,
    /// `h: V_{j+1} → V_j`
    Backward,
}

struct Interval {
    start: usize,
    key: (u8, i64),
    /// Vector at nodes `start, start+1, …`.
    vectors: Vec<Vector>,
}

impl Interval {
    fn at(&self, node: usize) -> &Vector {
        &self.vectors[node - self.start]
    }
}

fn axpy(y: &mut Vector, c: &Scalar, x: &Vector) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

/// `target += c · source` on every node both intervals share, which for two
/// intervals alive at `node` is `max(start)..=node`.
fn add_into(
    intervals: &mut [Interval],
    target: usize,
    source: &[Vector],
    source_start: usize,
    c: &Scalar,
    node: usize,
) {
    let t = &mut intervals[target];
    let from = t.start.max(source_start);
    for j in from..=node {
        let x = &source[j - source_start];
        let slot = &mut t.vectors[j - t.start];
        axpy(slot, c, x);
    }
}

fn first_nonzero(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Interval decomposition of a representation of a zigzag quiver with node
/// dimensions `dims` and edge maps `maps[j]` between nodes `j` and `j+1`.
/// Returns `(start, vectors)` per interval.
fn interval_decomposition(dims: &[usize], edges: &[(Edge, Matrix)]) -> Result<Vec<(usize, Vec<Vector>)>> {
    let mut intervals: Vec<Interval> = Vec::new();
    let mut alive: Vec<usize> = Vec::new();
    if dims.is_empty() {
        return Ok(Vec::new());
    }
    for i in 0..dims[0] {
        alive.push(intervals.len());
        intervals.push(Interval { start: 0, key: birth_key(0, false), vectors: vec![unit(dims[0], i)] });
    }
    for (j, (edge, map)) in edges.iter().enumerate() {
        let next_dim = dims[j + 1];
        let mut survivors = Vec::new();
        match edge {
            Edge::Forward => {
                let mut order = alive.clone();
                order.sort_by(|a, b| intervals[*b].key.cmp(&intervals[*a].key).then(a.cmp(b)));
                // pivot row → (interval, reduced image)
                let mut pivots: BTreeMap<usize, (usize, Vector)> = BTreeMap::new();
                for &i in &order {
                    let mut y = map.mul_vec(intervals[i].at(j));
                    while let Some(r) = first_nonzero(&y) {
                        let Some((l, yl)) = pivots.get(&r) else { break };
                        let c = -(&y[r] * &yl[r].inv().expect("pivot"));
                        axpy(&mut y, &c, yl);
                        let (l, snapshot) = (*l, intervals[*l].vectors.clone());
                        let start = intervals[l].start;
                        add_into(&mut intervals, i, &snapshot, start, &c, j);
                    }
                    if let Some(r) = first_nonzero(&y) {
                        pivots.insert(r, (i, y.clone()));
                        intervals[i].vectors.push(y);
                        survivors.push(i);
                    }
                }
                let images: Vec<Vector> = pivots.values().map(|(_, y)| y.clone()).collect();
                let span = Subspace::span_vectors(next_dim, &images);
                for e in standard_complement(&span).columns() {
                    survivors.push(intervals.len());
                    intervals.push(Interval { start: j + 1, key: birth_key(j + 1, true), vectors: vec![e] });
                }
            }
            Edge::Backward => {
                let mut order = alive.clone();
                order.sort_by(|a, b| intervals[*a].key.cmp(&intervals[*b].key).then(a.cmp(b)));
                let basis = Matrix::from_columns(
                    dims[j],
                    &order.iter().map(|&i| intervals[i].at(j).clone()).collect::<Vec<_>>(),
                );
                let inv =
                    basis.inverse().ok_or_else(|| Error::Decomposition("alive vectors are not a basis".into()))?;
                // image of h in coordinates of the alive basis, rows = generators
                let coords = inv.mul(map);
                let ech = coords.transpose().rref();
                let snapshot: Vec<(usize, Vec<Vector>)> =
                    order.iter().map(|&i| (intervals[i].start, intervals[i].vectors.clone())).collect();
                for (row, &pc) in ech.pivots.iter().enumerate() {
                    let target = order[pc];
                    for m in 0..order.len() {
                        if m == pc {
                            continue;
                        }
                        let u = &ech.matrix[(row, m)];
                        if u.is_zero() {
                            continue;
                        }
                        debug_assert!(intervals[order[m]].key >= intervals[target].key);
                        let (start, vectors) = &snapshot[m];
                        add_into(&mut intervals, target, vectors, *start, u, j);
                    }
                    let image = intervals[target].at(j).clone();
                    let pre = map.solve(&image).ok_or_else(|| Error::Decomposition("lost a preimage".into()))?;
                    intervals[target].vectors.push(pre);
                    survivors.push(target);
                }
                for e in kernel_basis(map).basis().columns() {
                    survivors.push(intervals.len());
                    intervals.push(Interval { start: j + 1, key: birth_key(j + 1, false), vectors: vec![e] });
                }
            }
        }
        alive = survivors;
    }
    Ok(intervals.into_iter().map(|iv| (iv.start, iv.vectors)).collect())
}

/// Coordinates of `∂`, `∂̄` restricted to the complement, in its bases.
struct Residual<'a> {
    k: &'a Bicomplex,
    c: &'a BTreeMap<Bidegree, Subspace>,
}

impl Residual<'_> {
    fn dim(&self, b: Bidegree) -> usize {
        self.c.get(&b).map_or(0, Subspace::dim)
    }

    /// Matrix of `m: A^b → A^t` restricted to `C^b → C^t`.
    fn restrict(&self, m: &Matrix, b: Bidegree, t: Bidegree) -> Result<Matrix> {
        let (Some(cb), tdim) = (self.c.get(&b), self.dim(t)) else {
            return Ok(Matrix::zeros(self.dim(t), 0));
        };
        let mut cols = Vec::with_capacity(cb.dim());
        for v in cb.basis().columns() {
            let image = m.mul_vec(&v);
            let coords = match self.c.get(&t) {
                Some(ct) => ct.coordinates(&image),
                None if image.iter().all(Scalar::is_zero) => Some(Vec::new()),
                None => None,
            };
            cols.push(coords.ok_or_else(|| Error::Decomposition(format!("complement is not closed at ({b})")))?);
        }
        Ok(Matrix::from_columns(tdim, &cols))
    }

    fn del(&self, b: Bidegree) -> Result<Matrix> {
        self.restrict(&self.k.del(b), b, b.del_target())
    }

    fn delbar(&self, b: Bidegree) -> Result<Matrix> {
        self.restrict(&self.k.delbar(b), b, b.delbar_target())
    }
}

/// Per bidegree of the residual complex: `Z = ker ∂ ∩ ker ∂̄` and a
/// complement `U`, both in residual coordinates.
struct Split {
    z: Subspace,
    u: Matrix,
    del: Matrix,
    delbar: Matrix,
}

pub fn decompose(k: &Bicomplex) -> Result<Decomposition> {
    k.ensure_valid()?;
    let squares = split_squares(k)?;
    let residual = Residual { k, c: &squares.complement };

    let mut split: BTreeMap<Bidegree, Split> = BTreeMap::new();
    for b in k.support() {
        let del = residual.del(b)?;
        let delbar = residual.delbar(b)?;
        let z = kernel_basis(&del.vstack(&delbar));
        let u = standard_complement(&z);
        split.insert(b, Split { z, u, del, delbar });
    }

    let mut parts: Vec<(Indecomposable, Vec<(Bidegree, Vector)>)> = Vec::new();
    for (anchor, vs) in squares.found {
        let placed = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .into_iter()
            .zip(vs)
            .map(|((dp, dq), v)| (anchor.shift(dp, dq), v))
            .collect();
        parts.push((Indecomposable::square(anchor), placed));
    }

    let Some((pmin, pmax, _, _)) = k.bounds() else {
        return Ok(Decomposition { parts: Vec::new(), basis_change: BTreeMap::new() });
    };
    let (kmin, kmax) = k.total_degrees().expect("nonempty");
    let to_ambient =
        |b: Bidegree, residual_coords: &[Scalar]| -> Vector { squares.complement[&b].basis().mul_vec(residual_coords) };
    for diag in (kmin - 1)..=kmax {
        // nodes W_p = Z at (p, diag+1-p), V_p = U at (p, diag-p)
        let mut nodes: Vec<(Bidegree, bool)> = Vec::new();
        for p in pmin..=pmax + 1 {
            nodes.push((Bidegree::new(p, diag + 1 - p), true));
            nodes.push((Bidegree::new(p, diag - p), false));
        }
        let node_dim = |&(b, is_z): &(Bidegree, bool)| -> usize {
            split.get(&b).map_or(0, |s| if is_z { s.z.dim() } else { s.u.cols() })
        };
        let dims: Vec<usize> = nodes.iter().map(node_dim).collect();
        if dims.iter().all(|&d| d == 0) {
            continue;
        }
        let mut edges = Vec::new();
        for j in 0..nodes.len() - 1 {
            let (w, v, edge, is_delbar) = if nodes[j].1 {
                (nodes[j].0, nodes[j + 1].0, Edge::Backward, true)
            } else {
                (nodes[j + 1].0, nodes[j].0, Edge::Forward, false)
            };
            let map = match (split.get(&v), split.get(&w)) {
                (Some(sv), Some(sw)) => {
                    let m = if is_delbar { &sv.delbar } else { &sv.del };
                    let images = m.mul(&sv.u);
                    let cols: Option<Vec<Vector>> = images.columns().iter().map(|c| sw.z.coordinates(c)).collect();
                    let cols = cols.ok_or_else(|| Error::Decomposition(format!("image of U at ({v}) leaves Z")))?;
                    Matrix::from_columns(sw.z.dim(), &cols)
                }
                _ => Matrix::zeros(node_dim(&(w, true)), node_dim(&(v, false))),
            };
            edges.push((edge, map));
        }
        for (start, vectors) in interval_decomposition(&dims, &edges)? {
            let mut dots = Vec::new();
            let mut placed = Vec::new();
            for (offset, v) in vectors.into_iter().enumerate() {
                let (b, is_z) = nodes[start + offset];
                let s = &split[&b];
                let residual_coords = if is_z { s.z.basis().mul_vec(&v) } else { s.u.mul_vec(&v) };
                dots.push(b);
                placed.push((b, to_ambient(b, &residual_coords)));
            }
            let part = Indecomposable::zigzag(dots.clone())?;
            if part.dots() != dots {
                placed.reverse();
            }
            parts.push((part, placed));
        }
    }

    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let just_parts: Vec<Indecomposable> = parts.iter().map(|(p, _)| p.clone()).collect();
    let (dims, slots) = layout(&just_parts);
    if &dims != k.dims() {
        return Err(Error::Decomposition("parts do not account for every dimension".into()));
    }
    let mut columns: BTreeMap<Bidegree, Vec<Option<Vector>>> = dims.iter().map(|(b, &d)| (*b, vec![None; d])).collect();
    for ((_, placed), slot) in parts.into_iter().zip(&slots) {
        for ((b, v), &s) in placed.into_iter().zip(slot) {
            columns.get_mut(&b).expect("support")[s] = Some(v);
        }
    }
    let basis_change = columns
        .into_iter()
        .map(|(b, cols)| {
            let cols: Vec<Vector> = cols.into_iter().map(|c| c.expect("every slot filled")).collect();
            (b, Matrix::from_columns(k.dim(b), &cols))
        })
        .collect();
    let d = Decomposition { parts: just_parts, basis_change };
    if !verify_decomposition(&d, k) {
        return Err(Error::Decomposition(format!("adapted basis does not conjugate {} to normal form", k.label())));
    }
    Ok(d)
}

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `K^ambient`, stored by its reduced column echelon
/// basis: each column has a leading 1 in its pivot row, pivot rows increase
/// left to right, and every other column vanishes on those pivot rows.
/// That form is unique, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivot_rows: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(ambient, 0), pivot_rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivot_rows: (0..ambient).collect() }
    }

    /// Span of the columns of `m`.
    pub fn span(m: &Matrix) -> Self {
        let ech = m.transpose().rref();
        let dim = ech.pivots.len();
        let basis = Matrix::from_fn(m.rows(), dim, |r, c| ech.matrix[(c, r)].clone());
        Subspace { ambient: m.rows(), basis, pivot_rows: ech.pivots }
    }

    pub fn span_vectors(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace::span(&Matrix::from_columns(ambient, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<Scalar> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        (self.basis.mul_vec(&coords) == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.columns().iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    /// `U ∩ V` read off the kernel of `[U | -V]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        let stacked = self.basis.hstack(&other.basis.neg());
        let kernel = kernel_vectors(&stacked);
        let d = self.dim();
        let vectors: Vec<Vec<Scalar>> = kernel.iter().map(|k| self.basis.mul_vec(&k[..d])).collect();
        Ok(Subspace::span_vectors(self.ambient, &vectors))
    }

    /// Columns extending a basis of `sub` to a basis of `self`, picked greedily
    /// from the canonical basis of `self`. These are the canonical quotient
    /// representatives of `self / sub`.
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Matrix> {
        self.check_ambient(sub)?;
        if !self.contains_subspace(sub) {
            return Err(Error::NotContained);
        }
        Ok(extend_basis(sub, &self.basis.columns()))
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::span(&m.mul(&self.basis))
    }
}

/// Greedily picks candidates that are independent modulo `sub`.
fn extend_basis(sub: &Subspace, candidates: &[Vec<Scalar>]) -> Matrix {
    let ambient = sub.ambient_dim();
    let mut current = sub.clone();
    let mut picked = Vec::new();
    for v in candidates {
        if current.dim() == ambient {
            break;
        }
        if !current.contains(v) {
            picked.push(v.clone());
            let mut cols = current.basis().columns();
            cols.push(v.clone());
            current = Subspace::span_vectors(ambient, &cols);
        }
    }
    Matrix::from_columns(ambient, &picked)
}

/// Complement of `sub` in the whole space using standard basis vectors.
pub(crate) fn standard_complement(sub: &Subspace) -> Matrix {
    let n = sub.ambient_dim();
    let pivots = sub.pivot_rows();
    let free: Vec<Vec<Scalar>> = (0..n)
        .filter(|r| !pivots.contains(r))
        .map(|r| {
            let mut e = vec![Scalar::zero(); n];
            e[r] = Scalar::one();
            e
        })
        .collect();
    Matrix::from_columns(n, &free)
}

/// Kernel basis read off the reduced row echelon form: one vector per free
/// column.
pub(crate) fn kernel_vectors(m: &Matrix) -> Vec<Vec<Scalar>> {
    let ech = m.rref();
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = -&ech.matrix[(r, f)];
            }
            v
        })
        .collect()
}

/// `dim U − dim W`, after checking `W ⊆ U`.
pub fn quotient_dim(u: &Subspace, w: &Subspace) -> Result<usize> {
    u.check_ambient(w)?;
    if !u.contains_subspace(w) {
        return Err(Error::NotContained);
    }
    Ok(u.dim() - w.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span_vectors(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.basis().column(0), v(&[1, 0, -1]));
    }

    #[test]
    fn sum_and_intersection() {
        let u = Subspace::span_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span_vectors(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(u.intersect(&w).unwrap(), Subspace::span_vectors(3, &[v(&[0, 1, 0])]));
        assert_eq!(u.sum(&w).unwrap(), Subspace::full(3));
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);

        let l1 = Subspace::span_vectors(2, &[v(&[1, 0])]);
        let l2 = Subspace::span_vectors(2, &[v(&[1, 1])]);
        assert_eq!(l1.sum(&l2).unwrap(), Subspace::full(2));
        assert_eq!(l1.intersect(&l2).unwrap().dim(), 0);

        assert!(matches!(u.sum(&Subspace::zero(2)), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn quotient_dimensions() {
        assert_eq!(quotient_dim(&Subspace::full(4), &Subspace::zero(4)).unwrap(), 4);
        let u = Subspace::span_vectors(5, &[v(&[1, 0, 0, 0, 0]), v(&[0, 1, 0, 0, 0]), v(&[0, 0, 1, 0, 0])]);
        let w = Subspace::span_vectors(5, &[v(&[1, 1, 0, 0, 0])]);
        assert_eq!(quotient_dim(&u, &u).unwrap(), 0);
        assert_eq!(quotient_dim(&u, &w).unwrap(), 2);
        let outside = Subspace::span_vectors(5, &[v(&[0, 0, 0, 0, 1])]);
        assert!(matches!(quotient_dim(&u, &outside), Err(Error::NotContained)));
    }

    #[test]
    fn complement_representatives() {
        let u = Subspace::full(3);
        let w = Subspace::span_vectors(3, &[v(&[1, 0, 0])]);
        let reps = u.complement_basis(&w).unwrap();
        assert_eq!(reps.cols(), 2);
        assert_eq!(Subspace::span(&w.basis().hstack(&reps)), Subspace::full(3));
    }
}

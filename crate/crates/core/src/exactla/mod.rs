//! Exact linear algebra over the Gaussian rationals ℚ(i).
//!
//! Everything here is a pure function of its inputs. Subspaces are kept in
//! reduced column echelon form, so two computations of the same subspace
//! produce identical bases regardless of how the input was ordered.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{Echelon, Matrix};
pub use scalar::Scalar;
pub(crate) use subspace::{kernel_vectors, standard_complement};
pub use subspace::{quotient_dim, Subspace};

use crate::error::Result;

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Kernel of `m` as a subspace of `K^cols`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    Subspace::span_vectors(m.cols(), &kernel_vectors(m))
}

/// Column space of `m` as a subspace of `K^rows`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

pub fn subspace_sum(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.sum(v)
}

pub fn subspace_intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-2i64..=2, -1i64..=1).prop_map(|(a, b)| Scalar::gaussian(a, b))
    }

    fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (0..=max, 0..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(small_scalar(), r * c)
                .prop_map(move |data| Matrix::from_fn(r, c, |i, j| data[i * c + j].clone()))
        })
    }

    fn subspace_pair(max_ambient: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
        (1..=max_ambient, 0..=4usize, 0..=4usize).prop_flat_map(|(n, a, b)| {
            (proptest::collection::vec(small_scalar(), n * a), proptest::collection::vec(small_scalar(), n * b))
                .prop_map(move |(x, y)| {
                    let u = Matrix::from_fn(n, a, |i, j| x[i * a + j].clone());
                    let w = Matrix::from_fn(n, b, |i, j| y[i * b + j].clone());
                    (Subspace::span(&u), Subspace::span(&w))
                })
        })
    }

    #[test]
    fn spec_examples() {
        let i = Scalar::i();
        let k = kernel_basis(&Matrix::zeros(3, 3));
        assert_eq!(k, Subspace::full(3));
        assert_eq!(kernel_basis(&Matrix::identity(2)).dim(), 0);

        // span{(-i, 1)}; the leading-1 normalisation stores it as (1, i)
        let m = Matrix::from_rows(vec![vec![Scalar::one(), i.clone()]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[-&i, Scalar::one()]));
        assert_eq!(k.basis().column(0), vec![Scalar::one(), i.clone()]);

        let col = Matrix::from_rows(vec![vec![Scalar::one()], vec![i.clone()]]).unwrap();
        let im = image_basis(&col);
        assert_eq!(im.basis().column(0), vec![Scalar::one(), i]);
        assert_eq!(image_basis(&Matrix::identity(3)), Subspace::full(3));
        assert_eq!(image_basis(&Matrix::zeros(3, 2)).dim(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rank_nullity(m in matrix(6)) {
            let r = rank(&m);
            prop_assert!(r <= m.rows().min(m.cols()));
            prop_assert_eq!(r, rank(&m.transpose()));
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + r, m.cols());
            for v in k.basis().columns() {
                prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
            }
            let im = image_basis(&m);
            prop_assert_eq!(im.dim(), r);
            for c in m.columns() {
                prop_assert!(im.contains(&c));
            }
        }

        #[test]
        fn dimension_formula((u, w) in subspace_pair(12)) {
            let s = subspace_sum(&u, &w).unwrap();
            let i = subspace_intersect(&u, &w).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
            prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
            // order independence of the canonical form
            prop_assert_eq!(subspace_sum(&w, &u).unwrap(), s);
            prop_assert_eq!(subspace_intersect(&w, &u).unwrap(), i);
        }

        #[test]
        fn column_order_does_not_matter(m in matrix(5)) {
            let mut cols = m.columns();
            cols.reverse();
            let reversed = Matrix::from_columns(m.rows(), &cols);
            prop_assert_eq!(image_basis(&m), image_basis(&reversed));
        }
    }
}

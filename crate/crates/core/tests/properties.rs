use bicomplex_lab::clio::{from_json, to_json};
use bicomplex_lab::cohomology::all_tables;
use bicomplex_lab::exactla::{image_basis, kernel_basis, rank};
use bicomplex_lab::models::{
    corpus_config, iwasawa_equations, kodaira_surface_equations, parse_structure_equations, random_bicomplex,
    write_structure_equations,
};
use bicomplex_lab::zigzag::{scramble, synthesize, Indecomposable};
use bicomplex_lab::{Bidegree, Matrix, Scalar, Subspace};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2, 1i64..=3).prop_map(|(re, im, den)| Scalar::from_ratio(re, den) + Scalar::gaussian(0, im))
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(scalar(), r * c)
            .prop_map(move |xs| Matrix::from_fn(r, c, |i, j| xs[i * c + j].clone()))
    })
}

fn matrix_pair(max: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(r, a, b)| {
        (proptest::collection::vec(scalar(), r * a), proptest::collection::vec(scalar(), r * b)).prop_map(
            move |(x, y)| {
                (Matrix::from_fn(r, a, |i, j| x[i * a + j].clone()), Matrix::from_fn(r, b, |i, j| y[i * b + j].clone()))
            },
        )
    })
}

fn zero_vector(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        for v in k.basis().columns() {
            prop_assert_eq!(m.mul_vec(&v), zero_vector(m.rows()));
        }
        prop_assert_eq!(image_basis(&m).dim(), rank(&m));
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn complements_fill_the_quotient((m, n) in matrix_pair(5)) {
        let u = Subspace::span(&m);
        let w = Subspace::span(&n);
        let both = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(both.dim() + meet.dim(), u.dim() + w.dim());
        let c = both.complement_basis(&u).unwrap();
        prop_assert_eq!(c.cols() + u.dim(), both.dim());
        prop_assert_eq!(Subspace::span(&u.basis().hstack(&c)), both);
    }

    #[test]
    fn solve_and_inverse(m in matrix(5)) {
        let x: Vec<Scalar> = (0..m.cols()).map(|i| Scalar::from(i as i64 - 1)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(inv.mul(&m), Matrix::identity(m.cols()));
        }
    }

    #[test]
    fn scalar_text_round_trip(s in scalar()) {
        let back: Scalar = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn bidegree_text_round_trip(p in -5i32..10, q in -5i32..10) {
        let b = Bidegree::new(p, q);
        prop_assert_eq!(b.to_string().parse::<Bidegree>().unwrap(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn json_round_trip(seed in 0u64..1_000_000) {
        let r = random_bicomplex(seed, &corpus_config(seed));
        let text = to_json(&r.complex);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(back.dims(), r.complex.dims());
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn scrambling_preserves_cohomology(seed in 0u64..1_000_000, other in 0u64..1_000) {
        let r = random_bicomplex(seed, &corpus_config(seed));
        let s = scramble(&r.complex, other);
        prop_assert!(s.validate().is_empty());
        prop_assert_eq!(all_tables(&s).unwrap().dims(), all_tables(&r.complex).unwrap().dims());
    }

    #[test]
    fn random_generation_is_reproducible(seed in 0u64..1_000_000) {
        let config = corpus_config(seed);
        let a = random_bicomplex(seed, &config);
        let b = random_bicomplex(seed, &config);
        prop_assert_eq!(to_json(&a.complex), to_json(&b.complex));
        prop_assert_eq!(a.parts, b.parts);
        if config.real {
            prop_assert!(a.complex.check_real_structure().unwrap());
        }
    }
}

#[test]
fn dsl_round_trip() {
    for eqs in [iwasawa_equations(), kodaira_surface_equations()] {
        let text = write_structure_equations(&eqs);
        let back = parse_structure_equations(&text, "inline").unwrap();
        assert_eq!(write_structure_equations(&back), text);
    }
}

#[test]
fn synthesized_parts_have_their_dimension() {
    let parts = [
        Indecomposable::square(Bidegree::new(0, 0)),
        Indecomposable::zigzag(vec![Bidegree::new(0, 1), Bidegree::new(1, 1), Bidegree::new(1, 0)]).unwrap(),
    ];
    let k = synthesize(&parts, Some(1)).unwrap();
    assert_eq!(k.total_dim(), 7);
}

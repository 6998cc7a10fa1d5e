//! Kernels, images and quotients over ℚ(i).

use bicomplex_lab::exactla::{image_basis, kernel_basis, rank};
use bicomplex_lab::{Matrix, Scalar, Subspace};

fn main() {
    let i = Scalar::i();
    let one = Scalar::one();
    let m = Matrix::from_rows(vec![
        vec![one.clone(), i.clone(), Scalar::zero()],
        vec![i.clone(), -one.clone(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::from_ratio(1, 3)],
    ])
    .expect("rectangular");

    println!("rank {}", rank(&m));
    let k = kernel_basis(&m);
    println!("kernel dim {}", k.dim());
    for v in k.basis().columns() {
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("  [{}]", text.join(", "));
    }
    let im = image_basis(&m);
    let all = Subspace::span(&Matrix::identity(3));
    let c = all.complement_basis(&im).expect("image lies in the space");
    println!("image dim {}, complement dim {}", im.dim(), c.cols());
}

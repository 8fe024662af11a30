//! Structure constants, products, power chains and changes of basis.

use extalg::algebra::{Algebra, QAlgebra};
use extalg::linalg::Matrix;
use extalg::scalar::Rational;

fn main() -> extalg::Result<()> {
    let one = Rational::from(1);
    let r49: QAlgebra = Algebra::from_products(
        "R4_9",
        4,
        [
            (1, 1, 2),
            (1, 2, 3),
            (1, 3, 4),
            (2, 1, 3),
            (2, 2, 4),
            (3, 1, 4),
        ]
        .into_iter()
        .map(|(i, j, k)| (i, j, k, one.clone())),
    )?;
    let e1 = r49.basis_vector(0);
    println!("e1*e1 = {:?}", r49.multiply(&e1, &e1)?);
    println!("power chain dims: {:?}", r49.power_chain().dims());
    println!("dim Ann = {}", r49.annihilator().dim());
    println!("generated by e1: {}", r49.is_generated_by(&e1)?);

    // Rows of P are the new basis vectors.
    let p = Matrix::diagonal(vec![
        Rational::from(2),
        Rational::from(4),
        Rational::from(8),
        Rational::from(16),
    ]);
    let scaled = r49.change_basis(&p)?;
    println!("after scaling e_i by 2^i:");
    for (i, j, k, v) in scaled.nonzero_constants() {
        println!("  e{}e{} = {v} e{}", i + 1, j + 1, k + 1);
    }
    Ok(())
}

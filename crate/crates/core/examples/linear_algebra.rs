//! Exact RREF, kernels and subspace arithmetic over the rationals.

use extalg::linalg::{Matrix, Subspace};
use extalg::scalar::Rational;

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn main() -> extalg::Result<()> {
    let m = Matrix::from_rows(
        vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ],
        3,
    )?;
    println!("rank {}", m.rank());
    let ker = m.kernel();
    println!("kernel basis:\n{}", ker.basis());

    let u = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]])?;
    let w = Subspace::span(3, vec![vec![q(0), q(1), q(1)]])?;
    println!("dim(U + W) = {}", u.sum(&w)?.dim());
    println!("dim(U ∩ W) = {}", u.intersection(&w)?.dim());
    println!(
        "complement of W in U + W: {:?}",
        u.sum(&w)?.complement_of(&w)?
    );
    Ok(())
}

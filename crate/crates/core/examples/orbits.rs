//! Automorphism shapes, the action on cocycles and sampled orbit evidence.

use extalg::catalog::Catalog;
use extalg::cohomology::{action_coefficients, orbit_distinctness_evidence, OrbitEvidence};

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    let rec = cat
        .automorphisms
        .iter()
        .find(|r| r.algebra == "R3s_1")
        .expect("shipped record");
    let alg = cat.entry("R3s_1")?.instances()?.remove(0).1;
    println!(
        "shape is an automorphism family: {}",
        rec.shape.verify_symbolic(&alg)
    );
    for (i, c) in action_coefficients(&alg, &rec.shape, &rec.nablas)?
        .iter()
        .enumerate()
    {
        println!("a{}* = {c}", i + 1);
    }
    let (n1, w1) = &rec.orbits[0];
    let (n2, w2) = &rec.orbits[1];
    match orbit_distinctness_evidence(&alg, &rec.shape, w1, w2, 200, 7)? {
        OrbitEvidence::NoEquivalenceFound { samples } => {
            println!("{n1} / {n2}: no equivalence in {samples} samples (evidence only)")
        }
        OrbitEvidence::EquivalenceWitness { sample, lambda, .. } => {
            println!("{n1} / {n2}: sample {sample} gives ratio {lambda}")
        }
    }
    Ok(())
}

//! Exhaustive isomorphism search over F_2 for a pair the invariants tie.

use extalg::catalog::Catalog;
use extalg::invariants::{ff_iso_evidence, invariant_vector, FfEvidence};

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    let a = cat.entry("R4_6")?.instances()?.remove(0).1;
    let b = cat.entry("R4_7")?.instances()?.remove(0).1;
    println!(
        "separating invariants: {:?}",
        invariant_vector(&a).separating(&invariant_vector(&b))
    );
    match ff_iso_evidence(&a, &b, 2)? {
        FfEvidence::NoneFoundModP { group_order } => {
            println!("no isomorphism mod 2 among {group_order} matrices")
        }
        FfEvidence::IsoWitness(rows) => println!("witness rows {rows:?}"),
    }
    Ok(())
}

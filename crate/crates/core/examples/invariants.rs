//! Invariant vectors of the nine four-dimensional algebras.

use extalg::catalog::Catalog;
use extalg::invariants::invariant_vector;

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    for entry in cat.entries.iter().filter(|e| e.has_tag("classified")) {
        let alg = entry.instances()?.remove(0).1;
        println!("{:5} {}", entry.name, invariant_vector(&alg));
    }
    Ok(())
}

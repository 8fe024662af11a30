//! A closed-set certificate and the random basis search against it.

use extalg::catalog::Catalog;
use extalg::degeneration::{closed_set_basis_search, BasisSearch};
use extalg::identity::check_closed_set;

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    let set = cat.closed_set("R4_8_set")?;
    for c in &set.conditions {
        println!("condition: {c}");
    }
    let r48 = cat.entry("R4_8")?.instances()?.remove(0).1;
    println!(
        "R4_8 in stored basis: {}",
        check_closed_set(&r48, &set.conditions)?
    );
    let r45 = cat.entry("R4_5")?.instances()?.remove(0).1;
    match closed_set_basis_search(&r45, &set.conditions, 1000, 1)? {
        BasisSearch::NoBasisFound { trials, seed } => {
            println!("R4_5: no basis in {trials} trials, seed {seed} (evidence only)")
        }
        BasisSearch::BasisFound { trial, .. } => println!("R4_5: basis at trial {trial}"),
    }
    Ok(())
}

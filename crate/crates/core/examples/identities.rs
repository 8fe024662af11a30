//! Parsing identities and checking them on basis tuples.

use extalg::catalog::Catalog;
use extalg::identity::{Identity, IdentityCheck};

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    let r45 = cat.entry("R4_5")?.instances()?.remove(0).1;
    for name in ["right-alternative", "associative", "minus-one-one-cyclic"] {
        let id = Identity::named(name)?;
        match id.check(&r45) {
            IdentityCheck::Holds => println!("{name}: holds"),
            IdentityCheck::Counterexample { args, value } => {
                let args: Vec<usize> = args.iter().map(|a| a + 1).collect();
                println!("{name}: fails at basis tuple {args:?}, value {value:?}");
            }
        }
    }
    // Linearized left alternativity; identities must be multilinear.
    let left_alt = Identity::parse("(x*y)*z - x*(y*z) + (y*x)*z - y*(x*z)")?;
    println!("{left_alt}: holds = {}", left_alt.check(&r45).holds());
    Ok(())
}

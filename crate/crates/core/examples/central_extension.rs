//! Rebuilding R4_2, R4_3 and R4_4 as central extensions of R3s_1.

use extalg::catalog::Catalog;
use extalg::cohomology::{central_extension, BilinearForm};
use extalg::identity::Identity;

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    let base = cat.entry("R3s_1")?.instances()?.remove(0).1;
    for (cocycle, target) in [
        ("D12+D21+D33", "R4_2"),
        ("D12+D21+D31+D33", "R4_3"),
        ("D12+D21+D31", "R4_4"),
    ] {
        let theta = BilinearForm::parse_rational(cocycle, 3)?;
        let ext = central_extension(&base, &Identity::right_alternative(), &[theta])?;
        let expected = cat.entry(target)?.instances()?.remove(0).1;
        println!(
            "R3s_1 + {cocycle}: equals {target} = {}",
            ext.constants() == expected.constants()
        );
    }
    let bad = BilinearForm::parse_rational("D12", 3)?;
    match central_extension(&base, &Identity::right_alternative(), &[bad]) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("D12: {e}"),
    }
    Ok(())
}

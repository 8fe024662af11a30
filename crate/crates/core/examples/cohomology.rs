//! Z², B² and H² of R3s_3 for the right alternative variety.

use extalg::catalog::Catalog;
use extalg::cohomology::{cohomology, BilinearForm};
use extalg::identity::Identity;

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    let alg = cat.entry("R3s_3")?.instances()?.remove(0).1;
    let report = cohomology(&alg, &Identity::right_alternative())?;
    println!(
        "dim Z2 = {}, dim B2 = {}, dim H2 = {}",
        report.z2.dim(),
        report.b2.dim(),
        report.h2_dim
    );
    for v in report.b2.basis_vectors() {
        println!("B2 spanned by {}", BilinearForm::from_vector(3, v)?);
    }
    let reps: Vec<String> = report
        .h2_representatives
        .iter()
        .map(|f| f.to_string())
        .collect();
    println!("H2 representatives: {}", reps.join(", "));
    let a = BilinearForm::parse_rational("D12", 3)?;
    let b = BilinearForm::parse_rational("D21", 3)?;
    println!("[D12] = [D21]: {}", report.same_class(&a, &b)?);
    Ok(())
}

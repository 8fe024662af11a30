//! Limits along parametric bases and the catalogued degeneration rows.

use extalg::catalog::Catalog;
use extalg::degeneration::{
    degeneration_limit, verify_degeneration_row, DegenerationLimit, ParametricBasis,
};

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    for row in &cat.degenerations {
        let source = cat.algebra(&row.source)?;
        let target = cat.algebra(&row.target)?;
        println!(
            "{}: {:?}",
            row.name,
            verify_degeneration_row(row, &source, &target)?
        );
    }
    // A basis that blows up instead of converging.
    let r49 = cat.algebra("R4_9")?;
    let bad = ParametricBasis::parse(&[
        vec!["t^-1", "0", "0", "0"],
        vec!["0", "1", "0", "0"],
        vec!["0", "0", "1", "0"],
        vec!["0", "0", "0", "1"],
    ])?;
    match degeneration_limit(&r49, &bad)? {
        DegenerationLimit::Limit(_) => println!("limit exists"),
        DegenerationLimit::Poles(report) => println!("poles: {report}"),
    }
    Ok(())
}

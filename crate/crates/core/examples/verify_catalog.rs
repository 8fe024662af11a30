//! Runs the full check suite on the shipped catalog and prints the text
//! report.

use extalg::catalog::Catalog;
use extalg::verify::{verify_catalog, VerifyOptions};

fn main() -> extalg::Result<()> {
    let catalog = Catalog::load_default()?;
    let report = verify_catalog(&catalog, &VerifyOptions::default());
    print!("{report}");
    Ok(())
}

//! Loading the catalog and resolving generated names.

use extalg::catalog::Catalog;

fn main() -> extalg::Result<()> {
    let cat = Catalog::load_default()?;
    println!("entries by dimension: {:?}", cat.counts_by_dim());
    for e in &cat.entries {
        let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
        println!("{:9} {:50} [{}]", e.name, e.provenance, tags.join(", "));
    }
    let r5 = cat.entry("onegen5")?;
    println!(
        "{} has {} nonzero constants",
        r5.name,
        r5.algebra.nonzero_constants().count()
    );
    if let Err(e) = cat.entry("R5_1") {
        println!("{e}");
    }
    Ok(())
}

//! Rationals, rational functions in `t` and `a`, and the limit `t -> 0`.

use std::collections::BTreeMap;

use extalg::identity::parse_scalar;
use extalg::scalar::{Rational, Var};

fn main() -> extalg::Result<()> {
    let q: Rational = "6/-4".parse()?;
    println!("6/-4 = {q}");

    let f = parse_scalar("(t^2-1)/(t-1)")?;
    println!("(t^2-1)/(t-1) = {f}");
    println!("limit at t = 0: {}", f.limit_at_t_zero()?);

    let g = parse_scalar("a*(a-t)^2/((a-1)*t)")?;
    let at = BTreeMap::from([(Var::ALPHA, Rational::from(3))]);
    println!("{g} at a = 3: {}", g.substitute(&at)?);
    match g.limit_at_t_zero() {
        Ok(l) => println!("limit: {l}"),
        Err(e) => println!("limit: {e}"),
    }
    Ok(())
}

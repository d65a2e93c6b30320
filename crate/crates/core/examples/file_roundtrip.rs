//! Writes a code and its packing to `.aqc` / `.pkg` text, reads them back
//! and checks that nothing changed.

use qmds::constructions::{construct_a, ConstructionParams};
use qmds::{format, AdditiveCode, Limits};
use std::sync::Arc;

fn main() -> qmds::Result<()> {
    let c = construct_a(ConstructionParams::new(4, 2, 3, 1), &Limits::default())?;
    let text = format::write_code(&c.code);
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("...");
    let back = format::read_code(&text)?;
    println!("code round trip bit-exact: {}", format::write_code(&back) == text);

    let pkg = format::write_packing(&c.packing, Some(c.code.tower()));
    let (packing, tower) = format::read_packing(&pkg)?;
    println!("packing round trip: {}", packing == c.packing);
    let rebuilt = AdditiveCode::from_packing(Arc::new(tower.expect("tower in header")), &packing)?;
    println!("T(rebuilt) = T(C): {}", rebuilt.t_multiset() == c.packing);
    Ok(())
}

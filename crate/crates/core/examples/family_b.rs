//! Family B (`k >= 3`, length q^h + 3) and its relative Bbar (`k = 3`).
//!
//! With h = 6 the first family gives `[67, 13/6, 65]_2^6`. For Bbar the
//! needed triple-trivial subfamily of Gamma^⊥ does not exist at g = 9 over
//! F_2; the example reports the search result and then builds the code
//! with the largest attainable g.

use qmds::constructions::{construct_b, construct_bbar, BbarOptions, ConstructionParams};
use qmds::Limits;
use std::time::Instant;

fn main() -> qmds::Result<()> {
    let limits = Limits::default();

    let t = Instant::now();
    let b = construct_b(ConstructionParams::new(2, 6, 3, 1).with_split(4, 3), &limits)?;
    println!("B(2,6,3,1), r1=4, r2=3: {}  ({:.2?})", b.type_string(), t.elapsed());
    println!("  long: {:?}; T(C) verified {}-packing", b.is_long(), b.lambda);
    for (k, v) in &b.details {
        println!("  {k} = {v}");
    }

    let params = ConstructionParams::new(2, 6, 3, 1);
    match construct_bbar(params, BbarOptions::default(), &limits) {
        Ok(c) => println!("Bbar(2,6,1): {}", c.type_string()),
        Err(e) => println!("Bbar(2,6,1) with g = #Omega_2: {e}"),
    }
    let t = Instant::now();
    let c = construct_bbar(params, BbarOptions { g: Some(6), ..Default::default() }, &limits)?;
    println!("Bbar(2,6,1) with g = 6: {}  ({:.2?})", c.type_string(), t.elapsed());
    Ok(())
}

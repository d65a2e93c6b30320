//! Spread codes: `k = 2`, `r = h + r0`, `T(C)` a partial r0-spread of
//! F_q^(h+r0). Their trace duals are QMDS with distance 2.

use qmds::constructions::{construct_spread_code, ConstructionParams};
use qmds::Limits;

fn main() -> qmds::Result<()> {
    let limits = Limits::default();
    for (q, h, r0) in [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 3, 2), (2, 4, 2)] {
        let c = construct_spread_code(ConstructionParams::new(q, h, 2, r0), None, &limits)?;
        let code = &c.code;
        let f = &c.details.iter().find(|(k, _)| k == "f").expect("f").1;
        let dual = code.dual();
        // d^⊥ from dependent block sets; enumerating the dual is far larger
        let dd = code.dual_distance(&limits)?;
        println!(
            "(q,h,r0)=({q},{h},{r0}): {}  f = {f}; dual {} QMDS: {}",
            c.type_string(),
            dual.type_string(Some(dd)),
            dd + dual.k() == dual.n() + 1
        );
    }
    Ok(())
}

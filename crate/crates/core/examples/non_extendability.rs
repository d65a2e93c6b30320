//! No subspace of dimension `r - h` extends `T(C)` of the family A code
//! (2,2,3,1) to a longer 2-packing, so the code cannot be lengthened. For
//! k = 2 the one remaining point of F_2^3 completes the spread code.

use qmds::constructions::{construct_a, ConstructionParams};
use qmds::subspace::gaussian_binomial;
use qmds::Limits;
use std::time::Instant;

fn main() -> qmds::Result<()> {
    let limits = Limits::default();
    for (q, h, k, r0) in [(2, 2, 3, 1), (2, 2, 2, 1), (3, 2, 3, 1)] {
        let c = construct_a(ConstructionParams::new(q, h, k, r0), &limits)?;
        let r = c.code.r();
        let dim = r - h;
        let t = Instant::now();
        let hit = c.packing.extend_search(c.lambda, dim, &limits)?;
        println!(
            "A({q},{h},{k},{r0}) {}: {} candidate {dim}-subspaces of F_{q}^{r}; extension: {}  ({:.2?})",
            c.type_string(),
            gaussian_binomial(q, r, dim),
            hit.map_or("none".into(), |s| format!("{:?}", s.basis().iter_rows().collect::<Vec<_>>())),
            t.elapsed()
        );
    }
    Ok(())
}

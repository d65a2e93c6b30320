//! Family A: long QMDS codes of length q^h + 2 with `k - 1` packings `T(C)`.
//!
//! Usage: `family_a [q h k r0]` (default: both (2,2,2,1) and (2,2,3,1)).

use qmds::code::{dually_k_bound, qmds_length_bound};
use qmds::constructions::{construct_a, ConstructionParams};
use qmds::Limits;

fn main() -> qmds::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let tuples = match args[..] {
        [q, h, k, r0] => vec![(q, h as usize, k as usize, r0 as usize)],
        _ => vec![(2, 2, 2, 1), (2, 2, 3, 1)],
    };
    let limits = Limits::default();
    for (q, h, k, r0) in tuples {
        let c = construct_a(ConstructionParams::new(q, h, k, r0), &limits)?;
        let code = &c.code;
        println!("A({q},{h},{k},{r0}): {}", c.type_string());
        println!("  QMDS {:?}, long {:?}", c.is_qmds(), c.is_long());
        println!("  T(C) is a {}-packing of {} blocks in F_q^{}", c.lambda, c.packing.len(), code.r());
        println!(
            "  bounds: n <= {}, fractional dually QMDS needs k <= {}",
            qmds_length_bound(q, h, k, r0)?,
            dually_k_bound(q, h, r0)?
        );
        let dual = code.dual();
        println!("  trace dual: {}", dual.type_string(Some(code.dual_distance(&limits)?)));
        match code.condition_b()? {
            None => println!("  condition (b) holds: the dual is QMDS as well"),
            Some(j) => {
                let dim = code.geometric_quotient(&j)?.code.r();
                println!(
                    "  condition (b) fails at J = {j:?}: dim ∩ W_j = {dim}, not r - |J|h = {}",
                    code.r() as i64 - (j.len() * h) as i64
                );
            }
        }
    }
    Ok(())
}

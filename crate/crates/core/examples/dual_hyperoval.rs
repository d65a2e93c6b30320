//! Exhaustive search for a dual hyperoval in F_q^(2h+1) and the dually
//! QMDS code it yields.
//!
//! Usage: `dual_hyperoval [q h [state-file]]` (default q = h = 2). For odd q
//! the search ends with "none"; q = 3 takes a long time and can be resumed
//! through the state file.

use qmds::geometry::{dda_to_code, search_dho_with, theta, DhoSearch, DhoSearchOptions};
use qmds::{BaseField, FieldTower, Limits};
use std::sync::Arc;
use std::time::Instant;

fn main() -> qmds::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: u64 = args.first().map_or(2, |s| s.parse().expect("q"));
    let h: usize = args.get(1).map_or(2, |s| s.parse().expect("h"));
    let options = DhoSearchOptions { seed: None, state_file: args.get(2).map(Into::into) };
    let limits = Limits::default();

    println!("looking for theta_{q}({h}) + 1 = {} blocks of dimension {} in F_{q}^{}", theta(q, h) + 1, h + 1, 2 * h + 1);
    let t = Instant::now();
    match search_dho_with(q, h, &options, &limits)? {
        DhoSearch::NoneExists { nodes } => println!("none ({nodes} nodes, {:.2?})", t.elapsed()),
        DhoSearch::Found(arc) => {
            println!("found in {:.2?}", t.elapsed());
            for (i, b) in arc.blocks.iter().enumerate() {
                let rows: Vec<String> = b.basis().iter_rows().map(|r| format!("{r:?}")).collect();
                println!("  {:>2}: {}", i + 1, rows.join(" "));
            }
            let tower = Arc::new(FieldTower::over(Arc::new(BaseField::with_order(q)?), h)?);
            let code = dda_to_code(&arc, tower)?;
            let dual = code.dual();
            println!("code {}", code.type_string(Some(code.min_distance(&limits)?)));
            println!("dual {}", dual.type_string(Some(code.dual_distance(&limits)?)));
            println!("dually QMDS: {}", code.is_dually_qmds(&limits)?);
        }
    }
    Ok(())
}

//! Geometric quotients `C/J`: codewords vanishing on `J`, with those
//! positions removed. For a dually QMDS code every quotient by `|J| <= k-1`
//! positions has dimension `r - |J|h` and is again dually QMDS.

use qmds::geometry::{dda_to_code, search_dho, DhoSearch};
use qmds::{FieldTower, Limits};
use std::sync::Arc;

fn main() -> qmds::Result<()> {
    let limits = Limits::default();
    let tower = Arc::new(FieldTower::new(2, 1, 2)?);
    let DhoSearch::Found(arc) = search_dho(2, 2, &limits)? else {
        unreachable!("a dual hyperoval exists for q = 2");
    };
    let code = dda_to_code(&arc, tower)?;
    println!("C = {}", code.type_string(Some(code.min_distance(&limits)?)));
    for j in [vec![1], vec![2], vec![1, 2], vec![3, 7]] {
        let qt = code.geometric_quotient(&j)?;
        let c = &qt.code;
        let d = if c.r() > 0 { Some(c.min_distance(&limits)?) } else { None };
        println!(
            "C/{j:?} = {}  dim W = {}  non-obliterating: {}  dually QMDS: {}",
            c.type_string(d),
            c.r(),
            code.is_non_obliterating(&j)?,
            c.r() > 0 && c.is_dually_qmds(&limits)?
        );
    }
    Ok(())
}

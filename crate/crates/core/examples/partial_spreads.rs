//! Desarguesian spreads, Beutelspacher partial spreads and the packing
//! checker.

use qmds::packing::{beutelspacher_size, beutelspacher_spread, desarguesian_spread, spread_upper_bound};
use qmds::{BaseField, Limits};
use std::sync::Arc;

fn main() -> qmds::Result<()> {
    let limits = Limits::default();
    for (q, r, t) in [(2u64, 4, 2), (2, 6, 3), (3, 4, 2), (2, 6, 2)] {
        let gf = Arc::new(BaseField::with_order(q)?);
        let s = desarguesian_spread(gf, r, t)?;
        let check = s.verify_lambda_packing(1, &limits)?;
        println!(
            "Desarguesian {t}-spread of F_{q}^{r}: {} blocks, 1-packing {}, max multiplicity {}",
            s.len(),
            check.holds(),
            check.max_multiplicity
        );
    }
    for (q, r, t) in [(2u64, 5, 2), (2, 7, 3), (3, 5, 2), (2, 8, 3)] {
        let gf = Arc::new(BaseField::with_order(q)?);
        let s = beutelspacher_spread(gf, r, t)?;
        println!(
            "partial {t}-spread of F_{q}^{r}: {} blocks (formula {}, upper bound {}), partial spread {}",
            s.len(),
            beutelspacher_size(q, r, t),
            spread_upper_bound(q, r, t)?,
            s.is_partial_spread(t)
        );
    }
    Ok(())
}

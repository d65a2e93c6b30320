//! The trace dual of a random additive code: dimension `nh - r`, the dual
//! of the dual is the code, and `d^⊥` is the size of the smallest set of
//! linearly dependent blocks of `G~`.

use qmds::{AdditiveCode, FieldTower, Limits};
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn main() -> qmds::Result<()> {
    let tower = Arc::new(FieldTower::new(3, 1, 2)?);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let (n, r) = (5, 4);
    let code = loop {
        let rows = (0..r)
            .map(|_| (0..n).map(|_| tower.element(rng.gen_range(0..tower.order()))).collect())
            .collect();
        if let Ok(c) = AdditiveCode::new(tower.clone(), n, rows) {
            break c;
        }
    };
    let limits = Limits::default();
    let dual = code.dual();
    println!("C   = {}", code.type_string(Some(code.min_distance(&limits)?)));
    println!("C^⊥ = {}", dual.type_string(Some(dual.min_distance(&limits)?)));
    println!("d^⊥ from block dependencies: {}", code.dual_distance(&limits)?);
    println!("(C^⊥)^⊥ = C: {}", dual.dual().same_code(&code));
    println!("faithful: {}", code.is_faithful());
    Ok(())
}

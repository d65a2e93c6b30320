//! Arithmetic in the tower F_2 ⊂ F_4 ⊂ F_16: products, inverses, the trace
//! onto F_4 and coordinates over the basis 1, xi.

use qmds::FieldTower;

fn main() -> qmds::Result<()> {
    let t = FieldTower::new(2, 2, 2)?;
    let gf = t.base();
    println!("F_q   = F_{}[x]/({:?})  (ascending coefficients)", gf.p(), gf.modulus());
    println!("F_q^h = F_q[y]/({})", t.modulus().iter().map(|&c| gf.format_element(c)).collect::<Vec<_>>().join(", "));

    let xi = t.xi();
    let a = t.add(&xi, &t.embed(2));
    println!("a = xi + x        -> {}", t.format_element(&a));
    println!("a^2               -> {}", t.format_element(&t.mul(&a, &a)));
    let inv = t.inv(&a)?;
    println!("a^-1              -> {}", t.format_element(&inv));
    println!("a * a^-1          -> {}", t.format_element(&t.mul(&a, &inv)));
    println!("Tr(a)             -> {}", gf.format_element(t.trace(&a)));
    println!("order of xi       -> {}", t.multiplicative_order(&xi)?);

    let zero_trace = t.elements().filter(|e| t.trace(e) == 0).count();
    println!("#{{Tr = 0}}         -> {zero_trace} of {}", t.order());
    println!("expand(a)         -> {:?}", t.expand(&a));
    Ok(())
}

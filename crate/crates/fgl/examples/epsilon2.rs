//! The parity projection onto odd formal group laws: kill the odd-weight
//! logarithm coefficients. Applied to the multiplicative law it produces
//! the law whose logarithm is the odd part of log(1+uX)/u, connected to
//! the original by an explicit half-series isomorphism.
//!
//! Run with: cargo run --example epsilon2

use fgl::idempotents::epsilon2;
use fgl::FormalGroupLaw;

fn main() -> fgl::Result<()> {
    let mult = FormalGroupLaw::multiplicative(9);
    println!("multiplicative law:");
    println!("  log  = {}", mult.log().render("X"));
    println!("  [-1] = {}", mult.minus_one().render("X"));

    let odd = epsilon2(&mult)?;
    println!("\nafter the parity projection:");
    println!("  log  = {}", odd.law.log().render("X"));
    println!("  [-1] = {}", odd.law.minus_one().render("X"));
    println!("  phi  = {}", odd.phi.render("X"));
    assert!(odd.law.is_odd());

    // Idempotence: a second application changes nothing.
    let again = epsilon2(&odd.law)?;
    assert_eq!(again.law.log(), odd.law.log());
    println!("\nsecond application is the identity");

    // On the universal law the projection is a generator map m_n -> 0 or m_n.
    let univ = FormalGroupLaw::universal(8);
    let e = epsilon2(&univ)?;
    let hom = e.hom.as_ref().expect("universal law carries the map");
    println!("\ngenerator images on the universal law:");
    for i in 0..univ.table().len() {
        println!("  m{} -> {}", i + 1, hom.image(i).render());
    }
    Ok(())
}

//! The recursive T elements: for a modulus l, T_(l,k) is defined by
//! removing proper divisors from l * m_(kl-1), and the finite group sum
//! sum^F T_(l,k) X^(kl) has logarithm picking out exactly the l-divisible
//! degrees. Their parity images vanish exactly when lk is even.
//!
//! Run with: cargo run --example kozma_elements

use fgl::idempotents::{epsilon2_generator_images, kozma_closure_holds, kozma_t};

fn main() -> fgl::Result<()> {
    for ell in [2u32, 3, 5] {
        println!("modulus {ell}:");
        for k in 1..=(10 / ell).max(1) {
            let t = kozma_t(ell, k, 10)?;
            println!("  T({ell},{k}) = {}", t.value.render());
        }
    }

    // The defining closure property: the formal group sum of the elements
    // reproduces the l-divisible part of the logarithm.
    for ell in [2u32, 3] {
        assert!(kozma_closure_holds(ell, 11)?);
        println!("closure identity holds for modulus {ell}");
    }

    // Parity: T(l,k) dies under the projection iff lk is even.
    let t22 = kozma_t(2, 2, 10)?;
    let parity = epsilon2_generator_images(t22.value.table())?;
    assert!(parity.apply(&t22.value)?.is_zero());
    let t31 = kozma_t(3, 1, 10)?;
    let parity3 = epsilon2_generator_images(t31.value.table())?;
    assert_eq!(parity3.apply(&t31.value)?, t31.value);
    println!("parity images match the parity of l*k");
    Ok(())
}

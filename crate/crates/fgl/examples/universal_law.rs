//! Build the universal formal group law, check its axioms, and print the
//! first few pieces of its arithmetic: F(X,Y), the [-1]-series, and the
//! [2]-series, all over Q[m1, m2, ...].
//!
//! Run with: cargo run --example universal_law

use fgl::{FormalGroupLaw, TruncSeries};

fn main() -> fgl::Result<()> {
    let law = FormalGroupLaw::universal(7);
    law.check_unit()?;
    law.check_commutative()?;
    law.check_associative()?;
    println!("axioms hold at truncation {}", law.truncation());

    println!("\nlog  = {}", law.log().render("X"));
    println!("exp  = {}", law.exp().render("X"));
    println!("[-1] = {}", law.minus_one().render("X"));
    println!("[2]  = {}", law.n_series(2)?.render("X"));

    // F(X, [-1](X)) vanishes identically.
    let x = TruncSeries::x(law.table(), law.truncation());
    assert!(law.add_f(&x, law.minus_one())?.is_zero());
    println!("\nF(X, [-1](X)) = 0 checked coefficientwise");

    // A slice of the bivariate series itself.
    println!("\ncoefficient of X^1 Y^1 in F: {}", law.f().coeff(1, 1).render());
    println!("coefficient of X^2 Y^1 in F: {}", law.f().coeff(2, 1).render());
    Ok(())
}

//! Formal involutions and the coset space of invertible series modulo the
//! odd ones: the canonical map g -> g^(-1)(-g(T)), its bijection with even
//! series over an odd law, the expansion-coefficient coordinates, and the
//! rigidity of strictly invertible involutions.
//!
//! Run with: cargo run --example involutions

use fgl::idempotents::epsilon2;
use fgl::invol::{
    c_from_invol, coset_rep_from_invol, invol_from_c, invol_from_series, invol_from_u,
    same_coset, solve_strict_involution, u_from_invol,
};
use fgl::ring::{GeneratorTable, Polynomial};
use fgl::{FormalGroupLaw, TruncSeries};

fn main() -> fgl::Result<()> {
    let table = GeneratorTable::empty();
    let n = 9;

    // The canonical involution attached to g = X + X^2.
    let mut g = TruncSeries::zero(&table, n);
    *g.coeff_mut(1) = Polynomial::one(&table);
    *g.coeff_mut(2) = Polynomial::one(&table);
    let e = invol_from_series(&g)?;
    println!("g   = {}", g.render("T"));
    println!("e_g = {}", e.series().render("T"));

    // Two series name the same coset exactly when their involutions agree.
    let mut h = TruncSeries::zero(&table, n);
    *h.coeff_mut(1) = Polynomial::one(&table);
    *h.coeff_mut(3) = Polynomial::int(&table, 2);
    let hg = h.compose(&g)?; // odd * g stays in the coset
    assert!(same_coset(&g, &hg)?);
    assert_eq!(invol_from_series(&hg)?, e);
    println!("\nodd reparametrization preserves the involution");

    // The bijection with even series over an odd law.
    let odd = epsilon2(&FormalGroupLaw::multiplicative(n))?.law;
    let mut u = TruncSeries::zero(odd.table(), n);
    *u.coeff_mut(2) = Polynomial::generator(odd.table(), 0);
    let eu = invol_from_u(&odd, &u)?;
    println!("\nu          = {}", u.render("T"));
    println!("involution = {}", eu.series().render("T"));
    assert_eq!(u_from_invol(&odd, &eu)?, u);
    println!("u recovered exactly");

    // Expansion coordinates c_1, c_3, ... and the Hensel solve back.
    let c = c_from_invol(&e, (n - 1) / 2)?;
    print!("\ncoordinates of e_g: ");
    for (i, ci) in c.iter().enumerate() {
        print!("c_{} = {}  ", 2 * i + 1, ci.render());
    }
    println!();
    let back = invol_from_c(&c, &table, n)?;
    assert_eq!(back, e);
    println!("Hensel reconstruction returns the same involution");

    // A representative of the coset from the involution alone.
    let rep = coset_rep_from_invol(&e)?;
    assert_eq!(invol_from_series(&rep)?, e);
    println!("\ncoset representative: {}", rep.render("T"));

    // Rigidity: the only strict involution is T itself.
    let strict = solve_strict_involution(&table, n)?;
    assert_eq!(strict, TruncSeries::x(&table, n));
    println!("only strict involution: {}", strict.render("T"));
    Ok(())
}

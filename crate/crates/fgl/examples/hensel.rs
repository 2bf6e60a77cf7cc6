//! Hensel's lemma over a power-series ring: solve a polynomial equation
//! H(E) = 0 in E whose coefficients are series in T, starting from a seed
//! that is a root modulo T and has unit derivative. Each Newton step
//! doubles the T-adic accuracy.
//!
//! Run with: cargo run --example hensel

use fgl::hensel::{hensel_solve, EPoly};
use fgl::ring::{GeneratorTable, Polynomial};
use fgl::{FormalGroupLaw, TruncSeries};

fn main() -> fgl::Result<()> {
    let table = GeneratorTable::empty();
    let n = 12;
    let x = TruncSeries::x(&table, n);
    let one = TruncSeries::constant(&table, Polynomial::one(&table), n);

    // E^2 - (1 + T) E + T = 0 factors as (E - 1)(E - T); the seed 0 picks
    // the root E = T, the seed 1 picks E = 1.
    let poly = EPoly::new(vec![x.clone(), x.add(&one).neg(), one.clone()]);
    let root_t = hensel_solve(&poly, &TruncSeries::zero(&table, n))?;
    assert_eq!(root_t, x);
    let root_one = hensel_solve(&poly, &one)?;
    assert_eq!(root_one, one);
    println!("E^2 - (1+T)E + T = 0:");
    println!("  seed 0 -> E = {}", root_t.render("T"));
    println!("  seed 1 -> E = {}", root_one.render("T"));

    // A quadratic with series coefficients: E = T + T E^2 (Catalan again).
    let poly2 = EPoly::new(vec![x.clone(), one.neg(), x.clone()]);
    let cat = hensel_solve(&poly2, &TruncSeries::zero(&table, n))?;
    println!("\nE = T + T E^2 -> E = {}", cat.render("T"));
    assert!(poly2.eval(&cat).is_zero());

    // The multiplicative law's [-1]-series as a Hensel root of
    // T + E + u T E = 0.
    let mult = FormalGroupLaw::multiplicative(n);
    let mt = mult.table();
    let u = Polynomial::generator(mt, 0);
    let xm = TruncSeries::x(mt, n);
    let h = EPoly::new(vec![
        xm.clone(),
        TruncSeries::monomial(mt, u, 1, n)
            .add(&TruncSeries::constant(mt, Polynomial::one(mt), n)),
    ]);
    let root = hensel_solve(&h, &xm.neg())?;
    assert_eq!(&root, mult.minus_one());
    println!("\n[-1] of the multiplicative law via Hensel:");
    println!("  {}", root.render("X"));
    Ok(())
}

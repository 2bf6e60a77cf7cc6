//! Laurent-series residues and Lagrange inversion: revert a series three
//! different ways and expand a Laurent series in powers of a coordinate
//! change.
//!
//! Run with: cargo run --example lagrange_inversion

use fgl::laurent::{lagrange_coeffs, lagrange_reconstruct};
use fgl::ring::{GeneratorTable, Polynomial};
use fgl::{LaurentSeries, TruncSeries};

fn main() -> fgl::Result<()> {
    let table = GeneratorTable::empty();
    let n = 10;

    // h = X + X^2, whose inverse has alternating Catalan coefficients.
    let mut h = TruncSeries::zero(&table, n);
    *h.coeff_mut(1) = Polynomial::one(&table);
    *h.coeff_mut(2) = Polynomial::one(&table);

    let by_lagrange = h.revert()?;
    let by_newton = h.compose_inverse()?;
    let by_triangular = h.revert_stepwise()?;
    assert_eq!(by_lagrange, by_newton);
    assert_eq!(by_lagrange, by_triangular);
    println!("h         = {}", h.render("X"));
    println!("h^(-1)    = {}  (three routes agree)", by_lagrange.render("X"));

    // The same coefficients from the residue formula: Z = sum c_k h(Z)^k.
    let z = LaurentSeries::from_series(&TruncSeries::x(&table, n));
    let c = lagrange_coeffs(&z, &h, 1..6)?;
    print!("residue route: ");
    for (k, ck) in c.iter().enumerate() {
        print!("c_{} = {}  ", k + 1, ck.render());
    }
    println!();

    // Expanding a genuinely Laurent series in powers of h and summing back.
    let f = LaurentSeries::new(
        &table,
        -2,
        (0..n).map(|k| Polynomial::int(&table, k as i64 + 1)).collect(),
    );
    let window = -2..4;
    let coeffs = lagrange_coeffs(&f, &h, window.clone())?;
    let back = lagrange_reconstruct(&coeffs, &h, window.start)?;
    for e in window {
        assert_eq!(f.coeff(e), back.coeff(e), "exponent {e}");
    }
    println!("Laurent expansion in powers of h reconstructs f on its window");

    // res f'(Z) dZ = 0 and integration by parts.
    assert!(f.derivative().residue()?.is_zero());
    println!("res f' dZ = 0");
    Ok(())
}

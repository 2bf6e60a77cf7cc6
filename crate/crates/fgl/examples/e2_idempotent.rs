//! The conjugation idempotent: make a law odd by the coordinate change
//! theta = X sqrt(-[-1](X)/X), the canonical square root interpolating
//! between X and its formal negative. For the multiplicative law theta's
//! coefficients are central binomial numbers.
//!
//! Run with: cargo run --example e2_idempotent

use fgl::idempotents::{e2, epsilon2};
use fgl::{FormalGroupLaw, TruncSeries};

fn main() -> fgl::Result<()> {
    let mult = FormalGroupLaw::multiplicative(9);
    let conj = e2(&mult)?;
    println!("theta = {}", conj.theta.render("X"));
    println!("log of the conjugate = {}", conj.law.log().render("X"));
    assert!(conj.law.is_odd());

    // theta intertwines the [-1]-series with plain negation:
    // theta([-1](X)) = -theta(X).
    let twisted = conj.theta.compose(mult.minus_one())?;
    assert_eq!(twisted, conj.theta.neg());
    println!("theta o [-1] = -theta checked");

    // On an already-odd law theta collapses to X.
    let odd = epsilon2(&mult)?.law;
    let fixed = e2(&odd)?;
    assert_eq!(fixed.theta, TruncSeries::x(odd.table(), odd.truncation()));
    println!("on an odd law theta = X and the law is unchanged");

    // The two idempotents give strictly isomorphic odd laws: the connecting
    // map exp_b(log_a) is odd.
    let a = epsilon2(&mult)?.law;
    let b = e2(&mult)?.law;
    let psi = b.exp().compose(a.log())?;
    assert!(psi.is_odd_series());
    println!("connecting isomorphism between the two odd images is odd:");
    println!("  psi = {}", psi.render("X"));
    Ok(())
}

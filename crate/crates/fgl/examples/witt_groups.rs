//! Sequence groups: coefficient sequences of unit series under Cauchy
//! convolution (*), the transported product on leading-coefficient
//! sequences (diamond, via reversion), the law-twisted version (diamond_F,
//! via F-expansion), and the even/odd splitting c = c+ * c-.
//!
//! Run with: cargo run --example witt_groups

use fgl::idempotents::epsilon2;
use fgl::ring::{GeneratorTable, Polynomial};
use fgl::witt::{diamond_f, f_twist, split_f, untwist, SeqRole, WittSeq};
use fgl::FormalGroupLaw;

fn render(c: &WittSeq) -> String {
    let body: Vec<String> = c.entries().iter().map(|p| p.render()).collect();
    format!("({})", body.join(", "))
}

fn main() -> fgl::Result<()> {
    let table = GeneratorTable::empty();
    let mk = |vals: &[i64]| {
        WittSeq::new(
            SeqRole::Leading,
            vals.iter().map(|&v| Polynomial::int(&table, v)).collect(),
        )
        .expect("leading one")
    };

    // The transported product on leading coefficients.
    let c = mk(&[1, 1, 0, 0, 0]);
    let d = c.diamond(&c)?;
    println!("c         = {}", render(&c));
    println!("c <> c    = {}", render(&d));
    assert_eq!(d, mk(&[1, 2, 3, 4, 5]));

    // Splitting into even and odd parts multiplies back.
    let e = mk(&[1, 3, -2, 5, 1]).with_role(SeqRole::SeriesOne);
    let (plus, minus) = e.split()?;
    println!("\ne         = {}", render(&e));
    println!("e+        = {}", render(&plus));
    println!("e-        = {}", render(&minus));
    assert_eq!(plus.star(&minus)?, e);
    assert!(plus.is_tau_fixed());

    // Twisting by a formal group law: the diamond_F product over the odd
    // multiplicative conjugate, and its splitting theorem.
    let odd = epsilon2(&FormalGroupLaw::multiplicative(7))?.law;
    let over_odd = |vals: &[i64]| {
        WittSeq::new(
            SeqRole::Leading,
            vals.iter().map(|&v| Polynomial::int(odd.table(), v)).collect(),
        )
        .expect("leading one")
    };
    let a = f_twist(&odd, &over_odd(&[1, 2, 0, 1, -1]))?;
    let b = f_twist(&odd, &over_odd(&[1, 0, 1, 0, 2]))?;
    let prod = diamond_f(&a, &b)?;
    println!("\ntwisted product entries over the odd law:");
    for (k, p) in prod.entries().iter().enumerate() {
        println!("  c^F_{k} = {}", p.render());
    }
    let (fp, fm) = split_f(&prod)?;
    assert_eq!(diamond_f(&fp, &fm)?.entries(), prod.entries());
    println!("twisted splitting recombines");

    // Round trip through the twist.
    let back = untwist(&a)?;
    println!("\nuntwist recovers the leading sequence: {}", render(&back));
    Ok(())
}

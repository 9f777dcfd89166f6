//! Derives the Cayley-Hamilton identity of a traceless 4x4 matrix from
//! Newton's identities and certifies it on a generic traceless matrix.

use trace42::genmat::{cayley_hamilton_traceless, CayleyHamilton};

fn main() -> trace42::Result<()> {
    let ch = cayley_hamilton_traceless();
    println!(
        "x^4 = {} tr(x^2) x^2 + {} tr(x^3) x + ({} tr(x^2)^2 + {} tr(x^4)) e",
        ch.c2, ch.c3, ch.c4_p22, ch.c4_p4
    );
    println!("holds identically: {}", ch.certify()?);
    println!(
        "with the displayed constant term: {}",
        CayleyHamilton::as_printed().certify()?
    );
    Ok(())
}

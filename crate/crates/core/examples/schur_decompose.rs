//! Decomposes a symmetric polynomial in `t, u` given on the command line,
//! e.g. `cargo run --example schur_decompose -- "(t+u)^4 - t^2 u^2"`.

use trace42::schur::{parse_tu_poly, schur_decompose};

fn main() -> trace42::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(t+u)^4 - t^2 u^2".into());
    let poly = parse_tu_poly(&text)?;
    println!("{poly} = {}", schur_decompose(&poly)?);
    Ok(())
}

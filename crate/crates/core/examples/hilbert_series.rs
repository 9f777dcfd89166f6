//! Expands the Hilbert series of the traceless algebra and prints each
//! homogeneous component as a sum of Schur polynomials.

use trace42::invariants::{hilbert, SeriesId};

fn main() -> trace42::Result<()> {
    let report = hilbert(SeriesId::C0, 12)?;
    for (n, decomp) in &report.components {
        println!("h{n:<3} {decomp}");
    }
    Ok(())
}

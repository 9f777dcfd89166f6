//! Prints the catalogued highest weight vectors of one shape, checks that
//! the raising derivation kills each of them, and reports their rank.

use trace42::tableaux::{catalogue_entries, independence_rank, Partition};

fn main() -> trace42::Result<()> {
    let shape = Partition::new(5, 3)?;
    let entries = catalogue_entries(shape)?;
    let vectors: Vec<_> = entries.iter().map(|e| e.vector()).collect();
    for (i, (e, w)) in entries.iter().zip(&vectors).enumerate() {
        println!(
            "w{} from rows {:?} / {:?}, scalar {}",
            i + 1,
            e.tableau.row1(),
            e.tableau.row2(),
            e.scalar
        );
        println!("   {w}");
        println!("   delta(w) = 0: {}", w.delta().is_zero());
    }
    println!("rank {}", independence_rank(&vectors)?);
    Ok(())
}

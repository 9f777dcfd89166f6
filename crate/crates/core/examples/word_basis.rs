//! Lists the cyclic words of a bidegree, one representative per rotation
//! class, and the dimension table of the trace spaces.

use trace42::words::{enumerate_basis, Bidegree};

fn main() {
    let words = enumerate_basis(Bidegree::new(4, 4));
    println!("(4,4): {} words", words.len());
    for w in &words {
        println!("  tr({w})");
    }
    for n in 1..=10u32 {
        let dims: Vec<usize> = (0..=n)
            .map(|a| enumerate_basis(Bidegree::new(n - a, a)).len())
            .collect();
        println!("n = {n:<2} {dims:?}");
    }
}

//! Checks every relation of the bundled corpus at random points modulo two
//! primes. Set `TRACE42_CORPUS` to check another file.

use trace42::exprlang::load_corpus;
use trace42::invariants::{corpus_table, verify_corpus, EvalConfig};

fn main() -> trace42::Result<()> {
    let corpus = load_corpus()?;
    let cfg = EvalConfig::default();
    let checks = verify_corpus(&corpus, &cfg, 0)?;
    println!("{}", corpus_table(&(&cfg).into(), &checks));
    Ok(())
}

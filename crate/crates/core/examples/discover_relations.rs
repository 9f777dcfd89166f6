//! Solves for the linear relations among the highest weight vectors of one
//! shape and the products recorded for it, then counts new generators.

use trace42::exprlang::load_corpus;
use trace42::invariants::{discover_relations, run_pipeline, EvalConfig};
use trace42::tableaux::Partition;

fn main() -> trace42::Result<()> {
    let shape = Partition::new(5, 3)?;
    let cfg = EvalConfig::default();
    let lower = run_pipeline(shape.degree() - 1, &cfg)?;
    let report = discover_relations(shape, &lower.generators, &load_corpus()?, &cfg)?;
    println!("{report}");
    Ok(())
}

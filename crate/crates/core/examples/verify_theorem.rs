//! Runs the degree-by-degree generator search through degree 10 and
//! compares the result with the expected thirteen modules.

use trace42::invariants::{verify_theorem_with, EvalConfig};

fn main() -> trace42::Result<()> {
    let report = verify_theorem_with(&EvalConfig::default(), |step| {
        eprintln!("degree {} done: {}", step.degree, step.modules());
    })?;
    println!("{report}");
    Ok(())
}

//! The three closing checks: the degree-ten identity in `[x,y]`, the
//! character of the first relations, and the Jacobian rank of seventeen
//! candidate parameters.

use trace42::invariants::{remark_checks, EvalConfig};

fn main() -> trace42::Result<()> {
    println!("{}", remark_checks(&EvalConfig::default(), 15, false)?);
    Ok(())
}

//! Parses a trace expression and evaluates it on generic traceless
//! matrices, both at random points modulo a prime and symbolically.

use trace42::exactalg::DEFAULT_PRIMES;
use trace42::exprlang::parse;
use trace42::genmat::{eval_at_points, eval_symbolic, sample_points};

fn main() -> trace42::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "tr(x^5) - 5/6*tr(x^2)*tr(x^3)".into());
    let expr = parse(&text)?;
    println!("parsed: {expr}");
    let values = eval_at_points(&expr, &sample_points(DEFAULT_PRIMES[0], 42, 4))?;
    println!(
        "at 4 random points: {:?}",
        values.iter().map(|v| v.value()).collect::<Vec<_>>()
    );
    let poly = eval_symbolic(&expr)?;
    println!("symbolic value has {} terms", poly.num_terms());
    Ok(())
}
